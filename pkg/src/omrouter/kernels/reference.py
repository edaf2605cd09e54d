"""Pure numpy implementation of the channel kernel.

This is the fallback when the compiled twin is unavailable and the ground
truth it is tested against.
"""

import numpy as np

# past hbar*omega/(kB*T) = 30 the Bose factor is evaluated as exp(-x);
# expm1 and exp agree to ~1e-13 there, well under the overflow regime
COTH_GUARD = 30.0


def thermal_weight(omega, gamma_m, m, hbar, kbt):
    """Thermal force weight hbar*gamma_m*m*(-omega)*(1 + coth(-hbar*omega/(2*kbt))).

    Evaluated branch by branch so it is finite and positive everywhere:
    for omega > 0 it is 2*hbar*gamma_m*m*omega*nbar(omega) (zero when
    kbt = 0), for omega < 0 the spontaneous term survives, and omega = 0
    carries the classical limit 2*gamma_m*m*kbt.

    Parameters
    ----------
    omega : ndarray
        Frequencies [rad/s].
    gamma_m, m, hbar : float
        Mechanical damping, mass, and hbar.
    kbt : float
        kB * T_bath in joules; 0 selects the vacuum bath.
    """
    w = np.atleast_1d(np.asarray(omega, dtype=float))
    out = np.zeros_like(w)
    amp = 2.0 * hbar * gamma_m * m

    if kbt == 0.0:
        neg = w < 0.0
        out[neg] = amp * (-w[neg])
        return out

    x = hbar * w / kbt
    ax = np.abs(x)
    small = ax <= COTH_GUARD
    occ = np.zeros_like(w)
    nz = small & (ax > 0.0)
    occ[nz] = 1.0 / np.expm1(ax[nz])
    occ[~small] = np.exp(-ax[~small])

    pos = w > 0.0
    neg = w < 0.0
    out[pos] = amp * w[pos] * occ[pos]
    out[neg] = amp * (-w[neg]) * (occ[neg] + 1.0)
    out[w == 0.0] = 2.0 * gamma_m * m * kbt
    return out


def channel_arrays(omega, m, omega_m, gamma_m, kappa, delta, g2cs2, hbar, kbt):
    """Evaluate the four response channels on a frequency grid.

    Parameters
    ----------
    omega : array_like
        Sideband frequencies [rad/s], measured from the drive.
    m, omega_m, gamma_m : float
        Membrane mass, frequency, damping.
    kappa, delta : float
        Cavity half-rate and effective detuning.
    g2cs2 : float
        g**2 * |c_s|**2; the only combination through which the drive
        enters the fluctuation dynamics.
    hbar, kbt : float
        hbar and kB*T_bath [J].

    Returns
    -------
    (R, T, Sv, St) : tuple of ndarray
        Probe reflection and transmission probabilities, the vacuum noise
        density on the reflected port, and the thermal noise density, the
        latter two per unit omega/omega_m.
    """
    w = np.atleast_1d(np.asarray(omega, dtype=float))
    mech = m * (omega_m * omega_m - w * w - 1j * gamma_m * w)
    cav = (2.0 * kappa - 1j * w) ** 2 + delta * delta
    d = mech * cav - 2.0 * hbar * g2cs2 * delta
    e = 2.0 * kappa * (mech * (2.0 * kappa - 1j * (delta + w))
                       + 1j * hbar * g2cs2) / d
    refl = np.abs(e - 1.0) ** 2
    trans = np.abs(e) ** 2
    absd2 = np.abs(d) ** 2
    sv = 8.0 * (kappa * hbar * g2cs2) ** 2 / absd2
    v2 = 2.0 * kappa * g2cs2 * np.abs(2.0 * kappa - 1j * (delta + w)) ** 2 / absd2
    st = v2 * thermal_weight(w, gamma_m, m, hbar, kbt)
    return refl, trans, sv, st
