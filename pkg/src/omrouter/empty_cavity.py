"""Bare two-port cavity response and the probe line shape.

With the membrane removed (or the drive off) the cavity is a symmetric
two-mirror etalon: a Lorentzian transmission window of half-width 2*kappa
around resonance.  These closed forms anchor the limits of the full model
and supply the input spectrum for the routing integrals.
"""

import math

import numpy as np

from .errors import InvalidParameterError


def empty_reflectance(omega, resonance, decay):
    """R(omega) = (omega-omega_0)^2 / (4 kappa^2 + (omega-omega_0)^2).

    Vanishes on resonance (everything leaks out the far mirror) and tends
    to 1 far away.  ``decay`` is kappa, so the reflection dip has
    half-width 2*kappa.
    """
    d = np.asarray(omega, dtype=float) - resonance
    return d * d / (4.0 * decay * decay + d * d)


def empty_transmittance(omega, resonance, decay):
    """T(omega) = 4 kappa^2 / (4 kappa^2 + (omega-omega_0)^2), so R + T = 1."""
    d = np.asarray(omega, dtype=float) - resonance
    k2 = 4.0 * decay * decay
    return k2 / (k2 + d * d)


def lorentzian_input(omega, center, bandwidth):
    """Unit-mass Lorentzian line: (Gamma/pi) / ((omega-center)^2 + Gamma^2).

    ``bandwidth`` is the half-width at half-maximum Gamma; the peak density
    is 1/(pi*Gamma) and the density falls to half of that at center +- Gamma.
    """
    if not (bandwidth > 0.0 and math.isfinite(bandwidth)):
        raise InvalidParameterError(
            f"input_bandwidth must be > 0 and finite, got {bandwidth!r}")
    d = np.asarray(omega, dtype=float) - center
    return (bandwidth / math.pi) / (d * d + bandwidth * bandwidth)


def lorentzian_band_mass(lo, hi, center, bandwidth):
    """Exact line mass on [lo, hi]: (atan((hi-c)/Gamma) - atan((lo-c)/Gamma))/pi.

    Used to normalize band integrals; note the heavy tails, e.g. the mass
    within +-50 Gamma is (2/pi)*atan(50) = 0.9873, not 1.
    """
    if not (bandwidth > 0.0 and math.isfinite(bandwidth)):
        raise InvalidParameterError(
            f"input_bandwidth must be > 0 and finite, got {bandwidth!r}")
    return (math.atan((hi - center) / bandwidth)
            - math.atan((lo - center) / bandwidth)) / math.pi
