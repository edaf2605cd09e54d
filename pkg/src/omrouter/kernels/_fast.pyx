# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of kernels.reference.channel_arrays, one C loop per grid."""

import numpy as np

cimport numpy as cnp
from libc.math cimport exp, expm1, fabs

cnp.import_array()

cdef double COTH_GUARD = 30.0


cdef inline double _thermal_weight(double w, double gamma_m, double m,
                                   double hbar, double kbt) nogil:
    cdef double amp = 2.0 * hbar * gamma_m * m
    cdef double x, occ
    if kbt == 0.0:
        if w < 0.0:
            return amp * (-w)
        return 0.0
    if w == 0.0:
        return 2.0 * gamma_m * m * kbt
    x = hbar * w / kbt
    if fabs(x) <= COTH_GUARD:
        occ = 1.0 / expm1(fabs(x))
    else:
        occ = exp(-fabs(x))
    if w > 0.0:
        return amp * w * occ
    return amp * (-w) * (occ + 1.0)


def channel_arrays(omega, double m, double omega_m, double gamma_m,
                   double kappa, double delta, double g2cs2,
                   double hbar, double kbt):
    """Same contract as kernels.reference.channel_arrays."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] w = np.ascontiguousarray(
        np.atleast_1d(omega), dtype=np.float64)
    cdef Py_ssize_t n = w.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] refl = np.empty(n, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] trans = np.empty(n, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] sv = np.empty(n, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] st = np.empty(n, dtype=np.float64)

    cdef double complex J = 1j
    cdef double complex mech, cav, d, e, num
    cdef double wi, absd2, two_k = 2.0 * kappa
    cdef double drive = 2.0 * hbar * g2cs2 * delta
    cdef double sv_num = 8.0 * (kappa * hbar * g2cs2) ** 2
    cdef double cav_re, cav_im, v2
    cdef Py_ssize_t i

    for i in range(n):
        wi = w[i]
        mech = m * (omega_m * omega_m - wi * wi - J * gamma_m * wi)
        cav = (two_k - J * wi) * (two_k - J * wi) + delta * delta
        d = mech * cav - drive
        num = mech * (two_k - J * (delta + wi)) + J * hbar * g2cs2
        e = two_k * num / d
        refl[i] = (e.real - 1.0) * (e.real - 1.0) + e.imag * e.imag
        trans[i] = e.real * e.real + e.imag * e.imag
        absd2 = d.real * d.real + d.imag * d.imag
        sv[i] = sv_num / absd2
        v2 = two_k * g2cs2 * (two_k * two_k + (delta + wi) * (delta + wi)) / absd2
        st[i] = v2 * _thermal_weight(wi, gamma_m, m, hbar, kbt)

    return refl, trans, sv, st
