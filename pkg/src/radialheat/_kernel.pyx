# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled time-stepping kernel.

Same contract as the pure-Python kernel in ``_kernel_py``: classical RK4
for the radial semilinear heat equation on a uniform grid with Dirichlet
stage values at both ends.  See that module for parameter documentation.
"""

import numpy as np

from libc.math cimport fabs, isfinite, pow

NAME = "compiled"


cdef inline double _signed_pow(double u, double e) nogil:
    if u > 0.0:
        return pow(u, e)
    if u < 0.0:
        return -pow(-u, e)
    if e > 0.0:
        return 0.0
    return 1e308 * 1e308  # +inf: undefined source, caught as non-finite


cdef void _rhs(double[::1] y, double[::1] du, double[::1] inv_r,
               double inv_dr2, double inv_2dr, double k, double e, Py_ssize_t J) nogil:
    cdef Py_ssize_t j
    du[0] = 0.0
    du[J] = 0.0
    for j in range(1, J):
        du[j] = ((y[j - 1] - 2.0 * y[j] + y[j + 1]) * inv_dr2
                 + (y[j + 1] - y[j - 1]) * inv_2dr * inv_r[j]
                 + k * _signed_pow(y[j], e))


def rk4_advance(u_arr, double r_min, double dr, double n, double q, double k,
                double dt, Py_ssize_t nsteps, lo_arr, hi_arr, double u_max):
    """Advance ``u_arr`` in place; returns (steps_done, status)."""
    cdef double[::1] u = u_arr
    cdef double[::1] lo_vals = lo_arr
    cdef double[::1] hi_vals = hi_arr
    cdef Py_ssize_t J = u.shape[0] - 1
    cdef Py_ssize_t j, s, b
    cdef double e = q + 1.0
    cdef double inv_dr2 = 1.0 / (dr * dr)
    cdef double inv_2dr = 1.0 / (2.0 * dr)
    cdef double half = 0.5 * dt
    cdef double sixth = dt / 6.0
    cdef double amax, av

    work = np.empty((6, J + 1), dtype=np.float64)
    cdef double[::1] inv_r = work[0]
    cdef double[::1] y = work[1]
    cdef double[::1] k1 = work[2]
    cdef double[::1] k2 = work[3]
    cdef double[::1] k3 = work[4]
    cdef double[::1] k4 = work[5]

    for j in range(J + 1):
        inv_r[j] = (n - 1.0) / (r_min + dr * j)

    with nogil:
        for s in range(nsteps):
            b = 2 * s
            for j in range(1, J):
                y[j] = u[j]
            y[0] = lo_vals[b]
            y[J] = hi_vals[b]
            _rhs(y, k1, inv_r, inv_dr2, inv_2dr, k, e, J)

            for j in range(1, J):
                y[j] = u[j] + half * k1[j]
            y[0] = lo_vals[b + 1]
            y[J] = hi_vals[b + 1]
            _rhs(y, k2, inv_r, inv_dr2, inv_2dr, k, e, J)

            for j in range(1, J):
                y[j] = u[j] + half * k2[j]
            # boundary values unchanged at the half step
            _rhs(y, k3, inv_r, inv_dr2, inv_2dr, k, e, J)

            for j in range(1, J):
                y[j] = u[j] + dt * k3[j]
            y[0] = lo_vals[b + 2]
            y[J] = hi_vals[b + 2]
            _rhs(y, k4, inv_r, inv_dr2, inv_2dr, k, e, J)

            for j in range(1, J):
                u[j] = u[j] + sixth * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j])
            u[0] = lo_vals[b + 2]
            u[J] = hi_vals[b + 2]

            amax = 0.0
            for j in range(J + 1):
                if not isfinite(u[j]):
                    with gil:
                        return s + 1, 2
                av = fabs(u[j])
                if av > amax:
                    amax = av
            if amax >= u_max:
                with gil:
                    return s + 1, 1
    return nsteps, 0
