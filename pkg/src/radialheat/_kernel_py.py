"""Pure-numpy time-stepping kernel (fallback backend).

Advances the method-of-lines discretization of

    u_t = u_rr + (n - 1)/r * u_r + k * sign(u)*|u|**(q+1)

with classical RK4 on a uniform radial grid, Dirichlet values supplied at
both ends for every stage time.  The compiled kernel (``_kernel.pyx``)
implements the identical interface; :mod:`.backend` picks one at import.
"""

from __future__ import annotations

import numpy as np

NAME = "python"


def rk4_advance(u, r_min, dr, n, q, k, dt, nsteps, lo_vals, hi_vals, u_max):
    """Advance ``u`` in place by ``nsteps`` RK4 steps of size ``dt``.

    Parameters
    ----------
    u : ndarray (J+1,)
        State at the segment start; modified in place.  ``u[0]`` and
        ``u[-1]`` hold boundary values.
    lo_vals, hi_vals : ndarray (2*nsteps+1,)
        Dirichlet boundary values at the stage times
        t0, t0+dt/2, t0+dt, ... (index 2*s is the time of completed step s).
    u_max : float
        Magnitude threshold; crossing it stops the advance.

    Returns
    -------
    (steps_done, status) : status 0 = completed, 1 = threshold crossed,
        2 = non-finite state.  On early stop ``u`` holds the state at step
        ``steps_done`` (the first state at or beyond the threshold).
    """
    J = u.shape[0] - 1
    r = r_min + dr * np.arange(J + 1)
    inv_r = np.empty_like(r)
    inv_r[1:-1] = (n - 1.0) / r[1:-1]
    inv_dr2 = 1.0 / (dr * dr)
    inv_2dr = 1.0 / (2.0 * dr)
    e = q + 1.0

    def rhs(y):
        du = np.empty_like(y)
        lap = (y[:-2] - 2.0 * y[1:-1] + y[2:]) * inv_dr2
        drift = (y[2:] - y[:-2]) * inv_2dr * inv_r[1:-1]
        with np.errstate(all="ignore"):
            src = k * np.sign(y[1:-1]) * np.abs(y[1:-1]) ** e
        du[1:-1] = lap + drift + src
        du[0] = 0.0
        du[-1] = 0.0
        return du

    half = 0.5 * dt
    for s in range(nsteps):
        b = 2 * s
        y = u.copy()
        y[0], y[-1] = lo_vals[b], hi_vals[b]
        k1 = rhs(y)

        y2 = y + half * k1
        y2[0], y2[-1] = lo_vals[b + 1], hi_vals[b + 1]
        k2 = rhs(y2)

        y3 = y + half * k2
        y3[0], y3[-1] = lo_vals[b + 1], hi_vals[b + 1]
        k3 = rhs(y3)

        y4 = y + dt * k3
        y4[0], y4[-1] = lo_vals[b + 2], hi_vals[b + 2]
        k4 = rhs(y4)

        u[1:-1] = y[1:-1] + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)[1:-1]
        u[0], u[-1] = lo_vals[b + 2], hi_vals[b + 2]

        if not np.all(np.isfinite(u)):
            return s + 1, 2
        if np.max(np.abs(u)) >= u_max:
            return s + 1, 1
    return nsteps, 0
