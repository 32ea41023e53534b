"""Numba kernels for the Yee update loop.

All kernels write each array element from exactly one prange iteration, so
results are bitwise independent of the thread count. Material behavior comes
from per-edge uint16 tags indexing small ca/cb lookup tables.
"""

import numpy as np
from numba import njit, prange

_JIT = dict(parallel=True, cache=True, fastmath=False)


@njit(**_JIT)
def update_h(Ex, Ey, Ez, Hx, Hy, Hz, dhx, dhy, dhz):
    nx = Hy.shape[0]
    ny = Hx.shape[1]
    nz = Hx.shape[2]
    for i in prange(nx + 1):
        for j in range(ny):
            for k in range(nz):
                Hx[i, j, k] += dhz * (Ey[i, j, k + 1] - Ey[i, j, k]) \
                    - dhy * (Ez[i, j + 1, k] - Ez[i, j, k])
    for i in prange(nx):
        for j in range(ny + 1):
            for k in range(nz):
                Hy[i, j, k] += dhx * (Ez[i + 1, j, k] - Ez[i, j, k]) \
                    - dhz * (Ex[i, j, k + 1] - Ex[i, j, k])
    for i in prange(nx):
        for j in range(ny):
            for k in range(nz + 1):
                Hz[i, j, k] += dhy * (Ex[i, j + 1, k] - Ex[i, j, k]) \
                    - dhx * (Ey[i + 1, j, k] - Ey[i, j, k])


@njit(**_JIT)
def update_e(Ex, Ey, Ez, Hx, Hy, Hz, mx, my, mz, ca, cb, rdx, rdy, rdz):
    nx = Ex.shape[0]
    ny = Ey.shape[1]
    nz = Ez.shape[2]
    for i in prange(nx):
        for j in range(1, ny):
            for k in range(1, nz):
                m = mx[i, j, k]
                Ex[i, j, k] = ca[m] * Ex[i, j, k] + cb[m] * (
                    (Hz[i, j, k] - Hz[i, j - 1, k]) * rdy
                    - (Hy[i, j, k] - Hy[i, j, k - 1]) * rdz)
    for i in prange(1, nx):
        for j in range(ny):
            for k in range(1, nz):
                m = my[i, j, k]
                Ey[i, j, k] = ca[m] * Ey[i, j, k] + cb[m] * (
                    (Hx[i, j, k] - Hx[i, j, k - 1]) * rdz
                    - (Hz[i, j, k] - Hz[i - 1, j, k]) * rdx)
    for i in prange(1, nx):
        for j in range(1, ny):
            for k in range(nz):
                m = mz[i, j, k]
                Ez[i, j, k] = ca[m] * Ez[i, j, k] + cb[m] * (
                    (Hy[i, j, k] - Hy[i - 1, j, k]) * rdx
                    - (Hx[i, j, k] - Hx[i, j - 1, k]) * rdy)


@njit(**_JIT)
def wrap_e_periodic_x(Ex, Ey, Ez, Hx, Hy, Hz, my, mz, ca, cb,
                      rdx, rdy, rdz, periodic_y):
    """Update the i = 0 plane of Ey/Ez through the x wrap, then copy i = nx.

    Owns the full i = 0 plane: with periodic_y it also wraps the j index, so
    the y-wrap kernel must skip i = 0.
    """
    nx = Ex.shape[0]
    ny = Ey.shape[1]
    nz = Ez.shape[2]
    for j in prange(ny):
        for k in range(1, nz):
            m = my[0, j, k]
            Ey[0, j, k] = ca[m] * Ey[0, j, k] + cb[m] * (
                (Hx[0, j, k] - Hx[0, j, k - 1]) * rdz
                - (Hz[0, j, k] - Hz[nx - 1, j, k]) * rdx)
    j_lo = 0 if periodic_y else 1
    for j in prange(j_lo, ny):
        jm = (j - 1) % ny
        for k in range(nz):
            m = mz[0, j, k]
            Ez[0, j, k] = ca[m] * Ez[0, j, k] + cb[m] * (
                (Hy[0, j, k] - Hy[nx - 1, j, k]) * rdx
                - (Hx[0, j, k] - Hx[0, jm, k]) * rdy)
    for j in prange(Ey.shape[1]):
        for k in range(Ey.shape[2]):
            Ey[nx, j, k] = Ey[0, j, k]
    for j in prange(Ez.shape[1]):
        for k in range(Ez.shape[2]):
            Ez[nx, j, k] = Ez[0, j, k]


@njit(**_JIT)
def wrap_e_periodic_y(Ex, Ey, Ez, Hx, Hy, Hz, mx, mz, ca, cb, rdx, rdy, rdz):
    """Update the j = 0 plane of Ex/Ez through the y wrap, then copy j = ny.

    Never touches i = 0 (owned by the x wrap when x is periodic; PEC
    boundary otherwise).
    """
    nx = Ex.shape[0]
    ny = Ey.shape[1]
    nz = Ez.shape[2]
    for i in prange(nx):
        for k in range(1, nz):
            m = mx[i, 0, k]
            Ex[i, 0, k] = ca[m] * Ex[i, 0, k] + cb[m] * (
                (Hz[i, 0, k] - Hz[i, ny - 1, k]) * rdy
                - (Hy[i, 0, k] - Hy[i, 0, k - 1]) * rdz)
    for i in prange(1, nx):
        for k in range(nz):
            m = mz[i, 0, k]
            Ez[i, 0, k] = ca[m] * Ez[i, 0, k] + cb[m] * (
                (Hy[i, 0, k] - Hy[i - 1, 0, k]) * rdx
                - (Hx[i, 0, k] - Hx[i, ny - 1, k]) * rdy)
    for i in prange(Ex.shape[0]):
        for k in range(Ex.shape[2]):
            Ex[i, ny, k] = Ex[i, 0, k]
    for i in prange(Ez.shape[0]):
        for k in range(Ez.shape[2]):
            Ez[i, ny, k] = Ez[i, 0, k]


@njit(**_JIT)
def cpml_e_x(Ey, Ez, Hy, Hz, my, mz, cb, psi_ey, psi_ez,
             b_n, c_n, ikm1_n, npml, rdx):
    """x-axis CPML correction for the E family (node-indexed profiles)."""
    nx = Hy.shape[0]
    ny = Ey.shape[1]
    nz = Ez.shape[2]
    for li in prange(2 * npml):
        side = li // npml
        loc = li % npml
        i = 1 + loc if side == 0 else nx - npml + loc
        for j in range(ny):
            for k in range(1, nz):
                d = (Hz[i, j, k] - Hz[i - 1, j, k]) * rdx
                p = b_n[i] * psi_ey[li, j, k] + c_n[i] * d
                psi_ey[li, j, k] = p
                Ey[i, j, k] -= cb[my[i, j, k]] * (ikm1_n[i] * d + p)
        for j in range(1, ny):
            for k in range(nz):
                d = (Hy[i, j, k] - Hy[i - 1, j, k]) * rdx
                p = b_n[i] * psi_ez[li, j, k] + c_n[i] * d
                psi_ez[li, j, k] = p
                Ez[i, j, k] += cb[mz[i, j, k]] * (ikm1_n[i] * d + p)


@njit(**_JIT)
def cpml_e_y(Ex, Ez, Hx, Hz, mx, mz, cb, psi_ex, psi_ez,
             b_n, c_n, ikm1_n, npml, rdy):
    ny = Hx.shape[1]
    nx = Ex.shape[0]
    nz = Ez.shape[2]
    for lj in prange(2 * npml):
        side = lj // npml
        loc = lj % npml
        j = 1 + loc if side == 0 else ny - npml + loc
        for i in range(nx):
            for k in range(1, nz):
                d = (Hz[i, j, k] - Hz[i, j - 1, k]) * rdy
                p = b_n[j] * psi_ex[i, lj, k] + c_n[j] * d
                psi_ex[i, lj, k] = p
                Ex[i, j, k] += cb[mx[i, j, k]] * (ikm1_n[j] * d + p)
        for i in range(1, nx):
            for k in range(nz):
                d = (Hx[i, j, k] - Hx[i, j - 1, k]) * rdy
                p = b_n[j] * psi_ez[i, lj, k] + c_n[j] * d
                psi_ez[i, lj, k] = p
                Ez[i, j, k] -= cb[mz[i, j, k]] * (ikm1_n[j] * d + p)


@njit(**_JIT)
def cpml_e_z(Ex, Ey, Hx, Hy, mx, my, cb, psi_ex, psi_ey,
             b_n, c_n, ikm1_n, npml, rdz):
    nz = Hx.shape[2]
    nx = Ex.shape[0]
    ny = Ey.shape[1]
    for lk in prange(2 * npml):
        side = lk // npml
        loc = lk % npml
        k = 1 + loc if side == 0 else nz - npml + loc
        for i in range(nx):
            for j in range(1, ny):
                d = (Hy[i, j, k] - Hy[i, j, k - 1]) * rdz
                p = b_n[k] * psi_ex[i, j, lk] + c_n[k] * d
                psi_ex[i, j, lk] = p
                Ex[i, j, k] -= cb[mx[i, j, k]] * (ikm1_n[k] * d + p)
        for i in range(1, nx):
            for j in range(ny):
                d = (Hx[i, j, k] - Hx[i, j, k - 1]) * rdz
                p = b_n[k] * psi_ey[i, j, lk] + c_n[k] * d
                psi_ey[i, j, lk] = p
                Ey[i, j, k] += cb[my[i, j, k]] * (ikm1_n[k] * d + p)


@njit(**_JIT)
def cpml_h_x(Ey, Ez, Hy, Hz, dh, psi_hy, psi_hz, b_h, c_h, ikm1_h, npml, rdx):
    """x-axis CPML correction for the H family (half-node profiles)."""
    nx = Hy.shape[0]
    for li in prange(2 * npml):
        side = li // npml
        loc = li % npml
        i = loc if side == 0 else nx - npml + loc
        for j in range(Hy.shape[1]):
            for k in range(Hy.shape[2]):
                d = (Ez[i + 1, j, k] - Ez[i, j, k]) * rdx
                p = b_h[i] * psi_hy[li, j, k] + c_h[i] * d
                psi_hy[li, j, k] = p
                Hy[i, j, k] += dh * (ikm1_h[i] * d + p)
        for j in range(Hz.shape[1]):
            for k in range(Hz.shape[2]):
                d = (Ey[i + 1, j, k] - Ey[i, j, k]) * rdx
                p = b_h[i] * psi_hz[li, j, k] + c_h[i] * d
                psi_hz[li, j, k] = p
                Hz[i, j, k] -= dh * (ikm1_h[i] * d + p)


@njit(**_JIT)
def cpml_h_y(Ex, Ez, Hx, Hz, dh, psi_hx, psi_hz, b_h, c_h, ikm1_h, npml, rdy):
    ny = Hx.shape[1]
    for lj in prange(2 * npml):
        side = lj // npml
        loc = lj % npml
        j = loc if side == 0 else ny - npml + loc
        for i in range(Hx.shape[0]):
            for k in range(Hx.shape[2]):
                d = (Ez[i, j + 1, k] - Ez[i, j, k]) * rdy
                p = b_h[j] * psi_hx[i, lj, k] + c_h[j] * d
                psi_hx[i, lj, k] = p
                Hx[i, j, k] -= dh * (ikm1_h[j] * d + p)
        for i in range(Hz.shape[0]):
            for k in range(Hz.shape[2]):
                d = (Ex[i, j + 1, k] - Ex[i, j, k]) * rdy
                p = b_h[j] * psi_hz[i, lj, k] + c_h[j] * d
                psi_hz[i, lj, k] = p
                Hz[i, j, k] += dh * (ikm1_h[j] * d + p)


@njit(**_JIT)
def cpml_h_z(Ex, Ey, Hx, Hy, dh, psi_hx, psi_hy, b_h, c_h, ikm1_h, npml, rdz):
    nz = Hx.shape[2]
    for lk in prange(2 * npml):
        side = lk // npml
        loc = lk % npml
        k = loc if side == 0 else nz - npml + loc
        for i in range(Hx.shape[0]):
            for j in range(Hx.shape[1]):
                d = (Ey[i, j, k + 1] - Ey[i, j, k]) * rdz
                p = b_h[k] * psi_hx[i, j, lk] + c_h[k] * d
                psi_hx[i, j, lk] = p
                Hx[i, j, k] += dh * (ikm1_h[k] * d + p)
        for i in range(Hy.shape[0]):
            for j in range(Hy.shape[1]):
                d = (Ex[i, j, k + 1] - Ex[i, j, k]) * rdz
                p = b_h[k] * psi_hy[i, j, lk] + c_h[k] * d
                psi_hy[i, j, lk] = p
                Hy[i, j, k] -= dh * (ikm1_h[k] * d + p)


@njit(**_JIT)
def sheet_current_update(j_cur, alpha, beta, field, idx):
    """J^{n+1/2} = alpha J^{n-1/2} + beta E^n at tagged edges."""
    for n in prange(idx.shape[0]):
        i, j, k = idx[n, 0], idx[n, 1], idx[n, 2]
        j_cur[n] = alpha * j_cur[n] + beta * field[i, j, k]


@njit(**_JIT)
def sheet_current_apply(field, j_cur, idx, cb_over_dn):
    """E -= cb * J / dn at tagged edges, after the main E update."""
    for n in prange(idx.shape[0]):
        i, j, k = idx[n, 0], idx[n, 1], idx[n, 2]
        field[i, j, k] -= cb_over_dn[n] * j_cur[n]
