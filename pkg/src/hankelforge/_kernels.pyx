# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels in ``_fallback``.

Same signatures and semantics; loops run without the GIL so callers can
partition work across threads.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport cos, sin, sqrt, M_PI, INFINITY

cnp.import_array()

cdef enum:
    MAX_RECENTER = 16
    MAX_EXPAND = 32


def scan_box(form, t1s, rs, thetas, phis, double threshold):
    cdef double s, sg, lin, quad, shift, mix
    s, sg, lin, quad, shift, mix = [float(x) for x in form]
    cdef double[::1] T = np.ascontiguousarray(t1s, dtype=np.float64)
    cdef double[::1] R = np.ascontiguousarray(rs, dtype=np.float64)
    cdef double[::1] TH = np.ascontiguousarray(thetas, dtype=np.float64)
    cdef double[::1] PH = np.ascontiguousarray(phis, dtype=np.float64)
    cdef Py_ssize_t nt = T.shape[0], nr = R.shape[0], nth = TH.shape[0], nph = PH.shape[0]
    cdef double[::1] cph = np.cos(np.asarray(PH))
    cdef double[::1] sph = np.sin(np.asarray(PH))
    cdef double[::1] cth = np.cos(np.asarray(TH))
    cdef double[::1] sth = np.sin(np.asarray(TH))
    cdef Py_ssize_t i, j, k, l
    cdef long long idx = 0, first = -1
    cdef double best = -INFINITY
    cdef double t, tt, w, r, x, y, x2, y2, pr, pi_, q, v, c0, c1, c2
    with nogil:
        for i in range(nt):
            t = T[i]
            tt = t * t
            w = 1.0 - tt
            c0 = s * sg * tt * tt
            c1 = s * lin * w * tt
            c2 = s * quad * w * (shift + tt)
            for j in range(nr):
                r = R[j]
                q = s * mix * t * w * (1.0 - r * r)
                for k in range(nth):
                    x = r * cth[k]
                    y = r * sth[k]
                    x2 = x * x - y * y
                    y2 = 2.0 * x * y
                    pr = c0 - c1 * x - c2 * x2
                    pi_ = -c1 * y - c2 * y2
                    for l in range(nph):
                        x = pr + q * cph[l]
                        y = pi_ + q * sph[l]
                        v = sqrt(x * x + y * y)
                        if v > best:
                            best = v
                        if first < 0 and v >= threshold:
                            first = idx
                        idx += 1
    return best, first




cdef inline double _obj(double a, double b, double c, double x, double y) noexcept nogil:
    cdef double re = a + b * x + c * (x * x - y * y)
    cdef double im = b * y + c * 2.0 * x * y
    return sqrt(re * re + im * im) + 1.0 - (x * x + y * y)


def y_oracle_batch(A, B, C, int n_r, int n_theta, int rounds, int n_local, int n_candidates):
    cdef double[::1] AA = np.ascontiguousarray(A, dtype=np.float64)
    cdef double[::1] BB = np.ascontiguousarray(B, dtype=np.float64)
    cdef double[::1] CC = np.ascontiguousarray(C, dtype=np.float64)
    cdef Py_ssize_t n = AA.shape[0]
    out_np = np.empty(n, dtype=np.float64)
    arg_np = np.empty(n, dtype=np.complex128)
    cdef double[::1] out = out_np
    cdef double complex[::1] arg = arg_np
    cdef double[:, ::1] V = np.empty((n_r, n_theta), dtype=np.float64)
    cdef double[::1] cand_v = np.empty(n_candidates, dtype=np.float64)
    cdef long[::1] cand_i = np.empty(n_candidates, dtype=np.int64)
    cdef double[::1] offs = np.linspace(-1.0, 1.0, n_local)
    cdef double[::1] gx = np.empty(n_r * n_theta, dtype=np.float64)
    cdef double[::1] gy = np.empty(n_r * n_theta, dtype=np.float64)
    cdef Py_ssize_t p, i, j, m, rd, u, vv, jm, jp, it, e
    cdef double a, b, c, val, nbm, best, bx, by, x0, y0, h, v, vc, lb, x, y, rr, nx, ny, dx, dy, s
    cdef double dr = 1.0 / (n_r - 1)
    cdef double dth = 2.0 * M_PI / n_theta
    cdef double h0 = dr if dr > dth else dth
    cdef bint moved
    cdef Py_ssize_t half = n_local // 2
    for i in range(n_r):
        for j in range(n_theta):
            gx[i * n_theta + j] = i * dr * cos(j * dth)
            gy[i * n_theta + j] = i * dr * sin(j * dth)
    with nogil:
        for p in range(n):
            a = AA[p]
            b = BB[p]
            c = CC[p]
            best = -INFINITY
            bx = 0.0
            by = 0.0
            for i in range(n_r):
                for j in range(n_theta):
                    val = _obj(a, b, c, gx[i * n_theta + j], gy[i * n_theta + j])
                    V[i, j] = val
                    if val > best:
                        best = val
                        bx = gx[i * n_theta + j]
                        by = gy[i * n_theta + j]
            for m in range(n_candidates):
                cand_v[m] = -INFINITY
                cand_i[m] = -1
            # the n_candidates largest grid-local maxima; the centre row counts once
            for i in range(n_r):
                for j in range(n_theta if i > 0 else 1):
                    val = V[i, j]
                    jm = j - 1 if j > 0 else n_theta - 1
                    jp = j + 1 if j < n_theta - 1 else 0
                    nbm = V[i, jm] if V[i, jm] > V[i, jp] else V[i, jp]
                    if i > 0 and V[i - 1, j] > nbm:
                        nbm = V[i - 1, j]
                    if i < n_r - 1 and V[i + 1, j] > nbm:
                        nbm = V[i + 1, j]
                    if val < nbm or val <= cand_v[n_candidates - 1]:
                        continue
                    m = n_candidates - 1
                    while m > 0 and cand_v[m - 1] < val:
                        cand_v[m] = cand_v[m - 1]
                        cand_i[m] = cand_i[m - 1]
                        m -= 1
                    cand_v[m] = val
                    cand_i[m] = i * n_theta + j
            for m in range(n_candidates):
                if cand_i[m] < 0:
                    continue
                x0 = gx[cand_i[m]]
                y0 = gy[cand_i[m]]
                lb = cand_v[m]
                h = h0
                for rd in range(rounds):
                    for it in range(MAX_RECENTER):
                        lb = -INFINITY
                        vc = -INFINITY
                        nx = x0
                        ny = y0
                        for u in range(n_local):
                            for vv in range(n_local):
                                x = x0 + h * offs[u]
                                y = y0 + h * offs[vv]
                                rr = x * x + y * y
                                if rr > 1.0:
                                    rr = sqrt(rr)
                                    x = x / rr
                                    y = y / rr
                                v = _obj(a, b, c, x, y)
                                if u == half and vv == half:
                                    vc = v
                                if v > lb:
                                    lb = v
                                    nx = x
                                    ny = y
                        # keep moving while the window beats its own centre
                        moved = lb > vc
                        if moved:
                            # pattern move along the last step, doubling while it improves
                            dx = nx - x0
                            dy = ny - y0
                            s = 1.0
                            for e in range(MAX_EXPAND):
                                x = nx + s * dx
                                y = ny + s * dy
                                rr = x * x + y * y
                                if rr > 1.0:
                                    rr = sqrt(rr)
                                    x = x / rr
                                    y = y / rr
                                v = _obj(a, b, c, x, y)
                                if not v > lb:
                                    break
                                lb = v
                                nx = x
                                ny = y
                                s = s * 2.0
                        x0 = nx
                        y0 = ny
                        if not moved:
                            break
                    h = h / 10.0
                if lb > best:
                    best = lb
                    bx = x0
                    by = y0
            out[p] = best
            arg[p] = bx + 1j * by
    return out_np, arg_np
