"""Pure numpy implementations of the hot kernels.

Signatures match the compiled ``_kernels`` module exactly; see
:mod:`hankelforge._backend` for how one of them is selected.
"""

import numpy as np

_CHUNK = 256
_MAX_RECENTER = 16
_MAX_EXPAND = 32


def scan_box(form, t1s, rs, thetas, phis, threshold):
    """Scan ``|H|`` over the tensor grid ``t1s x rs x thetas x phis``.

    ``form`` is ``(scale, sign, lin, quad, shift, mix)`` of the Schur-form
    determinant.  Returns ``(max_value, first)`` where ``first`` is the
    C-order flat index of the first grid point whose value is
    ``>= threshold`` (``-1`` if none).
    """
    s, sg, lin, quad, shift, mix = (float(x) for x in form)
    t1s = np.asarray(t1s, dtype=float)
    rs = np.asarray(rs, dtype=float)
    thetas = np.asarray(thetas, dtype=float)
    phis = np.asarray(phis, dtype=float)
    tau2 = rs[:, None] * np.exp(1j * thetas)[None, :]
    t2sq = tau2 * tau2
    e3 = np.exp(1j * phis)
    rest = 1.0 - rs * rs
    block = rs.size * thetas.size * phis.size
    best = -np.inf
    first = -1
    for i, t in enumerate(t1s):
        tt = t * t
        w = 1.0 - tt
        P = s * (sg * tt * tt - lin * w * tt * tau2 - quad * w * (shift + tt) * t2sq)
        Q = s * mix * t * w * rest
        V = np.abs(P[:, :, None] + Q[:, None, None] * e3[None, None, :])
        m = V.max()
        if m > best:
            best = float(m)
        if first < 0 and m >= threshold:
            first = i * block + int(np.flatnonzero(V.ravel() >= threshold)[0])
    return best, first


def _objective(A, B, C, z):
    # z broadcast against (m, ...) with A, B, C of shape (m,)
    shape = (-1,) + (1,) * (z.ndim - 1)
    a, b, c = A.reshape(shape), B.reshape(shape), C.reshape(shape)
    return np.abs(a + z * (b + z * c)) + 1.0 - (z * z.conj()).real


def _project(z):
    r = np.abs(z)
    return np.where(r > 1.0, z / np.where(r > 1.0, r, 1.0), z)


def _extrapolate(a, b, c, z0, z1, v1, moved):
    """Pattern move: continue along ``z1 - z0`` with doubling steps while it improves."""
    d = z1 - z0
    step = np.ones(z1.size)
    live = moved.copy()
    for _ in range(_MAX_EXPAND):
        idx = np.flatnonzero(live)
        if idx.size == 0:
            break
        zt = _project(z1[idx] + step[idx] * d[idx])
        vt = _objective(a[idx], b[idx], c[idx], zt)
        up = vt > v1[idx]
        z1[idx[up]] = zt[up]
        v1[idx[up]] = vt[up]
        step[idx[up]] *= 2.0
        live[idx[~up]] = False
    return z1, v1


def y_oracle_batch(A, B, C, n_r, n_theta, rounds, n_local, n_candidates):
    """Max of ``|A + Bz + Cz^2| + 1 - |z|^2`` over the closed disk, per triple.

    A polar grid pass picks the best ``n_candidates`` grid-local maxima
    (the centre row counts once); each is refined by ``rounds`` of
    zoom-by-10 on a Cartesian window, points outside the disk projected
    onto the circle.  Within a round the window follows its winner (with a
    doubling pattern move along the last step) until the centre wins, so
    narrow ridges are climbed before zooming.  Returns ``(values, argmax)``.
    """
    A = np.ascontiguousarray(A, dtype=float)
    B = np.ascontiguousarray(B, dtype=float)
    C = np.ascontiguousarray(C, dtype=float)
    n = A.size
    out = np.empty(n)
    arg = np.empty(n, dtype=complex)
    r = np.linspace(0.0, 1.0, n_r)
    th = 2 * np.pi * np.arange(n_theta) / n_theta
    Z = r[:, None] * np.exp(1j * th)[None, :]
    offs = np.linspace(-1.0, 1.0, n_local)
    box = offs[:, None] + 1j * offs[None, :]
    centre = (n_local // 2) * n_local + n_local // 2
    h0 = max(1.0 / (n_r - 1), 2 * np.pi / n_theta)
    for lo in range(0, n, _CHUNK):
        hi = min(lo + _CHUNK, n)
        a, b, c = A[lo:hi], B[lo:hi], C[lo:hi]
        m = hi - lo
        rows = np.arange(m)
        V = _objective(a, b, c, Z[None])
        nb = np.maximum(np.roll(V, 1, axis=2), np.roll(V, -1, axis=2))
        up = np.full_like(V, -np.inf)
        up[:, :-1] = V[:, 1:]
        dn = np.full_like(V, -np.inf)
        dn[:, 1:] = V[:, :-1]
        nb = np.maximum(nb, np.maximum(up, dn))
        loc = V >= nb
        loc[:, 0, 1:] = False
        flat = np.where(loc, V, -np.inf).reshape(m, -1)
        k = min(n_candidates, flat.shape[1])
        cand = np.argsort(-flat, axis=1, kind="stable")[:, :k]
        gflat = V.reshape(m, -1)
        gbest = gflat.argmax(axis=1)
        best = gflat[rows, gbest]
        best_z = Z.ravel()[gbest]
        for j in range(k):
            idx = cand[:, j]
            valid = np.isfinite(flat[rows, idx])
            z0 = Z.ravel()[idx].copy()
            v = flat[rows, idx]
            h = h0
            v = v.copy()
            for _ in range(rounds):
                act = rows
                for _ in range(_MAX_RECENTER):
                    raw = z0[act, None, None] + h * box[None]
                    W = _objective(a[act], b[act], c[act], _project(raw)).reshape(act.size, -1)
                    w = W.argmax(axis=1)
                    z1 = _project(raw.reshape(act.size, -1)[np.arange(act.size), w])
                    v1 = W[np.arange(act.size), w]
                    # keep moving while the window beats its own centre
                    moved = v1 > W[:, centre]
                    z1, v1 = _extrapolate(a[act], b[act], c[act], z0[act], z1, v1, moved)
                    z0[act] = z1
                    v[act] = v1
                    act = act[moved]
                    if act.size == 0:
                        break
                h /= 10.0
            better = valid & (v > best)
            best = np.where(better, v, best)
            best_z = np.where(better, z0, best_z)
        out[lo:hi] = best
        arg[lo:hi] = best_z
    return out, arg
