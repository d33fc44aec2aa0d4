"""Array kernels behind the exhaustive checks.

Every kernel has a numba implementation and a pure-numpy implementation
with identical results.  ``SYMEXT_BACKEND=numpy`` forces the fallback;
otherwise numba is used when importable.
"""
from __future__ import annotations

import os
from types import SimpleNamespace

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover
    njit = None


# ---------------------------------------------------------------------------
# numpy implementations


def _np_preorder_violations(leq):
    """Return ``(refl_bad, trans_mid)``.

    ``refl_bad[a]`` is set when ``a <= a`` is missing.  ``trans_mid[a, c]``
    is the smallest ``b`` with ``a <= b <= c`` but not ``a <= c``, else -1.
    """
    n = leq.shape[0]
    refl_bad = ~np.diagonal(leq).copy()
    trans_mid = np.full((n, n), -1, dtype=np.int64)
    if n == 0:
        return refl_bad, trans_mid
    # path[a, b, c] = a<=b and b<=c
    path = leq[:, :, None] & leq[None, :, :]
    bad = path & ~leq[:, None, :]
    has = bad.any(axis=1)
    first = bad.argmax(axis=1)
    trans_mid[has] = first[has]
    return refl_bad, trans_mid


def _np_compat_matrix(leq):
    lo = leq.astype(np.int64)
    return (lo.T @ lo) > 0


def _np_homogeneity_witness(group, compat, rows, cols):
    """``out[p, q]`` = first group row g with ``compat[group[g, p], q]``, else -1.

    Only entries with ``rows[p] and cols[q]`` are computed; others are -2.
    """
    n = compat.shape[0]
    out = np.full((n, n), -2, dtype=np.int64)
    if group.shape[0] == 0:
        out[np.ix_(rows, cols)] = -1
        return out
    # hit[g, p, q]
    hit = compat[group, :]
    any_hit = hit.any(axis=0)
    first = hit.argmax(axis=0)
    res = np.where(any_hit, first, -1)
    mask = rows[:, None] & cols[None, :]
    out[mask] = res[mask]
    return out


def _apply(perms, v):
    """Apply every permutation row to value array v (values >= width fixed)."""
    width = perms.shape[1]
    safe = np.where((v >= 0) & (v < width), v, 0)
    img = perms[:, safe]
    return np.where((v >= 0) & (v < width), img, v[None, :])


def _np_lemma_level_table(perms, q, qp, base, fmin, nfix):
    """``ok[level, j]``: permutation row j passes every level-local lemma test."""
    n_perm, width = perms.shape
    k, levels = q.shape
    ok = np.ones((levels, n_perm), dtype=np.bool_)
    is_id = (perms == np.arange(width)[None, :]).all(axis=1)
    for lv in range(levels):
        if lv < nfix:
            ok[lv] &= is_id
        s = base[:, lv]
        img_s = _apply(perms, s)
        ok[lv] &= ((img_s == s[None, :]) | (s[None, :] < 0)).all(axis=1)
        a, b = q[:, lv], qp[:, lv]
        img_b = _apply(perms, b)
        both = (a >= 0) & (b >= 0)
        ok[lv] &= ((img_b == a[None, :]) | ~both[None, :]).all(axis=1)
        union = np.where(a[None, :] >= 0, a[None, :], np.where(b[None, :] >= 0, img_b, -1))
        for c in range(k):
            for d in range(c + 1, k):
                if lv > fmin[c, d]:
                    clash = (union[:, c] >= 0) & (union[:, c] == union[:, d])
                    ok[lv] &= ~clash
    return ok


def _np_first_product(ok):
    """Lexicographically first level-wise choice with every entry passing."""
    levels = ok.shape[0]
    out = np.full(levels, -1, dtype=np.int64)
    for lv in range(levels):
        hits = np.flatnonzero(ok[lv])
        if hits.size == 0:
            return None
        out[lv] = hits[0]
    return out


numpy_impl = SimpleNamespace(
    preorder_violations=_np_preorder_violations,
    compat_matrix=_np_compat_matrix,
    homogeneity_witness=_np_homogeneity_witness,
    lemma_level_table=_np_lemma_level_table,
    first_product=_np_first_product,
)


# ---------------------------------------------------------------------------
# numba implementations

if njit is not None:

    @njit(cache=True)
    def _nb_preorder_violations(leq):
        n = leq.shape[0]
        refl_bad = np.zeros(n, dtype=np.bool_)
        trans_mid = np.full((n, n), -1, dtype=np.int64)
        for a in range(n):
            if not leq[a, a]:
                refl_bad[a] = True
        for a in range(n):
            for c in range(n):
                if leq[a, c]:
                    continue
                for b in range(n):
                    if leq[a, b] and leq[b, c]:
                        trans_mid[a, c] = b
                        break
        return refl_bad, trans_mid

    @njit(cache=True)
    def _nb_compat_matrix(leq):
        n = leq.shape[0]
        out = np.zeros((n, n), dtype=np.bool_)
        for a in range(n):
            for b in range(a, n):
                for r in range(n):
                    if leq[r, a] and leq[r, b]:
                        out[a, b] = True
                        out[b, a] = True
                        break
        return out

    @njit(cache=True)
    def _nb_homogeneity_witness(group, compat, rows, cols):
        n = compat.shape[0]
        out = np.full((n, n), -2, dtype=np.int64)
        for p in range(n):
            if not rows[p]:
                continue
            for q in range(n):
                if not cols[q]:
                    continue
                out[p, q] = -1
                for g in range(group.shape[0]):
                    if compat[group[g, p], q]:
                        out[p, q] = g
                        break
        return out

    @njit(cache=True)
    def _nb_image(perms, j, v):
        if v >= 0 and v < perms.shape[1]:
            return perms[j, v]
        return v

    @njit(cache=True)
    def _nb_level_ok(perms, j, q, qp, base, fmin, nfix, lv):
        width = perms.shape[1]
        k = q.shape[0]
        if lv < nfix:
            for i in range(width):
                if perms[j, i] != i:
                    return False
        for c in range(k):
            s = base[c, lv]
            if s >= 0 and _nb_image(perms, j, s) != s:
                return False
            a = q[c, lv]
            b = qp[c, lv]
            if a >= 0 and b >= 0 and _nb_image(perms, j, b) != a:
                return False
        for c in range(k):
            uc = q[c, lv]
            if uc < 0 and qp[c, lv] >= 0:
                uc = _nb_image(perms, j, qp[c, lv])
            if uc < 0:
                continue
            for d in range(c + 1, k):
                if lv <= fmin[c, d]:
                    continue
                ud = q[d, lv]
                if ud < 0 and qp[d, lv] >= 0:
                    ud = _nb_image(perms, j, qp[d, lv])
                if ud == uc:
                    return False
        return True

    @njit(cache=True)
    def _nb_lemma_level_table(perms, q, qp, base, fmin, nfix):
        levels = q.shape[1]
        n_perm = perms.shape[0]
        ok = np.zeros((levels, n_perm), dtype=np.bool_)
        for lv in range(levels):
            for j in range(n_perm):
                ok[lv, j] = _nb_level_ok(perms, j, q, qp, base, fmin, nfix, lv)
        return ok

    @njit(cache=True)
    def _nb_first_product_raw(ok):
        # depth-first over the product of per-level choices, lexicographic
        levels, n_perm = ok.shape
        choice = np.full(levels, -1, dtype=np.int64)
        lv = 0
        while 0 <= lv < levels:
            j = choice[lv] + 1
            while j < n_perm and not ok[lv, j]:
                j += 1
            if j == n_perm:
                choice[lv] = -1
                lv -= 1
            else:
                choice[lv] = j
                lv += 1
        return choice, lv == levels

    def _nb_first_product(ok):
        choice, found = _nb_first_product_raw(ok)
        return choice if found else None

    numba_impl = SimpleNamespace(
        preorder_violations=_nb_preorder_violations,
        compat_matrix=_nb_compat_matrix,
        homogeneity_witness=_nb_homogeneity_witness,
        lemma_level_table=_nb_lemma_level_table,
        first_product=_nb_first_product,
    )
else:  # pragma: no cover
    numba_impl = None


def _select() -> tuple[str, SimpleNamespace]:
    want = os.environ.get("SYMEXT_BACKEND", "numba").strip().lower()
    if want not in ("numba", "numpy"):
        raise ValueError(f"SYMEXT_BACKEND must be 'numba' or 'numpy', got {want!r}")
    if want == "numba" and numba_impl is not None:
        return "numba", numba_impl
    return "numpy", numpy_impl


BACKEND, _impl = _select()

preorder_violations = _impl.preorder_violations
compat_matrix = _impl.compat_matrix
homogeneity_witness = _impl.homogeneity_witness
lemma_level_table = _impl.lemma_level_table
first_product = _impl.first_product
