"""Hot inner loops: integer diagonal reduction and facet-preserving bijection search.

Each kernel exists twice. The loop form is compiled with numba when it is
available and enabled; the fallback is either a vectorised numpy routine
(diagonal reduction) or the same loop source run by the interpreter
(bijection search). ``BACKEND`` reports which path ``"auto"`` resolves to.
"""

from __future__ import annotations

from math import gcd
from typing import Sequence

import numpy as np

from ._accel import NUMBA_AVAILABLE, njit

# int64 kernels bail out above this magnitude so that one multiply-subtract
# step cannot overflow; the caller then reruns with Python integers.
ENTRY_LIMIT = 1 << 30

BACKEND = "numba" if NUMBA_AVAILABLE else "numpy"


# ---------------------------------------------------------------------------
# Diagonal reduction of integer matrices
# ---------------------------------------------------------------------------


def _diagonalize_loops(a):
    rows, cols = a.shape
    diag = np.zeros(min(rows, cols), dtype=np.int64)
    t = 0
    while t < rows and t < cols:
        pi = -1
        pj = -1
        best = 0
        for i in range(t, rows):
            for j in range(t, cols):
                v = abs(a[i, j])
                if v != 0 and (best == 0 or v < best):
                    best = v
                    pi = i
                    pj = j
        if pi < 0:
            break
        for j in range(cols):
            tmp = a[t, j]
            a[t, j] = a[pi, j]
            a[pi, j] = tmp
        for i in range(rows):
            tmp = a[i, t]
            a[i, t] = a[i, pj]
            a[i, pj] = tmp
        while True:
            p = a[t, t]
            dirty = False
            for i in range(t + 1, rows):
                if a[i, t] != 0:
                    q = a[i, t] // p
                    for j in range(t, cols):
                        a[i, j] -= q * a[t, j]
                        if abs(a[i, j]) > ENTRY_LIMIT:
                            return diag[:t], False
                    if a[i, t] != 0:
                        dirty = True
            for j in range(t + 1, cols):
                if a[t, j] != 0:
                    q = a[t, j] // p
                    for i in range(t, rows):
                        a[i, j] -= q * a[i, t]
                        if abs(a[i, j]) > ENTRY_LIMIT:
                            return diag[:t], False
                    if a[t, j] != 0:
                        dirty = True
            if not dirty:
                break
            # a nonzero remainder is smaller than the pivot: promote it
            best = 0
            bi = -1
            bj = -1
            for i in range(t + 1, rows):
                v = abs(a[i, t])
                if v != 0 and (best == 0 or v < best):
                    best = v
                    bi = i
                    bj = t
            for j in range(t + 1, cols):
                v = abs(a[t, j])
                if v != 0 and (best == 0 or v < best):
                    best = v
                    bi = t
                    bj = j
            if bi != t:
                for j in range(cols):
                    tmp = a[t, j]
                    a[t, j] = a[bi, j]
                    a[bi, j] = tmp
            if bj != t:
                for i in range(rows):
                    tmp = a[i, t]
                    a[i, t] = a[i, bj]
                    a[i, bj] = tmp
        diag[t] = abs(a[t, t])
        t += 1
    return diag[:t], True


_diagonalize_jit = njit(_diagonalize_loops)


def _diagonalize_numpy(a: np.ndarray, bounded: bool) -> list[int] | None:
    """Vectorised elimination; ``a`` is int64 (``bounded``) or object dtype."""
    rows, cols = a.shape
    diag: list[int] = []
    t = 0
    while t < min(rows, cols):
        sub = a[t:, t:]
        nz_i, nz_j = np.nonzero(sub)
        if nz_i.size == 0:
            break
        pick = int(np.argmin(np.abs(sub[nz_i, nz_j]).astype(np.int64 if bounded else object)))
        pi, pj = t + int(nz_i[pick]), t + int(nz_j[pick])
        a[[t, pi]] = a[[pi, t]]
        a[:, [t, pj]] = a[:, [pj, t]]
        while True:
            p = a[t, t]
            q = a[t + 1 :, t] // p
            a[t + 1 :, t:] -= np.multiply.outer(q, a[t, t:])
            r = a[t, t + 1 :] // p
            a[t:, t + 1 :] -= np.multiply.outer(a[t:, t], r)
            if bounded and a.size and int(np.abs(a[t:, t:]).max()) > ENTRY_LIMIT:
                return None
            col = a[t + 1 :, t]
            row = a[t, t + 1 :]
            col_nz = np.nonzero(col)[0]
            row_nz = np.nonzero(row)[0]
            if col_nz.size == 0 and row_nz.size == 0:
                break
            candidates = [(abs(int(col[i])), t + 1 + int(i), t) for i in col_nz]
            candidates += [(abs(int(row[j])), t, t + 1 + int(j)) for j in row_nz]
            _, bi, bj = min(candidates)
            if bi != t:
                a[[t, bi]] = a[[bi, t]]
            if bj != t:
                a[:, [t, bj]] = a[:, [bj, t]]
        diag.append(abs(int(a[t, t])))
        t += 1
    return diag


def _exact_diagonal(matrix: np.ndarray) -> list[int]:
    result = _diagonalize_numpy(np.array(matrix, dtype=object), bounded=False)
    assert result is not None
    return result


def invariant_factors(values: Sequence[int]) -> list[int]:
    """Turn a nonzero diagonal into a divisibility chain d1 | d2 | ... ."""
    d = sorted(int(v) for v in values if v != 0)
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            g = gcd(d[i], d[j])
            d[i], d[j] = g, d[i] * d[j] // g
    return d


def smith_diagonal(matrix, backend: str = "auto") -> list[int]:
    """Nonzero invariant factors of an integer matrix, ascending.

    ``backend`` is ``"auto"``, ``"numba"``, ``"numpy"`` or ``"exact"``. The
    int64 paths fall back to exact integer arithmetic if entries grow past
    ``ENTRY_LIMIT``.
    """
    a = np.asarray(matrix)
    if a.ndim != 2:
        raise ValueError("expected a 2-d integer matrix")
    if a.size == 0:
        return []
    if backend == "auto":
        backend = BACKEND
    if backend == "exact" or int(np.abs(a).max()) > ENTRY_LIMIT:
        return invariant_factors(_exact_diagonal(a))
    work = np.array(a, dtype=np.int64)
    if backend == "numba":
        if _diagonalize_jit is None:
            raise RuntimeError("numba backend requested but numba is unavailable")
        diag, ok = _diagonalize_jit(work)
        diag = [int(v) for v in diag] if ok else None
    elif backend == "numpy":
        diag = _diagonalize_numpy(work, bounded=True)
    elif backend == "python":
        diag, ok = _diagonalize_loops(work)
        diag = [int(v) for v in diag] if ok else None
    else:
        raise ValueError(f"unknown backend {backend!r}")
    if diag is None:
        return invariant_factors(_exact_diagonal(a))
    return invariant_factors(diag)


# ---------------------------------------------------------------------------
# Bijection search between facet families
# ---------------------------------------------------------------------------


def _search_loops(n, order, depth_ptr, depth_masks, targets, compat):
    image = np.full(n, -1, dtype=np.int64)
    next_cand = np.zeros(n + 1, dtype=np.int64)
    used = 0
    depth = 0
    while depth >= 0:
        if depth == n:
            return True, image
        v = order[depth]
        if image[v] >= 0:
            used &= ~(1 << image[v])
            image[v] = -1
        found = False
        c = next_cand[depth]
        while c < n:
            if compat[v, c] and not ((used >> c) & 1):
                image[v] = c
                ok = True
                for f in range(depth_ptr[depth], depth_ptr[depth + 1]):
                    mask = depth_masks[f]
                    img = 0
                    for b in range(n):
                        if (mask >> b) & 1:
                            img |= 1 << image[b]
                    pos = np.searchsorted(targets, img)
                    if pos >= targets.shape[0] or targets[pos] != img:
                        ok = False
                        break
                if ok:
                    found = True
                else:
                    image[v] = -1
            c += 1
            if found:
                break
        if found:
            next_cand[depth] = c
            used |= 1 << image[v]
            depth += 1
            next_cand[depth] = 0
        else:
            next_cand[depth] = 0
            depth -= 1
    return False, image


_search_jit = njit(_search_loops)


def find_facet_bijection(
    n: int,
    facets_a: Sequence[int],
    facets_b: Sequence[int],
    compat: np.ndarray,
    backend: str = "auto",
) -> list[int] | None:
    """Search a vertex bijection carrying facet family ``a`` onto family ``b``.

    Facets are vertex bitmasks over ``range(n)``; ``compat[v, w]`` allows
    ``v -> w``. Both families must have the same size and no duplicates, so an
    injective facet image is automatically onto. Returns ``image`` with
    ``image[v]`` the target of ``v``, or ``None``.
    """
    if n > 62:
        raise ValueError("bitmask search supports at most 62 vertices")
    if len(facets_a) != len(facets_b):
        return None
    if n == 0:
        return []
    compat = np.asarray(compat, dtype=np.bool_)
    order = _visit_order(n, facets_a, compat)
    rank = {v: d for d, v in enumerate(order)}
    groups: list[list[int]] = [[] for _ in range(n)]
    for mask in facets_a:
        last = max(rank[b] for b in range(n) if (mask >> b) & 1)
        groups[last].append(int(mask))
    depth_ptr = np.zeros(n + 1, dtype=np.int64)
    for d in range(n):
        depth_ptr[d + 1] = depth_ptr[d] + len(groups[d])
    depth_masks = np.array([m for g in groups for m in g], dtype=np.int64)
    targets = np.array(sorted(int(m) for m in facets_b), dtype=np.int64)
    order_arr = np.array(order, dtype=np.int64)

    if backend == "auto":
        backend = BACKEND
    if backend == "numba":
        if _search_jit is None:
            raise RuntimeError("numba backend requested but numba is unavailable")
        found, image = _search_jit(n, order_arr, depth_ptr, depth_masks, targets, compat)
    elif backend in ("numpy", "python"):
        found, image = _search_loops(n, order_arr, depth_ptr, depth_masks, targets, compat)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    return [int(v) for v in image] if found else None


def _visit_order(n: int, facets: Sequence[int], compat: np.ndarray) -> list[int]:
    # grow along shared facets so facet checks fire as early as possible
    choices = compat.sum(axis=1)
    order: list[int] = []
    placed = 0
    remaining = set(range(n))
    while remaining:
        def score(v: int) -> tuple[int, int, int]:
            touching = sum(1 for m in facets if (m >> v) & 1 and m & placed)
            return (-touching, int(choices[v]), v)

        v = min(remaining, key=score)
        order.append(v)
        placed |= 1 << v
        remaining.discard(v)
    return order
