"""Hereditary nonnegativity, strong substructure, intrinsic closure, and
the dimension function derived from the predimension.

The searches here are exact.  The default path is a branch-and-bound
subset search over a point interval; small structures can instead use
dense numpy tables over all subsets (see :func:`delta_table` /
:func:`d_table`), which is what the exchange checker does.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

import numpy as np

from .errors import SizeLimit
from .space import LinearSpace, delta_mask, mask_of, points_of

DEFAULT_SEARCH_LIMIT = 24
TABLE_LIMIT = 24


@dataclass(frozen=True)
class StrongExtensionWitness:
    """Certificate that lo is (not) strong in hi.

    `violating` is a set X with lo <= X <= hi and delta(X) < delta(lo),
    present exactly when the relation fails.
    """

    lo: frozenset[int]
    hi: frozenset[int]
    violating: Optional[frozenset[int]] = None

    @property
    def ok(self) -> bool:
        return self.violating is None


def _point_gains(space: LinearSpace) -> list[int]:
    # adding point p can lower delta by at most (#lines through p) - 1
    return [max(0, len(space.lines_by_point[p]) - 1) for p in range(space.n)]


def min_delta_interval(
    space: LinearSpace,
    lo_mask: int,
    hi_mask: int,
    *,
    limit: int = DEFAULT_SEARCH_LIMIT,
    stop_below: Optional[int] = None,
) -> int:
    """Minimum of delta(X) over lo <= X <= hi (as masks).

    Branch-and-bound over the free points; a branch is cut when the
    admissible per-point gain bound cannot reach the incumbent.  If
    `stop_below` is given, returns early with the first value < it.
    """
    if lo_mask & ~hi_mask:
        raise ValueError("lo not contained in hi")
    free = list(points_of(hi_mask & ~lo_mask))
    if len(free) > limit:
        raise SizeLimit(f"{len(free)} free points exceeds search limit {limit}")
    gains = _point_gains(space)
    free.sort(key=lambda p: -gains[p])
    suffix = [0] * (len(free) + 1)
    for i in range(len(free) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + gains[free[i]]

    counts = [0] * len(space.lines)
    by_point = space.lines_by_point
    base_delta = delta_mask(space, lo_mask)
    for p in points_of(lo_mask):
        for li in by_point[p]:
            counts[li] += 1

    best = base_delta
    done = False

    def add(p: int) -> int:
        gain = 0
        for li in by_point[p]:
            if counts[li] >= 2:
                gain += 1
            counts[li] += 1
        return 1 - gain

    def remove(p: int) -> None:
        for li in by_point[p]:
            counts[li] -= 1

    def rec(i: int, cur: int) -> None:
        nonlocal best, done
        if done:
            return
        if cur < best:
            best = cur
            if stop_below is not None and best < stop_below:
                done = True
                return
        if i == len(free):
            return
        if cur - suffix[i] >= best:
            return
        p = free[i]
        d = add(p)
        rec(i + 1, cur + d)
        remove(p)
        rec(i + 1, cur)

    rec(0, base_delta)
    return best


def _smallest_below(
    space: LinearSpace,
    lo_mask: int,
    hi_mask: int,
    threshold: int,
    *,
    limit: int = DEFAULT_SEARCH_LIMIT,
) -> Optional[int]:
    """The (size, lex)-least X with lo <= X <= hi and delta(X) < threshold."""
    free = sorted(points_of(hi_mask & ~lo_mask))
    if len(free) > limit:
        raise SizeLimit(f"{len(free)} free points exceeds search limit {limit}")
    gains = _point_gains(space)
    base = delta_mask(space, lo_mask)
    counts = [0] * len(space.lines)
    by_point = space.lines_by_point
    for p in points_of(lo_mask):
        for li in by_point[p]:
            counts[li] += 1

    found: Optional[int] = None

    def rec(i: int, cur: int, mask: int, budget: int) -> bool:
        nonlocal found
        if cur < threshold:
            found = mask
            return True
        if budget == 0 or i == len(free):
            return False
        # even taking the `budget` best remaining gains cannot get below threshold
        top = sorted((gains[p] for p in free[i:]), reverse=True)[:budget]
        if cur - sum(top) >= threshold:
            return False
        for j in range(i, len(free)):
            p = free[j]
            gain = 0
            for li in by_point[p]:
                if counts[li] >= 2:
                    gain += 1
                counts[li] += 1
            if rec(j + 1, cur + 1 - gain, mask | (1 << p), budget - 1):
                for li in by_point[p]:
                    counts[li] -= 1
                return True
            for li in by_point[p]:
                counts[li] -= 1
        return False

    for size in range(1, len(free) + 1):
        if rec(0, base, lo_mask, size):
            return found
    return None


def in_K0(space: LinearSpace, *, limit: int = DEFAULT_SEARCH_LIMIT):
    """Whether every subset has nonnegative delta.

    Returns (True, None) or (False, minimal violating subset), minimal
    by size then lexicographically.
    """
    m = min_delta_interval(space, 0, space.full_mask(), limit=limit, stop_below=0)
    if m >= 0:
        return True, None
    bad = _smallest_below(space, 0, space.full_mask(), 0, limit=limit)
    return False, frozenset(points_of(bad))


def is_strong(
    space: LinearSpace,
    lo: Iterable[int],
    hi: Iterable[int],
    *,
    limit: int = DEFAULT_SEARCH_LIMIT,
) -> StrongExtensionWitness:
    """Test lo <= hi: no X between them drops delta below delta(lo)."""
    lo_mask, hi_mask = mask_of(lo), mask_of(hi)
    if lo_mask & ~hi_mask:
        raise ValueError("lo not contained in hi")
    target = delta_mask(space, lo_mask)
    m = min_delta_interval(space, lo_mask, hi_mask, limit=limit, stop_below=target)
    lo_f, hi_f = frozenset(points_of(lo_mask)), frozenset(points_of(hi_mask))
    if m >= target:
        return StrongExtensionWitness(lo_f, hi_f)
    bad = _smallest_below(space, lo_mask, hi_mask, target, limit=limit)
    return StrongExtensionWitness(lo_f, hi_f, frozenset(points_of(bad)))


def icl_mask(space: LinearSpace, x_mask: int, *, limit: int = DEFAULT_SEARCH_LIMIT) -> int:
    """Least strong superset of X, as a mask.

    Submodularity makes the delta-minimizing supersets of X closed under
    intersection; the least minimizer is their intersection, recovered
    point by point: p belongs to it iff excluding p raises the minimum.
    """
    full = space.full_mask()
    m = min_delta_interval(space, x_mask, full, limit=limit)
    out = x_mask
    for p in range(space.n):
        bit = 1 << p
        if bit & full & ~x_mask:
            if min_delta_interval(space, x_mask, full & ~bit, limit=limit) > m:
                out |= bit
    return out


def icl(space: LinearSpace, X: Iterable[int], *, limit: int = DEFAULT_SEARCH_LIMIT) -> frozenset[int]:
    return frozenset(points_of(icl_mask(space, mask_of(X), limit=limit)))


def d(space: LinearSpace, X: Iterable[int], *, limit: int = DEFAULT_SEARCH_LIMIT) -> int:
    """Dimension: minimum delta over supersets of X."""
    return min_delta_interval(space, mask_of(X), space.full_mask(), limit=limit)


def d_closure(space: LinearSpace, X: Iterable[int], *, limit: int = DEFAULT_SEARCH_LIMIT) -> frozenset[int]:
    """Points whose addition does not raise the dimension of X."""
    xm = mask_of(X)
    if space.n <= 16:
        table = d_table(space)
        dx = int(table[xm])
        return frozenset(p for p in range(space.n) if int(table[xm | (1 << p)]) == dx)
    dx = min_delta_interval(space, xm, space.full_mask(), limit=limit)
    out = set()
    for p in range(space.n):
        if min_delta_interval(space, xm | (1 << p), space.full_mask(), limit=limit) == dx:
            out.add(p)
    return frozenset(out)


# -- dense table path --------------------------------------------------

def delta_table(space: LinearSpace) -> np.ndarray:
    """delta of every subset, indexed by bitmask; needs n <= TABLE_LIMIT.

    The returned array is shared across calls and read-only; copy before
    mutating.
    """
    n = space.n
    if n > TABLE_LIMIT:
        raise SizeLimit(f"{n} points exceeds table limit {TABLE_LIMIT}")
    return _delta_table_cached(space)


@lru_cache(maxsize=8)
def _delta_table_cached(space: LinearSpace) -> np.ndarray:
    masks = np.arange(1 << space.n, dtype=np.uint32)
    out = np.bitwise_count(masks).astype(np.int32)
    for lm in space.line_masks:
        k = np.bitwise_count(masks & np.uint32(lm)).astype(np.int32)
        out -= np.maximum(k - 2, 0)
    out.setflags(write=False)
    return out


def d_table(space: LinearSpace) -> np.ndarray:
    """d of every subset: superset-minimum of the delta table."""
    n = space.n
    out = delta_table(space).copy()
    for b in range(n):
        half = 1 << b
        view = out.reshape(-1, 2 * half)
        np.minimum(view[:, :half], view[:, half:], out=view[:, :half])
    return out


def check_flatness(space: LinearSpace, family, mode: str = "delta", *, limit: int = DEFAULT_SEARCH_LIMIT):
    """Inclusion-exclusion upper bound on delta (or d) over a set family.

    Returns (True, None) or (False, (lhs, rhs)).  In mode "d" each family
    member must equal its own d-closure.
    """
    from itertools import combinations

    sets = [frozenset(F) for F in family]
    if len(sets) < 2:
        raise ValueError("need at least 2 sets")
    if mode == "delta":
        f = lambda S: delta_mask(space, mask_of(S))
    elif mode == "d":
        for F in sets:
            if d_closure(space, F, limit=limit) != F:
                raise ValueError(f"{sorted(F)} is not d-closed")
        f = lambda S: d(space, S, limit=limit)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    union = frozenset().union(*sets)
    lhs = f(union)
    rhs = 0
    for r in range(1, len(sets) + 1):
        for combo in combinations(sets, r):
            inter = combo[0]
            for s in combo[1:]:
                inter = inter & s
            rhs += (-1) ** (r + 1) * f(inter)
    if lhs <= rhs:
        return True, None
    return False, (lhs, rhs)


def check_exchange(space: LinearSpace, *, limit: int = 16):
    """Pregeometry axioms for d-closure: monotone, idempotent, exchange.

    Exhaustive over all subsets; table-driven, so bounded to small n.
    Returns (True, None) or (False, witness-description).
    """
    n = space.n
    if n > limit:
        raise SizeLimit(f"{n} points exceeds exchange-check limit {limit}")
    table = d_table(space)

    def cl(mask: int) -> int:
        dx = table[mask]
        out = mask
        for p in range(n):
            if table[mask | (1 << p)] == dx:
                out |= 1 << p
        return out

    closures = [cl(m) for m in range(1 << n)]
    for m in range(1 << n):
        cm = closures[m]
        if cm & m != m:
            return False, ("not-extensive", points_of(m))
        if closures[cm] != cm:
            return False, ("not-idempotent", points_of(m))
    for m in range(1 << n):
        for p in range(n):
            if m & (1 << p):
                continue
            sup = closures[m | (1 << p)]
            if closures[m] & ~sup:
                return False, ("not-monotone", points_of(m), p)
    for m in range(1 << n):
        cm = closures[m]
        for a in range(n):
            if cm & (1 << a):
                continue
            for b in range(n):
                if b == a or cm & (1 << b):
                    continue
                if closures[m | (1 << b)] & (1 << a):
                    # a in cl(X+b) - cl(X) must give b in cl(X+a)
                    if not closures[m | (1 << a)] & (1 << b):
                        return False, ("exchange", points_of(m), a, b)
    return True, None
