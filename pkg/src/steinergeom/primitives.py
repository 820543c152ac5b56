"""Primitive extensions, good pairs, canonical codes, copy counting,
and decomposition of strong extensions into primitive steps.

Pair-sized structures are small, so the strongness/primitivity checks
here run on dense per-subset tables (see dimension.delta_table) rather
than the branch-and-bound path used for ambient structures.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Optional

import numpy as np

from .dimension import TABLE_LIMIT, d_table, delta_table, min_delta_interval
from .errors import NotStrong, NotZeroPrimitive, SizeLimit
from .space import (
    LinearSpace,
    delta_mask,
    induced,
    mask_of,
    parse_ls_v1,
    points_of,
    to_ls_v1,
)
from .tight import iter_candidate_sets

DEFAULT_CODE_LIMIT = 16
ALPHA_CODE = "alpha"


@lru_cache(maxsize=4)
def _tables(space: LinearSpace):
    """(delta per subset, superset-min per subset) for a small space."""
    dt = delta_table(space)
    return dt, d_table(space)


@lru_cache(maxsize=16)
def _from_base_table(space: LinearSpace, b_mask: int) -> np.ndarray:
    """For masks X >= b_mask: min delta over the interval [b_mask, X]."""
    n = space.n
    m = delta_table(space).copy()
    for b in range(n):
        if b_mask >> b & 1:
            continue
        half = 1 << b
        view = m.reshape(-1, 2 * half)
        np.minimum(view[:, half:], view[:, :half], out=view[:, half:])
    return m


def _require_small(space: LinearSpace) -> None:
    if space.n > TABLE_LIMIT:
        raise SizeLimit(f"{space.n} points exceeds table limit {TABLE_LIMIT}")


def is_primitive(space: LinearSpace, B: Iterable[int]) -> bool:
    """No proper intermediate strong set between B and the whole space."""
    _require_small(space)
    b_mask = mask_of(B)
    full = space.full_mask()
    dt, smin = _tables(space)
    m = _from_base_table(space, b_mask)
    base_delta = int(dt[b_mask])
    if int(m[full]) < base_delta:
        sup = np.arange(1 << space.n)
        ok = (sup & b_mask) == b_mask
        vals = np.where(ok, dt, dt.max() + 1)
        raise NotStrong(points_of(b_mask), points_of(full), points_of(int(np.argmin(vals))))
    idx = np.arange(1 << space.n)
    mid = (
        ((idx & b_mask) == b_mask)
        & (idx != b_mask)
        & (idx != full)
        & (m == base_delta)
        & (smin == dt)
    )
    return not bool(mid.any())


def _zero_primitive(space: LinearSpace, b_mask: int) -> bool:
    """delta(C/B) = 0, B strong, and primitive, for C = complement of B."""
    dt, _ = _tables(space)
    full = space.full_mask()
    if int(dt[full]) != int(dt[b_mask]):
        return False
    m = _from_base_table(space, b_mask)
    if int(m[full]) < int(dt[b_mask]):
        return False
    return is_primitive(space, points_of(b_mask))


def is_good_pair(space: LinearSpace, B: Iterable[int], C: Iterable[int]) -> bool:
    """0-primitive over B with base-minimal B."""
    b_mask, c_mask = mask_of(B), mask_of(C)
    if b_mask & c_mask:
        raise ValueError("B and C overlap")
    if not c_mask:
        raise ValueError("C is empty")
    if (b_mask | c_mask) != space.full_mask():
        sub = induced(space, points_of(b_mask | c_mask))
        relabel = {p: i for i, p in enumerate(points_of(b_mask | c_mask))}
        return is_good_pair(
            sub,
            [relabel[p] for p in points_of(b_mask)],
            [relabel[p] for p in points_of(c_mask)],
        )
    _require_small(space)
    if not _zero_primitive(space, b_mask):
        return False
    for r in range(b_mask.bit_count()):
        for sub_b in combinations(points_of(b_mask), r):
            keep = mask_of(sub_b) | c_mask
            small = induced(space, points_of(keep))
            relabel = {p: i for i, p in enumerate(points_of(keep))}
            if _zero_primitive(small, mask_of(relabel[p] for p in sub_b)):
                return False
    return True


def bases_of(space: LinearSpace, B: Iterable[int], C: Iterable[int]) -> list[frozenset[int]]:
    """All bases of a 0-primitive pair (Lemma-style case split).

    One new point on a line: every 2-subset of the line's base points.
    Larger extensions: the unique base, the B-points on nontrivial lines
    meeting C.
    """
    b_mask, c_mask = mask_of(B), mask_of(C)
    if b_mask & c_mask:
        raise ValueError("B and C overlap")
    full = b_mask | c_mask
    if full != space.full_mask():
        space = induced(space, points_of(full))
        relabel = {p: i for i, p in enumerate(points_of(full))}
        back = {i: p for p, i in relabel.items()}
        inner = bases_of(
            space,
            [relabel[p] for p in points_of(b_mask)],
            [relabel[p] for p in points_of(c_mask)],
        )
        return [frozenset(back[i] for i in bb) for bb in inner]
    _require_small(space)
    if not _zero_primitive(space, b_mask):
        raise NotZeroPrimitive(
            f"({sorted(points_of(b_mask))}, {sorted(points_of(c_mask))}) is not 0-primitive"
        )
    if c_mask.bit_count() == 1:
        c = points_of(c_mask)[0]
        for ln, lm in zip(space.lines, space.line_masks):
            if lm >> c & 1 and (lm & b_mask).bit_count() >= 2:
                pts = points_of(lm & b_mask)
                return [frozenset(pair) for pair in combinations(pts, 2)]
        raise NotZeroPrimitive("single extension point lies on no line based in B")
    b0 = 0
    for lm in space.line_masks:
        if lm & c_mask:
            b0 |= lm & b_mask
    return [frozenset(points_of(b0))]


# -- canonical codes ---------------------------------------------------

def _refine(space: LinearSpace, colors: tuple[int, ...]) -> tuple[int, ...]:
    by_point = space.lines_by_point
    while True:
        sigs = []
        for p in range(space.n):
            line_sigs = sorted(
                tuple(sorted(colors[q] for q in space.lines[li])) for li in by_point[p]
            )
            sigs.append((colors[p], tuple(line_sigs)))
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = tuple(ranks[s] for s in sigs)
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def _individualize(colors: tuple[int, ...], p: int) -> tuple[int, ...]:
    keyed = [(c, 0 if q == p else 1) for q, c in enumerate(colors)]
    ranks = {s: i for i, s in enumerate(sorted(set(keyed)))}
    return tuple(ranks[k] for k in keyed)


def canonical_code(space: LinearSpace, base: Iterable[int], *, limit: int = DEFAULT_CODE_LIMIT) -> str:
    """Isomorphism-invariant code of (space, base).

    Lexicographic minimum of the line encoding over all relabelings that
    keep base points before extension points, found by individualization
    and refinement instead of raw factorial search.
    """
    n = space.n
    if n > limit:
        raise SizeLimit(f"{n} points exceeds code limit {limit}")
    base = frozenset(base)
    nb = len(base)
    if n == 3 and nb == 2 and space.lines == ((0, 1, 2),):
        return ALPHA_CODE
    best: Optional[str] = None

    def encode(colors: tuple[int, ...]) -> str:
        new_lines = sorted(tuple(sorted(colors[p] for p in ln)) for ln in space.lines)
        body = "|".join(",".join(map(str, ln)) for ln in new_lines)
        return f"gp{nb}.{n - nb}|{body}"

    def search(colors: tuple[int, ...]) -> None:
        nonlocal best
        colors = _refine(space, colors)
        cells: dict[int, list[int]] = {}
        for p, c in enumerate(colors):
            cells.setdefault(c, []).append(p)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1:
                target = cells[c]
                break
        if target is None:
            enc = encode(colors)
            if best is None or enc < best:
                best = enc
            return
        for p in target:
            search(_individualize(colors, p))

    search(tuple(0 if p in base else 1 for p in range(n)))
    assert best is not None
    return best


class GoodPair:
    """A base-and-extension pair carried on its own small linear space.

    Points 0..n-1 are B u C; `base` indexes B.  `code` is the canonical
    isomorphism-type string keying mu functions.
    """

    __slots__ = ("space", "base", "ext", "code")

    def __init__(
        self,
        space: LinearSpace,
        base: Iterable[int],
        *,
        check: bool = True,
        code_limit: int = DEFAULT_CODE_LIMIT,
    ):
        self.space = space
        self.base = frozenset(base)
        self.ext = frozenset(range(space.n)) - self.base
        if not self.ext:
            raise ValueError("extension is empty")
        if check and not is_good_pair(space, self.base, self.ext):
            raise NotZeroPrimitive(
                f"({sorted(self.base)}, {sorted(self.ext)}) is not a good pair"
            )
        self.code = canonical_code(space, self.base, limit=code_limit)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GoodPair)
            and self.space == other.space
            and self.base == other.base
        )

    def __hash__(self) -> int:
        return hash((self.space, self.base))

    def __repr__(self) -> str:
        return f"GoodPair(|B|={len(self.base)}, |C|={len(self.ext)}, code={self.code[:24]!r})"


def alpha_pair() -> GoodPair:
    """The pair "one new point on an existing line"."""
    return GoodPair(LinearSpace(3, [(0, 1, 2)]), (0, 1))


# -- copies and chi ----------------------------------------------------

def copies_over_base(
    M: LinearSpace,
    pair_space: LinearSpace,
    base: Iterable[int],
    b_embed: dict[int, int],
    *,
    cap: int = 10000,
) -> list[frozenset[int]]:
    """Distinct extension images of induced embeddings extending b_embed.

    Each returned set is phi(C) for an injection phi of the pair into M
    that fixes the base embedding and matches collinearity exactly in
    both directions on its image.
    """
    base = frozenset(base)
    ext = sorted(set(range(pair_space.n)) - base)
    for u, v in combinations(sorted(base), 2):
        pl = pair_space.line_through(u, v)
        ml = M.line_through(b_embed[u], b_embed[v])
        for w in sorted(base):
            if w in (u, v):
                continue
            if ((pl is not None and w in pl) != (ml is not None and b_embed[w] in ml)):
                raise ValueError("base embedding does not preserve collinearity")
    images: set[frozenset[int]] = set()
    phi = dict(b_embed)
    used = set(b_embed.values())
    if len(used) != len(b_embed):
        raise ValueError("base embedding is not injective")

    def consistent(x: int, m: int) -> bool:
        for u in phi:
            for v in phi:
                if u >= v:
                    continue
                pl = pair_space.line_through(u, v)
                in_pair = pl is not None and x in pl
                ml = M.line_through(phi[u], phi[v])
                in_m = ml is not None and m in ml
                if in_pair != in_m:
                    return False
        return True

    def candidates(x: int) -> Iterable[int]:
        # a point collinear with two mapped points can only land on their
        # M-line; one mapped neighbour still confines it to that image's
        # lines
        neighbour = None
        for u, v in combinations(sorted(phi), 2):
            pl = pair_space.line_through(u, v)
            if pl is not None and x in pl:
                ml = M.line_through(phi[u], phi[v])
                return () if ml is None else ml
        for u in phi:
            pl = pair_space.line_through(u, x)
            if pl is not None:
                neighbour = phi[u]
                break
        if neighbour is None:
            return range(M.n)
        near: set[int] = set()
        for li in M.lines_by_point[neighbour]:
            near.update(M.lines[li])
        near.discard(neighbour)
        return sorted(near)

    def rec(i: int) -> None:
        if len(images) > cap:
            raise SizeLimit(f"more than {cap} copies")
        if i == len(ext):
            images.add(frozenset(phi[x] for x in ext))
            return
        x = ext[i]
        for m in candidates(x):
            if m in used:
                continue
            if consistent(x, m):
                phi[x] = m
                used.add(m)
                rec(i + 1)
                used.discard(m)
                del phi[x]

    rec(0)
    return sorted(images, key=sorted)


def _max_disjoint(sets: list[frozenset[int]]) -> int:
    sets = sorted(sets, key=lambda s: (len(s), sorted(s)))
    best = 0

    def rec(i: int, taken: frozenset[int], count: int) -> None:
        nonlocal best
        if count + (len(sets) - i) <= best:
            return
        if count > best:
            best = count
        for j in range(i, len(sets)):
            if not sets[j] & taken:
                rec(j + 1, taken | sets[j], count + 1)
                # the first compatible branch dominates equal-size tails,
                # but completeness needs the skip branch too
        return

    rec(0, frozenset(), 0)
    return best


def chi(
    M: LinearSpace,
    gp: GoodPair,
    b_embed: dict[int, int],
    *,
    cap: int = 10000,
) -> int:
    """Maximum number of copies of gp.ext over the embedded base that are
    pairwise disjoint outside it."""
    copies = copies_over_base(M, gp.space, gp.base, b_embed, cap=cap)
    return _max_disjoint(copies)


def chi_greedy(M: LinearSpace, gp: GoodPair, b_embed: dict[int, int], *, cap: int = 10000) -> int:
    """First-fit disjoint-copy count; diagnostic lower bound for chi."""
    copies = copies_over_base(M, gp.space, gp.base, b_embed, cap=cap)
    taken: set[int] = set()
    count = 0
    for c in copies:
        if not c & taken:
            taken |= c
            count += 1
    return count


# -- enumeration -------------------------------------------------------

def enumerate_good_pairs(
    M: LinearSpace,
    max_size: int,
    *,
    touching: Iterable[int] = (),
) -> list[tuple[GoodPair, dict[int, int]]]:
    """All good pairs with B u C inside M, |B u C| <= max_size.

    Single-point extensions are exactly the alpha instances and are read
    off the lines; larger extensions come from the candidate-set walk
    plus base recovery among attached points, each verified exactly.
    With `touching`, only pairs whose B u C meets those points; the walk
    is then seeded at them and their collinear neighbours, since a base
    point of a pair is always collinear with two extension points.
    """
    if max_size > DEFAULT_CODE_LIMIT:
        raise SizeLimit(f"max_size {max_size} exceeds code limit {DEFAULT_CODE_LIMIT}")
    want = frozenset(touching)
    out: list[tuple[GoodPair, dict[int, int]]] = []
    alpha = alpha_pair()
    for ln in M.lines:
        if want and not want.intersection(ln):
            continue
        for c in ln:
            for a, b in combinations([p for p in ln if p != c], 2):
                if want and not want & {a, b, c}:
                    continue
                out.append((alpha, {0: a, 1: b, 2: c}))

    if want:
        seeds = set(want)
        for p in want:
            for li in M.lines_by_point[p]:
                seeds.update(M.lines[li])
        c_masks = iter_candidate_sets(M, max_size, containing=sorted(seeds))
    else:
        c_masks = iter_candidate_sets(M, max_size)

    for c_mask, dc, pop_lines in c_masks:
        c_size = c_mask.bit_count()
        # base candidates are the outside points on populated lines; their
        # weight is how many such lines they sit on
        weight_of: dict[int, int] = {}
        for li in pop_lines:
            rest = M.line_masks[li] & ~c_mask
            while rest:
                q = (rest & -rest).bit_length() - 1
                rest &= rest - 1
                weight_of[q] = weight_of.get(q, 0) + 1
        weights = sorted(weight_of.items())

        def base_choices(i: int, chosen: tuple[int, ...], need: int) -> Iterator[tuple[int, ...]]:
            if need == 0:
                yield chosen
                return
            if c_size + len(chosen) >= max_size:
                return
            for j in range(i, len(weights)):
                q, w = weights[j]
                if w <= need:
                    yield from base_choices(j + 1, chosen + (q,), need - w)

        for b_pts in base_choices(0, (), dc):
            pts = sorted(set(b_pts) | set(points_of(c_mask)))
            if len(pts) > max_size:
                continue
            if want and not want.intersection(pts):
                continue
            # a line through two base points and an extension point makes
            # the extension non-primitive, so such a choice is never good
            if any(
                (lm := M.line_through(u, v)) is not None and mask_of(lm) & c_mask
                for u, v in combinations(b_pts, 2)
            ):
                continue
            relabel = {p: i for i, p in enumerate(pts)}
            sub = induced(M, pts)
            b_idx = [relabel[p] for p in b_pts]
            c_idx = [relabel[p] for p in points_of(c_mask)]
            if is_good_pair(sub, b_idx, c_idx):
                gp = GoodPair(sub, b_idx, check=False)
                out.append((gp, {i: p for p, i in relabel.items()}))
    out.sort(
        key=lambda item: (
            sorted(item[1].values()),
            sorted(item[1][b] for b in item[0].base),
        )
    )
    return out


def decompose(
    M: LinearSpace,
    D: Iterable[int],
    *,
    limit: int = TABLE_LIMIT,
) -> list[tuple[frozenset[int], int]]:
    """Chain D = X_0 <= X_1 <= ... <= M of primitive steps.

    Each entry is (points of X_{i+1}, delta increment).  Steps pick the
    smallest, then lexicographically least, strong superset; minimality
    makes the step primitive.
    """
    full = M.full_mask()
    cur = mask_of(D)
    if min_delta_interval(M, cur, full, limit=limit) < delta_mask(M, cur):
        raise NotStrong(points_of(cur), points_of(full))
    steps: list[tuple[frozenset[int], int]] = []
    while cur != full:
        cur_delta = delta_mask(M, cur)
        free = sorted(points_of(full & ~cur))
        found = None
        for size in range(1, len(free) + 1):
            for combo in combinations(free, size):
                x = cur | mask_of(combo)
                if min_delta_interval(M, cur, x, limit=limit, stop_below=cur_delta) < cur_delta:
                    continue
                if min_delta_interval(M, x, full, limit=limit, stop_below=delta_mask(M, x)) < delta_mask(M, x):
                    continue
                found = x
                break
            if found is not None:
                break
        assert found is not None  # M itself always qualifies
        steps.append((frozenset(points_of(found)), delta_mask(M, found) - cur_delta))
        cur = found
    return steps


# -- gp-v1 text format -------------------------------------------------

def to_gp_v1(space: LinearSpace, base: Iterable[int]) -> str:
    base_row = ("base " + " ".join(str(p) for p in sorted(base))).rstrip()
    return to_ls_v1(space) + base_row + "\n"


def parse_gp_v1(text: str) -> tuple[LinearSpace, frozenset[int]]:
    from .errors import FormatError

    ls_part = []
    base_line = None
    base_lineno = 0
    for i, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped.startswith("base"):
            base_line, base_lineno = stripped, i
        else:
            ls_part.append(raw)
    if base_line is None:
        raise FormatError(0, "missing 'base ...' line")
    space = parse_ls_v1("\n".join(ls_part))
    try:
        base = frozenset(int(x) for x in base_line.split()[1:])
    except ValueError:
        raise FormatError(base_lineno, f"non-integer base point in '{base_line}'") from None
    if any(p < 0 or p >= space.n for p in base):
        raise FormatError(base_lineno, "base point out of range")
    return space, base
