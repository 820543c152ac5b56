"""Finite linear spaces with a single ternary collinearity relation.

A :class:`LinearSpace` stores the nontrivial lines explicitly; 2-point
lines are implicit.  Point sets are handled both as Python sets and as
integer bitmasks (bit i = point i); the mask form is what the search
modules use.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import AxiomViolation, FormatError


def mask_of(points: Iterable[int]) -> int:
    m = 0
    for p in points:
        m |= 1 << p
    return m


def points_of(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        b = mask & -mask
        out.append(b.bit_length() - 1)
        mask ^= b
    return tuple(out)


class LinearSpace:
    """Immutable finite linear space on points 0..n-1.

    Invariants: every stored line has >= 3 strictly increasing in-range
    points, and two stored lines share at most one point.
    """

    __slots__ = ("n", "lines", "line_masks", "_lines_by_point", "_pair_line")

    def __init__(self, n: int, lines: Iterable[Sequence[int]]):
        norm = sorted(tuple(sorted(set(ln))) for ln in lines)
        for ln in norm:
            if len(ln) < 3:
                raise ValueError(f"line {ln} has fewer than 3 points")
            if ln[0] < 0 or ln[-1] >= n:
                raise ValueError(f"line {ln} out of range for {n} points")
        if len(set(norm)) != len(norm):
            raise ValueError("duplicate lines")
        seen: dict[tuple[int, int], tuple[int, ...]] = {}
        for ln in norm:
            for pair in combinations(ln, 2):
                if pair in seen:
                    raise AxiomViolation(pair, [seen[pair], ln])
                seen[pair] = ln
        self.n = n
        self.lines = tuple(norm)
        self.line_masks = tuple(mask_of(ln) for ln in self.lines)
        self._lines_by_point = None
        self._pair_line = seen

    # -- derived views -------------------------------------------------

    @property
    def lines_by_point(self) -> tuple[tuple[int, ...], ...]:
        """For each point, the indices of the stored lines through it."""
        if self._lines_by_point is None:
            by = [[] for _ in range(self.n)]
            for i, ln in enumerate(self.lines):
                for p in ln:
                    by[p].append(i)
            self._lines_by_point = tuple(tuple(b) for b in by)
        return self._lines_by_point

    def line_through(self, a: int, b: int) -> tuple[int, ...] | None:
        """The stored line on the pair, or None if the pair is trivial."""
        return self._pair_line.get((a, b) if a < b else (b, a))

    def triples(self) -> Iterator[tuple[int, int, int]]:
        """All R-triples (sorted), one per collinear 3-subset."""
        for ln in self.lines:
            yield from combinations(ln, 3)

    def points(self) -> range:
        return range(self.n)

    def full_mask(self) -> int:
        return (1 << self.n) - 1

    # -- equality ------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LinearSpace)
            and self.n == other.n
            and self.lines == other.lines
        )

    def __hash__(self) -> int:
        return hash((self.n, self.lines))

    def __repr__(self) -> str:
        return f"LinearSpace(n={self.n}, lines={len(self.lines)})"


def validate(n: int, triples: Iterable[Sequence[int]]) -> LinearSpace:
    """Build a LinearSpace from raw collinearity triples.

    The triples must close under the linear-space axiom: for each pair
    {a,b} occurring in some triple, {a,b} together with all its R-partners
    must form a clique in the triple set.
    """
    tset = set()
    for t in triples:
        t = tuple(sorted(t))
        if len(set(t)) != 3:
            raise ValueError(f"triple {t} does not have 3 distinct points")
        if t[0] < 0 or t[2] >= n:
            raise ValueError(f"triple {t} out of range for {n} points")
        tset.add(t)
    partners: dict[tuple[int, int], set[int]] = {}
    for a, b, c in tset:
        partners.setdefault((a, b), set()).add(c)
        partners.setdefault((a, c), set()).add(b)
        partners.setdefault((b, c), set()).add(a)
    lines = set()
    for (a, b), rest in partners.items():
        clique = tuple(sorted({a, b} | rest))
        for sub in combinations(clique, 3):
            if sub not in tset:
                raise AxiomViolation((a, b), sorted(rest), f"clique {clique} misses triple {sub}")
        lines.add(clique)
    # keep only maximal cliques: a pair's clique is maximal by construction,
    # but cliques generated from different pairs of one line coincide
    return LinearSpace(n, lines)


def lines_based_in(space: LinearSpace, B: Iterable[int]) -> list[tuple[int, ...]]:
    """Stored lines meeting B in at least 2 points."""
    bm = mask_of(B)
    if bm >> space.n:
        raise ValueError("point out of range")
    return [
        ln
        for ln, lm in zip(space.lines, space.line_masks)
        if (lm & bm).bit_count() >= 2
    ]


def delta_mask(space: LinearSpace, mask: int) -> int:
    d = mask.bit_count()
    for lm in space.line_masks:
        k = (lm & mask).bit_count()
        if k >= 3:
            d -= k - 2
    return d


def delta(space: LinearSpace, S: Iterable[int]) -> int:
    """Predimension of the induced substructure on S: points minus total
    line nullity, where an induced line needs >= 3 points of S."""
    m = mask_of(S)
    if m >> space.n:
        raise ValueError("point out of range")
    return delta_mask(space, m)


def delta_rel(space: LinearSpace, X: Iterable[int], B: Iterable[int]) -> int:
    """delta(X over B) = delta(X u B) - delta(B); X and B must be disjoint."""
    xm, bm = mask_of(X), mask_of(B)
    if xm & bm:
        raise ValueError(f"X and B overlap in {points_of(xm & bm)}")
    if (xm | bm) >> space.n:
        raise ValueError("point out of range")
    return delta_mask(space, xm | bm) - delta_mask(space, bm)


def induced(space: LinearSpace, S: Iterable[int]) -> LinearSpace:
    """Substructure on S, points relabeled 0..|S|-1 order-preservingly."""
    pts = sorted(set(S))
    if pts and (pts[0] < 0 or pts[-1] >= space.n):
        raise ValueError("point out of range")
    relabel = {p: i for i, p in enumerate(pts)}
    sm = mask_of(pts)
    new_lines = []
    for ln, lm in zip(space.lines, space.line_masks):
        if (lm & sm).bit_count() >= 3:
            new_lines.append(tuple(relabel[p] for p in ln if p in relabel))
    return LinearSpace(len(pts), new_lines)


def pair_coverage(space: LinearSpace) -> float:
    """Fraction of point pairs lying on a stored line."""
    total = space.n * (space.n - 1) // 2
    if total == 0:
        return 0.0
    covered = sum(len(ln) * (len(ln) - 1) // 2 for ln in space.lines)
    return covered / total


# -- ls-v1 text format -------------------------------------------------

LS_V1_HEADER = "linear-space v1"


def to_ls_v1(space: LinearSpace) -> str:
    out = [LS_V1_HEADER, f"points {space.n}"]
    for ln in space.lines:
        out.append("line " + " ".join(str(p) for p in ln))
    return "\n".join(out) + "\n"


def _content_lines(text: str) -> Iterator[tuple[int, str]]:
    for i, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            yield i, stripped


def parse_ls_v1(text: str) -> LinearSpace:
    it = _content_lines(text)
    try:
        lineno, header = next(it)
    except StopIteration:
        raise FormatError(0, "empty input") from None
    if header != LS_V1_HEADER:
        raise FormatError(lineno, f"expected '{LS_V1_HEADER}', got '{header}'")
    try:
        lineno, pts = next(it)
    except StopIteration:
        raise FormatError(lineno, "missing 'points N' line") from None
    parts = pts.split()
    if len(parts) != 2 or parts[0] != "points" or not parts[1].isdigit():
        raise FormatError(lineno, f"expected 'points N', got '{pts}'")
    n = int(parts[1])
    lines = []
    seen = set()
    for lineno, row in it:
        parts = row.split()
        if parts[0] != "line":
            raise FormatError(lineno, f"expected 'line ...', got '{row}'")
        try:
            ids = [int(x) for x in parts[1:]]
        except ValueError:
            raise FormatError(lineno, f"non-integer point id in '{row}'") from None
        if len(ids) < 3:
            raise FormatError(lineno, "a line needs at least 3 points")
        if any(a >= b for a, b in zip(ids, ids[1:])):
            raise FormatError(lineno, "point ids must be strictly increasing")
        if ids[0] < 0 or ids[-1] >= n:
            raise FormatError(lineno, f"point id out of range 0..{n - 1}")
        key = tuple(ids)
        if key in seen:
            raise FormatError(lineno, f"duplicate line {key}")
        seen.add(key)
        lines.append(key)
    try:
        return LinearSpace(n, lines)
    except AxiomViolation as exc:
        raise FormatError(0, str(exc)) from exc
