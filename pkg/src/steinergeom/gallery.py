"""Fixed constructors for the reference structures: the Fano plane, the
(a,b)-cycles C_k and their closures D_k, the Fano chain, and the
two-colored cycle graph of a collinear pair.

Labelings are frozen (a = 0, b = 1, c_i = i + 1, ...) so serializations
and canonical codes are reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PairNotOnTriple
from .primitives import GoodPair
from .space import LinearSpace

FANO_LINES = ((0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5))

# largest size at which GoodPair construction re-verifies goodness;
# beyond it the table-based checks would not fit, so we trust the formulas
_CHECK_LIMIT = 22


def fano() -> LinearSpace:
    """The 7-point projective plane."""
    return LinearSpace(7, FANO_LINES)


def _cycle_lines(k: int) -> list[tuple[int, int, int]]:
    # a = 0, b = 1, c_i = i + 1 for i = 1..4k
    def c(i: int) -> int:
        return i + 1

    lines = []
    for n in range(2 * k):
        lines.append((0, c(2 * n + 1), c(2 * n + 2)))
    for n in range(1, 2 * k):
        lines.append((1, c(2 * n), c(2 * n + 1)))
    lines.append((1, c(1), c(4 * k)))
    return lines


def cycle_Ck(k: int) -> GoodPair:
    """The (a,b)-cycle pair: base {a,b}, 4k extension points, 4k lines."""
    if k < 1:
        raise ValueError("k must be >= 1")
    n = 4 * k + 2
    space = LinearSpace(n, _cycle_lines(k))
    return GoodPair(space, (0, 1), check=n <= _CHECK_LIMIT, code_limit=n)


def D_k(k: int) -> GoodPair:
    """The cycle C_k completed by a point c on line ab; good over the
    empty set, with delta 0 (4k+3 points and lines)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    n = 4 * k + 3
    c_new = n - 1

    def c(i: int) -> int:
        return i + 1

    lines = _cycle_lines(k)
    lines.append((0, 1, c_new))
    lines.append(tuple(sorted((c_new, c(1), c(2 * k + 1)))))
    lines.append(tuple(sorted((c_new, c(k + 1), c(3 * k + 1)))))
    space = LinearSpace(n, lines)
    return GoodPair(space, (), check=n <= _CHECK_LIMIT, code_limit=n)


# triangle vertices of the standard Fano picture under FANO_LINES
_TRIANGLE = (0, 1, 3)


def fano_chain(n: int) -> list[LinearSpace]:
    """Chain A_0 <= A_1 <= ... <= A_n: A_0 the Fano plane, each step
    adding a_{i+1}, b_{i+1}, c_{i+1} collinear with the previous triangle
    so that delta(A_{i+1}/A_i) = 0."""
    if n < 0:
        raise ValueError("n must be >= 0")
    lines = list(FANO_LINES)
    out = [fano()]
    a, b, c = _TRIANGLE
    pts = 7
    for _ in range(n):
        a2, b2, c2 = pts, pts + 1, pts + 2
        lines.append(tuple(sorted((a, a2, c2))))
        lines.append(tuple(sorted((b, b2, c2))))
        lines.append(tuple(sorted((a2, b2, c))))
        pts += 3
        out.append(LinearSpace(pts, lines))
        a, b, c = a2, b2, c2
    return out


@dataclass(frozen=True)
class CycleGraph:
    """Two-colored graph on the points off the block (a,b,c): an a-edge
    joins x,y when axy is a block, a b-edge when bxy is."""

    vertices: tuple[int, ...]
    a_edges: frozenset[frozenset[int]]
    b_edges: frozenset[frozenset[int]]


def cycle_graph(M: LinearSpace, a: int, b: int) -> CycleGraph:
    """The diagnostic graph of a pair in a Steiner triple system."""
    for ln in M.lines:
        if len(ln) != 3:
            raise ValueError("cycle graph is defined for 3-point lines only")
    ab = M.line_through(a, b)
    if ab is None:
        raise PairNotOnTriple(f"pair ({a}, {b}) lies on no 3-point line")
    (c,) = [p for p in ab if p not in (a, b)]
    verts = tuple(p for p in range(M.n) if p not in (a, b, c))
    a_edges = set()
    b_edges = set()
    for ln in M.lines:
        if a in ln and ln != ab:
            x, y = [p for p in ln if p != a]
            a_edges.add(frozenset((x, y)))
        if b in ln and ln != ab:
            x, y = [p for p in ln if p != b]
            b_edges.add(frozenset((x, y)))
    return CycleGraph(verts, frozenset(a_edges), frozenset(b_edges))
