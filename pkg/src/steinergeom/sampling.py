"""Seeded random linear spaces for property runs.

Structures are grown by rejection: random triples (and occasional line
extensions) are kept only when the linear-space axiom survives, and the
K_0 samplers additionally re-check hereditary nonnegativity after every
accepted change.  Everything is driven by a caller-supplied Random, so
runs replay from their seed.
"""

from __future__ import annotations

from random import Random

from .dimension import in_K0, is_strong
from .errors import AxiomViolation
from .space import LinearSpace


def random_space(rng: Random, n: int, *, tries: int | None = None) -> LinearSpace:
    """A valid linear space on n points; density scales with `tries`."""
    if tries is None:
        tries = 2 * n
    cur = LinearSpace(n, [])
    for _ in range(tries):
        if cur.lines and rng.random() < 0.25:
            # grow an existing line by one point
            ln = rng.choice(cur.lines)
            p = rng.randrange(n)
            if p in ln:
                continue
            cand_lines = [row if row != ln else tuple(sorted(row + (p,))) for row in cur.lines]
        elif n >= 3:
            t = rng.sample(range(n), 3)
            cand_lines = list(cur.lines) + [tuple(sorted(t))]
        else:
            break
        try:
            cur = LinearSpace(n, cand_lines)
        except (AxiomViolation, ValueError):
            continue
    return cur


def random_k0(rng: Random, n: int, *, tries: int | None = None) -> LinearSpace:
    """A random member of K_0: every change is also gated on in_K0."""
    if tries is None:
        tries = 2 * n
    cur = LinearSpace(n, [])
    for _ in range(tries):
        if n < 3:
            break
        t = rng.sample(range(n), 3)
        try:
            cand = LinearSpace(n, list(cur.lines) + [tuple(sorted(t))])
        except (AxiomViolation, ValueError):
            continue
        ok, _ = in_K0(cand)
        if ok:
            cur = cand
    return cur


def random_strong_subset(rng: Random, space: LinearSpace) -> frozenset[int]:
    """A strong subset of a K_0 structure, found by rejection from random
    subsets (the empty set always qualifies)."""
    for _ in range(30):
        size = rng.randrange(space.n + 1)
        D = frozenset(rng.sample(range(space.n), size))
        if is_strong(space, D, range(space.n)).ok:
            return D
    return frozenset()
