"""Free amalgamation and the amalgamate-or-identify procedure.

The free amalgam of F and E over a shared strong part D glues the two
structures along D and merges lines across the sides exactly when they
are based in D (share two D-points); nothing else becomes collinear.
amalgamate_or_identify then either accepts the free amalgam (it passes
the bounded K_mu check) or locates a copy of the offending extension
step inside F and identifies instead, one primitive step at a time.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Optional

from .dimension import min_delta_interval
from .errors import BaseMismatch, BoundTooSmall, NotStrong
from .space import LinearSpace, delta_mask, induced, mask_of, points_of
from .primitives import copies_over_base, decompose


def _glue(
    F: LinearSpace,
    E: LinearSpace,
    e_to_f: dict[int, int],
) -> tuple[LinearSpace, dict[int, int]]:
    """Free amalgam of F and E along the partial map e_to_f (the D part).

    Returns (G, full map of E into G); F keeps its point ids, new E
    points get F.n, F.n+1, ... in E-id order.
    """
    d_in_e = sorted(e_to_f)
    d_in_f = [e_to_f[p] for p in d_in_e]
    if len(set(d_in_f)) != len(d_in_f):
        raise BaseMismatch("shared-part map is not injective")
    sub_f = induced(F, sorted(d_in_f))
    rank_f = {p: i for i, p in enumerate(sorted(d_in_f))}
    # relabel E's copy of D in the order of the F-side ids so the two
    # induced structures are literally comparable
    sub_e = induced(E, d_in_e)
    rel = {i: rank_f[e_to_f[p]] for i, p in enumerate(d_in_e)}
    perm_lines = []
    for ln in sub_e.lines:
        perm_lines.append(tuple(sorted(rel[i] for i in ln)))
    if LinearSpace(sub_e.n, perm_lines) != sub_f:
        raise BaseMismatch("shared part differs between the two sides")

    emap = dict(e_to_f)
    nxt = F.n
    for p in range(E.n):
        if p not in emap:
            emap[p] = nxt
            nxt += 1

    f_line_index = {ln: i for i, ln in enumerate(F.lines)}
    merged = [set(ln) for ln in F.lines]
    extra = []
    dset = set(d_in_e)
    for ln in E.lines:
        mapped = sorted(emap[p] for p in ln)
        trace = [p for p in ln if p in dset]
        target = None
        if len(trace) >= 2:
            fl = F.line_through(e_to_f[trace[0]], e_to_f[trace[1]])
            if fl is not None:
                target = f_line_index[fl]
        if target is None:
            extra.append(tuple(mapped))
        else:
            merged[target].update(mapped)
    G = LinearSpace(nxt, [tuple(sorted(s)) for s in merged] + extra)
    return G, emap


def free_amalgam(
    F: LinearSpace,
    E: LinearSpace,
    D: Iterable[int],
    *,
    return_embedding: bool = False,
):
    """F + E glued over the common point set D (same ids on both sides).

    D must be strong in E; the shared induced structures must agree.
    delta is additive: delta(G) = delta(F) + delta(E) - delta(D).
    """
    d = sorted(set(D))
    dm = mask_of(d)
    if dm >> min(F.n, E.n):
        raise ValueError("shared point out of range")
    if min_delta_interval(E, dm, E.full_mask()) < delta_mask(E, dm):
        raise NotStrong(d, range(E.n))
    G, emap = _glue(F, E, {p: p for p in d})
    return (G, emap) if return_embedding else G


@dataclass
class AmalgamResult:
    """Outcome of amalgamate-or-identify.

    outcome is "free" when at least one decomposition step extended F,
    "identified" when every step mapped into the existing structure.
    e_embedding carries E's points into `structure` fixing D; violations
    lists (code, chi, bound cap) for each rejected free step.
    """

    outcome: str
    structure: LinearSpace
    e_embedding: dict[int, int]
    violations: list[tuple[str, int, int]] = field(default_factory=list)


def amalgamate_or_identify(
    F: LinearSpace,
    E: LinearSpace,
    D: Iterable[int],
    mu,
    bound: int,
    *,
    precheck: bool = True,
) -> AmalgamResult:
    """Embed E into an extension of F over D, collapsing when the free
    amalgam would break a mu cap.

    D <= E is decomposed into primitive steps; each step is freely
    amalgamated and kept if the bounded K_mu check passes, otherwise the
    step's extension is identified with its lexicographically least copy
    inside the current structure.  With `precheck`, F and E are first
    verified against mu at the same bound; per-step rechecks then only
    look at pairs touching the new points.
    """
    from .mu import in_K_mu_bounded

    d = sorted(set(D))
    if precheck:
        ok, viols = in_K_mu_bounded(E, mu, bound)
        if not ok:
            raise ValueError(f"E fails the bounded mu check: {viols}")
        ok, viols = in_K_mu_bounded(F, mu, bound)
        if not ok:
            raise ValueError(f"F fails the bounded mu check: {viols}")
    steps = decompose(E, d)
    cur = F
    emb = {p: p for p in d}
    violations: list[tuple[str, int, int]] = []
    grew = False
    for x_set, _inc in steps:
        step_pts = sorted(x_set)
        if len(step_pts) > bound:
            raise BoundTooSmall(bound, f"primitive step has {len(step_pts)} points > bound {bound}")
        rel = {p: i for i, p in enumerate(step_pts)}
        step_space = induced(E, step_pts)
        base_idx = [rel[p] for p in step_pts if p in emb]
        base_map = {rel[p]: emb[p] for p in step_pts if p in emb}
        candidate, cmap = _glue(cur, step_space, base_map)
        new_pts = sorted(set(cmap.values()) - set(base_map.values()))
        ok, viols = in_K_mu_bounded(candidate, mu, bound, touching=new_pts)
        if ok:
            cur = candidate
            grew = True
            for p in step_pts:
                emb[p] = cmap[rel[p]]
            continue
        violations.extend((code, chi_val, cap) for code, _b, chi_val, cap in viols)
        copies = _step_embeddings(cur, step_space, base_idx, base_map)
        if not copies:
            raise BoundTooSmall(
                bound, "free amalgam rejected but no copy of the step exists to identify with"
            )
        least = copies[0]
        for p in step_pts:
            if p not in emb:
                emb[p] = least[rel[p]]
    return AmalgamResult(
        outcome="free" if grew else "identified",
        structure=cur,
        e_embedding=emb,
        violations=violations,
    )


def _step_embeddings(
    M: LinearSpace,
    pair_space: LinearSpace,
    base: list[int],
    base_map: dict[int, int],
) -> list[dict[int, int]]:
    """All induced embeddings of pair_space into M extending base_map,
    sorted by the image sequence of the extension points."""
    ext = sorted(set(range(pair_space.n)) - set(base))
    images = copies_over_base(M, pair_space, base, base_map)
    out = []
    for img in images:
        phi = _match(M, pair_space, base_map, ext, img)
        if phi is not None:
            out.append(phi)
    out.sort(key=lambda phi: [phi[x] for x in ext])
    return out


def _match(
    M: LinearSpace,
    pair_space: LinearSpace,
    base_map: dict[int, int],
    ext: list[int],
    image: frozenset[int],
) -> Optional[dict[int, int]]:
    """One concrete embedding of pair_space onto base image u given ext image."""
    phi = dict(base_map)
    avail = sorted(image)

    def consistent(x: int, m: int) -> bool:
        for u, v in combinations(sorted(phi), 2):
            pl = pair_space.line_through(u, v)
            in_pair = pl is not None and x in pl
            ml = M.line_through(phi[u], phi[v])
            if in_pair != (ml is not None and m in ml):
                return False
        return True

    def rec(i: int) -> bool:
        if i == len(ext):
            return True
        x = ext[i]
        for m in avail:
            if m in phi.values():
                continue
            if consistent(x, m):
                phi[x] = m
                if rec(i + 1):
                    return True
                del phi[x]
        return False

    return phi if rec(0) else None
