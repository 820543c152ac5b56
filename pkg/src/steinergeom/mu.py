"""Finitely represented mu functions and the bounded K_mu check.

A mu function caps, for each good-pair isomorphism type, how many
disjoint copies of the extension may sit over one base.  The alpha value
is distinguished: mu(alpha) + 2 is the line length of the limiting
Steiner system.  Types not listed fall back to the default policy
max(delta(B), 1), the smallest legal bound.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterable, Optional

from .errors import FormatError
from .primitives import (
    ALPHA_CODE,
    GoodPair,
    _max_disjoint,
    copies_over_base,
    enumerate_good_pairs,
)
from .space import LinearSpace, delta_mask, mask_of

DEFAULT_POLICY = "max-delta-base-or-1"


def decode_code(code: str) -> tuple[LinearSpace, frozenset[int]]:
    """Rebuild the (space, base) normal form a canonical code encodes."""
    if code == ALPHA_CODE:
        return LinearSpace(3, [(0, 1, 2)]), frozenset((0, 1))
    if not code.startswith("gp"):
        raise ValueError(f"not a canonical code: {code!r}")
    head, _, body = code.partition("|")
    nb_s, _, nc_s = head[2:].partition(".")
    try:
        nb, nc = int(nb_s), int(nc_s)
        lines = [tuple(int(x) for x in part.split(",")) for part in body.split("|")] if body else []
    except ValueError:
        raise ValueError(f"malformed canonical code: {code!r}") from None
    return LinearSpace(nb + nc, lines), frozenset(range(nb))


class MuFunction:
    """alpha value, per-code overrides, and the default policy."""

    __slots__ = ("alpha_value", "overrides", "default_policy")

    def __init__(
        self,
        alpha_value: int = 1,
        overrides: Optional[dict[str, int]] = None,
        default_policy: str = DEFAULT_POLICY,
    ):
        if default_policy != DEFAULT_POLICY:
            raise ValueError(f"unknown default policy {default_policy!r}")
        self.alpha_value = int(alpha_value)
        self.overrides = dict(overrides or {})
        self.default_policy = default_policy

    def line_length(self) -> int:
        """Target length of every nontrivial line: mu(alpha) + 2."""
        return self.alpha_value + 2

    def value(self, code: str) -> int:
        if code == ALPHA_CODE:
            return self.alpha_value
        if code in self.overrides:
            return self.overrides[code]
        space, base = decode_code(code)
        return max(delta_mask(space, mask_of(base)), 1)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MuFunction)
            and self.alpha_value == other.alpha_value
            and self.overrides == other.overrides
        )

    def __repr__(self) -> str:
        return f"MuFunction(alpha={self.alpha_value}, overrides={len(self.overrides)})"


def validate_mu(mu: MuFunction) -> tuple[bool, list[str]]:
    """Check the lower-bound constraints; returns (ok, reasons)."""
    reasons = []
    if mu.alpha_value < 1:
        reasons.append(f"alpha value {mu.alpha_value} < 1")
    for code, val in sorted(mu.overrides.items()):
        space, base = decode_code(code)
        ext = frozenset(range(space.n)) - base
        if len(ext) >= 2:
            db = delta_mask(space, mask_of(base))
            if val < db:
                reasons.append(f"mu({code}) = {val} < delta(B) = {db}")
        elif val < 1:
            reasons.append(f"mu({code}) = {val} < 1 for a single-point extension")
    return not reasons, reasons


def in_K_mu_bounded(
    M: LinearSpace,
    mu: MuFunction,
    bound: int,
    *,
    touching: Iterable[int] = (),
) -> tuple[bool, list[tuple[str, tuple[int, ...], int, int]]]:
    """Whether no good pair of size <= bound exceeds its mu cap.

    Violations are (code, base image, chi, mu value).  Alpha is read off
    line lengths; larger pairs are enumerated, grouped by (code, base
    image), and chi is the exact maximum disjoint-copy packing over that
    base.  With `touching`, only groups whose pairs meet those points
    are re-examined (sound for incremental rechecks: any new violation
    involves a pair through a new point).
    """
    want = frozenset(touching)
    violations: list[tuple[str, tuple[int, ...], int, int]] = []
    max_len = mu.line_length()
    for ln in M.lines:
        if want and not want.intersection(ln):
            continue
        if len(ln) > max_len:
            violations.append((ALPHA_CODE, (ln[0], ln[1]), len(ln) - 2, mu.alpha_value))

    groups = _copy_groups(M, bound, want)
    for (code, base_img), copies in sorted(groups.items(), key=lambda kv: (kv[0][0], sorted(kv[0][1]))):
        cap = mu.value(code)
        chi_val = _max_disjoint(sorted(copies, key=sorted))
        if chi_val > cap:
            violations.append((code, tuple(sorted(base_img)), chi_val, cap))
    return not violations, violations


def _copy_groups(
    M: LinearSpace,
    bound: int,
    want: frozenset[int],
) -> dict[tuple[str, frozenset[int]], set[frozenset[int]]]:
    """Extension images per (code, base image) among good pairs of size
    <= bound, excluding alpha.

    Every copy over a base is itself a good pair with the same code and
    base image, so one enumeration pass collects complete copy lists.
    In incremental mode a second pass seeded at the touched base images
    also recovers copies that predate the touched points.
    """
    if not want:
        # the grouping is independent of mu, so checking one structure
        # under several mu functions reuses a single enumeration
        return _copy_groups_full(M, bound)
    reps: dict[tuple[str, frozenset[int]], GoodPair] = {}

    def collect(pairs):
        out: dict[tuple[str, frozenset[int]], set[frozenset[int]]] = {}
        for gp, emb in pairs:
            if gp.code == ALPHA_CODE:
                continue
            key = (gp.code, frozenset(emb[b] for b in gp.base))
            out.setdefault(key, set()).add(frozenset(emb[c] for c in gp.ext))
            reps.setdefault(key, gp)
        return out

    groups = collect(enumerate_good_pairs(M, bound, touching=want))
    base_pts = set().union(*(img for _c, img in groups)) if groups else set()
    if not base_pts <= want:
        full = collect(enumerate_good_pairs(M, bound, touching=want | base_pts))
        groups = {k: full[k] for k in groups}
    # copies over an empty base are unconstrained in location, so the
    # seeded passes can miss old ones; fall back to a global search
    for key in groups:
        code, img = key
        if not img:
            gp = reps[key]
            groups[key] = set(copies_over_base(M, gp.space, gp.base, {}))
    return groups


@lru_cache(maxsize=8)
def _copy_groups_full(
    M: LinearSpace, bound: int
) -> dict[tuple[str, frozenset[int]], set[frozenset[int]]]:
    out: dict[tuple[str, frozenset[int]], set[frozenset[int]]] = {}
    for gp, emb in enumerate_good_pairs(M, bound):
        if gp.code == ALPHA_CODE:
            continue
        key = (gp.code, frozenset(emb[b] for b in gp.base))
        out.setdefault(key, set()).add(frozenset(emb[c] for c in gp.ext))
    return out


def mu_X(X: Iterable[int], alpha_value: int = 1) -> MuFunction:
    """mu giving cycle type gamma_k the cap 3 when k is in X; other
    cycle types keep the default 2 = delta({a,b})."""
    from .gallery import cycle_Ck

    overrides = {cycle_Ck(k).code: 3 for k in sorted(set(X))}
    return MuFunction(alpha_value, overrides)


# -- mu-v1 text format -------------------------------------------------

def to_mu_v1(mu: MuFunction) -> str:
    out = [f"alpha {mu.alpha_value}"]
    for code, val in sorted(mu.overrides.items()):
        out.append(f"pair {code} {val}")
    out.append(f"default {mu.default_policy}")
    return "\n".join(out) + "\n"


def parse_mu_v1(text: str) -> MuFunction:
    alpha: Optional[int] = None
    overrides: dict[str, int] = {}
    policy = DEFAULT_POLICY
    for lineno, raw in enumerate(text.splitlines(), start=1):
        row = raw.split("#", 1)[0].strip()
        if not row:
            continue
        parts = row.split()
        if parts[0] == "alpha" and len(parts) == 2:
            try:
                alpha = int(parts[1])
            except ValueError:
                raise FormatError(lineno, f"bad alpha value {parts[1]!r}") from None
        elif parts[0] == "pair" and len(parts) == 3:
            try:
                overrides[parts[1]] = int(parts[2])
            except ValueError:
                raise FormatError(lineno, f"bad pair value {parts[2]!r}") from None
            try:
                decode_code(parts[1])
            except ValueError as exc:
                raise FormatError(lineno, str(exc)) from None
        elif parts[0] == "default" and len(parts) == 2:
            policy = parts[1]
        else:
            raise FormatError(lineno, f"unrecognized row {row!r}")
    if alpha is None:
        raise FormatError(0, "missing 'alpha N' row")
    try:
        return MuFunction(alpha, overrides, policy)
    except ValueError as exc:
        raise FormatError(0, str(exc)) from exc
