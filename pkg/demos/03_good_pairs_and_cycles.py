"""Good pairs, canonical codes, and the cycle configurations.

A good pair (B, C) is a 0-primitive extension with base-minimal B; its
isomorphism type is a canonical string that keys the mu caps.  The
cycles C_k supply infinitely many distinct types over a 2-point base.
"""

from steinergeom import (
    D_k,
    LinearSpace,
    alpha_pair,
    bases_of,
    canonical_code,
    chi,
    cycle_Ck,
    delta,
    enumerate_good_pairs,
    fano,
)

# alpha: one new point on an existing line
a = alpha_pair()
print(f"alpha pair: base {sorted(a.base)}, ext {sorted(a.ext)}, code {a.code!r}")

# the cycle C_2: 10 points, 8 alternating lines through a and b
ck = cycle_Ck(2)
print(f"\nC_2: {ck.space.n} points, {len(ck.space.lines)} lines, "
      f"delta = {delta(ck.space, range(ck.space.n))}")
print(f"its unique base: {bases_of(ck.space, (0, 1), range(2, ck.space.n))}")
print(f"code: {ck.code!r}")

# completing C_1 with a point on ab gives D_1, a copy of the Fano plane
d1 = D_k(1)
print(f"\nD_1 code == Fano code: "
      f"{canonical_code(d1.space, []) == canonical_code(fano(), [])}")

# chi counts disjoint copies over an embedded base
line5 = LinearSpace(5, [(0, 1, 2, 3, 4)])
print(f"\nchi(alpha) on a 5-point line over (0, 1): "
      f"{chi(line5, a, {0: 0, 1: 1})}")

# enumeration finds every good pair inside a structure
pairs = enumerate_good_pairs(fano(), 7)
codes = sorted({gp.code[:12] for gp, _ in pairs})
print(f"\ngood pairs inside the Fano plane: {len(pairs)}; code prefixes {codes}")
