"""Linear spaces and the predimension.

A linear space stores its nontrivial lines (3 or more points); any two
points share at most one line.  delta counts points minus the excess of
each line beyond its determining pair.
"""

from steinergeom import LinearSpace, delta, fano, pair_coverage, parse_ls_v1, to_ls_v1

# the Fano plane: 7 points, 7 lines, delta exactly 0
f = fano()
print(f"Fano plane: {f.n} points, {len(f.lines)} lines, delta = {delta(f, range(7))}")
print(f"pair coverage: {pair_coverage(f):.2f} (a projective plane covers every pair)")

# a single 4-point line costs 2: four points, nullity 2
line4 = LinearSpace(4, [(0, 1, 2, 3)])
print(f"\n4-point line: delta = {delta(line4, range(4))}")
print(f"restricted to three of its points: delta = {delta(line4, [0, 1, 2])}")

# the ls-v1 text form round-trips
text = to_ls_v1(f)
print("\nls-v1 serialization of the Fano plane:")
print(text)
assert parse_ls_v1(text) == f

# intersecting lines must share at most one point; the constructor checks
try:
    LinearSpace(4, [(0, 1, 2), (0, 1, 3)])
except Exception as exc:
    print(f"two lines through one pair are rejected: {exc}")
