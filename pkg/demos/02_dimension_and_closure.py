"""Strong subsets, intrinsic closure, and the dimension function.

A subset is strong when no intermediate set drops delta below it; the
intrinsic closure is the least strong superset, and d(X) is the minimum
delta over supersets of X.  d-closure satisfies the exchange axiom, so
it defines a pregeometry.
"""

from steinergeom import (
    LinearSpace,
    check_exchange,
    check_flatness,
    d,
    d_closure,
    delta,
    fano,
    icl,
    in_K0,
    is_strong,
)

f = fano()

# one point of the Fano plane is far from strong: the whole plane has
# delta 0 while the point alone has delta 1
w = is_strong(f, [0], range(7))
print(f"is [0] strong in Fano? {w.ok}; violating subset: {sorted(w.violating)}")
print(f"icl of [0] is everything: {sorted(icl(f, [0]))}")
print(f"d([0]) = {d(f, [0])}, d of the whole plane = {d(f, range(7))}")

# d-closure of the empty set swallows the plane
print(f"d-closure of [] = {sorted(d_closure(f, []))}")

# a free space has trivial closure
free = LinearSpace(5, [])
print(f"\nfree space: d_closure([0, 1]) = {sorted(d_closure(free, [0, 1]))}")
print(f"in K_0: {in_K0(free)[0]}")

# flatness: delta of a union is bounded by inclusion-exclusion
ok, _ = check_flatness(f, [[0, 1, 2], [0, 3, 4]], mode="delta")
print(f"\nflatness on two Fano lines: {ok}")

# the exchange axiom holds for d-closure
print(f"exchange axiom on the Fano plane: {check_exchange(f)[0]}")
