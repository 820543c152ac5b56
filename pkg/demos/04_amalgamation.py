"""Free amalgamation and the amalgamate-or-identify step.

The free amalgam of F and E over a shared strong part glues them with
no new collinearity except along lines based in the shared part.  Under
a mu cap, a step that would exceed chi collapses onto an existing copy
instead.
"""

from steinergeom import (
    LinearSpace,
    MuFunction,
    amalgamate_or_identify,
    delta,
    free_amalgam,
    in_K_mu_bounded,
    mu_X,
    to_mu_v1,
)

F = LinearSpace(3, [(0, 1, 2)])
E = LinearSpace(4, [(0, 1, 3)])
G = free_amalgam(F, E, [0, 1])
print(f"free amalgam: {G.n} points, lines {G.lines}")
print(f"delta is additive over the shared part: {delta(G, range(G.n))} "
      f"= {delta(F, range(3))} + {delta(E, range(4))} - {delta(LinearSpace(2, []), range(2))}")

# with mu(alpha) = 1 a 3-line is already full, so a new point on it
# collapses; with mu(alpha) = 2 it extends the line to length 4
E3 = LinearSpace(3, [(0, 1, 2)])
for alpha in (1, 2):
    res = amalgamate_or_identify(F, E3, [0, 1], MuFunction(alpha), 6)
    print(f"\nmu(alpha) = {alpha}: outcome {res.outcome}, "
          f"lines {res.structure.lines}")

# mu functions serialize to a small text format
mu = mu_X([2])
print("\nmu with a raised cap for the C_2 type:")
print(to_mu_v1(mu))

# the bounded membership check reports each violation with its code
line5 = LinearSpace(5, [(0, 1, 2, 3, 4)])
ok, viols = in_K_mu_bounded(line5, MuFunction(1), 5)
print(f"5-point line under mu(alpha) = 1: ok = {ok}, violations = {viols}")
