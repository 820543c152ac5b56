import pytest
from itertools import combinations, permutations
from random import Random

from steinergeom import (
    ALPHA_CODE,
    FormatError,
    GoodPair,
    LinearSpace,
    NotStrong,
    NotZeroPrimitive,
    SizeLimit,
    alpha_pair,
    bases_of,
    canonical_code,
    chi,
    chi_greedy,
    copies_over_base,
    cycle_Ck,
    decompose,
    delta,
    enumerate_good_pairs,
    fano,
    fano_chain,
    is_good_pair,
    is_primitive,
    parse_gp_v1,
    random_k0,
    random_space,
    to_gp_v1,
)
from oracle import chi_oracle, copies_oracle, good_pair_oracle


def test_is_primitive_cycle():
    ck = cycle_Ck(2).space
    assert is_primitive(ck, [0, 1])


def test_is_primitive_two_independent_steps():
    # two points on separate lines based in B: either one is intermediate
    space = LinearSpace(6, [(0, 1, 4), (2, 3, 5)])
    assert not is_primitive(space, [0, 1, 2, 3])


def test_is_primitive_single_point():
    space = LinearSpace(3, [])
    assert is_primitive(space, [0, 1])


def test_is_primitive_requires_strong_base():
    f = fano()
    with pytest.raises(NotStrong):
        is_primitive(f, [0])


def test_is_good_pair_examples():
    assert is_good_pair(fano(), [], range(7))
    assert is_good_pair(LinearSpace(3, [(0, 1, 2)]), [0, 1], [2])
    ck = cycle_Ck(1)
    assert is_good_pair(ck.space, sorted(ck.base), sorted(ck.ext))


def test_is_good_pair_rejects_oversized_base():
    # an idle extra base point breaks base minimality
    space = LinearSpace(4, [(0, 1, 3)])
    assert not is_good_pair(space, [0, 1, 2], [3])


def test_is_good_pair_vs_oracle():
    rng = Random(31)
    hits = 0
    for _ in range(40):
        n = rng.randrange(4, 8)
        M = random_space(rng, n)
        pts = list(range(n))
        for size in range(2, n + 1):
            for sub in combinations(pts, size):
                for r in range(size):
                    for b in combinations(sub, r):
                        C = [p for p in sub if p not in b]
                        got = is_good_pair(M, list(b), C)
                        want = good_pair_oracle(M, set(b), set(C))
                        assert got == want, (M.lines, b, C)
                        hits += got
    assert hits > 0


def test_bases_of_line_case():
    line4 = LinearSpace(5, [(0, 1, 2, 3, 4)])
    got = bases_of(line4, [0, 1, 2, 3], [4])
    assert sorted(map(sorted, got)) == [list(p) for p in combinations(range(4), 2)]


def test_bases_of_cycle_and_fano():
    ck = cycle_Ck(2)
    assert bases_of(ck.space, sorted(ck.base), sorted(ck.ext)) == [frozenset({0, 1})]
    assert bases_of(fano(), [], range(7)) == [frozenset()]


def test_bases_of_rejects_non_primitive():
    space = LinearSpace(6, [(0, 1, 4), (2, 3, 5)])
    with pytest.raises(NotZeroPrimitive):
        bases_of(space, [0, 1, 2, 3], [4, 5])


def test_alpha_code_fixed():
    assert alpha_pair().code == ALPHA_CODE
    assert canonical_code(LinearSpace(3, [(0, 1, 2)]), [0, 2]) == ALPHA_CODE


def test_codes_distinguish_cycles():
    codes = {cycle_Ck(k).code for k in range(1, 4)}
    assert len(codes) == 3


def test_code_invariant_under_relabeling():
    gp = cycle_Ck(1)
    n = gp.space.n
    want = gp.code
    rng = Random(32)
    perms = [rng.sample(range(n), n) for _ in range(40)]
    for perm in perms:
        lines = [tuple(sorted(perm[p] for p in ln)) for ln in gp.space.lines]
        base = [perm[p] for p in gp.base]
        assert canonical_code(LinearSpace(n, lines), base) == want


def test_code_invariant_exhaustively_small():
    space = LinearSpace(5, [(0, 1, 2), (0, 3, 4)])
    base = [0, 1, 3]
    want = canonical_code(space, base)
    for perm in permutations(range(5)):
        lines = [tuple(sorted(perm[p] for p in ln)) for ln in space.lines]
        assert canonical_code(LinearSpace(5, lines), [perm[p] for p in base]) == want


def test_code_separates_base_choices():
    space = LinearSpace(3, [(0, 1, 2)])
    assert canonical_code(space, [0, 1]) != canonical_code(space, [0])


def test_code_size_limit():
    with pytest.raises(SizeLimit):
        canonical_code(LinearSpace(20, []), [])


def test_good_pair_constructor_checks():
    with pytest.raises(NotZeroPrimitive):
        GoodPair(LinearSpace(4, []), (0, 1))
    with pytest.raises(ValueError):
        GoodPair(LinearSpace(3, [(0, 1, 2)]), (0, 1, 2))


def test_chi_examples():
    line4 = LinearSpace(4, [(0, 1, 2, 3)])
    a = alpha_pair()
    assert chi(line4, a, {0: 0, 1: 1}) == 2
    assert chi(fano(), a, {0: 0, 1: 1}) == 1
    assert chi(LinearSpace(4, []), a, {0: 0, 1: 1}) == 0


def test_chi_greedy_bounds_chi():
    rng = Random(33)
    a = alpha_pair()
    for _ in range(50):
        M = random_space(rng, rng.randrange(4, 9))
        pair = rng.sample(range(M.n), 2)
        ln = M.line_through(*pair)
        if ln is None:
            continue
        emb = {0: pair[0], 1: pair[1]}
        assert chi_greedy(M, a, emb) <= chi(M, a, emb)


def test_chi_vs_oracle():
    rng = Random(34)
    a = alpha_pair()
    checked = 0
    for _ in range(60):
        M = random_space(rng, rng.randrange(4, 9))
        pair = sorted(rng.sample(range(M.n), 2))
        if M.line_through(*pair) is None:
            continue
        emb = {0: pair[0], 1: pair[1]}
        assert chi(M, a, emb) == chi_oracle(M, a.space, a.base, emb)
        checked += 1
    assert checked > 10


def test_copies_vs_oracle_on_cycle_pair():
    gp = cycle_Ck(1)
    M = gp.space
    emb = {0: 0, 1: 1}
    got = set(copies_over_base(M, gp.space, gp.base, emb))
    assert got == copies_oracle(M, gp.space, gp.base, emb)


def test_copies_validates_embedding():
    a = alpha_pair()
    with pytest.raises(ValueError):
        copies_over_base(LinearSpace(4, []), a.space, a.base, {0: 0, 1: 0})


def test_enumerate_single_line():
    M = LinearSpace(3, [(0, 1, 2)])
    out = enumerate_good_pairs(M, 3)
    assert len(out) == 3
    assert all(gp.code == ALPHA_CODE for gp, _ in out)
    assert {emb[2] for _, emb in out} == {0, 1, 2}


def test_enumerate_relation_free():
    assert enumerate_good_pairs(LinearSpace(5, []), 5) == []


def test_enumerate_fano_includes_empty_base_pair():
    out = enumerate_good_pairs(fano(), 7)
    fano_code = canonical_code(fano(), [])
    assert any(gp.code == fano_code and not gp.base for gp, _ in out)


def test_enumerate_matches_oracle_sets():
    rng = Random(35)
    for _ in range(12):
        n = rng.randrange(4, 8)
        M = random_space(rng, n)
        got = {
            (
                frozenset(emb[b] for b in gp.base),
                frozenset(emb[c] for c in gp.ext),
            )
            for gp, emb in enumerate_good_pairs(M, n)
        }
        want = set()
        for size in range(1, n + 1):
            for sub in combinations(range(n), size):
                for r in range(size):
                    for b in combinations(sub, r):
                        C = frozenset(sub) - frozenset(b)
                        if good_pair_oracle(M, set(b), set(C)):
                            want.add((frozenset(b), C))
        assert got == want, M.lines


def test_enumerate_touching_is_consistent():
    rng = Random(36)
    for _ in range(10):
        n = rng.randrange(5, 9)
        M = random_space(rng, n)
        full = {
            (frozenset(emb[b] for b in gp.base), frozenset(emb[c] for c in gp.ext))
            for gp, emb in enumerate_good_pairs(M, n)
        }
        pts = frozenset(rng.sample(range(n), 2))
        part = {
            (frozenset(emb[b] for b in gp.base), frozenset(emb[c] for c in gp.ext))
            for gp, emb in enumerate_good_pairs(M, n, touching=pts)
        }
        want = {(b, c) for b, c in full if (b | c) & pts}
        assert part == want


def test_decompose_free_point():
    M = LinearSpace(3, [(0, 1, 2)])
    M2 = LinearSpace(4, [(0, 1, 2)])
    steps = decompose(M2, range(3))
    assert steps == [(frozenset(range(4)), 1)]
    assert M.n == 3


def test_decompose_cycle_single_zero_step():
    ck = cycle_Ck(2).space
    steps = decompose(ck, [0, 1])
    assert steps == [(frozenset(range(ck.n)), 0)]


def test_decompose_chain_step():
    chain = fano_chain(1)
    steps = decompose(chain[1], range(7))
    assert steps == [(frozenset(range(10)), 0)]


def test_decompose_requires_strong():
    with pytest.raises(NotStrong):
        decompose(fano(), [0])


def test_decompose_steps_are_strong_chain():
    rng = Random(37)
    for _ in range(30):
        M = random_k0(rng, rng.randrange(4, 9))
        from steinergeom import is_strong, random_strong_subset

        D = random_strong_subset(rng, M)
        cur = set(D)
        total = 0
        for nxt, inc in decompose(M, D):
            assert cur < nxt
            assert is_strong(M, cur, nxt).ok
            assert delta(M, nxt) - delta(M, cur) == inc
            assert inc in (0, 1) or len(nxt - cur) == 1
            cur = set(nxt)
            total += 1
        assert cur == set(range(M.n))


def test_gp_v1_roundtrip():
    gp = cycle_Ck(1)
    space, base = parse_gp_v1(to_gp_v1(gp.space, gp.base))
    assert space == gp.space and base == gp.base
    space, base = parse_gp_v1(to_gp_v1(fano(), []))
    assert space == fano() and base == frozenset()


@pytest.mark.parametrize(
    "text",
    [
        "linear-space v1\npoints 3\nline 0 1 2\n",
        "linear-space v1\npoints 3\nline 0 1 2\nbase x\n",
        "linear-space v1\npoints 3\nline 0 1 2\nbase 9\n",
    ],
)
def test_gp_v1_errors(text):
    with pytest.raises(FormatError):
        parse_gp_v1(text)
