import pytest
from random import Random

from steinergeom import (
    ALPHA_CODE,
    FormatError,
    LinearSpace,
    MuFunction,
    alpha_pair,
    canonical_code,
    chi,
    cycle_Ck,
    decode_code,
    delta,
    fano,
    free_amalgam,
    in_K_mu_bounded,
    mu_X,
    parse_mu_v1,
    to_mu_v1,
    validate_mu,
)


def test_line_length():
    assert MuFunction(1).line_length() == 3
    assert MuFunction(2).line_length() == 4


def test_default_policy_value():
    mu = MuFunction(1)
    ck = cycle_Ck(1)
    # delta of the 2-point base is 2
    assert mu.value(ck.code) == 2
    assert mu.value(ALPHA_CODE) == 1
    fano_code = canonical_code(fano(), [])
    assert mu.value(fano_code) == 1


def test_overrides_take_precedence():
    ck = cycle_Ck(2)
    mu = MuFunction(1, {ck.code: 5})
    assert mu.value(ck.code) == 5


def test_validate_mu():
    assert validate_mu(MuFunction(1)) == (True, [])
    ok, reasons = validate_mu(MuFunction(0))
    assert not ok and reasons
    ck = cycle_Ck(1)
    ok, reasons = validate_mu(MuFunction(1, {ck.code: 1}))
    assert not ok  # cap below delta(base) = 2
    assert validate_mu(MuFunction(1, {ck.code: 2}))[0]


def test_decode_code_roundtrip():
    for gp in (alpha_pair(), cycle_Ck(1), cycle_Ck(2)):
        space, base = decode_code(gp.code)
        assert canonical_code(space, base) == gp.code
    with pytest.raises(ValueError):
        decode_code("nonsense")


def test_mu_v1_roundtrip():
    mu = MuFunction(2, {cycle_Ck(1).code: 3})
    assert parse_mu_v1(to_mu_v1(mu)) == mu


@pytest.mark.parametrize(
    "text",
    [
        "",
        "alpha x\n",
        "alpha 1\npair bogus 3\n",
        "alpha 1\npair\n",
        "what 3\n",
    ],
)
def test_mu_v1_errors(text):
    with pytest.raises(FormatError):
        parse_mu_v1(text)


def test_bounded_check_alpha_violation():
    line4 = LinearSpace(4, [(0, 1, 2, 3)])
    ok, viols = in_K_mu_bounded(line4, MuFunction(1), 4)
    assert not ok
    assert viols[0][0] == ALPHA_CODE and viols[0][2] == 2
    assert in_K_mu_bounded(line4, MuFunction(2), 4)[0]


def test_bounded_check_fano():
    # one copy of the Fano plane over the empty base is within the cap
    assert in_K_mu_bounded(fano(), MuFunction(1), 7)[0]


def triple_cycle_structure(k=2):
    """Three disjoint copies of the C_k extension glued over one base
    pair {0, 1}."""
    gp = cycle_Ck(k)
    M = LinearSpace(2, [])
    for _ in range(3):
        M = free_amalgam(M, gp.space, [0, 1])
    return M


def test_chi_counts_glued_copies():
    M = triple_cycle_structure()
    gp = cycle_Ck(2)
    assert chi(M, gp, {0: 0, 1: 1}) == 3


def test_mu_x_separation():
    M = triple_cycle_structure(2)
    bound = cycle_Ck(2).space.n
    ok, _ = in_K_mu_bounded(M, mu_X([2]), bound)
    assert ok
    ok, viols = in_K_mu_bounded(M, mu_X([]), bound)
    assert not ok
    code = cycle_Ck(2).code
    assert any(v[0] == code and v[2] == 3 and v[3] == 2 for v in viols)


def test_bounded_check_touching_agrees_with_full():
    rng = Random(51)
    from steinergeom import random_k0

    mu = MuFunction(2)
    for _ in range(30):
        M = random_k0(rng, rng.randrange(4, 9))
        pts = rng.sample(range(M.n), 2)
        full_ok, _ = in_K_mu_bounded(M, mu, M.n)
        part_ok, _ = in_K_mu_bounded(M, mu, M.n, touching=pts)
        if not part_ok:
            assert not full_ok


def test_mu_x_caps():
    mu = mu_X([1, 3], alpha_value=2)
    assert mu.value(cycle_Ck(1).code) == 3
    assert mu.value(cycle_Ck(2).code) == 2
    assert mu.value(cycle_Ck(3).code) == 3
    assert mu.line_length() == 4
