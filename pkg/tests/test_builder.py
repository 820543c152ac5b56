import pytest

from steinergeom import (
    ALPHA_CODE,
    BuildStep,
    FormatError,
    MuFunction,
    build,
    chain_link_pair,
    default_templates,
    delta,
    pair_coverage,
    parse_trace_v1,
    stats,
    to_trace_v1,
)


def small_build(mu, steps=120, seed=5, **kw):
    return build(mu, steps, seed, **kw)


def test_build_is_deterministic():
    M1, t1 = small_build(MuFunction(1))
    M2, t2 = small_build(MuFunction(1))
    assert M1 == M2
    assert to_trace_v1(t1) == to_trace_v1(t2)
    M3, _ = small_build(MuFunction(1), seed=6)
    assert M1 != M3


def test_build_rejects_invalid_mu():
    with pytest.raises(ValueError):
        build(MuFunction(0), 10, 1)


def test_line_lengths_hit_target():
    for alpha in (1, 2):
        M, _ = small_build(MuFunction(alpha), steps=150)
        assert M.lines, alpha
        assert {len(ln) for ln in M.lines} == {alpha + 2}


def test_build_structure_stays_nonnegative():
    M, _ = small_build(MuFunction(1), steps=150)
    assert delta(M, range(M.n)) >= 0


def test_snapshots_cover_run_and_end_at_result():
    M, trace = small_build(MuFunction(1), steps=250, snapshot_every=50)
    assert [idx for idx, _ in trace.snapshots] == [50, 100, 150, 200, 250, 250]
    assert trace.snapshots[-1][1] == M


def test_coverage_nondecreasing_across_snapshots():
    _, trace = small_build(MuFunction(1), steps=300, snapshot_every=50)
    cov = [pair_coverage(s) for _, s in trace.snapshots]
    assert all(a <= b + 1e-12 for a, b in zip(cov, cov[1:]))


def test_trace_roundtrip():
    _, trace = small_build(MuFunction(2), steps=160)
    back = parse_trace_v1(to_trace_v1(trace))
    assert back.seed == trace.seed
    assert back.mu_hash == trace.mu_hash
    assert back.template_max == trace.template_max
    assert back.steps == trace.steps
    assert back.snapshots == trace.snapshots


def test_trace_step_payload_shapes():
    _, trace = small_build(MuFunction(1), steps=200)
    kinds = {st.kind for st in trace.steps}
    assert "add-point" in kinds and "realize" in kinds
    for st in trace.steps:
        if st.kind in ("realize", "identify"):
            code, base_img, ext_img = st.payload
            assert isinstance(code, str)
            assert isinstance(base_img, tuple) and isinstance(ext_img, tuple)
        else:
            assert all(isinstance(x, int) for x in st.payload)


@pytest.mark.parametrize(
    "text",
    [
        "",
        "not a trace\n",
        "trace v1\nwhat 3\n",
    ],
)
def test_trace_parse_errors(text):
    with pytest.raises(FormatError):
        parse_trace_v1(text)


def test_default_templates():
    tpls = default_templates(10)
    codes = [gp.code for gp in tpls]
    assert codes[0] == ALPHA_CODE
    assert len(codes) == len(set(codes))
    assert all(gp.space.n <= 10 for gp in tpls)
    # raising the cap only adds templates
    assert set(codes) <= {gp.code for gp in default_templates(14)}


def test_chain_link_pair_shape():
    gp = chain_link_pair()
    assert gp.base == frozenset({0, 1, 2})
    assert len(gp.ext) == 3
    assert gp.code.startswith("gp3.3")
    assert delta(gp.space, range(6)) == delta(gp.space, sorted(gp.base))


def test_stats_keys():
    M, _ = small_build(MuFunction(1), steps=100)
    st = stats(M, MuFunction(1), bound=6)
    assert set(st) == {
        "line_length_histogram",
        "pair_coverage",
        "chi_saturation",
        "violations",
    }
    assert st["violations"] == []
    assert st["line_length_histogram"].get(3, 0) == len(M.lines)


def test_build_step_indices_increase():
    _, trace = small_build(MuFunction(1), steps=140)
    idx = [st.index for st in trace.steps]
    assert idx == sorted(idx)
    assert isinstance(trace.steps[0], BuildStep)
