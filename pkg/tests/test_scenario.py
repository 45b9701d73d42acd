import json

import numpy as np
import pytest

import facetbench as fb
from facetbench.scenario import (
    PriceSampler,
    PriceScenario,
    check_assumptions,
    facet_optimum,
    global_optimum,
    price_at,
    revenue,
    simulate_coverage,
    uniqueness_diagnostics,
    withstand_capacity,
)

XBAR = np.array([1.0])


def vertex_enum_value(ds, facet, prices, xbar=1.0):
    """Independent facet-optimum value: a linear objective on the scaled
    generator simplex peaks at a generator (single-input case)."""
    return max(
        float(prices @ ds.outputs[:, j]) * xbar / float(ds.inputs[0, j])
        for j in facet.members
    )


def test_price_at_endpoints(toy_scenario):
    assert price_at(toy_scenario, 0.0).tolist() == [5.0, 5.0, 12.0]
    assert price_at(toy_scenario, 1.0) == pytest.approx([5.0, 10.0, 0.1], abs=1e-12)
    assert price_at(toy_scenario, 0.5) == pytest.approx([5.0, 7.5, 12.0 - 5.95], abs=1e-12)


def test_price_domain_enforced(toy_scenario):
    with pytest.raises(fb.DataError, match="outside"):
        price_at(toy_scenario, 1.5)


def test_positivity_checked_at_construction():
    with pytest.raises(fb.DataError, match="strictly positive"):
        PriceScenario(
            output_names=("a",), bases=np.array([1.0]), slopes=np.array([-2.0]), domain=(0.0, 1.0)
        )


def test_table_scenario():
    sc = PriceScenario(output_names=("a", "b"), table={0.0: [1.0, 2.0], 1.0: [3.0, 4.0]})
    assert price_at(sc, 1.0).tolist() == [3.0, 4.0]
    with pytest.raises(fb.DataError, match="not in the scenario table"):
        price_at(sc, 0.5)


def test_zero_slope_scenario_constant():
    sc = PriceScenario(output_names=("a", "b"), bases=np.array([2.0, 3.0]), slopes=np.zeros(2), domain=(0.0, 5.0))
    for d in (0.0, 2.5, 5.0):
        assert price_at(sc, d).tolist() == [2.0, 3.0]


def test_revenue_values(toy_a, toy_scenario):
    yF = toy_a.outputs[:, toy_a.index("F")]
    assert revenue(yF, toy_scenario, 0.0) == pytest.approx(1854.0, abs=1e-9)
    assert revenue(yF, toy_scenario, 1.0) == pytest.approx(955.2, abs=1e-9)
    assert revenue(np.zeros(3), toy_scenario, 1.0) == 0.0


def test_revenue_linearity(toy_a, toy_scenario):
    y = toy_a.outputs[:, 2]
    for alpha in (0.0, 0.3, 2.5):
        assert revenue(alpha * y, toy_scenario, 1.0) == pytest.approx(alpha * revenue(y, toy_scenario, 1.0), rel=1e-12)
    bumped = y.copy()
    bumped[1] += 1.0
    assert revenue(bumped, toy_scenario, 1.0) > revenue(y, toy_scenario, 1.0)


def test_facet_optima(toy_a, toy_facets, toy_scenario):
    f1, f2 = toy_facets.facets
    o1 = facet_optimum(toy_a, f1, XBAR, toy_scenario, 1.0)
    assert o1.value == pytest.approx(1509.0, abs=1e-9)
    assert o1.outputs == pytest.approx([100.0, 100.0, 90.0], abs=1e-9)
    o2 = facet_optimum(toy_a, f2, XBAR, toy_scenario, 1.0)
    assert o2.value == pytest.approx(1825.1, abs=1e-9)
    o1_pre = facet_optimum(toy_a, f1, XBAR, toy_scenario, 0.0)
    assert o1_pre.value == pytest.approx(2080.0, abs=1e-9)
    assert o1_pre.outputs == pytest.approx([100.0, 100.0, 90.0], abs=1e-9)


def test_facet_optima_match_vertex_oracle(toy_a, toy_facets, toy_scenario):
    for delta in (0.0, 0.25, 0.5, 1.0):
        p = price_at(toy_scenario, delta)
        for f in toy_facets.facets:
            lp_val = facet_optimum(toy_a, f, XBAR, toy_scenario, delta).value
            assert lp_val == pytest.approx(vertex_enum_value(toy_a, f, p), rel=1e-12)


def test_global_optimum(toy_a, toy_facets, toy_scenario):
    best, owners = global_optimum(toy_a, toy_facets, XBAR, toy_scenario, 1.0)
    assert best.value == pytest.approx(1825.1, abs=1e-9)
    assert owners == (2,)
    best0, owners0 = global_optimum(toy_a, toy_facets, XBAR, toy_scenario, 0.0)
    assert best0.value == pytest.approx(2080.0, abs=1e-9)
    assert owners0 == (1, 2)  # C is the shared vertex


def test_theorem5_facet_below_global(toy_a, toy_facets, toy_scenario):
    for delta in (0.0, 0.3, 0.7, 1.0):
        best, _ = global_optimum(toy_a, toy_facets, XBAR, toy_scenario, delta)
        for f in toy_facets.facets:
            val = facet_optimum(toy_a, f, XBAR, toy_scenario, delta).value
            assert val <= best.value + 1e-9


def test_withstand_capacity(toy_a, toy_facets, toy_scenario):
    f1 = toy_facets.facets[0]
    yF = toy_a.outputs[:, toy_a.index("F")]
    res = withstand_capacity(toy_a, f1, yF, XBAR, toy_scenario, 0.0, 1.0)
    assert res.wr == pytest.approx(553.8, abs=1e-9)
    assert res.bound == pytest.approx(898.8, abs=1e-9)
    assert res.within_bound


def test_withstand_zero_at_post_risk_optimum(toy_a, toy_facets, toy_scenario):
    f1 = toy_facets.facets[0]
    yC = toy_a.outputs[:, toy_a.index("C")]  # facet-1 post-risk optimum
    res = withstand_capacity(toy_a, f1, yC, XBAR, toy_scenario, 0.0, 1.0)
    assert res.wr == pytest.approx(0.0, abs=1e-9)


def test_withstand_requires_on_facet_point(toy_a, toy_facets, toy_scenario):
    f1 = toy_facets.facets[0]
    yD = toy_a.outputs[:, toy_a.index("D")]
    with pytest.raises(fb.DataError, match="not on facet"):
        withstand_capacity(toy_a, f1, yD, XBAR, toy_scenario, 0.0, 1.0)


def test_residual_losses(toy_a, toy_facets, toy_scenario):
    yF = toy_a.outputs[:, toy_a.index("F")]
    r0 = revenue(yF, toy_scenario, 0.0)
    best1, _ = global_optimum(toy_a, toy_facets, XBAR, toy_scenario, 1.0)
    f1_opt = facet_optimum(toy_a, toy_facets.facets[0], XBAR, toy_scenario, 1.0)
    assert r0 - revenue(yF, toy_scenario, 1.0) == pytest.approx(898.8, abs=1e-9)
    assert r0 - f1_opt.value == pytest.approx(345.0, abs=1e-9)
    assert r0 - best1.value == pytest.approx(28.9, abs=1e-9)
    assert best1.value - f1_opt.value == pytest.approx(316.1, abs=1e-9)


def test_assumptions_toy(toy_a, toy_facets, toy_scenario):
    yF = toy_a.outputs[:, toy_a.index("F")]
    rep = check_assumptions(toy_a, toy_facets, toy_scenario, yF, XBAR, 0.0, 1.0)
    assert rep.assumption1_holds and rep.assumption2_holds
    assert rep.recovery_entries[0]["post_risk_optimum"] == pytest.approx(1509.0, abs=1e-9)
    # theorem-3 form: global recovery bounded by the pre-risk revenue
    assert rep.global_recovery_holds
    assert rep.global_post_risk_optimum <= revenue(yF, toy_scenario, 0.0) + 1e-9


def test_assumptions_violated_by_rising_prices(toy_a, toy_facets):
    rising = PriceScenario(
        output_names=("a", "b", "c"),
        bases=np.array([5.0, 5.0, 12.0]),
        slopes=np.array([1.0, 1.0, 1.0]),
        domain=(0.0, 1.0),
    )
    yF = toy_a.outputs[:, toy_a.index("F")]
    rep = check_assumptions(toy_a, toy_facets, rising, yF, XBAR, 0.0, 1.0)
    assert not rep.assumption1_holds
    # every anchor-facet generator gains revenue
    assert {v["dmu"] for v in rep.revenue_violations} == {"A", "B", "C"}


def test_assumptions_identity_delta(toy_a, toy_facets, toy_scenario):
    # with delta0 = delta1 both checks collapse to equalities when the
    # anchor point is the facet optimum itself
    opt = facet_optimum(toy_a, toy_facets.facets[0], XBAR, toy_scenario, 0.5)
    rep = check_assumptions(toy_a, toy_facets, toy_scenario, opt.outputs, XBAR, 0.5, 0.5)
    assert rep.assumption1_holds and rep.assumption2_holds
    entry = next(e for e in rep.recovery_entries if e["facet"] == 1)
    assert entry["post_risk_optimum"] == pytest.approx(entry["pre_risk_revenue"], rel=1e-12)


def test_assumptions_require_facet_point(toy_a, toy_facets, toy_scenario):
    yD_off = np.array([1.0, 1.0, 1.0])
    with pytest.raises(fb.DataError, match="no facet"):
        check_assumptions(toy_a, toy_facets, toy_scenario, yD_off, XBAR, 0.0, 1.0)


def test_uniqueness_unique_vertex(toy_a, toy_facets, toy_scenario):
    d = uniqueness_diagnostics(toy_a, toy_facets.facets[1], toy_scenario, 1.0)
    assert d.kind == "unique"
    assert "D" in d.detail


def test_uniqueness_parallel_price(toy_a, toy_facets):
    f1 = toy_facets.facets[0]
    sc = PriceScenario(
        output_names=("a", "b", "c"), bases=f1.u * 10.0, slopes=np.zeros(3), domain=(0.0, 1.0)
    )
    d = uniqueness_diagnostics(toy_a, f1, sc, 0.0)
    assert d.kind == "facet-degenerate"


def test_uniqueness_edge_tie(toy_a, toy_facets):
    # equal prices on outputs 1 and 2 with a third price high enough that
    # A and B tie at the optimum: orthogonal to B - A
    f1 = toy_facets.facets[0]
    prices = np.array([1.0, 1.0, 7.0])
    yA, yB = toy_a.outputs[:, 0], toy_a.outputs[:, 1]
    assert float(prices @ (yB - yA)) == pytest.approx(0.0, abs=1e-12)
    assert float(prices @ yA) > float(prices @ toy_a.outputs[:, 2])  # A beats C
    sc = PriceScenario(output_names=("a", "b", "c"), bases=prices, slopes=np.zeros(3), domain=(0.0, 1.0))
    d = uniqueness_diagnostics(toy_a, f1, sc, 0.0)
    assert d.kind == "edge-degenerate"
    assert ("A", "B") in d.tied_pairs


def test_scenario_json_round_trip(tmp_path, toy_scenario):
    payload = {
        "outputs": [
            {"name": n, "base": float(b), "slope": float(s)}
            for n, b, s in zip(toy_scenario.output_names, toy_scenario.bases, toy_scenario.slopes)
        ],
        "delta_domain": list(toy_scenario.domain),
    }
    p = tmp_path / "sc.json"
    p.write_text(json.dumps(payload))
    sc = fb.load_scenario(p)
    assert np.array_equal(sc.bases, toy_scenario.bases)
    assert np.array_equal(sc.slopes, toy_scenario.slopes)
    assert sc.domain == toy_scenario.domain


def test_sampler_counter_stream():
    s = PriceSampler()
    a = s.draw(42, 7, 3)
    b = s.draw(42, 8, 3)
    assert not np.array_equal(a, b)
    assert np.array_equal(a, s.draw(42, 7, 3))  # trial stream independent of order
    assert np.all((a >= 0.1) & (a <= 10.0))


def test_coverage_toy(toy_a, toy_facets):
    rep = simulate_coverage(toy_a, toy_facets, [(1,), (2,), (1, 2)], XBAR, trials=500, seed=7)
    assert rep.strategy_counts[2] == 500  # union of both facets covers everything
    assert rep.facet_counts[1] + rep.facet_counts[2] >= 500
    assert rep.strategy_counts[0] <= rep.strategy_counts[2]
    assert rep.strategy_counts[1] <= rep.strategy_counts[2]
    # per-sample containment checks were recorded for both subset pairs
    assert len(rep.containment_checks) == 2
    assert all(c["per_sample_subset"] for c in rep.containment_checks)


def test_coverage_deterministic(toy_a, toy_facets):
    a = simulate_coverage(toy_a, toy_facets, [(1, 2)], XBAR, trials=200, seed=123)
    b = simulate_coverage(toy_a, toy_facets, [(1, 2)], XBAR, trials=200, seed=123)
    assert np.array_equal(a.incidence, b.incidence)
    assert a.to_payload() == b.to_payload()
    c = simulate_coverage(toy_a, toy_facets, [(1, 2)], XBAR, trials=200, seed=124)
    assert not np.array_equal(a.incidence, c.incidence)


def test_coverage_theorem7_subset_events(toy_a, toy_facets):
    # the set of samples won by strategy {1} is a subset of {1,2}'s, sample
    # by sample (set containment, not frequency comparison)
    rep = simulate_coverage(toy_a, toy_facets, [(1,), (1, 2)], XBAR, trials=400, seed=5)
    rows_k1 = rep.incidence[:, 0]
    rows_union = rep.incidence.any(axis=1)
    assert np.all(rows_union >= rows_k1)


def test_coverage_validates_inputs(toy_a, toy_facets):
    with pytest.raises(fb.DataError, match="trials"):
        simulate_coverage(toy_a, toy_facets, [(1,)], XBAR, trials=0, seed=1)
    with pytest.raises(fb.DataError, match="strategy"):
        simulate_coverage(toy_a, toy_facets, [], XBAR, trials=10, seed=1)
    with pytest.raises(fb.DataError, match="unknown facet"):
        simulate_coverage(toy_a, toy_facets, [(9,)], XBAR, trials=10, seed=1)


def test_facet_optimum_infeasible_input_direction(uni985, uni_facets):
    # an input mix far outside the members' input cone cannot be matched
    sc = PriceScenario(
        output_names=("a", "b", "c"), bases=np.ones(3), slopes=np.zeros(3), domain=(0.0, 1.0)
    )
    bad_xbar = np.array([1.0, 1e9])
    with pytest.raises(fb.FacetInfeasibleError):
        facet_optimum(uni985, uni_facets.facets[0], bad_xbar, sc, 0.0)
    with pytest.raises(fb.FacetInfeasibleError):
        global_optimum(uni985, uni_facets, bad_xbar, sc, 0.0)


def test_single_facet_global_equals_facet_optimum(toy_a, toy_facets, toy_scenario):
    from facetbench.facets import FacetSet
    single = FacetSet(facets=toy_facets.facets[:1], extremes=toy_facets.extremes, scope="extremes")
    best, owners = global_optimum(toy_a, single, XBAR, toy_scenario, 1.0)
    alone = facet_optimum(toy_a, single.facets[0], XBAR, toy_scenario, 1.0)
    assert best.value == alone.value
    assert owners == (1,)
