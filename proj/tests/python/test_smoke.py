import pytest

import mbounds


def pair_surface():
    return mbounds.Surface(
        {"A": 1.5, "B": 1.75},
        [("A", 1, 1.5, 0.125), ("A", 2, 1.5, 0.25), ("B", 1, 1.75, 0.0625), ("B", 2, 1.75, 0.15625)],
    )


def test_quoted_call_is_replicated():
    s = mbounds.Surface({"A": 10.0}, [("A", 1, 8.0, 2.5), ("A", 1, 12.0, 0.6)])
    r = mbounds.bound_1d(s, "A", 1, mbounds.Payoff1D.call(12.0))
    assert r["lower"] == pytest.approx(0.6, abs=1e-9)
    assert r["upper"] == pytest.approx(0.6, abs=1e-9)
    assert r["diagnostics_upper"]["support_bound"] > 12.0


def test_calendar_arbitrage_is_reported():
    s = mbounds.Surface({"A": 12.0}, [("A", 1, 10.0, 5.0), ("A", 2, 10.0, 4.0)])
    v = mbounds.check_no_arbitrage(s, "A")
    assert [x["kind"] for x in v] == ["InteriorPoint"]
    with pytest.raises(mbounds.Error, match="ArbitragePresent"):
        mbounds.bound_1d(s, "A", 2, mbounds.Payoff1D.call(10.0))


def test_transform_round_trip():
    law = [(1.0, 0.25), (4.0, 0.5), (9.0, 0.25)]
    back = mbounds.distribution(law)
    assert len(back) == len(law)
    for (x, w), (y, v) in zip(back, law):
        assert x == pytest.approx(y, abs=1e-12)
        assert w == pytest.approx(v, abs=1e-12)
    assert mbounds.psi(law)[0] == pytest.approx((0.0, 4.5))


def test_two_asset_bounds_nest():
    s = pair_surface()
    g = mbounds.Payoff2D.canonical(1.0, 1.0, 3.0)
    exact = mbounds.bound_2d_exact(s, "A", "B", 2, g, L=4.0)
    approx = mbounds.bound_2d_approx(s, "A", "B", 2, g, 0.5, L=4.0, restricted_lattice=True)
    assert exact["lower"] <= exact["upper"]
    assert abs(approx["lower"] - exact["lower"]) <= 2.0 * 0.5 * 2 + 1e-6
    loose = mbounds.bound_2d_exact(s, "A", "B", 2, g, L=4.0, target_maturity_only=True)
    assert loose["lower"] <= exact["lower"] + 1e-9
    assert loose["upper"] >= exact["upper"] - 1e-9


def test_basket_and_vertex_bound():
    r = mbounds.bound_basket(40.0, [([1.0, 0.0], 0.0, 10.0), ([0.0, 1.0], 0.0, 8.0)], [1.0, 1.0], 0.0)
    assert r["lower"] == pytest.approx(18.0)
    assert r["upper"] == pytest.approx(18.0)
    assert mbounds.vertex_count_bound(2, 1) == 10.0
