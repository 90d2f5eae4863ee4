import json
import math

import numpy as np
import pytest

from bmapoles.bma import pole
from bmapoles.bounds import (BOUNDS, HypothesisMismatch, bound_convex_alpha, bound_exclusion_disk,
                             bound_inclusion_disk, bound_janowski, bound_lower_order,
                             bound_modulus_alpha, bound_noshiro, bound_ozaki,
                             bound_pseudo_hyperbolic, bound_robertson, bound_starlike,
                             bound_starlike_half, bound_umezawa, implied_convexity_order,
                             implied_order_consistent, make_bound, verify)
from bmapoles.models import ClassSpec, catalog, random_class_member
from bmapoles.suite import bound_cases, extremal_cases
from conftest import random_points

Z = random_points(1000, 11, 0.999)


def margins(bound, model, z=Z):
    return bound(z, pole(model, z))


def test_reductions():
    m = random_class_member(ClassSpec("janowski", A=1, B=-1), 1, 2)
    assert np.max(np.abs(margins(bound_janowski(1, -1), m) - margins(bound_exclusion_disk(1), m))) <= 1e-12
    for al in (0.0, 0.3, 0.8):
        a = margins(bound_janowski(1, -1 + 2 * al), m)
        b = margins(bound_modulus_alpha(al), m)
        assert np.max(np.abs(a - b)) <= 1e-12
    p = pole(m, Z)
    assert np.allclose(margins(bound_robertson(0), m), np.abs(p) - 1, atol=1e-15)
    assert np.allclose(margins(bound_convex_alpha(0), m), np.abs(p) - 1, atol=1e-15)
    assert np.allclose(margins(bound_inclusion_disk(1), m), 1 - np.abs(p), atol=1e-12)


def test_ozaki_umezawa_forms():
    r = np.abs(Z)
    p = pole(catalog("koebe"), Z)
    lam = 0.7
    rhs = (2 + (1 - 2 * lam) * r) / (1 + 2 * lam)
    assert np.allclose(bound_ozaki(lam)(Z, p), np.abs(p) - rhs, atol=1e-13)
    al = 2.5
    rhs = ((2 - r) * al - 3) / (3 * (al - 1))
    assert np.allclose(bound_umezawa(al)(Z, p), np.abs(p) - rhs, atol=1e-13)


def test_point_examples():
    assert abs(bound_lower_order(1)(0j, 0.3) - 0.7) < 1e-15
    assert abs(bound_starlike()(0j, 0.5)) < 1e-15
    assert abs(margins(bound_starlike_half(), catalog("half_plane"), np.array([0j]))[0]) < 1e-15
    assert abs(margins(bound_pseudo_hyperbolic(2), catalog("power", a=2.0), np.array([0.4]))[0]) < 1e-12
    # the point at infinity
    assert bound_noshiro()(0.3, np.inf) == np.inf
    assert bound_lower_order(0.5)(0.3, np.inf) == -np.inf
    assert margins(bound_pseudo_hyperbolic(1), catalog("identity"), np.array([0j]))[0] == np.inf


def test_power_order_examples():
    assert verify(catalog("power", a=2.0), bound_exclusion_disk(2.0)).holds
    rep = verify(catalog("power", a=0.5), bound_inclusion_disk(0.5))
    assert rep.holds and rep.samples < 10_000
    r = np.linspace(0.01, 0.999, 500)
    m = margins(bound_lower_order(0.5), catalog("power", a=0.5), r.astype(complex))
    assert np.max(np.abs(m)) < 1e-12


def test_lower_order_bound_fails_below_order_one():
    # P_f = (1 + a z)/(a + z) has a pole at z = -a when a < 1
    m = catalog("power", a=0.5)
    assert pole(m, -0.5 + 0j) == complex(np.inf, 0)
    rep = verify(m, bound_lower_order(0.5))
    assert not rep.holds and abs(rep.witness + 0.5) < 0.02
    assert rep.sharpness_gap < 1e-9
    for a in (1.5, 3.0):
        assert verify(catalog("power", a=a), bound_lower_order(1.0)).holds


def test_exclusion_disk_on_starlike_members():
    for seed in range(10):
        assert verify(random_class_member(ClassSpec("starlike"), seed, seed % 4),
                      bound_exclusion_disk(2.0), override=True).holds


def test_exp_map_not_convex():
    rep = verify(catalog("exp_map", b=1.3066), bound_exclusion_disk(1))
    assert not rep.holds
    # P_f = z + 2/b reaches modulus 2/b - 1 < 1 near z = -1
    assert 2 / 1.3066 - 2 <= rep.min_margin < 2 / 1.3066 - 2 + 5e-3


@pytest.mark.parametrize("bid", sorted(set(BOUNDS) - {"lower_order"}))
def test_bound_holds_on_random_members(bid):
    for model, bound in bound_cases(bid, n=20):
        rep = verify(model, bound, count=4000)
        assert rep.min_margin >= -1e-9, (model.label, rep.to_dict())


@pytest.mark.parametrize("k", range(len(extremal_cases())))
def test_sharpness(k):
    model, bound = extremal_cases()[k]
    rep = verify(model, bound)
    assert rep.sharpness_gap is not None and rep.sharpness_gap <= 1e-9
    if bound.id != "lower_order":
        assert rep.holds


def test_koebe_equality_witness():
    rep = verify(catalog("koebe"), bound_starlike())
    assert rep.holds and rep.min_margin < 1e-6


def test_hypothesis_mismatch():
    with pytest.raises(HypothesisMismatch):
        verify(catalog("power", a=0.5), bound_starlike())
    with pytest.raises(HypothesisMismatch):
        verify(random_class_member(ClassSpec("convex_order", alpha=0.1), 0), bound_convex_alpha(0.3))
    rep = verify(random_class_member(ClassSpec("convex_order", alpha=0.5), 0), bound_convex_alpha(0.3))
    assert rep.holds
    assert verify(catalog("koebe"), bound_noshiro(), override=True).verdict in ("holds", "violated")


def test_parameter_validation():
    for bad in (lambda: bound_lower_order(0), lambda: bound_exclusion_disk(0.5),
                lambda: bound_convex_alpha(1), lambda: bound_modulus_alpha(1.2),
                lambda: make_bound("nope")):
        with pytest.raises(ValueError):
            bad()


def test_report_json():
    rep = verify(catalog("identity"), bound_pseudo_hyperbolic(1.0), count=100)
    d = json.loads(rep.to_json())
    assert set(d) == {"bound", "model", "samples", "min_margin", "witness", "verdict", "sharpness_gap"}
    assert d["min_margin"] == "inf" and d["verdict"] == "holds"
    assert rep.to_json() == verify(catalog("identity"), bound_pseudo_hyperbolic(1.0), count=100).to_json()


def test_implied_convexity_order():
    assert implied_convexity_order(catalog("half_plane")) == 0
    g = catalog("convex_order", alpha=0.4)
    assert implied_convexity_order(g) <= 1e-6
    assert implied_order_consistent(g)
    # P_f = z + 2.5 has |P_f| > 1.5, so t = 0.5 and the implied order tends to 0.2
    assert implied_convexity_order(catalog("exp_map", b=0.8)) == pytest.approx(0.2, abs=1e-6)
    assert math.isclose(implied_convexity_order(catalog("moebius", a=0.0)), 1.0)
