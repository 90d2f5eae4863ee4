import math

import numpy as np
import pytest

from bmapoles.blaschke import BlaschkeProduct, random_blaschke
from bmapoles.models import (ClassSpec, ModelError, SelfMapModel, catalog, integrate_riccati,
                             member_from_self_map, model_from_spec, nehari_member,
                             random_class_member, random_self_map)
from conftest import cauchy_derivative, random_points

CLASSES = [ClassSpec("convex_order", alpha=0.3), ClassSpec("convex_order", alpha=-1.0),
           ClassSpec("janowski", A=0.6, B=-0.2), ClassSpec("robertson", alpha=0.7),
           ClassSpec("starlike"), ClassSpec("starlike_half"), ClassSpec("noshiro"),
           ClassSpec("ozaki", lam=0.8), ClassSpec("umezawa", alpha=2.0)]


@pytest.mark.parametrize("spec", CLASSES, ids=str)
def test_q_prime_is_derivative_of_q(spec):
    m = random_class_member(spec, seed=3, degree=2)
    for z0 in random_points(10, 1, 0.85):
        dq = complex(m.preschwarzian(np.array([z0]))[1][0])
        assert abs(dq - cauchy_derivative(m.q, z0)) < 1e-7 * max(1, abs(dq))


@pytest.mark.parametrize("name,params", [("power", {"a": 0.5}), ("koebe", {}), ("cross", {}),
                                         ("robertson", {"alpha": 0.4}), ("janowski", {"A": 1, "B": 0})])
def test_full_model_q_prime(name, params):
    m = catalog(name, **params)
    for z0 in random_points(10, 2, 0.8):
        dq = complex(m.preschwarzian(z0)[1])
        assert abs(dq - cauchy_derivative(m.q, z0)) < 1e-7 * max(1, abs(dq))


def test_power_preschwarzian_closed_form():
    for a in (0.5, 2.0):
        z = random_points(200, 3, 0.95)
        assert np.max(np.abs(catalog("power", a=a).q(z) - 2 * (a + z) / (1 - z * z))) < 1e-10


def test_cross_value_derivative():
    m = catalog("cross")
    for z0 in random_points(5, 4, 0.7):
        j = m.jet_at(z0)
        assert abs(cauchy_derivative(lambda w: np.array([m.jet_at(x).v for x in w]), z0) - j.d1) < 1e-8


def test_convex_order_members():
    z = random_points(2000, 5, 0.999)
    for seed in range(5):
        m = random_class_member(ClassSpec("convex_order", alpha=0.3), seed, 3)
        assert np.min(np.real(1 + z * m.q(z))) >= 0.3 - 1e-9


def test_janowski_members_subordinate():
    A, B = 0.6, -0.2
    z = random_points(2000, 6, 0.999)
    for seed in range(5):
        p = 1 + z * random_class_member(ClassSpec("janowski", A=A, B=B), seed, 2).q(z)
        w = (p - 1) / (A - B * p)
        assert np.max(np.abs(w)) < 1


def test_robertson_members():
    z = random_points(2000, 7, 0.999)
    m = random_class_member(ClassSpec("robertson", alpha=0.7), 1, 2)
    assert np.min(np.real(np.exp(0.7j) * (1 + z * m.q(z)))) > -1e-12


def test_starlike_with_identity_self_map_is_koebe():
    sm = SelfMapModel(BlaschkeProduct())
    m = member_from_self_map(ClassSpec("starlike"), sm)
    z = random_points(100, 8)
    assert np.max(np.abs(m.q(z) - catalog("koebe").q(z))) < 1e-12


def test_self_map_is_self_map():
    z = random_points(1000, 9, 0.999)
    for seed in range(10):
        assert np.max(np.abs(random_self_map(seed, seed % 4)(z))) < 1
        assert random_self_map(seed, 2)(0j) == 0


def test_blaschke_unimodular_on_circle():
    rng = np.random.default_rng(0)
    b = random_blaschke(rng, 4)
    t = np.exp(2j * np.pi * rng.random(100))
    assert np.max(np.abs(np.abs(b(t)) - 1)) < 1e-12
    num, den = b.polynomials()
    assert np.allclose(np.polynomial.polynomial.polyval(t, num) / np.polynomial.polynomial.polyval(t, den), b(t))


def test_class_validation():
    with pytest.raises(ModelError):
        ClassSpec("janowski", A=-1, B=0.5)
    with pytest.raises(ModelError):
        ClassSpec("robertson", alpha=2.0)
    with pytest.raises(ModelError):
        ClassSpec("convex_order", alpha=1.0)
    with pytest.raises(ModelError):
        ClassSpec("umezawa", alpha=1.0)
    with pytest.raises(ModelError):
        ClassSpec("bogus")
    assert ClassSpec("ozaki", lam=0.75).convexity_order() == -0.25
    assert math.isclose(ClassSpec("umezawa", alpha=2.0).convexity_order(), -2.0)


def test_model_from_spec():
    m = model_from_spec({"kind": "catalog", "name": "power", "params": {"a": 0.5}})
    assert abs(m.q(0.0) - 2 * 0.5) < 1e-14
    m = model_from_spec({"kind": "expr", "formula": "z/(1-z)"})
    assert abs(m.q(0.2) - 2 / 0.8) < 1e-12
    m = model_from_spec({"kind": "class", "class": "janowski", "A": 1, "B": -1, "seed": 7, "degree": 2})
    assert m.meta == ClassSpec("janowski", A=1, B=-1)
    with pytest.raises(ModelError):
        model_from_spec({"kind": "nope"})


def test_riccati_exact_solution():
    t = 0.5
    z = random_points(50, 10, 0.99)
    q = integrate_riccati(lambda w: 2 * t * (1 + (1 - t) * w * w) / (1 - w * w) ** 2, z)
    assert np.max(np.abs(q - 2 * t * z / (1 - z * z))) < 1e-8


@pytest.mark.parametrize("seed", [0, 1])
def test_riccati_consistency(seed):
    m = nehari_member(0.7, seed, 2)
    assert abs(m.q(0j)) == 0
    for z0 in random_points(15, seed, 0.95):
        S = m.schwarzian_fn(z0)
        q = m.q(np.array([z0]))[0]
        dq = cauchy_derivative(lambda w: m.q(w), z0, h=1e-2, n=64)
        assert abs(dq - 0.5 * q * q - S) < 1e-6 * max(1, abs(S))
