"""Ready-made (model, bound) pairs: random class members and extremal functions.

Used by the acceptance run and the demos.
"""
from __future__ import annotations

import math

import numpy as np

from .bma import conjugate_by_automorphism
from .bounds import (BOUNDS, BoundSpec, bound_convex_alpha, bound_exclusion_disk,
                     bound_inclusion_disk, bound_janowski, bound_lower_order, bound_modulus_alpha,
                     bound_noshiro, bound_pseudo_hyperbolic, bound_robertson, bound_starlike,
                     bound_starlike_half)
from .models import AnalyticModel, ClassSpec, catalog, random_class_member

ORDER_BOUNDS = ("lower_order", "exclusion_disk", "inclusion_disk", "pseudo_hyperbolic")


def power_member(rng: np.random.Generator) -> AnalyticModel:
    """``power(a)`` composed with a random disk automorphism; orders are unchanged."""
    a = float(rng.uniform(0.3, 3.0))
    b = complex(*rng.uniform(-0.5, 0.5, size=2))
    return conjugate_by_automorphism(catalog("power", a=a), b)


def _order_case(bound_id, rng):
    m = power_member(rng)
    lo, up = m.orders
    if bound_id == "lower_order":
        return m, bound_lower_order(lo)
    if bound_id == "inclusion_disk":
        return m, bound_inclusion_disk(lo)
    if bound_id == "exclusion_disk":
        return m, bound_exclusion_disk(up)
    return m, bound_pseudo_hyperbolic(up)


def _class_case(bound_id, rng, seed):
    deg = int(rng.integers(0, 4))
    if bound_id == "convex_alpha":
        al = float(rng.uniform(0, 0.9))
        return random_class_member(ClassSpec("convex_order", alpha=al), seed, deg), bound_convex_alpha(al)
    if bound_id == "modulus_alpha":
        kind = int(rng.integers(0, 3))
        if kind == 0:
            spec = ClassSpec("convex_order", alpha=float(rng.uniform(-2, 0.9)))
        elif kind == 1:
            spec = ClassSpec("ozaki", lam=float(rng.uniform(0.5, 1)))
        else:
            spec = ClassSpec("umezawa", alpha=float(rng.uniform(1.6, 4)))
        return random_class_member(spec, seed, deg), bound_modulus_alpha(spec.convexity_order())
    if bound_id == "janowski":
        A, B = sorted(rng.uniform(-1, 1, size=2))[::-1]
        spec = ClassSpec("janowski", A=float(A), B=float(B))
        return random_class_member(spec, seed, deg), bound_janowski(spec.A, spec.B)
    if bound_id == "robertson":
        al = float(rng.uniform(-1.5, 1.5))
        return random_class_member(ClassSpec("robertson", alpha=al), seed, deg), bound_robertson(al)
    simple = {"starlike": bound_starlike, "starlike_half": bound_starlike_half,
              "noshiro": bound_noshiro}
    return random_class_member(ClassSpec(bound_id), seed, deg), simple[bound_id]()


def bound_cases(bound_id: str, n: int = 20, seed: int = 0):
    """``n`` random (model, bound) pairs that meet the hypothesis of ``bound_id``.

    Order bounds use automorphism-conjugated power maps with exact orders;
    class bounds use subordination-generated members.
    """
    if bound_id not in BOUNDS:
        raise ValueError(f"unknown bound {bound_id!r}")
    rng = np.random.default_rng([seed, sorted(BOUNDS).index(bound_id)])
    out = []
    for i in range(n):
        if bound_id in ORDER_BOUNDS:
            out.append(_order_case(bound_id, rng))
        else:
            out.append(_class_case(bound_id, rng, 1000 * seed + i))
    return out


def extremal_cases() -> list[tuple[AnalyticModel, BoundSpec]]:
    """Extremal functions paired with the bound they make sharp."""
    return [
        (catalog("power", a=0.5), bound_lower_order(0.5)),
        (catalog("power", a=2.0), bound_pseudo_hyperbolic(2.0)),
        (catalog("convex_order", alpha=0.4), bound_convex_alpha(0.4)),
        (catalog("convex_order", alpha=0.4), bound_modulus_alpha(0.4)),
        (catalog("convex_order", alpha=-0.5), bound_modulus_alpha(-0.5)),
        (catalog("janowski", A=0.5, B=-0.3), bound_janowski(0.5, -0.3)),
        (catalog("janowski", A=1.0, B=-1.0), bound_janowski(1.0, -1.0)),
        (catalog("robertson", alpha=math.pi / 4), bound_robertson(math.pi / 4)),
        (catalog("koebe", theta=0.0), bound_starlike()),
        (catalog("half_plane", theta=0.0), bound_starlike_half()),
        (catalog("noshiro_extremal", theta=0.0), bound_noshiro()),
    ]
