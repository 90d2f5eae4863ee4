"""Pole-localization inequalities as sampled margins.

Each bound is a :class:`BoundSpec` whose ``margin(z, P)`` is nonnegative
exactly where the inequality holds.  :func:`verify` samples a model, reduces
to the minimum margin and reports a verdict.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .bma import is_infinite, pole
from .models import AnalyticModel, ClassSpec
from .sampling import disk_samples

TOL = 1e-9


class HypothesisMismatch(ValueError):
    """The model's class tag does not satisfy the bound's hypothesis."""


@dataclass(frozen=True)
class BoundSpec:
    id: str
    params: dict
    margin: Callable  # (z, P) -> margin array
    # accepts(meta) -> bool; None means the bound applies to any model
    accepts: Optional[Callable] = None
    # optional mask of admissible sample points
    domain: Optional[Callable] = None
    lower: bool = True  # lower bound on a pole distance (True) or upper bound

    def __call__(self, z, p):
        z = np.asarray(z, dtype=complex)
        p = np.asarray(p, dtype=complex)
        inf = is_infinite(p)
        with np.errstate(all="ignore"):
            m = np.asarray(self.margin(z, np.where(inf, 0, p)), dtype=float)
        return np.where(inf, np.inf if self.lower else -np.inf, m)


@dataclass
class BoundReport:
    bound: str
    model: str
    samples: int
    min_margin: float
    witness: complex
    verdict: str
    sharpness_gap: Optional[float] = None
    params: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.verdict == "holds"

    def to_dict(self) -> dict:
        def num(x):
            if x is None:
                return None
            return x if math.isfinite(x) else ("inf" if x > 0 else "-inf")
        return {"bound": self.bound, "model": self.model, "samples": self.samples,
                "min_margin": num(self.min_margin),
                "witness": [self.witness.real, self.witness.imag],
                "verdict": self.verdict, "sharpness_gap": num(self.sharpness_gap)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


# hypothesis predicates -----------------------------------------------------
def _class_is(*variants):
    return lambda meta: meta is not None and meta.variant in variants


def _convex_of_order(alpha):
    def ok(meta):
        if meta is None:
            return False
        beta = meta.convexity_order()
        return beta is not None and beta >= alpha - 1e-15
    return ok


# order bounds ----------------------------------------------------------------
def bound_lower_order(mu: float) -> BoundSpec:
    """``|P_f(z)| <= (1 + mu|z|)/(|z| + mu)`` for ``mu`` at most the lower order."""
    if mu <= 0:
        raise ValueError("lower order bound needs mu > 0")

    def margin(z, p):
        r = np.abs(z)
        return (1 + mu * r) / (r + mu) - np.abs(p)

    return BoundSpec("lower_order", {"mu": mu}, margin, lower=False)


def _order_disk(order, z):
    r2 = np.abs(z) ** 2
    den = order ** 2 - r2
    return z * (order ** 2 - 1) / den, order * (1 - r2) / den


def bound_exclusion_disk(alpha: float) -> BoundSpec:
    """The pole avoids a disk determined by the upper order ``alpha``."""
    if alpha < 1:
        raise ValueError("upper order is at least 1")

    def margin(z, p):
        c, rho = _order_disk(alpha, z)
        return np.abs(p - c) - rho

    return BoundSpec("exclusion_disk", {"alpha": alpha}, margin)


def bound_inclusion_disk(mu: float) -> BoundSpec:
    """For ``|z| < mu`` the pole lies in a disk determined by the lower order."""
    if mu <= 0:
        raise ValueError("lower order bound needs mu > 0")

    def margin(z, p):
        c, rho = _order_disk(mu, z)
        return rho - np.abs(p - c)

    return BoundSpec("inclusion_disk", {"mu": mu}, margin,
                     domain=lambda z: np.abs(z) < mu, lower=False)


def bound_pseudo_hyperbolic(alpha: float) -> BoundSpec:
    """``|sigma_{-z}(P_f(z))| >= 1/alpha``."""
    if alpha < 1:
        raise ValueError("upper order is at least 1")

    def margin(z, p):
        return np.abs((p - z) / (1 - np.conj(z) * p)) - 1 / alpha

    return BoundSpec("pseudo_hyperbolic", {"alpha": alpha}, margin)


# class bounds ------------------------------------------------------------------
def bound_convex_alpha(alpha: float) -> BoundSpec:
    """Convex of order ``alpha`` in [0, 1): ``|P_f + alpha z/(1-alpha)| >= 1/(1-alpha)``."""
    if not 0 <= alpha < 1:
        raise ValueError("alpha must lie in [0, 1)")

    def margin(z, p):
        return np.abs(p + alpha * z / (1 - alpha)) - 1 / (1 - alpha)

    return BoundSpec("convex_alpha", {"alpha": alpha}, margin, accepts=_convex_of_order(alpha))


def bound_modulus_alpha(alpha: float) -> BoundSpec:
    """``Re{1 + z q} >= alpha`` (any ``alpha < 1``) gives ``|P_f| >= (1 - |alpha||z|)/(1 - alpha)``."""
    if alpha >= 1:
        raise ValueError("alpha must be < 1")

    def margin(z, p):
        return np.abs(p) - (1 - abs(alpha) * np.abs(z)) / (1 - alpha)

    return BoundSpec("modulus_alpha", {"alpha": alpha}, margin, accepts=_convex_of_order(alpha))


def bound_ozaki(lam: float) -> BoundSpec:
    return bound_modulus_alpha(0.5 - lam)


def bound_umezawa(alpha: float) -> BoundSpec:
    return bound_modulus_alpha(-alpha / (2 * alpha - 3))


def bound_janowski(A: float, B: float) -> BoundSpec:
    """``|P_f| >= (2 - |A + B||z|)/(A - B)``."""
    ClassSpec("janowski", A=A, B=B)

    def margin(z, p):
        return np.abs(p) - (2 - abs(A + B) * np.abs(z)) / (A - B)

    def ok(meta):
        return (meta is not None and meta.variant == "janowski"
                and meta.A == A and meta.B == B)

    return BoundSpec("janowski", {"A": A, "B": B}, margin, accepts=ok)


def bound_robertson(alpha: float) -> BoundSpec:
    """``|P_f| >= (2 - |1 - e^{2i alpha}||z|)/|1 + e^{2i alpha}|``."""
    ClassSpec("robertson", alpha=alpha)
    e = np.exp(2j * alpha)
    num, den = abs(1 - e), abs(1 + e)

    def margin(z, p):
        return np.abs(p) - (2 - num * np.abs(z)) / den

    # the right-hand side is even in alpha
    def ok(meta):
        return (meta is not None and meta.variant == "robertson"
                and abs(abs(meta.alpha) - abs(alpha)) < 1e-15)

    return BoundSpec("robertson", {"alpha": alpha}, margin, accepts=ok)


def bound_starlike() -> BoundSpec:
    """Normalized starlike: ``|P_f - z| >= (1 - |z|^2)/(2 + |z|)``."""

    def margin(z, p):
        r = np.abs(z)
        return np.abs(p - z) - (1 - r * r) / (2 + r)

    return BoundSpec("starlike", {}, margin, accepts=_class_is("starlike"))


def bound_starlike_half() -> BoundSpec:
    """Starlike of order 1/2: ``|P_f - z| >= 1 - |z|``."""

    def margin(z, p):
        return np.abs(p - z) - (1 - np.abs(z))

    return BoundSpec("starlike_half", {}, margin, accepts=_class_is("starlike_half"))


def bound_noshiro() -> BoundSpec:
    """``Re f' > 0``: ``|P_f - z| >= 1 - |z|^2``."""

    def margin(z, p):
        return np.abs(p - z) - (1 - np.abs(z) ** 2)

    return BoundSpec("noshiro", {}, margin, accepts=_class_is("noshiro"))


BOUNDS = {
    "lower_order": bound_lower_order,
    "exclusion_disk": bound_exclusion_disk,
    "inclusion_disk": bound_inclusion_disk,
    "pseudo_hyperbolic": bound_pseudo_hyperbolic,
    "convex_alpha": bound_convex_alpha,
    "modulus_alpha": bound_modulus_alpha,
    "janowski": bound_janowski,
    "robertson": bound_robertson,
    "starlike": bound_starlike,
    "starlike_half": bound_starlike_half,
    "noshiro": bound_noshiro,
}


def make_bound(name: str, **params) -> BoundSpec:
    try:
        return BOUNDS[name](**params)
    except KeyError:
        raise ValueError(f"unknown bound {name!r}") from None


# verification ------------------------------------------------------------------
def verify(model: AnalyticModel, bound: BoundSpec, count: int = 10_000, seed: int = 42,
           radius_cap: float = 1 - 1e-6, override: bool = False, tol: float = TOL,
           locus_points: int = 1000) -> BoundReport:
    """Sample the disk, reduce to the minimum margin and give a verdict.

    ``sharpness_gap`` is the largest ``|margin|`` along the model's equality
    locus for this bound, when the model is tagged extremal for it.
    """
    if bound.accepts is not None and not override and not bound.accepts(model.meta):
        raise HypothesisMismatch(
            f"model {model.label!r} (class {model.meta}) does not meet the hypothesis of {bound.id}")
    z = disk_samples(count, seed, radius_cap)
    if bound.domain is not None:
        z = z[bound.domain(z)]
    if z.size:
        m = bound(z, pole(model, z))
        m = np.where(np.isnan(m), -np.inf, m)
        k = int(np.argmin(m))
        min_margin, witness = float(m[k]), complex(z[k])
    else:
        min_margin, witness = math.inf, 0j
    gap = None
    locus = model.extremal_for.get(bound.id)
    if locus is not None:
        lz = locus(locus_points)
        if bound.domain is not None:
            lz = lz[bound.domain(lz)]
        gap = float(np.max(np.abs(bound(lz, pole(model, lz)))))
    return BoundReport(bound.id, model.label, int(z.size), min_margin, witness,
                       "holds" if min_margin >= -tol else "violated", gap, dict(bound.params))


def min_pole_modulus(model: AnalyticModel, count: int = 10_000, seed: int = 42,
                     radius_cap: float = 1 - 1e-6, polish: bool = True) -> float:
    """Smallest ``|P_f|`` over the samples, refined by a grid search and local polish."""
    z = disk_samples(count, seed, radius_cap)
    best = float(np.min(np.abs(pole(model, z))))
    if polish:
        from .orders import extremize
        v, _, _ = extremize(lambda w: np.abs(pole(model, w)), "min", radius_cap)
        best = min(best, v)
    return best


def implied_convexity_order(model: AnalyticModel, count: int = 10_000, seed: int = 42,
                            radius_cap: float = 1 - 1e-6, polish: bool = True) -> float:
    """Lower bound for Re{1 + z q} implied by ``min |P_f| = 1 + t``: ``t/(2 + t)``.

    Assumes the model is convex; see :func:`implied_order_consistent`.
    """
    t = max(0.0, min_pole_modulus(model, count, seed, radius_cap, polish) - 1)
    return 1.0 if math.isinf(t) else t / (2 + t)


def min_re_one_plus_zq(model: AnalyticModel, count: int = 10_000, seed: int = 42,
                       radius_cap: float = 1 - 1e-6) -> float:
    z = disk_samples(count, seed, radius_cap)
    return float(np.min(np.real(1 + z * model.q(z))))


def implied_order_consistent(model: AnalyticModel, count: int = 10_000, seed: int = 42,
                             radius_cap: float = 1 - 1e-6) -> bool:
    implied = implied_convexity_order(model, count, seed, radius_cap)
    return min_re_one_plus_zq(model, count, seed, radius_cap) >= implied - 1e-6
