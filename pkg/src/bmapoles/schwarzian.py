"""Convexity criteria from Schwarzian bounds.

A bound ``|Sf(z)| <= S_F(|z|)`` together with ``f''(0) = 0`` gives
``|f''/f'(z)| <= F''/F'(|z|)`` (the "envelope"), and through
``|P_f| >= 2/|q| - |z|`` a lower bound on the pole modulus.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .bma import pole, schwarzian
from .bounds import BoundReport
from .models import AnalyticModel
from .sampling import disk_samples

CERT_CAP = 1 - 1e-4
Q0_TOL = 1e-10


class HypothesisViolation(ValueError):
    def __init__(self, message, witness):
        super().__init__(f"{message} at z = {witness}")
        self.witness = witness


def _bisect(fn, lo, hi, tol=0.0, max_iter=200):
    flo = fn(lo)
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi) or hi - lo <= tol:
            break
        fm = fn(mid)
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _critical_a():
    a = _bisect(lambda x: 2 * x * math.tan(x) - 1, 1e-9, math.pi / 2 - 1e-9)
    return a, 2 * a * math.tan(a) - 1


CRITICAL_A, CRITICAL_A_RESIDUAL = _critical_a()


def critical_a() -> float:
    """First positive root of ``2 a tan(a) = 1`` (about 0.6533)."""
    return CRITICAL_A


@dataclass(frozen=True)
class SchwarzianProfile:
    """Radial bound on ``|Sf|`` with its envelope for ``|f''/f'|``.

    kind is one of ``constant`` (``|Sf| <= 2 a^2``), ``power`` (n),
    ``power_simple`` (m) and ``nehari`` (t).
    """

    kind: str
    n: Optional[int] = None
    t: Optional[float] = None
    a: float = CRITICAL_A

    def __post_init__(self):
        if self.kind == "power" and not (isinstance(self.n, int) and self.n >= 1):
            raise ValueError("power profile needs an integer n >= 1")
        if self.kind == "power_simple" and not (isinstance(self.n, int) and self.n >= 0):
            raise ValueError("power_simple profile needs an integer m >= 0")
        if self.kind == "nehari" and not (self.t is not None and 0 < self.t <= 1):
            raise ValueError("nehari profile needs t in (0, 1]")
        if self.kind == "constant" and not 0 < self.a <= CRITICAL_A + 1e-15:
            raise ValueError("constant profile needs 0 < a <= critical_a()")
        if self.kind not in ("constant", "power", "power_simple", "nehari"):
            raise ValueError(f"unknown profile {self.kind!r}")

    def schwarzian_bound(self, r):
        r = np.asarray(r, dtype=float)
        if self.kind == "constant":
            return np.full_like(r, 2 * self.a ** 2)
        if self.kind == "power":
            n = self.n
            return n * r ** (n - 1) - 0.5 * r ** (2 * n)
        if self.kind == "power_simple":
            return (self.n + 0.5) * r ** self.n
        return 2 * self.t / (1 - r * r) ** 2

    def envelope(self, r):
        return envelope(self, r)


def envelope(profile: SchwarzianProfile, r):
    """Upper bound for ``|f''/f'|`` on ``|z| = r`` under the profile (with ``f''(0) = 0``)."""
    r = np.asarray(r, dtype=float)
    if profile.kind == "constant":
        return 2 * profile.a * np.tan(profile.a * r)
    if profile.kind == "power":
        return r ** profile.n
    if profile.kind == "power_simple":
        # dominated by the power profile with n = m + 1
        return r ** (profile.n + 1)
    return 2 * profile.t * r / (1 - r * r)


@dataclass(frozen=True)
class Certificate:
    status: str  # certified_convex | not_applicable
    reason: str = ""
    witness: Optional[complex] = None
    min_pole_modulus: Optional[float] = None

    @property
    def certified(self) -> bool:
        return self.status == "certified_convex"

    def to_dict(self):
        w = None if self.witness is None else [self.witness.real, self.witness.imag]
        return {"status": self.status, "reason": self.reason, "witness": w,
                "min_pole_modulus": self.min_pole_modulus}


def _model_schwarzian(model, z):
    if model.schwarzian_fn is not None:
        return model.schwarzian_fn(z)
    return schwarzian(model, z)


def convexity_certificate(model: AnalyticModel, profile: SchwarzianProfile, count: int = 10_000,
                          seed: int = 42, radius_cap: float = CERT_CAP) -> Certificate:
    """Sampling certificate that ``f`` is convex under a Schwarzian profile.

    Checks ``f''(0) = 0``, the profile's bound on ``|Sf|`` and then that the
    derived pole bound ``2/envelope(|z|) - |z|`` is at least 1 and is respected
    by the sampled poles.  Evidence, not proof.
    """
    q0 = complex(model.q(0j))
    if abs(q0) > Q0_TOL:
        return Certificate("not_applicable", f"f''(0) != 0 (q(0) = {q0:.6g})", 0j)
    z = disk_samples(count, seed, radius_cap)
    r = np.abs(z)
    S = np.abs(_model_schwarzian(model, z))
    bound = profile.schwarzian_bound(r)
    excess = S - bound * (1 + 1e-12) - 1e-15
    if np.any(excess > 0):
        k = int(np.argmax(excess))
        return Certificate("not_applicable", "|Sf| exceeds the profile", complex(z[k]))
    p = np.abs(pole(model, z))
    with np.errstate(divide="ignore"):
        derived = 2 / envelope(profile, r) - r
    if np.any(derived < 1):
        k = int(np.argmin(derived))
        return Certificate("not_applicable", "profile does not force |P_f| >= 1", complex(z[k]))
    # derived is infinite only at z = 0, where q(0) = 0 puts the pole at infinity too
    slack = np.where(np.isfinite(derived), p - derived, np.inf)
    k = int(np.argmin(slack))
    if slack[k] < -1e-9 * max(1.0, float(derived[k])):
        return Certificate("not_applicable", "sampled pole inside the derived bound", complex(z[k]),
                           float(p.min()))
    return Certificate("certified_convex", "", complex(z[int(np.argmin(p))]), float(p.min()))


def _check_nehari_hypothesis(model, t, z):
    q0 = complex(model.q(0j))
    if abs(q0) > Q0_TOL:
        raise HypothesisViolation(f"f''(0) != 0 (q(0) = {q0:.6g})", 0j)
    lhs = (1 - np.abs(z) ** 2) ** 2 * np.abs(_model_schwarzian(model, z))
    bad = lhs > 2 * t * (1 + 1e-12)
    if bad.any():
        raise HypothesisViolation(f"(1-|z|^2)^2 |Sf| > 2t", complex(z[np.argmax(lhs)]))


def nehari_threshold(t: float) -> float:
    return 1 / (1 + t)


def nehari_region_check(model: AnalyticModel, t: float, count: int = 10_000, seed: int = 42,
                        radius_cap: float = CERT_CAP, region: str = "outer") -> BoundReport:
    """Check ``|P_f| >= 1`` on one side of ``|z| = 1/(1+t)`` under ``(1-|z|^2)^2|Sf| <= 2t``.

    ``region="outer"`` samples ``|z| >= 1/(1+t)``; ``region="inner"`` samples
    ``|z| <= 1/(1+t)``, the side on which ``2/envelope(|z|) - |z| >= 1`` holds.
    """
    if not 0 < t <= 1:
        raise ValueError("t must lie in (0, 1]")
    if region not in ("outer", "inner"):
        raise ValueError("region must be 'outer' or 'inner'")
    z = disk_samples(count, seed, radius_cap)
    _check_nehari_hypothesis(model, t, z)
    r0 = nehari_threshold(t)
    z = z[np.abs(z) >= r0] if region == "outer" else z[np.abs(z) <= r0]
    m = np.abs(pole(model, z)) - 1
    k = int(np.argmin(m)) if m.size else None
    mm = float(m[k]) if k is not None else math.inf
    return BoundReport("nehari_region", model.label, int(z.size), mm,
                       complex(z[k]) if k is not None else 0j,
                       "holds" if mm >= -1e-9 else "violated", params={"t": t, "region": region})


def pole_radius_bound(k: float) -> float:
    """Smallest ``|z|`` at which an N_0 map can have ``|P_f(z)| <= k``."""
    if k <= 1:
        raise ValueError("k must exceed 1")
    return 2 / (math.sqrt(k * k + 8) + k)


def pole_radius_check(model: AnalyticModel, k: float, count: int = 10_000, seed: int = 42,
                 radius_cap: float = CERT_CAP) -> BoundReport:
    """Margin ``|z| - r*(k)`` over samples with ``|P_f(z)| <= k``."""
    r_star = pole_radius_bound(k)
    z = disk_samples(count, seed, radius_cap)
    _check_nehari_hypothesis(model, 1.0, z)
    z = z[np.abs(pole(model, z)) <= k]
    m = np.abs(z) - r_star
    j = int(np.argmin(m)) if m.size else None
    mm = float(m[j]) if j is not None else math.inf
    return BoundReport("pole_radius", model.label, int(z.size), mm,
                       complex(z[j]) if j is not None else 0j,
                       "holds" if mm >= -1e-9 else "violated", params={"k": k})
