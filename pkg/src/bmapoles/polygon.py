"""Pre-Schwarzians of polygon maps and counting of pole preimages.

For a map onto a polygon the pre-Schwarzian is built from two Blaschke
products ``Bk`` and ``Bm`` and the pole function is rational:
``Bm/Bk`` (interior) or ``z^3 Bk/Bm`` (exterior, ``f(0) = inf``).  Preimages
of a point under the pole function are counted two independent ways: a
trapezoid-rule argument-principle integral and companion-matrix roots.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy.linalg import eigvals, matrix_balance

from .blaschke import BlaschkeProduct, random_blaschke
from .models import AnalyticModel

MAX_DEGREE = 20


class InvalidPolygonModel(ValueError):
    pass


class NonIntegerWinding(ArithmeticError):
    pass


class AmbiguousRoot(ArithmeticError):
    pass


def _trim(c):
    c = np.atleast_1d(np.asarray(c, dtype=complex))
    nz = np.nonzero(c)[0]
    return c[: nz[-1] + 1] if nz.size else np.zeros(1, dtype=complex)


@dataclass(frozen=True, eq=False)
class RationalMap:
    """``num(z)/den(z)`` with coefficient arrays in ascending powers."""

    num: np.ndarray
    den: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "num", _trim(self.num))
        object.__setattr__(self, "den", _trim(self.den))
        if not np.any(self.den):
            raise ZeroDivisionError("zero denominator polynomial")

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        with np.errstate(divide="ignore", invalid="ignore"):
            return npoly.polyval(z, self.num) / npoly.polyval(z, self.den)

    def derivative(self, z):
        z = np.asarray(z, dtype=complex)
        n, d = npoly.polyval(z, self.num), npoly.polyval(z, self.den)
        dn = npoly.polyval(z, npoly.polyder(self.num))
        dd = npoly.polyval(z, npoly.polyder(self.den))
        return (dn * d - n * dd) / d ** 2

    @property
    def degrees(self):
        return len(self.num) - 1, len(self.den) - 1


@dataclass(frozen=True, eq=False)
class PolygonModel:
    variant: str  # interior | exterior
    Bk: BlaschkeProduct
    Bm: BlaschkeProduct

    def __post_init__(self):
        if self.variant not in ("interior", "exterior"):
            raise InvalidPolygonModel(f"unknown polygon variant {self.variant!r}")
        for a in self.Bk.zeros:
            for b in self.Bm.zeros:
                if abs(a - b) < 1e-12:
                    raise InvalidPolygonModel(f"Bk and Bm share the zero {a}")

    @property
    def k(self):
        return self.Bk.degree

    @property
    def m(self):
        return self.Bm.degree

    @property
    def degenerate(self) -> bool:
        """Exterior models with ``Bm(0) = 0`` lose a factor of ``z`` in ``z^3 Bk/Bm``."""
        return self.variant == "exterior" and any(abs(b) < 1e-12 for b in self.Bm.zeros)


def pole_rational(pm: PolygonModel) -> RationalMap:
    nk, dk = pm.Bk.polynomials()
    nm, dm = pm.Bm.polynomials()
    if pm.variant == "interior":
        return RationalMap(npoly.polymul(nm, dk), npoly.polymul(dm, nk))
    num = npoly.polymul([0, 0, 0, 1], npoly.polymul(nk, dm))
    den = _trim(npoly.polymul(nm, dk))
    # cancel powers of z shared with a zero of Bm at the origin
    s = 0
    while s < len(den) - 1 and den[s] == 0:
        s += 1
    return RationalMap(num[s:], den[s:])


def _q_rational(pm: PolygonModel) -> RationalMap:
    nk, dk = pm.Bk.polynomials()
    nm, dm = pm.Bm.polynomials()
    a = npoly.polymul(nk, dm)  # Bk = a/c, Bm = b/c over the common c = dk dm
    b = npoly.polymul(nm, dk)
    if pm.variant == "interior":
        # q = 2 Bk/(Bm - z Bk)
        return RationalMap(2 * a, npoly.polysub(b, npoly.polymulx(a)))
    # q = 2 Bm/(z (z^2 Bk - Bm))
    return RationalMap(2 * b, npoly.polymulx(npoly.polysub(npoly.polymul([0, 0, 1], a), b)))


def polygon_preschwarzian(pm: PolygonModel, check: bool = True) -> AnalyticModel:
    """Pre-Schwarzian model with exact rational ``q`` and ``q'``.

    For interior maps ``q`` must be analytic in the disk; with ``check`` the
    zeros of ``Bm - z Bk`` are located and any inside the disk is rejected.
    """
    q = _q_rational(pm)
    if check and pm.variant == "interior":
        roots = _roots(q.den)
        if np.any(np.abs(roots) < 1 - 1e-12):
            raise InvalidPolygonModel("1 - z Bk/Bm vanishes inside the disk")

    def pre(z):
        return q(z), q.derivative(z)

    return AnalyticModel(f"polygon[{pm.variant},k={pm.k},m={pm.m}]", "preschwarzian", pre_fn=pre)


# counting ----------------------------------------------------------------------
def _winding(poly, radius, nodes):
    z = radius * np.exp(2j * np.pi * np.arange(nodes) / nodes)
    # (1/2 pi i) \oint p'/p dz = mean(z p'(z)/p(z)) on the circle
    v = z * npoly.polyval(z, npoly.polyder(poly)) / npoly.polyval(z, poly)
    return np.mean(v)


def _winding_rational(P: RationalMap, c, radius, nodes):
    z = radius * np.exp(2j * np.pi * np.arange(nodes) / nodes)
    poles = _winding(P.den, radius, nodes).real
    if c is None:
        return poles, poles
    val = np.mean(z * P.derivative(z) / (P(z) - c)).real
    return val + poles, poles


def count_preimages_winding(P: RationalMap, c, radius: float = 0.999, nodes: int = 8192) -> int:
    """Number of solutions of ``P(z) = c`` in the disk by the argument principle.

    ``c`` may be ``inf`` (counts poles).  The contour radius is nudged away
    from nearby roots when the quadrature is not close to an integer.
    """
    c = None if not np.isfinite(complex(c)) else complex(c)
    if c is not None and abs(abs(c) - 1) < 1e-12:
        raise ValueError("target point must not lie on the unit circle")
    tried = []
    for off in (0.0, -1e-3, 5e-4, -2e-3, -3e-3):
        r = radius + off
        if not 0 < r < 1:
            continue
        with np.errstate(all="ignore"):
            val, poles = _winding_rational(P, c, r, nodes)
        tried.append((r, val))
        if (np.isfinite(val) and abs(val - round(val)) <= 0.05
                and abs(poles - round(poles)) <= 0.05):
            return int(round(val))
    raise NonIntegerWinding(f"argument-principle integral not near an integer: {tried}")


def _roots(coeffs):
    c = _trim(coeffs)
    deg = len(c) - 1
    if deg > MAX_DEGREE:
        raise ValueError(f"polynomial degree {deg} exceeds {MAX_DEGREE}")
    if deg < 1:
        return np.zeros(0, dtype=complex)
    comp = np.zeros((deg, deg), dtype=complex)
    comp[1:, :-1] = np.eye(deg - 1)
    comp[:, -1] = -c[:-1] / c[-1]
    bal, _ = matrix_balance(comp)
    return eigvals(bal, overwrite_a=True, check_finite=False)


def count_preimages_roots(P: RationalMap, c) -> int:
    """Independent count of ``P(z) = c`` in the disk from companion-matrix eigenvalues."""
    c = complex(c)
    poly = P.den if not np.isfinite(c) else npoly.polysub(P.num, c * P.den)
    roots = _roots(poly)
    mod = np.abs(roots)
    if np.any(np.abs(mod - 1) < 1e-8):
        raise AmbiguousRoot(f"root within 1e-8 of the unit circle: {roots[np.abs(mod - 1) < 1e-8]}")
    return int(np.count_nonzero(mod < 1))


def cross_rational() -> RationalMap:
    """Pole function ``(1 + z^4 + 2 z^8)/(z^3 + 3 z^7)`` of the cross-domain map."""
    num = np.zeros(9)
    num[[0, 4, 8]] = [1, 1, 2]
    den = np.zeros(8)
    den[[3, 7]] = [1, 3]
    return RationalMap(num, den)


def random_polygon_model(seed: int, variant: str = "interior", max_degree: int = 4,
                         max_modulus: float = 0.8) -> PolygonModel:
    rng = np.random.default_rng(seed)
    k, m = rng.integers(0, max_degree + 1, size=2)
    return PolygonModel(variant, random_blaschke(rng, int(k), max_modulus),
                        random_blaschke(rng, int(m), max_modulus))


# JSON ------------------------------------------------------------------------
def _blaschke_from_json(d) -> BlaschkeProduct:
    zeros = tuple(complex(re, im) for re, im in d.get("zeros", []))
    u = d.get("unimodular", [1, 0])
    return BlaschkeProduct(zeros, complex(u[0], u[1]))


def polygon_from_json(spec) -> PolygonModel:
    """``{"variant": "interior", "Bk": {"zeros": [[re, im]], "unimodular": [re, im]}, "Bm": {...}}``."""
    if isinstance(spec, str):
        spec = json.loads(spec)
    return PolygonModel(spec.get("variant", "interior"), _blaschke_from_json(spec.get("Bk", {})),
                        _blaschke_from_json(spec.get("Bm", {})))


def polygon_to_json(pm: PolygonModel) -> dict:
    def bp(b):
        return {"zeros": [[a.real, a.imag] for a in b.zeros],
                "unimodular": [b.unimodular.real, b.unimodular.imag]}
    return {"variant": pm.variant, "Bk": bp(pm.Bk), "Bm": bp(pm.Bm)}
