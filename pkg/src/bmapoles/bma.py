"""Best Möbius approximations and their poles, with Pommerenke's operator.

Poles are returned as complex numbers; the point at infinity is
``complex(inf, 0)`` (see :data:`INF`), so ``abs(pole)`` compares larger than
any finite radius without special cases.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .jets import Jet3
from .models import AnalyticModel, ModelError

INF = complex(np.inf, 0.0)
CLASSIFY_BAND = 1e-12


class NotLocallyUnivalent(ZeroDivisionError):
    pass


def is_infinite(p) -> np.ndarray:
    return ~np.isfinite(np.asarray(p))


@dataclass(frozen=True)
class MoebiusMap:
    """``z -> (a z + b)/(c z + d)`` on the extended plane."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        if self.det == 0:
            raise ValueError("Möbius map with zero determinant")

    @property
    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    def __call__(self, z):
        if np.isscalar(z) and is_infinite(z):
            return INF if self.c == 0 else self.a / self.c
        z = np.asarray(z, dtype=complex)
        with np.errstate(divide="ignore", invalid="ignore"):
            den = self.c * z + self.d
            out = (self.a * z + self.b) / den
        return np.where(den == 0, INF, out) if np.ndim(out) else (INF if den == 0 else complex(out))

    def __matmul__(self, other: "MoebiusMap") -> "MoebiusMap":
        m = self.matrix @ other.matrix
        return MoebiusMap(*m.ravel())

    def inverse(self) -> "MoebiusMap":
        return MoebiusMap(self.d, -self.b, -self.c, self.a)

    @property
    def pole(self) -> complex:
        return INF if self.c == 0 else -self.d / self.c

    def derivatives(self, z):
        """``(M, M', M'')`` at a finite non-pole ``z``."""
        den = self.c * z + self.d
        return self(z), self.det / den ** 2, -2 * self.c * self.det / den ** 3


def disk_automorphism(a) -> MoebiusMap:
    """``sigma_a(z) = (z + a)/(1 + conj(a) z)``."""
    a = complex(a)
    return MoebiusMap(1, a, np.conj(a), 1)


def _scalar(z):
    z = np.asarray(z, dtype=complex)
    return z if z.ndim else complex(z)


def pole(model: AnalyticModel, z):
    """``P_f(z) = z + 2/q(z)``; infinite where ``q`` vanishes."""
    z = np.asarray(z, dtype=complex)
    q = np.asarray(model.q(z), dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore"):
        p = np.where(q == 0, INF, z + 2 / np.where(q == 0, 1, q))
    return _scalar(p)


def bma(model: AnalyticModel, zeta) -> MoebiusMap:
    """The Möbius map agreeing with ``f`` to second order at ``zeta``."""
    zeta = complex(zeta)
    if model.kind != "full":
        raise ModelError("the best Möbius approximation needs f itself (full model)")
    j = model.jet_at(zeta)
    f, f1 = complex(j.v), complex(j.d1)
    if f1 == 0:
        raise NotLocallyUnivalent(f"f'({zeta}) = 0")
    q = complex(j.d2) / f1
    return MoebiusMap(f1 - 0.5 * q * f, f * (1 + 0.5 * zeta * q) - zeta * f1,
                      -0.5 * q, 1 + 0.5 * zeta * q)


def a_operator(model: AnalyticModel, z):
    """Pommerenke's ``A_f(z) = (1 - |z|^2) q(z)/2 - conj(z)``."""
    z = np.asarray(z, dtype=complex)
    return _scalar((1 - np.abs(z) ** 2) * model.q(z) / 2 - np.conj(z))


def pole_identity_residual(model: AnalyticModel, z):
    """Residual of ``P_f(z) = (w + z)/(1 + conj(z) w)`` with ``w = 1/A_f(z)``.

    Where ``|P_f| > 1`` (including the point at infinity) the equivalent
    reciprocal form ``1/P_f = (A + conj z)/(1 + z A)`` is compared instead, so the
    residual stays an absolute error on a bounded quantity.
    """
    z = np.asarray(z, dtype=complex)
    p = np.asarray(pole(model, z), dtype=complex)
    A = np.asarray(a_operator(model, z), dtype=complex)
    zb = np.conj(z)
    with np.errstate(divide="ignore", invalid="ignore"):
        near = (np.abs(p) <= 1) & (A != 0)
        direct = np.abs(p - (1 + z * A) / (A + zb))
        recip_p = np.where(is_infinite(p), 0, 1 / np.where(p == 0, 1, p))
        recip = np.abs(recip_p - (A + zb) / (1 + z * A))
    res = np.where(near, direct, recip)
    return float(res) if res.ndim == 0 else res


@dataclass(frozen=True)
class PointClassification:
    radial: str  # outward | on-circle | inward
    collinear: bool
    antipodal: bool
    re_value: float


def classify_values(z, q, band: float = CLASSIFY_BAND):
    """Vectorized classification from ``zeta`` and ``q(zeta)``; returns (radial sign, collinear, antipodal, re)."""
    u = np.asarray(z) * np.asarray(q)
    re = np.real(1 + u)
    sign = np.where(re > band, 1, np.where(re < -band, -1, 0))
    return sign, np.abs(np.imag(u)) <= band, np.abs(1 + u) <= band, re


def classify_point(model: AnalyticModel, zeta) -> PointClassification:
    """Where the pole sits relative to the circle ``|z| = |zeta|`` and the ray through zeta."""
    zeta = complex(zeta)
    sign, col, anti, re = classify_values(zeta, complex(model.q(zeta)))
    radial = {1: "outward", 0: "on-circle", -1: "inward"}[int(sign)]
    return PointClassification(radial, bool(col), bool(anti), float(re))


def schwarzian(model: AnalyticModel, z):
    """``Sf = q' - q^2/2``."""
    q, dq = model.preschwarzian(np.asarray(z, dtype=complex))
    return _scalar(dq - 0.5 * q * q)


# invariance transforms -------------------------------------------------------
def affine(model: AnalyticModel, a: complex, b: complex) -> AnalyticModel:
    """Model of ``a f + b``."""
    if a == 0:
        raise ValueError("affine map needs a != 0")
    label = f"{a}*({model.label})+{b}"
    if model.kind != "full":
        return model.replace(label=label)

    def jet(z):
        j = model.jet_at(z)
        return Jet3(a * j.v + b, a * j.d1, a * j.d2, a * j.d3)

    return model.replace(label=label, jet_fn=jet)


def conjugate_by_automorphism(model: AnalyticModel, a) -> AnalyticModel:
    """Model of ``f o sigma_a``; orders are preserved, class tags are not."""
    a = complex(a)
    if abs(a) >= 1:
        raise ValueError("automorphism parameter must lie in the unit disk")
    if a == 0:
        return model
    ab = np.conj(a)

    def sigma_jet(z):
        zj = Jet3.variable(z)
        return (zj + a) / (1 + ab * zj)

    kw = dict(label=f"({model.label})o sigma[{a:.4g}]", meta=None, extremal_for={})
    if model.kind == "full":
        def jet(z):
            s = sigma_jet(z)
            return model.jet_at(s.v).compose(s)
        return model.replace(jet_fn=jet, **kw)

    def pre(z):
        z = np.asarray(z, dtype=complex)
        den = 1 + ab * z
        s = (z + a) / den
        s1 = (1 - abs(a) ** 2) / den ** 2
        q, dq = model.preschwarzian(s)
        # (log sigma')' = -2 conj(a)/(1 + conj(a) z)
        return q * s1 - 2 * ab / den, dq * s1 ** 2 + q * (-2 * ab * s1 / den) + 2 * ab ** 2 / den ** 2

    return model.replace(kind="preschwarzian", pre_fn=pre, schwarzian_fn=None, **kw)


def dilate(model: AnalyticModel, r: float) -> AnalyticModel:
    """Model of ``f_r(z) = f(r z)``."""
    if not 0 < r < 1:
        raise ValueError("dilation factor must lie in (0, 1)")
    kw = dict(label=f"({model.label})[r={r:g}]", meta=None, extremal_for={}, orders=None)
    if model.kind == "full":
        def jet(z):
            j = model.jet_at(r * np.asarray(z, dtype=complex))
            return Jet3(j.v, r * j.d1, r ** 2 * j.d2, r ** 3 * j.d3)
        return model.replace(jet_fn=jet, **kw)

    def pre(z):
        q, dq = model.preschwarzian(r * np.asarray(z, dtype=complex))
        return r * q, r * r * dq

    return model.replace(pre_fn=pre, schwarzian_fn=None, **kw)
