"""Order-3 complex jets.

A :class:`Jet3` carries the value and the first three complex derivatives of
an analytic function at a point.  Fields may be Python complex numbers or
numpy arrays of matching shape, in which case every operation acts
element-wise, so whole sample grids are pushed through one jet evaluation.

    >>> z = Jet3.variable(0.0)
    >>> (1 / (1 - z)).as_tuple()
    ((1+0j), (1+0j), (2+0j), (6+0j))
"""
from __future__ import annotations

from dataclasses import dataclass
from numbers import Number

import numpy as np


class DegenerateJet(ZeroDivisionError):
    """Division by a jet whose value vanishes."""


class BranchCut(ValueError):
    """A principal-branch function was evaluated on its cut (-inf, 0]."""


def _as_complex(x):
    if isinstance(x, np.ndarray):
        return x.astype(complex, copy=False)
    return complex(x)


@dataclass(frozen=True)
class Jet3:
    v: complex
    d1: complex = 0j
    d2: complex = 0j
    d3: complex = 0j

    # keep numpy from broadcasting over a Jet3 operand
    __array_ufunc__ = None

    @classmethod
    def constant(cls, c) -> "Jet3":
        c = _as_complex(c)
        zero = np.zeros_like(c) if isinstance(c, np.ndarray) else 0j
        return cls(c, zero, zero, zero)

    @classmethod
    def variable(cls, z0) -> "Jet3":
        """Jet of the identity map at ``z0``: (z0, 1, 0, 0)."""
        z0 = _as_complex(z0)
        if isinstance(z0, np.ndarray):
            return cls(z0, np.ones_like(z0), np.zeros_like(z0), np.zeros_like(z0))
        return cls(z0, 1 + 0j, 0j, 0j)

    def as_tuple(self):
        return (self.v, self.d1, self.d2, self.d3)

    def compose(self, inner: "Jet3") -> "Jet3":
        """Jet of ``phi o inner`` where ``self`` holds phi's derivatives at ``inner.v``."""
        return _chain(inner, self.v, self.d1, self.d2, self.d3)

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = lift(other)
        return Jet3(self.v + other.v, self.d1 + other.d1,
                    self.d2 + other.d2, self.d3 + other.d3)

    __radd__ = __add__

    def __neg__(self):
        return Jet3(-self.v, -self.d1, -self.d2, -self.d3)

    def __sub__(self, other):
        return self + (-lift(other))

    def __rsub__(self, other):
        return lift(other) + (-self)

    def __mul__(self, other):
        b = lift(other)
        a = self
        return Jet3(
            a.v * b.v,
            a.d1 * b.v + a.v * b.d1,
            a.d2 * b.v + 2 * a.d1 * b.d1 + a.v * b.d2,
            a.d3 * b.v + 3 * a.d2 * b.d1 + 3 * a.d1 * b.d2 + a.v * b.d3,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * reciprocal(lift(other))

    def __rtruediv__(self, other):
        return lift(other) * reciprocal(self)

    def __pow__(self, exponent):
        if isinstance(exponent, Jet3):
            return jet_exp(exponent * jet_log(self))
        return jet_pow(self, exponent)

    def __rpow__(self, base):
        return jet_exp(self * jet_log(lift(base)))


def lift(x) -> Jet3:
    if isinstance(x, Jet3):
        return x
    if isinstance(x, (Number, np.ndarray, np.number)):
        return Jet3.constant(x)
    return NotImplemented


def _chain(a: Jet3, p0, p1, p2, p3) -> Jet3:
    # Faa di Bruno through third order
    return Jet3(
        p0,
        p1 * a.d1,
        p2 * a.d1 ** 2 + p1 * a.d2,
        p3 * a.d1 ** 3 + 3 * p2 * a.d1 * a.d2 + p1 * a.d3,
    )


def _check_nonzero(v):
    if np.any(np.asarray(v) == 0):
        raise DegenerateJet("jet value is zero")


def _check_cut(v, name):
    v = np.asarray(v)
    if np.any((v.imag == 0) & (v.real <= 0)):
        raise BranchCut(f"{name} evaluated on the branch cut (-inf, 0]")


def reciprocal(a: Jet3) -> Jet3:
    _check_nonzero(a.v)
    r = 1 / a.v
    return _chain(a, r, -r ** 2, 2 * r ** 3, -6 * r ** 4)


def jet_add(a, b) -> Jet3:
    return lift(a) + lift(b)


def jet_mul(a, b) -> Jet3:
    return lift(a) * lift(b)


def jet_div(a, b) -> Jet3:
    return lift(a) / lift(b)


def jet_exp(a: Jet3) -> Jet3:
    e = np.exp(a.v)
    return _chain(a, e, e, e, e)


def jet_log(a: Jet3) -> Jet3:
    _check_cut(a.v, "log")
    r = 1 / a.v
    return _chain(a, np.log(a.v), r, -r ** 2, 2 * r ** 3)


def _integer_exponent(c):
    c = complex(c)
    if c.imag == 0 and float(c.real).is_integer():
        return int(c.real)
    return None


def jet_pow(a: Jet3, exponent) -> Jet3:
    """Principal power ``a ** exponent`` for a constant exponent.

    Integer exponents have no branch cut; a negative integer exponent still
    needs a nonzero base.
    """
    n = _integer_exponent(exponent)
    x = a.v
    if n is not None:
        if n < 0:
            _check_nonzero(x)
        if n == 0:
            return Jet3.constant(np.ones_like(x) if isinstance(x, np.ndarray) else 1)

        def p(k):
            if n - k >= 0:
                return x ** (n - k)
            if n > 0:  # falling factorial already vanishes
                return 0 * x
            return (1 / x) ** (k - n)

        return _chain(a, p(0), n * p(1), n * (n - 1) * p(2),
                      n * (n - 1) * (n - 2) * p(3))
    _check_cut(x, "pow")
    c = complex(exponent)
    lx = np.log(x)
    p0 = np.exp(c * lx)
    return _chain(a, p0, c * p0 / x, c * (c - 1) * p0 / x ** 2,
                  c * (c - 1) * (c - 2) * p0 / x ** 3)


def jet_sqrt(a: Jet3) -> Jet3:
    _check_cut(a.v, "sqrt")
    return jet_pow(a, 0.5)


def jet_tan(a: Jet3) -> Jet3:
    t = np.tan(a.v)
    s = 1 + t * t
    return _chain(a, t, s, 2 * t * s, 2 * s * (1 + 3 * t * t))
