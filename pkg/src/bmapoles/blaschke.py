"""Finite Blaschke products on the unit disk."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as npoly

from .jets import Jet3


@dataclass(frozen=True)
class BlaschkeProduct:
    """``u * prod (z - a_j) / (1 - conj(a_j) z)`` with ``|a_j| < 1``, ``|u| = 1``."""

    zeros: tuple = ()
    unimodular: complex = 1 + 0j
    _zeros: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        zs = np.asarray(self.zeros, dtype=complex).reshape(-1)
        if np.any(np.abs(zs) >= 1):
            raise ValueError("Blaschke zeros must lie in the open unit disk")
        u = complex(self.unimodular)
        if abs(abs(u) - 1) > 1e-12:
            raise ValueError("unimodular constant must have modulus 1")
        object.__setattr__(self, "zeros", tuple(complex(a) for a in zs))
        object.__setattr__(self, "unimodular", u)
        object.__setattr__(self, "_zeros", zs)

    @property
    def degree(self) -> int:
        return len(self.zeros)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.full(z.shape, self.unimodular, dtype=complex)
        for a in self._zeros:
            out = out * (z - a) / (1 - np.conj(a) * z)
        return out if out.ndim else complex(out)

    def jet(self, z) -> Jet3:
        zj = Jet3.variable(z)
        out = Jet3.constant(self.unimodular + 0 * zj.v)
        for a in self._zeros:
            out = out * ((zj - a) / (1 - np.conj(a) * zj))
        return out

    def polynomials(self):
        """Numerator and denominator coefficients, ascending powers of z."""
        num = np.array([self.unimodular])
        den = np.array([1 + 0j])
        for a in self._zeros:
            num = npoly.polymul(num, [-a, 1])
            den = npoly.polymul(den, [1, -np.conj(a)])
        return num, den


def random_blaschke(rng: np.random.Generator, degree: int, max_modulus: float = 0.8) -> BlaschkeProduct:
    """Zeros uniform (by area) in ``|z| <= max_modulus`` and a random unimodular constant."""
    r = max_modulus * np.sqrt(rng.random(degree))
    zeros = r * np.exp(2j * np.pi * rng.random(degree))
    u = np.exp(2j * np.pi * rng.random())
    return BlaschkeProduct(tuple(zeros), u)
