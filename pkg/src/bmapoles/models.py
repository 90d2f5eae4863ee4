"""Analytic models: closed-form catalog functions, random class members and
models known only through their pre-Schwarzian ``q = f''/f'``.

Every model answers ``preschwarzian(z) -> (q, q')``; models of kind
``"full"`` also answer ``jet_at(z)`` with the order-3 jet of ``f`` itself.
All evaluators accept scalars or numpy arrays.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional

import numpy as np

from .blaschke import BlaschkeProduct, random_blaschke
from .jets import Jet3, jet_log, jet_pow, jet_exp, jet_sqrt


class ModelError(ValueError):
    """Unknown catalog name, bad parameters or an unsupported request."""


# ---------------------------------------------------------------------------
# function classes
# ---------------------------------------------------------------------------
CLASS_VARIANTS = ("convex_order", "janowski", "robertson", "starlike", "starlike_half",
                  "ozaki", "umezawa", "noshiro", "nehari", "schlicht")


@dataclass(frozen=True)
class ClassSpec:
    """A function class with its parameters, validated at construction."""

    variant: str
    alpha: Optional[float] = None
    A: Optional[float] = None
    B: Optional[float] = None
    lam: Optional[float] = None
    t: Optional[float] = None

    def __post_init__(self):
        v = self.variant
        if v not in CLASS_VARIANTS:
            raise ModelError(f"unknown class {v!r}")
        need = {"convex_order": ("alpha",), "janowski": ("A", "B"), "robertson": ("alpha",),
                "ozaki": ("lam",), "umezawa": ("alpha",), "nehari": ("t",)}.get(v, ())
        for name in need:
            if getattr(self, name) is None:
                raise ModelError(f"class {v} needs parameter {name}")
        a, A, B = self.alpha, self.A, self.B
        ok = {
            "convex_order": lambda: a < 1,
            "janowski": lambda: -1 <= B < A <= 1,
            "robertson": lambda: abs(a) < math.pi / 2,
            "ozaki": lambda: 0.5 <= self.lam <= 1,
            "umezawa": lambda: a > 1.5,
            "nehari": lambda: 0 < self.t <= 1,
        }.get(v, lambda: True)()
        if not ok:
            raise ModelError(f"parameters out of range for {v}: {self.params()}")

    def params(self) -> dict:
        return {k: getattr(self, k) for k in ("alpha", "A", "B", "lam", "t")
                if getattr(self, k) is not None}

    def convexity_order(self) -> Optional[float]:
        """Lower bound for Re{1 + z q} implied by membership, when the class is of that form."""
        if self.variant == "convex_order":
            return self.alpha
        if self.variant == "ozaki":
            return 0.5 - self.lam
        if self.variant == "umezawa":
            return -self.alpha / (2 * self.alpha - 3)
        return None

    def __str__(self):
        ps = ",".join(f"{k}={v:g}" for k, v in self.params().items())
        return f"{self.variant}({ps})" if ps else self.variant


# ---------------------------------------------------------------------------
# models
# ---------------------------------------------------------------------------
@dataclass(frozen=True, eq=False)
class AnalyticModel:
    label: str
    kind: str  # "full" | "preschwarzian"
    jet_fn: Optional[Callable] = None
    pre_fn: Optional[Callable] = None
    meta: Optional[ClassSpec] = None
    # bound id -> callable(n) returning points of the equality locus
    extremal_for: Mapping[str, Callable] = field(default_factory=dict)
    # exact (lower, upper) Pommerenke orders when known in closed form
    orders: Optional[tuple] = None
    # prescribed Schwarzian for models reconstructed from it
    schwarzian_fn: Optional[Callable] = None

    def __post_init__(self):
        if self.kind == "full" and self.jet_fn is None:
            raise ModelError("full model needs a jet function")
        if self.kind == "preschwarzian" and self.pre_fn is None:
            raise ModelError("pre-Schwarzian model needs q and q'")
        if self.kind not in ("full", "preschwarzian"):
            raise ModelError(f"unknown model kind {self.kind!r}")

    def jet_at(self, z) -> Jet3:
        if self.jet_fn is None:
            raise ModelError(f"model {self.label!r} is known only through its pre-Schwarzian")
        return self.jet_fn(z)

    def preschwarzian(self, z):
        """``(q, q')`` at ``z`` with ``q = f''/f'``."""
        if self.pre_fn is not None:
            return self.pre_fn(z)
        j = self.jet_fn(z)
        with np.errstate(divide="ignore", invalid="ignore"):
            q = j.d2 / j.d1
            return q, j.d3 / j.d1 - q * q

    def q(self, z):
        return self.preschwarzian(z)[0]

    def replace(self, **changes) -> "AnalyticModel":
        kw = dict(label=self.label, kind=self.kind, jet_fn=self.jet_fn, pre_fn=self.pre_fn,
                  meta=self.meta, extremal_for=self.extremal_for, orders=self.orders,
                  schwarzian_fn=self.schwarzian_fn)
        kw.update(changes)
        return AnalyticModel(**kw)


def full_model(label, f: Callable[[Jet3], Jet3], **kw) -> AnalyticModel:
    """Model from a closed form written in jet arithmetic on the variable ``z``."""
    return AnalyticModel(label, "full", jet_fn=lambda z: f(Jet3.variable(z)), **kw)


def preschwarzian_model(label, q: Callable[[Jet3], Jet3], **kw) -> AnalyticModel:
    """Model from a closed form for ``q`` in jet arithmetic; ``q'`` comes from the jet."""

    def pre(z):
        j = q(Jet3.variable(z))
        return j.v, j.d1

    return AnalyticModel(label, "preschwarzian", pre_fn=pre, **kw)


# equality loci ---------------------------------------------------------------
def ray(angle: float, r_max: float = 0.999):
    def pts(n):
        return np.linspace(0.0, r_max, n) * np.exp(1j * angle)
    return pts


def diameter(angle: float, r_max: float = 0.999):
    def pts(n):
        return np.linspace(-r_max, r_max, n) * np.exp(1j * angle)
    return pts


def whole_disk(r_max: float = 0.999):
    def pts(n):
        from .sampling import disk_samples
        return disk_samples(n, seed=0, radius_cap=r_max)
    return pts


def _unit(z: complex) -> float:
    return float(np.angle(z))


# catalog ---------------------------------------------------------------------
def _power(a=0.5):
    a = float(a)
    if a == 0:
        raise ModelError("power map needs a != 0")
    ext = {}
    if 0 < a < 1:
        ext["lower_order"] = ray(0.0)
    if a >= 1:
        ext["pseudo_hyperbolic"] = diameter(0.0)
    return full_model(f"power(a={a:g})", lambda z: jet_pow((1 + z) / (1 - z), a),
                      extremal_for=ext, orders=(min(abs(a), 1.0), max(abs(a), 1.0)))


def _convex_order(alpha=0.0):
    al = float(alpha)
    spec = ClassSpec("convex_order", alpha=al)
    if al == 0.5:
        f = lambda z: -jet_log(1 - z)
    else:
        p = 2 * al - 1
        f = lambda z: (1 - jet_pow(1 - z, p)) / p
    ext = {"convex_alpha": whole_disk()}
    ext["modulus_alpha"] = whole_disk() if al == 0 else ray(0.0 if al > 0 else math.pi)
    return full_model(f"convex_order(alpha={al:g})", f, meta=spec, extremal_for=ext)


def _janowski(A=1.0, B=-1.0):
    A, B = float(A), float(B)
    spec = ClassSpec("janowski", A=A, B=B)
    if A != 0 and B != 0:
        f = lambda z: (jet_pow(1 + B * z, A / B) - 1) / A
    elif A == 0:
        f = lambda z: jet_log(1 + B * z) / B
    else:
        f = lambda z: (jet_exp(A * z) - 1) / A
    s = A + B
    locus = whole_disk() if s == 0 else ray(math.pi if s > 0 else 0.0)
    return full_model(f"janowski(A={A:g},B={B:g})", f, meta=spec, extremal_for={"janowski": locus})


def _robertson(alpha=0.0):
    al = float(alpha)
    lam = complex(np.exp(2j * al))
    f = lambda z: (jet_pow(1 - z, -lam) - 1) / lam
    locus = whole_disk() if al == 0 else ray(-_unit(1 - lam))
    # q = (1 + e^{2i alpha})/(1 - z) makes e^{-i alpha}(1 + z q) the half-plane map,
    # i.e. this function lies in S_{-alpha}; the bound is even in alpha
    return full_model(f"robertson(alpha={al:g})", f, meta=ClassSpec("robertson", alpha=-al),
                      extremal_for={"robertson": locus})


def _koebe(theta=0.0):
    e = complex(np.exp(1j * float(theta)))
    return full_model(f"koebe(theta={float(theta):g})", lambda z: z / (1 - e * z) ** 2,
                      meta=ClassSpec("starlike"), extremal_for={"starlike": ray(-float(theta))})


def _half_plane(theta=0.0):
    e = complex(np.exp(1j * float(theta)))
    return full_model(f"half_plane(theta={float(theta):g})", lambda z: z / (1 - e * z),
                      meta=ClassSpec("starlike_half"),
                      extremal_for={"starlike_half": ray(-float(theta))}, orders=(1.0, 1.0))


def _noshiro_extremal(theta=0.0):
    th = float(theta)
    e = complex(np.exp(1j * th))
    return full_model(f"noshiro_extremal(theta={th:g})",
                      lambda z: -2 / e * jet_log(1 - e * z) - z,
                      meta=ClassSpec("noshiro"), extremal_for={"noshiro": diameter(-th)})


def _exp_map(b=1.0):
    b = complex(b)
    return full_model(f"exp_map(b={b.real:g}{b.imag:+g}i)" if b.imag else f"exp_map(b={b.real:g})",
                      lambda z: jet_exp(b * z))


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(48)


def _cross_derivative(z: Jet3) -> Jet3:
    z4 = z ** 4
    return 1 / ((1 - z4) * jet_sqrt(1 + z4))


def _cross_value(z):
    # f(z) = z * int_0^1 f'(s z) ds by Gauss-Legendre; display only
    z = np.asarray(z, dtype=complex)
    s = 0.5 * (_GL_NODES + 1)
    w = 0.5 * _GL_WEIGHTS
    zs = z[..., None] * s
    vals = 1 / ((1 - zs ** 4) * np.sqrt(1 + zs ** 4))
    out = z * (vals * w).sum(axis=-1)
    return out if out.ndim else complex(out)


def _cross():
    def jet(z):
        d = _cross_derivative(Jet3.variable(z))
        return Jet3(_cross_value(z), d.v, d.d1, d.d2)
    return AnalyticModel("cross", "full", jet_fn=jet)


def _identity():
    return full_model("identity", lambda z: z, orders=(0.0, 1.0))


def _moebius(a=1.0):
    a = complex(a)
    return full_model(f"moebius(a={a.real:g}{a.imag:+g}i)" if a.imag else f"moebius(a={a.real:g})",
                      lambda z: z / (1 - a * z),
                      orders=(1.0, 1.0) if abs(abs(a) - 1) < 1e-15 else None)


CATALOG = {
    "power": _power,
    "convex_order": _convex_order,
    "janowski": _janowski,
    "robertson": _robertson,
    "koebe": _koebe,
    "half_plane": _half_plane,
    "noshiro_extremal": _noshiro_extremal,
    "exp_map": _exp_map,
    "cross": _cross,
    "identity": _identity,
    "moebius": _moebius,
}


def catalog(name: str, **params) -> AnalyticModel:
    """Named closed-form model, e.g. ``catalog("power", a=0.5)``."""
    try:
        build = CATALOG[name]
    except KeyError:
        raise ModelError(f"unknown catalog model {name!r}") from None
    try:
        return build(**params)
    except TypeError as exc:
        raise ModelError(f"bad parameters for {name}: {exc}") from None


# ---------------------------------------------------------------------------
# Schwarz functions and random class members
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class SelfMapModel:
    """``h(z) = z g(z)`` with ``g`` a finite Blaschke product (so ``|h| < 1``, ``h(0) = 0``)."""

    g: BlaschkeProduct

    def g_jet(self, z) -> Jet3:
        return self.g.jet(z)

    def h_jet(self, z) -> Jet3:
        return Jet3.variable(z) * self.g.jet(z)

    def __call__(self, z):
        return np.asarray(z) * self.g(z)


def random_self_map(seed: int, degree: int) -> SelfMapModel:
    if degree not in (0, 1, 2, 3):
        raise ModelError("self-map degree must be in 0..3")
    rng = np.random.default_rng(seed)
    return SelfMapModel(random_blaschke(rng, degree))


def _derivative(a: Jet3) -> Jet3:
    # jet of a' truncated at order 2
    return Jet3(a.d1, a.d2, a.d3, np.nan * a.d3)


def _member_q(spec: ClassSpec):
    """q as a function of the jet variable, from the class's subordination identity."""
    v = spec.variant
    if v in ("convex_order", "ozaki", "umezawa"):
        al = spec.convexity_order()
        return lambda z, g: 2 * (1 - al) * g / (1 - z * g)
    if v == "janowski":
        A, B = spec.A, spec.B
        return lambda z, g: (A - B) * g / (1 + B * z * g)
    if v == "robertson":
        c = 1 + complex(np.exp(-2j * spec.alpha))
        return lambda z, g: c * g / (1 - z * g)
    if v in ("starlike", "schlicht"):
        def q(z, g):
            w = z * g
            return 2 * (_derivative(w) + g + g * w) / (1 - w * w)
        return q
    if v == "starlike_half":
        def q(z, g):
            w = z * g
            return (g + _derivative(w)) / (1 - w)
        return q
    if v == "noshiro":
        def q(z, g):
            w = z * g
            return 2 * _derivative(w) / (1 - w * w)
        return q
    raise ModelError(f"no subordination generator for {v}")


def member_from_self_map(spec: ClassSpec, sm: SelfMapModel, label: str = None) -> AnalyticModel:
    """Pre-Schwarzian model of the class member whose Schwarz function is ``z g(z)``."""
    qf = _member_q(spec)

    def pre(z):
        zj = Jet3.variable(z)
        j = qf(zj, sm.g_jet(z))
        return j.v, j.d1

    return AnalyticModel(label or f"{spec}[g deg {sm.g.degree}]", "preschwarzian",
                         pre_fn=pre, meta=spec)


def random_class_member(spec: ClassSpec, seed: int, degree: int = 2) -> AnalyticModel:
    """Random member of ``spec`` built from a random Blaschke factor ``g`` of ``h = z g``."""
    if spec.variant == "nehari":
        return nehari_member(spec.t, seed, degree)
    sm = random_self_map(seed, degree)
    return member_from_self_map(spec, sm, f"{spec}[seed={seed},deg={degree}]")


# Riccati reconstruction --------------------------------------------------------
RICCATI_STEP = 1e-3


def _radial_mesh(r_end: float, step: float = RICCATI_STEP):
    mesh = [0.0]
    r = 0.0
    while r < r_end:
        # uniform steps, graded toward the boundary where Sf grows
        r = min(r + min(step, (1 - r) / 20), r_end)
        mesh.append(r)
    return np.array(mesh)


def integrate_riccati(schwarzian: Callable, z, step: float = RICCATI_STEP):
    """Solve ``q' = S + q^2/2``, ``q(0) = 0`` along the radius to each ``z`` (RK4).

    Returns ``q(z)`` with the shape of ``z``.
    """
    z = np.asarray(z, dtype=complex)
    flat = z.reshape(-1)
    R = np.abs(flat)
    if R.size and R.max() >= 1:
        raise ModelError("Riccati reconstruction needs |z| < 1")
    u = np.where(R > 0, flat / np.where(R > 0, R, 1), 1)
    q = np.zeros_like(flat)
    if R.size:
        mesh = _radial_mesh(R.max(), step)
        for r0, r1 in zip(mesh[:-1], mesh[1:]):
            act = R > r0
            if not act.any():
                break
            idx = np.nonzero(act)[0]
            uu = u[idx]
            h = np.minimum(r1, R[idx]) - r0
            qq = q[idx]

            def rhs(r, qv):
                return uu * (schwarzian(r * uu) + 0.5 * qv * qv)

            k1 = rhs(r0, qq)
            k2 = rhs(r0 + h / 2, qq + h / 2 * k1)
            k3 = rhs(r0 + h / 2, qq + h / 2 * k2)
            k4 = rhs(r0 + h, qq + h * k3)
            q[idx] = qq + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
    out = q.reshape(z.shape)
    return out if out.ndim else complex(out)


def riccati_model(label: str, schwarzian: Callable, meta: ClassSpec = None,
                  step: float = RICCATI_STEP) -> AnalyticModel:
    """Model with prescribed Schwarzian and ``f''(0) = 0``; q' follows from the Riccati relation."""

    def pre(z):
        q = integrate_riccati(schwarzian, z, step)
        return q, schwarzian(z) + 0.5 * q * q

    return AnalyticModel(label, "preschwarzian", pre_fn=pre, meta=meta, schwarzian_fn=schwarzian)


def nehari_member(t: float, seed: int, degree: int = 2) -> AnalyticModel:
    """Member of N_0-type class with ``Sf = 2 t s(z)/(1 - z^2)^2``, ``s`` a random self-map."""
    spec = ClassSpec("nehari", t=t)
    sm = random_self_map(seed, degree)

    def S(z):
        return 2 * t * sm(z) / (1 - z * z) ** 2

    return riccati_model(f"{spec}[seed={seed},deg={degree}]", S, meta=spec)


def bounded_schwarzian_member(bound: float, seed: int, degree: int = 2) -> AnalyticModel:
    """``Sf = bound * s(z)`` with ``s`` a random self-map, so ``|Sf| <= bound`` and ``f''(0) = 0``."""
    sm = random_self_map(seed, degree)
    return riccati_model(f"|Sf|<={bound:g}[seed={seed},deg={degree}]",
                         lambda z: bound * sm(z))


# JSON model specs ------------------------------------------------------------
def model_from_spec(spec: Mapping) -> AnalyticModel:
    """Build a model from the JSON-style mapping used on the command line."""
    kind = spec.get("kind")
    if kind == "catalog":
        return catalog(spec["name"], **spec.get("params", {}))
    if kind == "expr":
        from .formula import parse, eval_jet
        expr = parse(spec["formula"])
        return AnalyticModel(spec["formula"], "full", jet_fn=lambda z: eval_jet(expr, z))
    if kind == "class":
        name = spec["class"]
        params = {k: spec[k] for k in ("alpha", "A", "B", "lam", "t") if k in spec}
        cls = ClassSpec(name, **params)
        return random_class_member(cls, int(spec.get("seed", 42)), int(spec.get("degree", 2)))
    raise ModelError(f"unknown model spec kind {kind!r}")
