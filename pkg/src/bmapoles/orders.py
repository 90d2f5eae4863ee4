"""Upper and lower Pommerenke orders, sup and inf of ``|A_f|`` over the disk.

Both are estimated by a polar grid search followed by a bounded Nelder-Mead
polish in ``(r, theta)``.  The radius is capped below 1, so the upper order is
a lower bound of the true supremum and the lower order an upper bound of the
true infimum.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .bma import a_operator
from .models import AnalyticModel

DEFAULT_CAP = 1 - 1e-4


@dataclass(frozen=True)
class OrderEstimate:
    value: float
    witness: complex
    radius_cap: float
    samples: int


def polar_grid(radius_cap: float, n_r: int, n_theta: int) -> np.ndarray:
    # cosine clustering toward the boundary, r = 0 included
    r = radius_cap * np.sin(0.5 * np.pi * np.linspace(0.0, 1.0, n_r))
    theta = 2 * np.pi * np.arange(n_theta) / n_theta
    return r[:, None] * np.exp(1j * theta)[None, :]


def extremize(fn, mode: str = "max", radius_cap: float = DEFAULT_CAP,
              grid=(256, 512), refine_iters: int = 60):
    """Maximize or minimize a real function of ``z`` over ``|z| <= radius_cap``.

    Returns ``(value, witness, evaluations)``.  The polished value is never
    worse than the best grid value.
    """
    sgn = 1.0 if mode == "max" else -1.0
    pts = polar_grid(radius_cap, *grid)
    with np.errstate(all="ignore"):
        vals = sgn * np.asarray(fn(pts), dtype=float)
    vals = np.where(np.isnan(vals), -np.inf, vals)
    k = np.unravel_index(np.argmax(vals), vals.shape)
    best_z, best = complex(pts[k]), float(vals[k])
    n_eval = pts.size

    if refine_iters > 0 and np.isfinite(best):
        def obj(x):
            v = sgn * float(fn(np.array([x[0] * np.exp(1j * x[1])]))[0])
            return -v if np.isfinite(v) else np.inf

        x0 = np.array([abs(best_z), np.angle(best_z)])
        step = np.array([radius_cap / grid[0], 2 * np.pi / grid[1]])
        simplex = np.array([x0, x0 + [step[0], 0], x0 + [0, step[1]]])
        simplex[:, 0] = np.clip(simplex[:, 0], 0, radius_cap)
        res = minimize(obj, x0, method="Nelder-Mead",
                       bounds=[(0, radius_cap), (None, None)],
                       options=dict(maxiter=refine_iters, initial_simplex=simplex,
                                    xatol=1e-14, fatol=1e-16))
        n_eval += res.nfev
        cand = min(float(res.x[0]), radius_cap) * np.exp(1j * res.x[1])
        val = sgn * float(fn(np.array([cand]))[0])
        if val > best:
            best, best_z = val, complex(cand)
    return sgn * best, complex(best_z), n_eval


def _abs_a(model):
    return lambda z: np.abs(a_operator(model, z))


def upper_order(model: AnalyticModel, radius_cap: float = DEFAULT_CAP,
                grid=(256, 512), refine_iters: int = 60) -> OrderEstimate:
    """Estimate ``sup |A_f|`` (a lower bound of the true value)."""
    v, w, n = extremize(_abs_a(model), "max", radius_cap, grid, refine_iters)
    return OrderEstimate(v, w, radius_cap, n)


def lower_order(model: AnalyticModel, radius_cap: float = DEFAULT_CAP,
                grid=(256, 512), refine_iters: int = 60) -> OrderEstimate:
    """Estimate ``inf |A_f|`` (an upper bound of the true value)."""
    v, w, n = extremize(_abs_a(model), "min", radius_cap, grid, refine_iters)
    return OrderEstimate(v, w, radius_cap, n)
