"""Seeded low-discrepancy samples of the unit disk."""
import numpy as np
from scipy.stats import qmc


def disk_samples(count: int, seed: int = 42, radius_cap: float = 1 - 1e-6) -> np.ndarray:
    """Scrambled Halton points mapped to the disk through ``(r^2, theta)``.

    Uniform in ``r^2`` means uniform by area, which puts most points near the
    boundary where the inequalities are tight.
    """
    if not 0 < radius_cap < 1:
        raise ValueError("radius_cap must lie in (0, 1)")
    u = qmc.Halton(d=2, scramble=True, seed=seed).random(count)
    r = radius_cap * np.sqrt(u[:, 0])
    return r * np.exp(2j * np.pi * u[:, 1])
