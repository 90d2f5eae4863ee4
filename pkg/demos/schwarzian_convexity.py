"""Convexity from bounds on the Schwarzian derivative.

|Sf| <= 2a^2 with 2a tan(a) = 1 and f''(0) = 0 forces all poles outside the
disk.  exp(2az) has |Sf| = 2a^2 but f''(0) != 0, and its poles z + 1/a come
within 1/a - 1 < 1 of the origin, so the normalization cannot be dropped.

For |Sf| <= 2t/(1-|z|^2)^2 the estimate |P_f| >= (1-r^2)/(t r) - r is at least
1 exactly when r <= 1/(1+t); sampling shows poles inside the disk beyond that
radius.
"""
import numpy as np

from bmapoles import (SchwarzianProfile, catalog, convexity_certificate, critical_a, pole,
                      nehari_region_check)
from bmapoles.models import bounded_schwarzian_member, nehari_member
from bmapoles.orders import extremize


def main():
    a = critical_a()
    print(f"critical a = {a:.15f}")

    m = bounded_schwarzian_member(2 * a * a, seed=1)
    cert = convexity_certificate(m, SchwarzianProfile("constant"))
    print(f"random map with |Sf| <= 2a^2: {cert.status}, min |P| = {cert.min_pole_modulus:.4f}")

    e = catalog("exp_map", b=2 * a)
    cert = convexity_certificate(e, SchwarzianProfile("constant"))
    v, w, _ = extremize(lambda z: np.abs(pole(e, z)), "min", radius_cap=1 - 1e-12)
    print(f"exp(2az): {cert.status} ({cert.reason}); min |P| = {v:.10f} at z = {w:.4f}")

    for t in (0.5, 1.0):
        nm = nehari_member(t, seed=1)
        inner = nehari_region_check(nm, t, region="inner")
        outer = nehari_region_check(nm, t, region="outer")
        print(f"t={t}: |z| <= {1 / (1 + t):.3f}: {inner.verdict} (min |P|-1 = {inner.min_margin:.3f}); "
              f"|z| >= {1 / (1 + t):.3f}: {outer.verdict} (min |P|-1 = {outer.min_margin:.3f})")


if __name__ == "__main__":
    main()
