"""Counting solutions of P_f(z) = c for maps onto polygons.

For the interior of a polygon P_f = Bm/Bk is a ratio of Blaschke products, so
P_f takes every value outside the closed disk k times and every value inside
it m times.  The cross-shaped domain gives the rational function
(1 + z^4 + 2 z^8)/(z^3 + 3 z^7), with 7 preimages of 2 and 8 of 0.
"""
import numpy as np

from bmapoles.polygon import (count_preimages_roots, count_preimages_winding, cross_rational,
                              pole_rational, random_polygon_model)


def main():
    P = cross_rational()
    for c in (2, 0):
        print(f"cross: #{{P = {c}}} = {count_preimages_winding(P, c)} (winding), "
              f"{count_preimages_roots(P, c)} (roots)")

    rng = np.random.default_rng(0)
    for variant in ("interior", "exterior"):
        pm = random_polygon_model(4, variant)
        P = pole_rational(pm)
        outside = 2 * np.exp(2j * np.pi * rng.random())
        inside = 0.5 * np.exp(2j * np.pi * rng.random())
        print(f"{variant} k={pm.k} m={pm.m}: |c|>1 -> {count_preimages_winding(P, outside)}, "
              f"|c|<1 -> {count_preimages_winding(P, inside)}")


if __name__ == "__main__":
    main()
