"""Poles of the best Möbius approximation for the power maps ((1+z)/(1-z))^a.

The pole function is P_f(z) = (1 + a z)/(a + z).  For a < 1 the map is
convex-like (all poles outside the disk) and for a >= 1 concave (all poles
inside).  The Pommerenke orders come out as max(a, 1) and min(a, 1).

The last block shows that the upper bound |P_f| <= (1 + mu|z|)/(|z| + mu)
with mu the lower order breaks down for a < 1: P_f has a pole at z = -a.
"""
import numpy as np

from bmapoles import catalog, lower_order, make_bound, pole, upper_order, verify
from bmapoles.sampling import disk_samples


def main():
    z = disk_samples(5000)
    print(f"{'a':>5} {'min|P|':>9} {'max|P|':>9} {'upper':>8} {'lower':>8}")
    for a in (0.3, 0.5, 1.0, 1.5, 3.0):
        m = catalog("power", a=a)
        p = np.abs(pole(m, z))
        print(f"{a:5.2f} {p.min():9.4f} {p.max():9.4g} {upper_order(m).value:8.4f} "
              f"{lower_order(m).value:8.4f}")

    print("\nupper bound from the lower order:")
    for a in (0.5, 1.5):
        m = catalog("power", a=a)
        rep = verify(m, make_bound("lower_order", mu=min(a, 1.0)))
        gap = "" if rep.sharpness_gap is None else f", gap on the positive axis {rep.sharpness_gap:.1e}"
        print(f"  a={a}: {rep.verdict}, min margin {rep.min_margin:.3g} at z={rep.witness:.4f}{gap}")
    print(f"  P_f(-0.5) for a=0.5: {pole(catalog('power', a=0.5), -0.5 + 0j)}")


if __name__ == "__main__":
    main()
