"""Run every pole bound on random members of its class and on the extremal maps.

Each line reports the worst sampled margin over 20 random members (>= 0 means
the inequality held at every sample), followed by the equality gap for the
extremal functions.
"""
import argparse

from bmapoles.bounds import BOUNDS, verify
from bmapoles.suite import bound_cases, extremal_cases


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--members", type=int, default=20)
    ap.add_argument("--samples", type=int, default=10_000)
    args = ap.parse_args()

    for bid in sorted(BOUNDS):
        reps = [verify(m, b, count=args.samples) for m, b in bound_cases(bid, args.members)]
        worst = min(reps, key=lambda r: r.min_margin)
        n_bad = sum(not r.holds for r in reps)
        print(f"{bid:18s} worst margin {worst.min_margin:11.3e}  violations {n_bad}/{len(reps)}")

    print()
    for model, bound in extremal_cases():
        rep = verify(model, bound, count=args.samples)
        print(f"{bound.id:18s} {model.label:28s} equality gap {rep.sharpness_gap:.1e}")


if __name__ == "__main__":
    main()
