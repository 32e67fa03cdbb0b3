"""Compare visibility-radius rules and drift signs on a few benchmarks.

The rules are the two built-in modes plus the fixed-fraction ramp
(full visibility below 0.01 d, none beyond 0.1 d) given explicitly.

    python scripts/radii_study.py --replicates 5
"""

import argparse

import numpy as np

from fho.core import FhoConfig, run_replicated
from fho.geometry import VisibilityRadii, diameter
from fho.problems import benchmark


def variants(space):
    d = diameter(space)
    yield "practical", dict(radii_mode="practical")
    yield "paper-literal", dict(radii_mode="paper-literal")
    yield "fraction 0.01d/0.1d", dict(radii=VisibilityRadii(0.01 * d, 0.1 * d))
    yield "fraction 0.01d/1d", dict(radii=VisibilityRadii(0.01 * d, d))
    yield "practical, literal sign", dict(radii_mode="practical", drift_sign="literal-eq6")


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--problems", nargs="+", default=["f1", "f9", "f10"])
    parser.add_argument("--dimension", type=int, default=30)
    parser.add_argument("--replicates", type=int, default=5)
    parser.add_argument("--iterations", type=int, default=500)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    print(f"{'problem':<8} {'variant':<26} {'best':>11} {'median':>11}")
    for name in args.problems:
        problem = benchmark(name, args.dimension)
        for label, kwargs in variants(problem.space):
            cfg = FhoConfig(seed=args.seed, max_iterations=args.iterations, **kwargs)
            finals = np.array([r.best_fitness for r in run_replicated(problem, cfg, args.replicates)])
            print(f"{name:<8} {label:<26} {finals.min():>11.3e} {np.median(finals):>11.3e}")


if __name__ == "__main__":
    main()
