"""Run the ten-function suite and print it next to the published FHO column.

    python scripts/reproduce_table2.py --out results/table2 --replicates 30
"""

import argparse
from pathlib import Path

from fho.core import FhoConfig
from fho.harness import run_suite, table2_specs

# published (min, mean, std) for FHO, n = 30, 30 runs
PUBLISHED = {
    "f1": (7.6433e-37, 1.1935e-31, 3.5983e-31),
    "f2": (8.2066e-17, 1.3564e-15, 1.3982e-15),
    "f3": (2.8463e-08, 9.7133e-05, 1.4946e-04),
    "f4": (7.4414e-05, 9.4880, 8.9630),
    "f5": (3.8862e-02, 2.5377, 2.2139),
    "f6": (-1.2569e04, -1.2333e04, 8.8631e02),
    "f7": (2.2737e-13, 1.3929e01, 1.4891e01),
    "f8": (5.5511e-16, 7.8456e-15, 7.9339e-15),
    "f9": (4.4682e-31, 4.3235e-29, 5.6880e-29),
    "f10": (8.5709e-14, 1.8054e00, 1.0798e00),
}


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--replicates", type=int, default=30)
    parser.add_argument("--iterations", type=int, default=500)
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--radii-mode", default="practical", choices=["practical", "paper-literal"])
    parser.add_argument("--out", type=Path, default=Path("results/table2"))
    args = parser.parse_args()

    config = FhoConfig(seed=args.seed, max_iterations=args.iterations, radii_mode=args.radii_mode)
    specs = table2_specs(config, args.replicates, outputs={"summary", "histories"})
    suite = run_suite(specs, out_dir=args.out, workers=args.workers)

    print(f"{'fn':<4} {'min':>11} {'mean':>11} {'std':>11} | {'pub min':>11} {'pub mean':>11} {'pub std':>11}")
    for row in suite.rows:
        pub = PUBLISHED[row["problem"]]
        ours = (row["min"], row["mean"], row["std"])
        print(f"{row['problem']:<4} " + " ".join(f"{v:>11.4e}" for v in ours) + " | "
              + " ".join(f"{v:>11.4e}" for v in pub))
    print(f"\nwrote {args.out / 'summary.csv'}")


if __name__ == "__main__":
    main()
