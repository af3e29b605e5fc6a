#!/usr/bin/env python3
"""Print the realized Hausdorff gaps of the needle-shift family: for each m,
the re-slotted second space sits at distance exactly 1/m from the first."""

from __future__ import annotations

import argparse

from ghkit.tuzhilin import TuzhilinConfig, tuzhilin_isometry


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=10)
    parser.add_argument("--k", type=int, default=20)
    args = parser.parse_args()

    cfg = TuzhilinConfig(args.n, args.k)
    print(f"{'m':>3} {'realized':>10} {'expected':>10} {'isometric':>10}")
    for m in range(1, args.n + 1):
        emb = tuzhilin_isometry(cfg, m)
        print(
            f"{m:>3} {str(emb.hausdorff_value):>10} {str(emb.expected):>10} "
            f"{str(emb.distance_preserving):>10}"
        )


if __name__ == "__main__":
    main()
