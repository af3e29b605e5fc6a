#!/usr/bin/env python3
"""Contract a random space through a chain of scaled copies and print the
per-layer certificates next to their budget bounds."""

from __future__ import annotations

import argparse
from fractions import Fraction

from ghkit.correspondences import Correspondence
from ghkit.dynamics import ThreadChain, thread_limit
from ghkit.generate import random_metric_space, rng_from_seed
from ghkit.io import parse_fraction
from ghkit.spaces import diameter, scale


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--points", type=int, default=3)
    parser.add_argument("--depth", type=int, default=20)
    parser.add_argument("--lam", type=parse_fraction, default=Fraction(1, 2))
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    base = random_metric_space(rng_from_seed(args.seed), args.points,
                               denominator=6, coord_max=6)
    spaces = tuple(scale(base, args.lam**n) for n in range(1, args.depth + 1))
    links = tuple(
        Correspondence(spaces[i], spaces[i + 1],
                       frozenset((p, p) for p in range(args.points)))
        for i in range(args.depth - 1)
    )
    chain = ThreadChain(spaces, links)
    result = thread_limit(chain)

    print(f"base diameter {diameter(base)}, contraction factor {args.lam}")
    print(f"budget satisfied: {chain.budget_checked}")
    print(f"limit diameter {diameter(result.approx)} "
          f"(= lam^{args.depth} * base diameter)")
    for layer, cert in enumerate(result.certificates, start=1):
        bound = Fraction(1, 2 ** (layer - 1))
        print(f"layer {layer:2d}: certificate {str(cert):>22}  <=  {bound}")


if __name__ == "__main__":
    main()
