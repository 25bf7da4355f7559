"""Print node counts of finite B(lambda) and B(infinity) layers next to their oracles."""

import argparse
import itertools

from bzcrystal.crystal_finite import DominantWeight, generate_binf, generate_blambda
from bzcrystal.oracles import RootSystemSpec, kostant_count, weyl_dim
from bzcrystal.roots import Interval


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rank", type=int, default=2)
    ap.add_argument("--depth", type=int, default=5, help="B(infinity) depth")
    ap.add_argument("--max-coeff", type=int, default=2, help="largest lambda coefficient to enumerate")
    args = ap.parse_args()

    I = Interval(1, args.rank)
    print(f"B(lambda) over A_{args.rank}")
    for coeffs in itertools.product(range(args.max_coeff + 1), repeat=args.rank):
        if not any(coeffs):
            continue
        G = generate_blambda(I, DominantWeight.of(I, coeffs))
        print(f"  lambda={coeffs}: {len(G)} nodes, Weyl dimension {weyl_dim(I, coeffs)}")

    print(f"B(infinity) over A_{args.rank} to depth {args.depth}")
    G = generate_binf(I, args.depth)
    counts = G.weight_counts()
    R = RootSystemSpec.finite(args.rank)
    bad = 0
    for h in range(args.depth + 1):
        layer = [b for b in itertools.product(range(h + 1), repeat=args.rank) if sum(b) == h]
        got = sum(counts.get(tuple(-x for x in b), 0) for b in layer)
        want = sum(kostant_count(R, b) for b in layer)
        bad += got != want
        print(f"  depth {h}: {got} nodes, Kostant total {want}")
    print("all layers agree" if not bad else f"{bad} layers disagree")


if __name__ == "__main__":
    main()
