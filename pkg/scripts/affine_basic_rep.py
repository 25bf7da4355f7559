"""Layer multiplicities of the basic representation crystal for affine sl_{ell+1}.

The weight Lambda_0 - n delta first shows up at depth n(ell+1), so the graph
has to be generated that deep to see n layers.
"""

import argparse
import time

from bzcrystal.affine import generate_affine_blambda
from bzcrystal.crystal_finite import DominantWeight
from bzcrystal.oracles import RootSystemSpec, basic_rep_series, freudenthal_mult
from bzcrystal.roots import Interval


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--ell", type=int, default=2)
    ap.add_argument("--layers", type=int, default=5)
    args = ap.parse_args()

    ell, n = args.ell, args.layers
    top = (1,) + (0,) * ell
    lam = DominantWeight.of(Interval(0, ell), top)
    depth = (n - 1) * (ell + 1)
    t = time.perf_counter()
    G = generate_affine_blambda(ell, lam, depth)
    counts = G.weight_counts()
    print(f"generated {len(G)} nodes to depth {depth} in {time.perf_counter() - t:.1f}s")

    R = RootSystemSpec.affine(ell, height_bound=(ell + 1) * n)
    series = basic_rep_series(ell, n)
    for k in range(n):
        graph = counts.get((-k,) * (ell + 1), 0)
        print(f"  n={k}: graph {graph}, Freudenthal {freudenthal_mult(R, top, (k,) * (ell + 1))}, series {series[k]}")


if __name__ == "__main__":
    main()
