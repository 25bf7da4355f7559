"""How often do the validators reject a datum with one component nudged by +-1?

Survivors are rechecked by brute force over the whole Weyl group; a survivor
that fails there would mean a validator bug.
"""

import argparse
import random
import sys
from pathlib import Path

from bzcrystal.bz_finite import FiniteBZDatum, check_edge, check_tpr
from bzcrystal.crystal_finite import lower_f
from bzcrystal.roots import Interval

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))
import bruteforce as bf  # noqa: E402


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rank", type=int, default=4)
    ap.add_argument("--max-depth", type=int, default=5)
    ap.add_argument("--trials", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    I = Interval(1, args.rank)
    rnd = random.Random(args.seed)
    rejected, invalid = 0, 0
    for _ in range(args.trials):
        M = FiniteBZDatum.zero(I)
        for _ in range(rnd.randint(0, args.max_depth)):
            M = lower_f(M, rnd.randint(I.lo, I.hi))
        g = rnd.choice(M.table.gammas)
        N = M.replace({g: M[g] + rnd.choice((-1, 1))})
        if not (check_edge(N, first_only=True).ok and check_tpr(N, first_only=True).ok):
            rejected += 1
            continue
        pattern = {frozenset(x for x in I.points() if x in h): v for h, v in N.items()}
        invalid += not bf.is_valid(pattern, I.lo, I.hi)
    print(f"A_{args.rank}, depth <= {args.max_depth}: rejected {rejected}/{args.trials} "
          f"({100 * rejected / args.trials:.1f}%), survivors failing brute force: {invalid}")


if __name__ == "__main__":
    main()
