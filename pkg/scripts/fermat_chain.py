"""Colon chain of z^2 against (x, y) on the Fermat cubic over F_p.

    python3 scripts/fermat_chain.py --p 7 --bound 2
"""

import argparse
import time

from frobskew.ideal import QuotientRing
from frobskew.localcoh import SopData, tc_param_membership
from frobskew.poly import PolyRing


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--p", type=int, default=7)
    ap.add_argument("--bound", type=int, default=2)
    ap.add_argument("--elem", default="z^2")
    args = ap.parse_args()
    R = QuotientRing(PolyRing(args.p, ["x", "y", "z"]), "x^3+y^3+z^3")
    sop = SopData.of(R, R.parse_list("x, y"))
    for n in range(args.bound + 1):
        t0 = time.perf_counter()
        rep = tc_param_membership(sop, R.parse(args.elem), 1, "chain", n)
        print(f"bound {n}: chain {rep['chain']} member={rep['member']} "
              f"stabilized={rep['stabilized']} ({time.perf_counter() - t0:.2f}s)")


if __name__ == "__main__":
    main()
