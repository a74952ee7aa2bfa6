"""Time Frobenius preimages on random ideals and check each against r^q ∈ b.

    python3 scripts/preimage_benchmark.py --count 200 --seed 1
"""

import argparse
import random
import statistics
import time

from frobskew.groebner import normal_form
from frobskew.ideal import Ideal, frobenius_preimage
from frobskew.poly import Polynomial, PolyRing


def random_poly(rng, ring, max_deg):
    terms = {}
    for _ in range(rng.randint(1, 4)):
        e = [0] * ring.n
        for _ in range(rng.randint(0, max_deg)):
            e[rng.randrange(ring.n)] += 1
        terms[tuple(e)] = rng.randrange(1, ring.p)
    return Polynomial(ring, terms)


def sample_ideal(rng, squares):
    ring = PolyRing(rng.choice((2, 3, 5)), ["x", "y", "z"][:rng.randint(1, 3)])
    k = rng.randint(1, 3)
    if squares:
        return Ideal(ring, [random_poly(rng, ring, 2) ** 2 for _ in range(k)])
    return Ideal(ring, [random_poly(rng, ring, 4) for _ in range(k)])


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--squares", type=float, default=1 / 3, help="share of squared-generator ideals")
    args = ap.parse_args()
    rng = random.Random(args.seed)
    times, wrong, n = [], 0, 0
    while n < args.count:
        b = sample_ideal(rng, rng.random() < args.squares)
        if b.is_unit():
            continue
        n += 1
        e = rng.randint(1, 2)
        t0 = time.perf_counter()
        pre = frobenius_preimage(b, e)
        times.append(time.perf_counter() - t0)
        for _ in range(3):
            r = random_poly(rng, b.ring, 3)
            wrong += (r in pre) != (not normal_form(r.frobenius(e), b.gb))
    print(f"{n} preimages, disagreements {wrong}")
    print(f"total {sum(times):.2f}s  median {statistics.median(times) * 1e3:.1f}ms  "
          f"max {max(times):.2f}s")


if __name__ == "__main__":
    main()
