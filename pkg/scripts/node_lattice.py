"""Special ideals of R = F_2[s,t]/(st) acting on itself through Frobenius."""

from frobskew.modules import (
    FiniteCyclicsModule,
    grann_element,
    maximal_special_primes,
    smallest_positive_height_ideal,
    special_ideal_lattice,
)
from frobskew.poly import PolyRing
from frobskew.skew import format_chain


def main(bound=8):
    R = PolyRing(2, ["s", "t"])
    G = FiniteCyclicsModule.frobenius(R, ["s*t"])
    for r in ("s", "t", "s+t", "1"):
        print(f"grann({r}) -> {format_chain(grann_element(G, G.element(r), bound))}")
    lat = special_ideal_lattice(G, bound, [G.element(r) for r in ("s", "t", "s+t", "1")])
    print("special ideals:", ", ".join(map(str, lat.ideals)))
    print("primes:", ", ".join(map(str, lat.primes)))
    print("maximal primes:", ", ".join(map(str, maximal_special_primes(lat))))
    print("smallest of positive height:", smallest_positive_height_ideal(lat))
    for name, ok in lat.checks.items():
        print(f"  {name}: {ok}")


if __name__ == "__main__":
    main()
