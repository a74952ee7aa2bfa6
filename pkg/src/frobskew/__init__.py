"""Frobenius skew polynomial rings, special annihilator submodules and
tight closure of parameter ideals, computed over F_p with Groebner bases."""

from .groebner import ResourceError, eliminate, normal_form, reduced_groebner
from .ideal import (
    Ideal,
    QuotientRing,
    Refusal,
    colon,
    colon_element,
    dimension,
    frobenius_closure,
    frobenius_closure_chain,
    frobenius_power,
    frobenius_preimage,
    has_positive_height,
    in_R_circ,
    intersect,
    is_radical,
    is_regular_sequence,
    member,
    radical_member,
    unit_ideal,
    zero_ideal,
)
from .localcoh import (
    CechClass,
    EnescuReport,
    SopData,
    cech_equal,
    cech_grann,
    cech_is_torsion,
    cech_is_zero,
    cech_x,
    enescu_zqr,
    tc_param_membership,
)
from .modules import (
    CyclicTower,
    FiniteCyclicsModule,
    FiniteModule,
    SpecialIdealLattice,
    Submodule,
    ann_of_chain,
    ga15_equivalence_check,
    gamma_x,
    grann_element,
    grann_submodule,
    hsl_number,
    maximal_special_primes,
    smallest_positive_height_ideal,
    special_ideal_lattice,
    split_ga4,
    test_element_annihilator,
    x_action,
)
from .poly import ParseError, PolyRing, Polynomial, RingMismatch
from .radical import RadicalDecomposition, colon_rd, expand, intersect_rd
from .skew import (
    GradedIdealChain,
    SkewPoly,
    format_chain,
    intersect_chains,
    limit_ideal,
    parse_chain,
    principal_chain,
    skew_in_chain,
    unit_chain,
    validate_chain,
    zero_chain,
)

__version__ = "0.1.0"
