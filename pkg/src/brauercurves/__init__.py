"""Certified genus one curves on Severi-Brauer varieties of index at most 5 over Q."""

from .brauerq import (
    INF,
    BrauerClassQ,
    Place,
    QuaternionPair,
    class_combine,
    conic_model,
    hilbert_symbol,
    index,
    parse_class,
    period,
    quaternion_class,
    random_class,
    sb_dimension,
)
from .constructions import (
    BundleTwist,
    ConstructionPlan,
    CurveCertificate,
    SkewMatrix,
    build_index2,
    build_index3,
    build_index4_split,
    build_index5_pfaffian,
    descent_obstruction,
    kunneth_h0,
    kunneth_obstruction,
    pfaffian4,
    plan_index4,
    plan_index5,
    pushforward_rank,
    riemann_hurwitz_check,
    verify_certificate,
)
from .groebner import (
    GroebnerBasis,
    HilbertData,
    Ideal,
    buchberger,
    hilbert_data,
    is_empty,
    is_smooth_curve,
    normal_form,
    singular_locus,
)
from .polyring import MonomialOrder, Poly, Ring, mono_compare, parse_poly, poly_arith, random_form

__version__ = "0.1.0"
