"""Exact calculator for Temperley-Lieb diagrams, Jones-Wenzl
idempotents, their oriented-strand refinement, and direct-sum
certificates in the idempotent category."""

from .qarith import (
    LaurentPoly,
    LinearSolution,
    RatFunc,
    lp_eval,
    quantum_binom,
    quantum_int,
    rf_solve,
    verify_cor_q,
    verify_lemma_q,
)
from .tldiag import (
    Element,
    Matching,
    cap_matching,
    close_trace,
    compose,
    cup_matching,
    e_matching,
    enumerate_basis,
    identity_matching,
    tensor,
)
from .jw import (
    JonesWenzl,
    PropertyReport,
    check_jw_properties,
    jones_wenzl,
    jw_solve_by_uniqueness,
)
from .otl import (
    DOWN,
    UP,
    OrElement,
    OrMatching,
    alpha,
    beta,
    iota,
    lift,
    normalize,
    or_close_trace,
    or_compose,
    or_tensor,
    oriented_cap,
    oriented_cup,
    verify_arc_move,
    verify_ia,
    verify_oio,
    verify_teleport,
)
from .karoubi import (
    NO_CERTIFICATE,
    IdempotentObject,
    SumCertificate,
    all_signatures,
    check_direct_sum_hypotheses,
    closure_value,
    decompose_jw,
    find_isomorphism,
    hom_basis,
)
