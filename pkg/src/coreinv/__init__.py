"""coreinv: exact weighted core inverses over *-fields, with verifiable certificates."""

from .characterize import (
    Decomposition,
    EPReport,
    Flavor,
    InvalidCertificateError,
    Side,
    core_from_pu,
    core_from_qw,
    core_from_s,
    core_from_t,
    decompose_idempotent,
    decompose_q,
    decomposition_from_json,
    decomposition_to_json,
    dual_decompose,
    dual_from_pu,
    dual_from_qw,
    dual_from_s,
    dual_from_t,
    dual_gram_formula,
    ep_decompose,
    ep_from_s,
    gram_converse_check,
    gram_formula,
    is_weighted_ep,
    random_annihilator_witness,
    uniqueness_audit,
)
from .ginverse import (
    EQUATIONS,
    GInverseKind,
    InverseCertificate,
    NotInvertible,
    VerifyReport,
    certificate_from_json,
    certificate_to_json,
    e_core,
    e_core_via_power,
    f_dual_core,
    f_dual_core_via_power,
    group_inverse,
    inv_13e,
    inv_14f,
    lemma_r_core_check,
    not_invertible_to_json,
    verify,
    weighted_mp,
)
from .matrix import (
    DimensionMismatchError,
    Mat,
    SolveWitness,
    Weight,
    is_hermitian_wrt,
    left_annihilator_basis,
    mat_from_json,
    mat_to_json,
    random_group_invertible,
    random_mat,
    random_non_group_invertible,
    random_weight,
    solve_left,
    solve_right,
    weight_from_json,
    weight_to_json,
)
from .oracle import (
    EXHAUSTIVE_BOUND,
    EnumerationSpace,
    SpaceTooLargeError,
    brute_idempotent_certificates,
    brute_solutions,
    cross_check,
    cross_check_sweep,
)
from .scalar import (
    GF,
    QI,
    QQ,
    SUPPORTED_PRIMES,
    BackendMismatchError,
    GaussianRational,
    PrimeFieldElement,
    scalar_add,
    scalar_conj,
    scalar_inv,
    scalar_mul,
    scalar_neg,
)

__version__ = "0.1.0"
