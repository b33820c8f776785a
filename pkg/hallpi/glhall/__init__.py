from .field import GaloisField, Matrix
from .glhall import (
    build_R,
    build_T,
    build_TR,
    build_witness_K,
    centralizer_in_TR_of_R,
    conjugate,
    field_for,
    frobenius_action_check,
    frobenius_matrix,
    generating_set,
    hall_context,
    is_unitary,
    psi_fixed_check,
    regime_pi,
    t_rank,
    unitary_order_r_block,
    verify_dpi_failure_witness,
)
from .misc import (
    CentralizerReport,
    FrobeniusReport,
    HallContext,
    MatrixSubgroup,
    PsiReport,
    WitnessCheck,
    WitnessReport,
    load_certificate,
    save_certificate,
)
