from .classifier import (
    classify_cyclic,
    classify_dpi,
    classify_sporadic,
    classify_upi,
    dpi_by_composition_factors,
    gl_hall_pi_order,
)
from .conditions import (
    condition_I,
    condition_II,
    condition_III,
    condition_IV,
    epi_minus_dpi_item,
    make_context,
    nn_bounds,
    regime_item,
    suzuki_ree_torus_sets,
)
from .misc import (
    Citation,
    ConditionHit,
    HallStatus,
    HallVerdict,
    PiContext,
    Witness,
    check_entry,
)
from .records import parse_records, render_records, render_verdict
