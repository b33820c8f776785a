from .catalog import (
    CATALOG_PATH,
    CatalogEntry,
    catalog_entries,
    crosscheck,
    crosscheck_entry,
    crosscheck_table,
    default_pis,
    load_catalog,
    parse_catalog,
)
from .misc import (
    CrosscheckRow,
    MainTheoremReport,
    OvergroupCheck,
    PiSubgroupClasses,
    StarEquivalenceReport,
)
from .oracle import (
    check_Cpi,
    check_Dpi,
    check_Dpi_by_definition,
    check_Dpi_by_maximal,
    check_dpi_star_equivalence,
    check_star_property,
    check_Upi,
    conjugating_element,
    contained_in_conjugate,
    enumerate_elements,
    hall_subgroups,
    has_hall,
    is_pronormal,
    is_strongly_pronormal,
    maximal_pi_subgroups,
    normal_abelian_hall,
    overgroups,
    pi_order,
    pi_subgroup_classes,
    subgroup_classes,
    subgroups,
    verify_main_theorem,
)
from .perm_group import (
    Perm,
    PermGroup,
    identity_perm,
    parse_cycles,
    perm_conj,
    perm_cycles,
    perm_inv,
    perm_mul,
    perm_order,
    render_cycles,
    trivial_group,
)
