"""progset: exact finite-field laboratory for progressions in productsets.

Builds GF(p^n) with table-driven arithmetic, counts arithmetic/geometric
progression solutions in productsets A*B and shifted productsets A*B + h
exactly, and verifies the character-sum machinery (orthogonality, Weil-type
bounds, the Cauchy step) numerically at desk scale.
"""

__version__ = "0.1.0"

from .counting import (
    CountReport,
    TheoremCheck,
    check_theorem1,
    check_theorem2,
    count_ap_solutions,
    count_gp_solutions,
    verify_cauchy_step,
    verify_counting_identity_ap,
)
from .characters import (
    char_eval,
    char_sum_over_set,
    gp_structure_sum,
    verify_gp_structure_bound,
    verify_orthogonality,
    verify_weil_bound_ap,
    weil_sum_ap,
)
from .field import FieldSpec, FieldTables, build_field
from .generators import (
    GenSpec,
    interval_set,
    multiplicative_subgroup,
    quadratic_residues,
    random_subset,
)
from .productsets import (
    ElementSet,
    RepFunction,
    load_set,
    productset,
    rep_function,
    save_set,
    shifted_productset,
    verify_rep_charsum,
)
from .progressions import (
    ProgressionWitness,
    compute_m_set,
    find_ap_of_length,
    find_gp_of_length,
    longest_ap,
    longest_gp,
)
from .reports import PropertyReport, ReportEnvelope
