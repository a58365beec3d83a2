"""Certificate checkers and an exhaustive oracle for non-minimal complements
in finite groups and structured subsets of the integers."""

from .certificates import (
    Certificate,
    TheoremInstance,
    check_assumption,
    check_prop_coset,
    check_prop_fini,
    check_thm_cminusc,
    check_thm_f_avoids,
    check_thm_q_finite,
    check_thm_single_coset,
    run_checker,
    verdict,
)
from .engine import (
    OracleReport,
    cardinality_obstruction,
    enumerate_minimal_complements,
    is_complement,
    is_minimal_complement_to,
    lambda_quotient,
    minimalize,
    oracle_minimality_status,
)
from .groups import (
    FiniteGroup,
    GroupSubset,
    Subgroup,
    all_subgroups,
    cyclic,
    dihedral,
    from_cayley_file,
    from_spec,
    from_table,
    product,
    subgroup_generated,
    subgroup_profile,
)
from .subsets import (
    coset_profile,
    coset_union_equivalences,
    inverse_set,
    left_stabilizer,
    parse_subset,
    product_set,
    symmetric_product_complement,
    translate,
)
from .zset import (
    StructuredZSet,
    ZCertificate,
    finite_quotient,
    parse_structured,
    remark_family,
    robust_family,
    z_check,
)

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "FiniteGroup",
    "GroupSubset",
    "OracleReport",
    "StructuredZSet",
    "Subgroup",
    "TheoremInstance",
    "ZCertificate",
    "all_subgroups",
    "check_assumption",
    "check_prop_coset",
    "check_prop_fini",
    "check_thm_cminusc",
    "check_thm_f_avoids",
    "check_thm_q_finite",
    "check_thm_single_coset",
    "cardinality_obstruction",
    "coset_profile",
    "coset_union_equivalences",
    "cyclic",
    "dihedral",
    "enumerate_minimal_complements",
    "finite_quotient",
    "from_cayley_file",
    "from_spec",
    "from_table",
    "inverse_set",
    "is_complement",
    "is_minimal_complement_to",
    "lambda_quotient",
    "left_stabilizer",
    "minimalize",
    "oracle_minimality_status",
    "parse_structured",
    "parse_subset",
    "product",
    "product_set",
    "remark_family",
    "robust_family",
    "run_checker",
    "subgroup_generated",
    "subgroup_profile",
    "symmetric_product_complement",
    "translate",
    "verdict",
    "z_check",
]
