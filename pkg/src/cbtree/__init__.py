"""Cantor-Bendixson analysis of closed sets given by finite tree automata."""

from .cbengine import (
    CBReport,
    cb_full,
    cb_rank,
    dedup_list,
    derivative,
    list_countable,
    perfect_kernel,
    scattered_count,
    scattered_list,
)
from .certificates import CertEntry, GlobalCert, OneStepCert, global_cert, one_step_cert, verify_cert
from .combinators import (
    binary_disjoint_union,
    binary_disjoint_union_const,
    disjoint_union,
    explode,
    interleave_trees,
    translate_tree_to_baire,
    translate_tree_to_binary,
)
from .seqcore import Lasso, code, decode, lasso_eq, tau_b_fin, tau_b_lasso, tau_c_fin, tau_c_lasso
from .treeauto import (
    ALEPH0,
    CONTINUUM,
    EMPTY,
    Cardinality,
    TreeAutomaton,
    body_cardinality,
    enumerate_paths,
    finite,
    is_wellfounded,
    prune,
    tree_equal,
)

__version__ = "0.1.0"

__all__ = [
    "ALEPH0",
    "CBReport",
    "CONTINUUM",
    "Cardinality",
    "CertEntry",
    "EMPTY",
    "GlobalCert",
    "Lasso",
    "OneStepCert",
    "TreeAutomaton",
    "binary_disjoint_union",
    "binary_disjoint_union_const",
    "body_cardinality",
    "cb_full",
    "cb_rank",
    "code",
    "decode",
    "dedup_list",
    "derivative",
    "disjoint_union",
    "enumerate_paths",
    "explode",
    "finite",
    "global_cert",
    "interleave_trees",
    "is_wellfounded",
    "lasso_eq",
    "list_countable",
    "one_step_cert",
    "perfect_kernel",
    "prune",
    "scattered_count",
    "scattered_list",
    "tau_b_fin",
    "tau_b_lasso",
    "tau_c_fin",
    "tau_c_lasso",
    "translate_tree_to_baire",
    "translate_tree_to_binary",
    "tree_equal",
    "verify_cert",
]
