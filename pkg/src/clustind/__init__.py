"""Clustered independent sets in graphs of bounded treewidth."""

from .constructions import cary_tower, disjoint_copies, gi_chain, path_clique
from .engine import Certificate, FailureSeed, TypeRecord, certify, verify_certificate
from .execute import execute
from .graph import ClusteredSet, Graph, components, is_c_clustered
from .greedy import clustered_c2_tokens, clustered_general, clustered_k1
from .models import KTreeModel, RootedTwoTree, random_ktree, random_two_tree, validate_model
from .oracle import alpha_exact_bruteforce, alpha_exact_treedp, chi_clustered_exact
from .ratio import find_ratio, successor, x2c_table
from .refute import NotFound, Witness, refute

__version__ = "0.1.0"

__all__ = [
    "Certificate", "ClusteredSet", "FailureSeed", "Graph", "KTreeModel", "NotFound", "RootedTwoTree",
    "TypeRecord", "Witness", "alpha_exact_bruteforce", "alpha_exact_treedp", "cary_tower", "certify",
    "chi_clustered_exact", "clustered_c2_tokens", "clustered_general", "clustered_k1", "components",
    "disjoint_copies", "execute", "find_ratio", "gi_chain", "is_c_clustered", "path_clique", "random_ktree",
    "random_two_tree", "refute", "successor", "validate_model", "verify_certificate", "x2c_table",
]
