"""TKR and Bott polynomials, cellular spanning trees and skein relations of finite cell complexes."""

from .catalog import builtin, builtin_names, cell, resolve_complex
from .complex import (
    CellComplex,
    CellRef,
    SpanningSubcomplex,
    closure,
    collapse,
    contract_closure,
    delete_cell,
    disjoint_union,
    skeleton,
    spanning_subcomplexes,
    validate,
)
from .duality import DualPair, catalog_pair, check_alexander_identities, check_duality, dual_subcomplex
from .errors import TkrError
from .homology import betti, euler_characteristic, homology, smith_normal_form, torsion_weight
from .matroid import activities, check_matroid_correspondence, column_matroid, tutte
from .polynomial import BiPoly, UniPoly
from .skein import classify_cell, skein_evaluate, verify_skein
from .textformat import parse, serialize
from .tkr import bott_direct, bott_via_tkr, manifold_closed_form, modified_tkr, tkr
from .trees import cst_verdict, enumerate_csts, is_apc, matrix_tree_weighted, tau, weighted_tau

__version__ = "0.1.0"

__all__ = [
    "BiPoly", "CellComplex", "CellRef", "DualPair", "SpanningSubcomplex", "TkrError", "UniPoly",
    "activities", "betti", "bott_direct", "bott_via_tkr", "builtin", "builtin_names", "catalog_pair",
    "cell", "check_alexander_identities", "check_duality", "check_matroid_correspondence",
    "classify_cell", "closure", "collapse", "column_matroid", "contract_closure", "cst_verdict",
    "delete_cell", "disjoint_union", "dual_subcomplex", "enumerate_csts", "euler_characteristic",
    "homology", "is_apc", "manifold_closed_form", "matrix_tree_weighted", "modified_tkr", "parse",
    "resolve_complex", "serialize", "skein_evaluate", "skeleton", "smith_normal_form",
    "spanning_subcomplexes", "tau", "tkr", "torsion_weight", "tutte", "validate", "verify_skein",
    "weighted_tau",
]
