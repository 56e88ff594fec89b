"""Hairy graph homology for the cyclic operads Com, Assoc and Lie.

The package builds the chain complex of hairy operad-decorated graphs
with symplectic hair labels, the Chevalley-Eilenberg complex of the
spider Lie algebra, and the trace chain map connecting them; homology
dimensions of graded slices are computed by exact rational linear
algebra and cross-checked against closed-form dimension formulas.
"""

from .operads import OperadBasisElement, OperadElement, OperadKind
from .symplectic import SymplecticSpace, dual, is_positive, label, \
    label_from_string, label_to_string, omega
from .graphs import DecGraph
from .liegraphs import LieGraph
from .spiders import CanonicalSpider, SpiderElement, WedgeElement, \
    ce_boundary, spider_basis, wedge_basis
from .slices import SliceKey, betti_h1, enumerate_basis, set_cache_dir, \
    slice_boundary_matrix, slice_dim, slice_homology, valid_rh
from .closed_forms import cusp_dim, expected_h1, f2k, h12_dim_closed, \
    lambda_mult, modular_table, rank2_poly_dim, weyl_dim_two_row
from .linalg import HomologyReport, RationalMatrix, homology_dim

__all__ = [
    "OperadBasisElement", "OperadElement", "OperadKind",
    "SymplecticSpace", "dual", "is_positive", "label",
    "label_from_string", "label_to_string", "omega",
    "DecGraph", "LieGraph",
    "CanonicalSpider", "SpiderElement", "WedgeElement", "ce_boundary",
    "spider_basis", "wedge_basis",
    "SliceKey", "betti_h1", "enumerate_basis", "set_cache_dir",
    "slice_boundary_matrix", "slice_dim", "slice_homology", "valid_rh",
    "cusp_dim", "expected_h1", "f2k", "h12_dim_closed", "lambda_mult",
    "modular_table", "rank2_poly_dim", "weyl_dim_two_row",
    "HomologyReport", "RationalMatrix", "homology_dim",
]

__version__ = "0.1.0"
