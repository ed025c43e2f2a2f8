"""nicholsbench: exact computations with Nichols and pre-Nichols algebras of diagonal type."""

__version__ = "0.1.0"

from nicholsbench.catalog.entry import CatalogEntry, PBWSpec, cartan_serre_presentation, compose
from nicholsbench.catalog.exceptional import available_tags, entry
from nicholsbench.core.braiding import BraidingMatrix, check_necessary_conditions
from nicholsbench.core.coeff import GroundField, Scalar, ground_field
from nicholsbench.core.freealg import FreeAlgebra, FreeElement
from nicholsbench.core.quotient import GradedQuotient, Presentation, hilbert_table
from nicholsbench.core.relexpr import RelExpr, parse_rel_expr
from nicholsbench.core.series import RationalSeries, gkdim_pole_order
from nicholsbench.core.verifier import CheckReport, Verifier, obstruction_report
from nicholsbench.core.weyl import positive_roots

__all__ = [
    "BraidingMatrix",
    "CatalogEntry",
    "CheckReport",
    "FreeAlgebra",
    "FreeElement",
    "GradedQuotient",
    "GroundField",
    "PBWSpec",
    "Presentation",
    "RationalSeries",
    "RelExpr",
    "Scalar",
    "Verifier",
    "available_tags",
    "cartan_serre_presentation",
    "check_necessary_conditions",
    "compose",
    "entry",
    "gkdim_pole_order",
    "ground_field",
    "hilbert_table",
    "obstruction_report",
    "parse_rel_expr",
    "positive_roots",
]
