"""philab: exact classification of Prufer-like conditions on small rings.

Finite commutative rings are handled by exhaustive table computations;
the trivial extensions D x K/D of computable domains supply the infinite
examples with nontrivial nonnil-ideal lattices.  Independent deciders for
the same property are cross-validated against each other by the suite
runner in `theoremlab`.
"""

from .domainkit import DomainHandle, int_domain, quad_order, zloc
from .dividedext import DividedExtRing, make_divided_ext
from .finring import (
    FiniteRing,
    make_product,
    make_trivial_ext,
    make_truncated_poly,
    make_zn,
)
from .phiclass import Budgets, ClassificationReport, classify, is_phi_ring
from .theoremlab import (
    build_corpus,
    default_corpus_specs,
    emit_report,
    run_check,
)

__version__ = "0.1.0"

__all__ = [
    "Budgets",
    "ClassificationReport",
    "DividedExtRing",
    "DomainHandle",
    "FiniteRing",
    "build_corpus",
    "classify",
    "default_corpus_specs",
    "emit_report",
    "int_domain",
    "is_phi_ring",
    "make_divided_ext",
    "make_product",
    "make_trivial_ext",
    "make_truncated_poly",
    "make_zn",
    "quad_order",
    "run_check",
    "zloc",
]
