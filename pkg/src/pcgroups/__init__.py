"""Finite p-groups on power-commutator presentations.

Group arithmetic runs on normal-form indices backed by numpy tables;
subgroups are canonical induced generating sequences.  On top sit the
power-structure predicates (powerful, potent, regular, M_i, the three
power conditions, P1/P2) and the verification suites.
"""

from __future__ import annotations

from .corpus import CorpusEntry, builtin, load_catalog, load_corpus, save_report
from .group import Element, EnumerationCapExceeded, InconsistentPresentation, PcGroup
from .isomorphism import find_isomorphism, is_isomorphic
from .pcp import (
    PcPresentation,
    PresentationError,
    check_consistency,
    parse_presentation,
    presentation_from_relations,
    serialize_presentation,
)
from .properties import (
    PropertyReport,
    build_report,
    cond_index,
    cond_omega,
    cond_power,
    is_Mi,
    is_P1,
    is_P2,
    is_potent,
    is_powerful,
    is_regular,
    regular_power_structure,
)
from .subgroups import (
    Subgroup,
    agemo,
    center,
    commutator_subgroup,
    derived_subgroup,
    exponent,
    frattini,
    low_index_subgroups,
    lower_central_series,
    maximal_subgroups,
    nilpotency_class,
    omega,
    quotient,
    rank,
    span,
)
from .suites import SUITES, SuiteOptions, SuiteResult, run_suite

__version__ = "0.1.0"

__all__ = [
    "agemo",
    "build_report",
    "builtin",
    "center",
    "check_consistency",
    "commutator_subgroup",
    "cond_index",
    "cond_omega",
    "cond_power",
    "CorpusEntry",
    "derived_subgroup",
    "Element",
    "EnumerationCapExceeded",
    "exponent",
    "find_isomorphism",
    "frattini",
    "InconsistentPresentation",
    "is_isomorphic",
    "is_Mi",
    "is_P1",
    "is_P2",
    "is_potent",
    "is_powerful",
    "is_regular",
    "load_catalog",
    "load_corpus",
    "low_index_subgroups",
    "lower_central_series",
    "maximal_subgroups",
    "nilpotency_class",
    "omega",
    "parse_presentation",
    "PcGroup",
    "PcPresentation",
    "presentation_from_relations",
    "PresentationError",
    "PropertyReport",
    "quotient",
    "rank",
    "regular_power_structure",
    "run_suite",
    "save_report",
    "serialize_presentation",
    "span",
    "Subgroup",
    "SuiteOptions",
    "SuiteResult",
    "SUITES",
]

