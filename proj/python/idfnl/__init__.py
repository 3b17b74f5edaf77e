"""Workbench for the distributive non-associative Lambek calculus with
iterative division: parsing, finite-model evaluation, countermodel search
and derivation checking."""

from idfnl._core import (
    Formula,
    Model,
    ParseError,
    SearchAborted,
    Sequent,
    __version__,
    check_derivation,
    closure,
    expand_left_division,
    expand_right_division,
    find_countermodel,
    fmp_bound,
    fmt,
    parse_formula,
    parse_model,
    parse_sequent,
    random_model,
)

__all__ = [
    "Formula",
    "Model",
    "ParseError",
    "SearchAborted",
    "Sequent",
    "__version__",
    "check_derivation",
    "closure",
    "expand_left_division",
    "expand_right_division",
    "find_countermodel",
    "fmp_bound",
    "fmt",
    "parse_formula",
    "parse_model",
    "parse_sequent",
    "random_model",
]
