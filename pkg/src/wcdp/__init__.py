"""Weighted constraint dependency parsing.

Sentences are disambiguated over two autonomous layers (surface syntax
and thematic roles) by eliminating candidate dependency relations from a
constraint network whose compatibility entries are confidence scores:
products of the penalty factors of violated constraints.  Strict
constraints (penalty 0) eliminate outright; weighted constraints only
downgrade, which keeps ill-formed input parsable.
"""

from .disambiguator import (
    Analysis,
    DiagnosisReport,
    PruneDecision,
    activate_pinduced,
    diagnose,
    disambiguate,
    prune_cost,
    select_victim,
)
from .grammar import (
    Constraint,
    Grammar,
    PreferenceInducedConstraint,
    Verdict,
    eval_binary,
    eval_unary,
    load_grammar,
    parse_grammar,
)
from .model import (
    CandidateRelation,
    LexicalEntry,
    Lexicon,
    Sentence,
    load_lexicon,
    make_sentence,
    parse_lexicon,
)
from .network import ConstraintNetwork, build_network, generate_domains
from .oracle import ScoredAssignment, Violation, best_k, enumerate_all, score_analysis

__all__ = [
    "Analysis",
    "CandidateRelation",
    "Constraint",
    "ConstraintNetwork",
    "DiagnosisReport",
    "Grammar",
    "LexicalEntry",
    "Lexicon",
    "PreferenceInducedConstraint",
    "PruneDecision",
    "ScoredAssignment",
    "Sentence",
    "Verdict",
    "Violation",
    "activate_pinduced",
    "best_k",
    "build_network",
    "diagnose",
    "disambiguate",
    "enumerate_all",
    "eval_binary",
    "eval_unary",
    "generate_domains",
    "load_grammar",
    "load_lexicon",
    "make_sentence",
    "parse_grammar",
    "parse_lexicon",
    "prune_cost",
    "score_analysis",
    "select_victim",
]

__version__ = "0.1.0"
