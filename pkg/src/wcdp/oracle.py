"""Exhaustive-search ground truth: exact scoring and top-k enumeration.

The score of a complete assignment is the product of the penalty factors
of every violated constraint instance, across both layers, the cross-layer
mappings, and any preference-induced constraint whose trigger holds in the
assignment.  Feature projections are applied transactionally per scored
assignment, so the oracle is a self-contained semantics for a grammar,
independent of any propagation order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import IncompleteAssignmentError, SearchBudgetExceededError
from .grammar import (
    EvalContext,
    Grammar,
    Verdict,
    binary_applicable,
    eval_binary,
    eval_unary,
    instantiate_template,
)
from .model import CandidateRelation, Sentence
from .network import Variable, generate_domains, variable_of

DEFAULT_BUDGET = 10 ** 7

Assignment = dict[Variable, CandidateRelation]


@dataclass(frozen=True)
class Violation:
    constraint_id: str
    candidates: tuple[CandidateRelation, ...]
    pf: float


@dataclass(frozen=True)
class ScoredAssignment:
    assignment: tuple[CandidateRelation, ...]  # in variable order
    score: float
    violations: tuple[Violation, ...]

    def relation_for(self, position: int, layer: str) -> CandidateRelation:
        for x in self.assignment:
            if x.dep == position and x.layer == layer:
                return x
        raise KeyError((position, layer))


def _ordered_relations(assignment: Assignment) -> list[CandidateRelation]:
    return [assignment[var] for var in sorted(
        assignment, key=lambda v: (v[0], 0 if v[1] == "syn" else 1))]


def _check_complete(assignment: Assignment, sentence: Sentence) -> None:
    expected = {(p, layer) for p in range(1, len(sentence) + 1)
                for layer in ("syn", "sem")}
    if set(assignment) != expected:
        missing = expected - set(assignment)
        raise IncompleteAssignmentError(f"missing variables: {sorted(missing)}")


def projection_overlay(assignment: Assignment, grammar: Grammar,
                       sentence: Sentence,
                       events: list | None = None) -> dict:
    """Feature overlay from every assignment-type rule whose trigger holds."""
    overlay: dict = {}
    ctx = EvalContext(sentence, overlay)
    relations = _ordered_relations(assignment)
    for rule in grammar.pinduced:
        if rule.assignment is None:
            continue
        for x in relations:
            try:
                fired = rule.trigger.eval(ctx, {"X": x})
            except Exception:
                fired = False
            if not fired:
                continue
            node = rule.assignment.target.eval(ctx, {"X": x})
            value = rule.assignment.value.eval(ctx, {"X": x})
            if isinstance(value, frozenset) and not value:
                if events is not None:
                    events.append(("empty-intersection", rule.id, node.position))
                continue
            overlay[(node.position, rule.assignment.feature)] = value
    return overlay


def score_analysis(assignment: Assignment, grammar: Grammar,
                   sentence: Sentence) -> tuple[float, list[Violation]]:
    """Exact multiplicative score and the exhaustive violation list."""
    _check_complete(assignment, sentence)
    overlay = projection_overlay(assignment, grammar, sentence)
    ctx = EvalContext(sentence, overlay)
    relations = _ordered_relations(assignment)
    violations: list[Violation] = []

    for c in grammar.constraints:
        if c.arity == 1:
            for x in relations:
                if c.scope != "cross" and x.layer != c.scope:
                    continue
                if eval_unary(c, x, ctx) is Verdict.VIOLATED:
                    violations.append(Violation(c.id, (x,), c.pf))
        else:
            for x, y in itertools.combinations(relations, 2):
                if not binary_applicable(c, x, y):
                    continue
                if eval_binary(c, x, y, ctx) is Verdict.VIOLATED:
                    violations.append(Violation(c.id, (x, y), c.pf))

    for rule in grammar.pinduced:
        if rule.template is None:
            continue
        for x in relations:
            try:
                fired = rule.trigger.eval(ctx, {"X": x})
            except Exception:
                fired = False
            if not fired:
                continue
            induced = instantiate_template(rule, x, ctx)
            if induced.arity == 1:
                for y in relations:
                    if induced.scope != "cross" and y.layer != induced.scope:
                        continue
                    if eval_unary(induced, y, ctx) is Verdict.VIOLATED:
                        violations.append(Violation(rule.id, (y,), rule.pf))
            else:
                for y, z in itertools.combinations(relations, 2):
                    if variable_of(y) == variable_of(z):
                        continue
                    if not binary_applicable(induced, y, z):
                        continue
                    if eval_binary(induced, y, z, ctx) is Verdict.VIOLATED:
                        violations.append(Violation(rule.id, (y, z), rule.pf))

    score = 1.0
    for v in violations:
        score *= v.pf
    return score, violations


def _assignment_key(relations: tuple[CandidateRelation, ...]):
    return tuple(x.sort_key for x in relations)


def enumerate_all(sentence: Sentence, grammar: Grammar,
                  budget: int = DEFAULT_BUDGET) -> list[ScoredAssignment]:
    """Naive full enumeration over the generated domains, best first."""
    domains = generate_domains(sentence, grammar)
    variables = sorted(domains, key=lambda v: (v[0], 0 if v[1] == "syn" else 1))
    results = []
    count = 0
    for combo in itertools.product(*(domains[v] for v in variables)):
        count += 1
        if count > budget:
            raise SearchBudgetExceededError(f"enumerated over {budget} assignments")
        assignment = dict(zip(variables, combo))
        score, violations = score_analysis(assignment, grammar, sentence)
        results.append(ScoredAssignment(tuple(combo), score, tuple(violations)))
    results.sort(key=lambda s: (-s.score, _assignment_key(s.assignment)))
    return results


def best_k(sentence: Sentence, grammar: Grammar, k: int = 1,
           budget: int = DEFAULT_BUDGET) -> list[ScoredAssignment]:
    """Top-k complete assignments by score, deterministically ordered.

    Depth-first search with multiplicative bound pruning: every further
    factor is at most 1, so a partial product at or below the current
    k-th best score cannot improve on it.  Pruning is switched off when
    the grammar carries feature projections, because a projection can
    change constraint verdicts after the fact.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    domains = generate_domains(sentence, grammar)
    variables = sorted(domains, key=lambda v: (v[0], 0 if v[1] == "syn" else 1))
    has_projection = any(r.assignment is not None for r in grammar.pinduced)
    ctx = EvalContext(sentence)

    unary_by_layer = {
        "syn": grammar.unary_constraints("syn"),
        "sem": grammar.unary_constraints("sem"),
    }
    binaries = grammar.binary_constraints()

    leaves: list[ScoredAssignment] = []
    top_scores: list[float] = []  # descending, length <= k
    expanded = 0

    def kth_best() -> float:
        if len(top_scores) < k:
            return -1.0
        return top_scores[k - 1]

    def note_score(score: float) -> None:
        top_scores.append(score)
        top_scores.sort(reverse=True)
        del top_scores[k:]

    def unary_factor(x: CandidateRelation) -> float:
        f = 1.0
        for c in unary_by_layer[x.layer]:
            if eval_unary(c, x, ctx) is Verdict.VIOLATED:
                f *= c.pf
        return f

    def binary_factor(x, y) -> float:
        f = 1.0
        for c in binaries:
            if not binary_applicable(c, x, y):
                continue
            if eval_binary(c, x, y, ctx) is Verdict.VIOLATED:
                f *= c.pf
        return f

    def dfs(index: int, chosen: list[CandidateRelation], partial: float):
        nonlocal expanded
        expanded += 1
        if expanded > budget:
            raise SearchBudgetExceededError(f"expanded over {budget} nodes")
        if index == len(variables):
            assignment = dict(zip(variables, chosen))
            score, violations = score_analysis(assignment, grammar, sentence)
            leaves.append(ScoredAssignment(tuple(chosen), score, tuple(violations)))
            note_score(score)
            return
        for x in domains[variables[index]]:
            factor = unary_factor(x)
            for y in chosen:
                if factor == 0.0:
                    break
                factor *= binary_factor(x, y)
            child = partial * factor
            if not has_projection and child < kth_best():
                continue
            chosen.append(x)
            dfs(index + 1, chosen, child)
            chosen.pop()

    dfs(0, [], 1.0)
    leaves.sort(key=lambda s: (-s.score, _assignment_key(s.assignment)))
    return leaves[:k]
