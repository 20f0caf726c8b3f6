"""The constraint network: variables, candidate domains, score tables.

Each word contributes two variables, one per layer.  Unary and binary
confidence scores are the multiplicative products of the penalty factors
of violated constraints; a strict violation forces a score of exactly 0.
Removal only masks candidates, so initial scores stay available for
diagnostics, and locality of removal is immediate.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import EmptySentenceError, LastCandidateError
from .grammar import (
    Constraint,
    EvalContext,
    Grammar,
    Verdict,
    binary_applicable,
    eval_binary,
    eval_unary,
)
from .model import LAYERS, SEM, SYN, CandidateRelation, Sentence

Variable = tuple[int, str]  # (position, layer)


def variable_of(x: CandidateRelation) -> Variable:
    return (x.dep, x.layer)


def _strict_violation_count(x: CandidateRelation, strict: list[Constraint],
                            ctx: EvalContext) -> int:
    return sum(1 for c in strict
               if eval_unary(c, x, ctx) is Verdict.VIOLATED)


def generate_domains(sentence: Sentence, grammar: Grammar,
                     prefilter: bool = True
                     ) -> dict[Variable, list[CandidateRelation]]:
    """All (label, modifiee) hypotheses per variable.

    With prefiltering, only candidates with the fewest violations of
    strict unary constraints survive; in the regular case that keeps
    exactly the violation-free candidates, and when none exists the
    least-offending ones are retained so no domain is ever empty.
    """
    n = len(sentence)
    if n == 0:
        raise EmptySentenceError("cannot parse an empty sentence")
    ctx = EvalContext(sentence)
    domains: dict[Variable, list[CandidateRelation]] = {}
    for position in range(1, n + 1):
        token = sentence.token(position)
        for layer in LAYERS:
            strict = [c for c in grammar.unary_constraints(layer) if c.strict]
            candidates: list[CandidateRelation] = []
            for entry_index in range(len(token.entries)):
                for label in grammar.labels(layer):
                    for dom in range(0, n + 1):
                        if dom == position:
                            continue
                        candidates.append(CandidateRelation(
                            layer=layer, label=label, dep=position,
                            dom=dom, entry_index=entry_index))
            if prefilter and candidates:
                counts = [_strict_violation_count(x, strict, ctx)
                          for x in candidates]
                best = min(counts)
                candidates = [x for x, k in zip(candidates, counts) if k == best]
            candidates.sort(key=lambda x: x.sort_key)
            domains[(position, layer)] = candidates
    return domains


def _pair_key(x: CandidateRelation, y: CandidateRelation):
    return (x, y) if x.sort_key <= y.sort_key else (y, x)


@dataclass
class ConstraintNetwork:
    sentence: Sentence
    grammar: Grammar
    variables: list[Variable] = field(default_factory=list)
    _domains: dict[Variable, list[CandidateRelation]] = field(default_factory=dict)
    _live: set[CandidateRelation] = field(default_factory=set)
    _base_unary: dict[CandidateRelation, float] = field(default_factory=dict)
    # sparse: pairs not stored score 1.0
    _base_binary: dict = field(default_factory=dict)
    # multiplicative corrections folded in by preference-induced constraints
    _extra_unary: dict[CandidateRelation, float] = field(default_factory=dict)
    _extra_binary: dict = field(default_factory=dict)
    trace: list[str] = field(default_factory=list)
    ctx: EvalContext = None
    initial_support: dict[CandidateRelation, float] = field(default_factory=dict)
    _activated: set = field(default_factory=set)
    # prune-cost cache, kept incrementally up to date across removals and
    # rebuilt after score-table changes (folds, feature projections)
    _cost: dict[CandidateRelation, float] = field(default_factory=dict)
    _cost_dirty: bool = True

    # -- queries ----------------------------------------------------------

    def domain(self, var: Variable) -> list[CandidateRelation]:
        return [x for x in self._domains[var] if x in self._live]

    def initial_domain(self, var: Variable) -> list[CandidateRelation]:
        return list(self._domains[var])

    def live_candidates(self):
        for var in self.variables:
            yield from self.domain(var)

    def unary(self, x: CandidateRelation) -> float:
        return self._base_unary[x] * self._extra_unary.get(x, 1.0)

    def binary(self, x: CandidateRelation, y: CandidateRelation) -> float:
        key = _pair_key(x, y)
        return (self._base_binary.get(key, 1.0)
                * self._extra_binary.get(key, 1.0))

    def is_live(self, x: CandidateRelation) -> bool:
        return x in self._live

    def support(self, x: CandidateRelation) -> float:
        """Optimistic consistency bound: unary times best binary per variable."""
        value = self.unary(x)
        var = variable_of(x)
        for other in self.variables:
            if other == var:
                continue
            best = max(self.binary(x, y) for y in self.domain(other))
            value *= best
            if value == 0.0:
                break
        return value

    # -- construction -----------------------------------------------------

    def _score_unary(self, x: CandidateRelation) -> float:
        score = 1.0
        for c in self.grammar.unary_constraints(x.layer):
            if eval_unary(c, x, self.ctx) is Verdict.VIOLATED:
                score *= c.pf
        return score

    def _score_binary(self, x: CandidateRelation, y: CandidateRelation) -> float:
        score = 1.0
        for c in self.grammar.binary_constraints():
            if not binary_applicable(c, x, y):
                continue
            if eval_binary(c, x, y, self.ctx) is Verdict.VIOLATED:
                score *= c.pf
        return score

    def rescore_node(self, position: int) -> None:
        """Recompute base scores of entries touching one node.

        Used after a feature projection updated that node; corrections
        from preference-induced constraints are kept as they are.
        """

        def touches(x: CandidateRelation) -> bool:
            return x.dep == position or x.dom == position

        self._cost_dirty = True
        affected = [x for var in self.variables
                    for x in self._domains[var] if touches(x)]
        for x in affected:
            self._base_unary[x] = self._score_unary(x)
        seen = set()
        for x in affected:
            xvar = variable_of(x)
            for other in self.variables:
                if other == xvar:
                    continue
                for y in self._domains[other]:
                    key = _pair_key(x, y)
                    if key in seen:
                        continue
                    seen.add(key)
                    score = self._score_binary(x, y)
                    if score != 1.0:
                        self._base_binary[key] = score
                    else:
                        self._base_binary.pop(key, None)

    # -- mutation ---------------------------------------------------------

    def remove(self, x: CandidateRelation, cost: float | None = None) -> None:
        var = variable_of(x)
        if len(self.domain(var)) <= 1:
            raise LastCandidateError(f"cannot empty the domain of {var}")
        if x not in self._live:
            raise KeyError(f"{x} is not live")
        if cost is None:
            cost = self.prune_cost(x)
        self._live.discard(x)
        if not self._cost_dirty:
            var = variable_of(x)
            for other in self.variables:
                if other == var:
                    continue
                for y in self.domain(other):
                    self._cost[y] -= self.binary(x, y) ** 2
        self.trace.append(
            f"PRUNE {x.layer} {x.dep} {x.label} {x.dom} cost={cost!r}")

    def _recompute_costs(self) -> None:
        for x in self.live_candidates():
            cost = self.unary(x) ** 2
            var = variable_of(x)
            for other in self.variables:
                if other == var:
                    continue
                for y in self.domain(other):
                    cost += self.binary(x, y) ** 2
            self._cost[x] = cost
        self._cost_dirty = False

    def prune_cost(self, x: CandidateRelation) -> float:
        """Sum of squared score mass destroyed by removing x."""
        if self._cost_dirty:
            self._recompute_costs()
        return self._cost[x]

    def fold_unary(self, x: CandidateRelation, factor: float) -> None:
        self._extra_unary[x] = self._extra_unary.get(x, 1.0) * factor
        self._cost_dirty = True

    def fold_binary(self, x, y, factor: float) -> None:
        key = _pair_key(x, y)
        self._extra_binary[key] = self._extra_binary.get(key, 1.0) * factor
        self._cost_dirty = True

    def mark_activated(self, rule_id: str, x: CandidateRelation) -> bool:
        """Record an activation; returns False if already done."""
        key = (rule_id, x)
        if key in self._activated:
            return False
        self._activated.add(key)
        return True

    def all_singleton(self) -> bool:
        return all(len(self.domain(var)) == 1 for var in self.variables)

    def assignment(self) -> dict[Variable, CandidateRelation]:
        out = {}
        for var in self.variables:
            dom = self.domain(var)
            if len(dom) != 1:
                raise LastCandidateError(f"domain of {var} is not singleton")
            out[var] = dom[0]
        return out


def build_network(sentence: Sentence, grammar: Grammar,
                  prefilter: bool = True) -> ConstraintNetwork:
    """Populate domains plus the unary/binary confidence-score tables."""
    domains = generate_domains(sentence, grammar, prefilter=prefilter)
    net = ConstraintNetwork(sentence=sentence, grammar=grammar)
    net.ctx = EvalContext(sentence)
    net.variables = sorted(domains, key=lambda v: (v[0], 0 if v[1] == SYN else 1))
    net._domains = domains
    net._live = {x for cands in domains.values() for x in cands}
    for x in net.live_candidates():
        net._base_unary[x] = net._score_unary(x)
    variables = net.variables
    for i, var_a in enumerate(variables):
        for var_b in variables[i + 1:]:
            for x in domains[var_a]:
                for y in domains[var_b]:
                    score = net._score_binary(x, y)
                    if score != 1.0:
                        net._base_binary[_pair_key(x, y)] = score
    for x in net.live_candidates():
        net.initial_support[x] = net.support(x)
    return net
