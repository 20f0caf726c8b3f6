"""The selection procedure: iterative pruning guided by squared-score mass.

Each round first gives preference-induced rules a chance to fire (their
triggers must be decided: sole survivor, or dominant by the grammar's
alpha factor in support), then removes the candidate whose removal
destroys the least squared score mass.  Candidates whose cost is exactly
zero are cleared in one batch, which reproduces classical arc consistency
for the strict part of the grammar.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .grammar import Grammar, Verdict, eval_binary, eval_unary, instantiate_template
from .model import SEM, SYN, CandidateRelation, Sentence
from .network import ConstraintNetwork, Variable, build_network, variable_of
from .oracle import Violation, score_analysis


@dataclass(frozen=True)
class PruneDecision:
    candidate: CandidateRelation
    cost: float


@dataclass(frozen=True)
class Analysis:
    relations: tuple[CandidateRelation, ...]  # one per (position, layer)
    score: float
    violations: tuple[Violation, ...]

    def relation_for(self, position: int, layer: str) -> CandidateRelation:
        for x in self.relations:
            if x.dep == position and x.layer == layer:
                return x
        raise KeyError((position, layer))

    def violated_ids(self) -> set[str]:
        return {v.constraint_id for v in self.violations}


@dataclass(frozen=True)
class DiagnosisReport:
    violations: tuple[Violation, ...]
    # variables whose final choice was not the best initially supported one
    expectation_violations: tuple[Variable, ...]


def prune_cost(x: CandidateRelation, net: ConstraintNetwork) -> float:
    """unary(x)^2 plus the squared binary entries against all live candidates."""
    return net.prune_cost(x)


SELECT_BUDGET = 20_000


def best_live_assignment(net: ConstraintNetwork,
                         budget: int = SELECT_BUDGET
                         ) -> dict[Variable, CandidateRelation] | None:
    """Best-scoring complete assignment over the live domains.

    Branch and bound on the network's own score tables; ties resolve to
    the lexicographically first assignment, matching the oracle's order.
    Returns None when the node budget runs out.
    """
    variables = net.variables
    domains = [net.domain(var) for var in variables]
    max_unary = [max(net.unary(x) for x in dom) for dom in domains]
    suffix = [1.0] * (len(variables) + 1)
    for i in range(len(variables) - 1, -1, -1):
        suffix[i] = suffix[i + 1] * max_unary[i]

    def score_through(x, chosen):
        factor = net.unary(x)
        for y in chosen:
            if factor == 0.0:
                break
            factor *= net.binary(x, y)
        return factor

    # Greedy seed: a quick lower bound so zero-score subtrees are cut
    # from the first descent on.  The seed itself only bounds; the DFS
    # below still reports the lexicographically first optimum.
    seed_score = 1.0
    seed: list[CandidateRelation] = []
    for dom in domains:
        x = max(dom, key=lambda c: score_through(c, seed))
        seed_score *= score_through(x, seed)
        seed.append(x)

    best_score = seed_score
    best: dict | None = None
    nodes = 0

    def dfs(index: int, chosen: list[CandidateRelation], partial: float):
        nonlocal best_score, best, nodes
        nodes += 1
        if nodes > budget:
            raise _BudgetOut
        if index == len(variables):
            if partial > best_score or best is None:
                best_score = partial
                best = dict(zip(variables, chosen))
            return
        for x in domains[index]:
            child = partial * score_through(x, chosen)
            if child * suffix[index + 1] < best_score:
                continue
            chosen.append(x)
            dfs(index + 1, chosen, child)
            chosen.pop()

    try:
        dfs(0, [], 1.0)
    except _BudgetOut:
        return best if best is not None else dict(zip(variables, seed))
    return best


class _BudgetOut(Exception):
    pass


def _victim_key(net: ConstraintNetwork, x: CandidateRelation, cost: float):
    # Tie-breaks: higher support of the best same-variable alternative
    # first (high contrast), then position, syn before sem, label, modifiee.
    alternatives = [y for y in net.domain(variable_of(x)) if y != x]
    alt_support = max((net.support(y) for y in alternatives), default=0.0)
    return (cost, -alt_support, x.dep, 0 if x.layer == SYN else 1,
            x.label, x.dom, x.entry_index)


def select_victim(net: ConstraintNetwork,
                  protect: dict | None = None,
                  budget: int = SELECT_BUDGET) -> PruneDecision | None:
    """Cheapest candidate to discard, or None when fully disambiguated.

    Promising hypotheses are never selected: candidates on the currently
    best-supported complete interpretation are exempt, so pruning only
    clears away the alternatives around it.  When no interpretation can
    be determined within the search budget the assessment degrades to
    the plain local heuristic.
    """
    if protect is None:
        protect = best_live_assignment(net, budget)
    protected = set(protect.values()) if protect else set()
    eligible = []
    for var in net.variables:
        domain = net.domain(var)
        if len(domain) <= 1:
            continue
        eligible.extend(x for x in domain if x not in protected)
    if not eligible:
        return None
    min_cost = min(net.prune_cost(x) for x in eligible)
    tied = [x for x in eligible if net.prune_cost(x) == min_cost]
    if len(tied) > 16:
        # Large tie sets only arise in degenerate networks where the
        # contrast criterion cannot discriminate anyway; fall through to
        # the positional tie-breaks instead of scoring every alternative.
        victim = min(tied, key=lambda x: x.sort_key)
    else:
        victim = min(tied, key=lambda x: _victim_key(net, x, min_cost))
    return PruneDecision(victim, min_cost)


def _is_decided(net: ConstraintNetwork, x: CandidateRelation) -> bool:
    domain = net.domain(variable_of(x))
    if [x] == domain:
        return True
    if x not in domain:
        return False
    sx = net.support(x)
    alpha = net.grammar.alpha
    return all(sx >= alpha * net.support(y) for y in domain if y != x) and sx > 0


def activate_pinduced(net: ConstraintNetwork, grammar: Grammar | None = None
                      ) -> bool:
    """Fire preference-induced rules whose trigger is decided.

    Constraint templates are folded multiplicatively into the score
    tables; feature assignments update the node in place and re-score
    the entries that mention it.  Each rule fires at most once per
    trigger instance.  Returns True if anything happened.
    """
    grammar = grammar or net.grammar
    changed = False
    for rule in grammar.pinduced:
        for var in net.variables:
            for x in net.domain(var):
                try:
                    fired = rule.trigger.eval(net.ctx, {"X": x})
                except Exception:
                    fired = False
                if not fired or not _is_decided(net, x):
                    continue
                if not net.mark_activated(rule.id, x):
                    continue
                changed = True
                if rule.assignment is not None:
                    node = rule.assignment.target.eval(net.ctx, {"X": x})
                    value = rule.assignment.value.eval(net.ctx, {"X": x})
                    if isinstance(value, frozenset) and not value:
                        net.trace.append(
                            f"EMPTY-INTERSECTION {rule.id} node={node.position}")
                        continue
                    net.ctx.overlay[(node.position, rule.assignment.feature)] = value
                    net.rescore_node(node.position)
                    net.trace.append(
                        f"PROJECT {rule.id} node={node.position} "
                        f"{rule.assignment.feature}={{{','.join(sorted(value)) if isinstance(value, frozenset) else value}}}")
                else:
                    induced = instantiate_template(rule, x, net.ctx)
                    net.trace.append(f"ACTIVATE {rule.id} trigger={x}")
                    if induced.arity == 1:
                        for ovar in net.variables:
                            for y in net.domain(ovar):
                                if induced.scope != "cross" and y.layer != induced.scope:
                                    continue
                                if eval_unary(induced, y, net.ctx) is Verdict.VIOLATED:
                                    net.fold_unary(y, rule.pf)
                    else:
                        sides = _cross_sides(net, induced.scope)
                        for y, z in sides:
                            if eval_binary(induced, y, z, net.ctx) is Verdict.VIOLATED:
                                net.fold_binary(y, z, rule.pf)
    return changed


def _cross_sides(net: ConstraintNetwork, scope: str):
    variables = net.variables
    for i, var_a in enumerate(variables):
        for var_b in variables[i + 1:]:
            if scope == "cross":
                if var_a[1] == var_b[1]:
                    continue
            elif var_a[1] != scope or var_b[1] != scope:
                continue
            for y in net.domain(var_a):
                for z in net.domain(var_b):
                    yield y, z


def _strict_batch(net: ConstraintNetwork, protected: set) -> bool:
    """Drop all zero-cost candidates at once (strict-violation cleanup)."""
    changed = False
    for var in net.variables:
        for x in list(net.domain(var)):
            if len(net.domain(var)) <= 1:
                break
            if x in protected:
                continue
            cost = net.prune_cost(x)
            if cost == 0.0:
                net.remove(x, cost)
                changed = True
    return changed


def disambiguation_loop(net: ConstraintNetwork,
                        budget: int = SELECT_BUDGET) -> None:
    protect: dict | None = None
    stale = True
    while True:
        if activate_pinduced(net):
            stale = True  # folded penalties may move the best interpretation
        if stale:
            protect = best_live_assignment(net, budget)
            stale = False
        protected = set(protect.values()) if protect else set()
        if _strict_batch(net, protected):
            continue
        decision = select_victim(net, protect=protect if protect is not None else {},
                                 budget=budget)
        if decision is None:
            break
        net.remove(decision.candidate, decision.cost)


def analysis_from_network(net: ConstraintNetwork) -> Analysis:
    assignment = net.assignment()
    score, violations = score_analysis(assignment, net.grammar, net.sentence)
    ordered = [assignment[var] for var in net.variables]
    return Analysis(tuple(ordered), score, tuple(violations))


def disambiguate(sentence: Sentence, grammar: Grammar,
                 prefilter: bool = True,
                 net_out: list | None = None) -> Analysis:
    """Parse one sentence down to a unique two-layer interpretation."""
    net = build_network(sentence, grammar, prefilter=prefilter)
    disambiguation_loop(net)
    if net_out is not None:
        net_out.append(net)
    return analysis_from_network(net)


def diagnose(analysis: Analysis, net: ConstraintNetwork) -> DiagnosisReport:
    """Error localization plus expectation-violation flags.

    A variable is flagged when its final relation had strictly lower
    initial support than some alternative in its initial domain: the
    pruning consequences did not match the local confidence estimate.
    """
    flagged = []
    for var in net.variables:
        chosen = analysis.relation_for(var[0], var[1])
        supports = [net.initial_support[x] for x in net.initial_domain(var)]
        if net.initial_support.get(chosen, 0.0) < max(supports):
            flagged.append(var)
    return DiagnosisReport(
        violations=analysis.violations,
        expectation_violations=tuple(flagged),
    )
