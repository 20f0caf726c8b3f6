"""Grammar file parsing, the expression language, and evaluation."""

import pytest

import wcdp
from wcdp.errors import (
    AccessorScopeError,
    GrammarSyntaxError,
    PfOutOfRangeError,
    UndeclaredLabelError,
)
from wcdp.grammar import EvalContext, Verdict, instantiate_template
from wcdp.model import CandidateRelation

HEADER = ("label-set syn SUBJ OBJ ROOT\n"
          "label-set sem AG PAT TOP\n"
          "category-set N V ROOTCAT\n")


def _syn(label, dep, dom):
    return CandidateRelation(layer="syn", label=label, dep=dep, dom=dom,
                             entry_index=0)


def _sem(label, dep, dom):
    return CandidateRelation(layer="sem", label=label, dep=dep, dom=dom,
                             entry_index=0)


def test_fixture_penalty_factors(toy_grammar):
    expected = {"sy1": 0.0, "sy2": 0.1, "sy3": 0.6, "sy4": 0.0,
                "se1": 0.0, "se2": 0.1, "se3": 0.7, "se4": 0.5,
                "ss1": 0.2, "ss2": 0.3}
    for cid, pf in expected.items():
        assert toy_grammar.constraint(cid).pf == pf
    assert toy_grammar.alpha == 10.0


def test_parse_single_constraint():
    g = wcdp.parse_grammar(
        HEADER + "constraint sy2 layer=syn arity=1 pf=0.1 : "
                 "lab(X)=SUBJ -> num(dep(X))=num(dom(X))\n")
    (sy2,) = g.constraints
    assert (sy2.id, sy2.scope, sy2.arity, sy2.pf) == ("sy2", "syn", 1, 0.1)


def test_pf_out_of_range_rejected():
    with pytest.raises(PfOutOfRangeError):
        wcdp.parse_grammar(
            HEADER + "constraint bad layer=syn arity=1 pf=1.0 : lab(X)=SUBJ\n")
    with pytest.raises(PfOutOfRangeError):
        wcdp.parse_grammar(
            HEADER + "constraint bad layer=syn arity=1 pf=-0.1 : lab(X)=SUBJ\n")


def test_undeclared_label_rejected():
    with pytest.raises(UndeclaredLabelError):
        wcdp.parse_grammar(
            HEADER + "constraint bad layer=syn arity=1 pf=0.1 : lab(X)=IOBJ\n")


def test_syntax_error_carries_line_number():
    with pytest.raises(GrammarSyntaxError) as info:
        wcdp.parse_grammar(HEADER + "\nconstraint broken ::: nonsense\n")
    assert info.value.line == 5


def test_scope_violation_rejected():
    # a syn-scoped constraint may not read the semantic layer
    with pytest.raises(AccessorScopeError):
        wcdp.parse_grammar(
            HEADER + "constraint bad layer=syn arity=1 pf=0.1 : "
                     "semlab(X)=AG\n")


def test_empty_grammar():
    g = wcdp.parse_grammar("")
    assert g.constraints == ()
    assert g.pinduced == ()


def test_round_trip_preserves_behaviour(toy_grammar, toy_lexicon):
    reparsed = wcdp.parse_grammar(toy_grammar.pretty())
    assert [c.id for c in reparsed.constraints] == \
        [c.id for c in toy_grammar.constraints]
    sentence = wcdp.make_sentence(toy_lexicon, "Gras fressen Pferde")
    a = wcdp.disambiguate(sentence, toy_grammar)
    b = wcdp.disambiguate(sentence, reparsed)
    assert a.relations == b.relations
    assert a.score == b.score


def test_round_trip_extended_grammar(pp_grammar, pp_lexicon):
    reparsed = wcdp.parse_grammar(pp_grammar.pretty())
    sentence = wcdp.make_sentence(pp_lexicon, "der Mann schläft")
    a = wcdp.disambiguate(sentence, pp_grammar)
    b = wcdp.disambiguate(sentence, reparsed)
    assert a.relations == b.relations and a.score == b.score


def test_eval_unary_sy3(toy_grammar, toy_lexicon):
    sy3 = toy_grammar.constraint("sy3")
    ctx = EvalContext(wcdp.make_sentence(toy_lexicon, "Pferde fressen Gras"))
    assert wcdp.eval_unary(sy3, _syn("SUBJ", 1, 2), ctx) is Verdict.HOLDS
    assert wcdp.eval_unary(sy3, _syn("SUBJ", 3, 2), ctx) is Verdict.VIOLATED
    assert wcdp.eval_unary(sy3, _syn("OBJ", 3, 2), ctx) is Verdict.INAPPLICABLE


def test_eval_unary_agreement_leniency(toy_grammar, toy_lexicon):
    sy2 = toy_grammar.constraint("sy2")
    # unknown word: number unspecified on the subject side
    ctx = EvalContext(wcdp.make_sentence(toy_lexicon, "Quaxo fressen Gras"))
    assert wcdp.eval_unary(sy2, _syn("SUBJ", 1, 2), ctx) is Verdict.HOLDS
    # specified mismatch is a violation
    ctx = EvalContext(wcdp.make_sentence(toy_lexicon, "Pferd fressen Gras"))
    assert wcdp.eval_unary(sy2, _syn("SUBJ", 1, 2), ctx) is Verdict.VIOLATED


def test_eval_binary_mapping_and_symmetry(toy_grammar, toy_lexicon):
    ss1 = toy_grammar.constraint("ss1")
    ctx = EvalContext(wcdp.make_sentence(toy_lexicon, "Pferde fressen Gras"))
    subj = _syn("SUBJ", 1, 2)
    assert wcdp.eval_binary(ss1, subj, _sem("AG", 1, 2), ctx) is Verdict.HOLDS
    assert wcdp.eval_binary(ss1, subj, _sem("PAT", 1, 2), ctx) is Verdict.VIOLATED
    # symmetric application
    assert wcdp.eval_binary(ss1, _sem("PAT", 1, 2), subj, ctx) is Verdict.VIOLATED


def test_eval_binary_sy4_double_modification(toy_grammar, toy_lexicon):
    sy4 = toy_grammar.constraint("sy4")
    ctx = EvalContext(wcdp.make_sentence(toy_lexicon, "Pferde fressen Gras"))
    verdict = wcdp.eval_binary(sy4, _syn("SUBJ", 1, 2), _syn("SUBJ", 3, 2), ctx)
    assert verdict is Verdict.VIOLATED


def test_instantiate_template_leaves_rule_intact(pp_grammar, pp_lexicon):
    (pss1,) = [p for p in pp_grammar.pinduced if p.id == "pss1"]
    before = pss1.template.unparse()
    sentence = wcdp.make_sentence(pp_lexicon,
                                  "Dann nehmen wir die erste Woche im Mai")
    ctx = EvalContext(sentence)
    trigger = CandidateRelation(layer="syn", label="PHEAD", dep=8, dom=7,
                                entry_index=0)
    first = instantiate_template(pss1, trigger, ctx)
    second = instantiate_template(pss1, trigger, ctx)
    assert pss1.template.unparse() == before
    assert first.expr.unparse() == second.expr.unparse()


def test_nested_pinduced_rejected():
    with pytest.raises(GrammarSyntaxError):
        wcdp.parse_grammar(
            HEADER + "pinduced p1 pf=0.5 : lab(X)=SUBJ => "
                     "pinduced : lab(Y)=OBJ => constraint : lab(Z)=ROOT\n")
