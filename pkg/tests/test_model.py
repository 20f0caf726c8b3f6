"""Lexicon parsing, tokenization, sentences, and candidate relations."""

import pytest

import wcdp
from wcdp.errors import EmptySentenceError
from wcdp.model import ROOT_ENTRY, CandidateRelation, tokenize


def test_lookup_known_forms(toy_lexicon):
    (pferde,) = toy_lexicon.lookup("Pferde")
    assert pferde.cat == "N"
    assert pferde.num == "pl"
    assert pferde.semprop == frozenset({"animal"})
    (fressen,) = toy_lexicon.lookup("fressen")
    assert fressen.cat == "V"
    assert fressen.num == "pl"


def test_lookup_unknown_form_is_empty(toy_lexicon):
    assert toy_lexicon.lookup("xyzzy") == ()


def test_explicit_empty_set_differs_from_absent(toy_lexicon):
    (autos,) = toy_lexicon.lookup("Autos")
    assert autos.semprop == frozenset()  # declared empty: satisfies nothing
    assert autos.case is None  # absent: unconstrained


def test_parse_lexicon_comments_and_extras():
    lex = wcdp.parse_lexicon(
        "# comment line\n"
        "Haus cat=N num=sg case={nom,acc} gender={neut}  # trailing\n")
    (haus,) = lex.lookup("Haus")
    assert haus.case == frozenset({"nom", "acc"})
    assert haus.feature("gender") == frozenset({"neut"})
    assert haus.feature("missing") is None


def test_tokenize_strips_edge_punctuation():
    assert tokenize("Pferde fressen Gras.") == ["Pferde", "fressen", "Gras"]
    assert tokenize('  "Gras", fressen!  ') == ["Gras", "fressen"]
    assert tokenize("...") == []


def test_make_sentence_positions_and_unknown_words(toy_lexicon):
    sentence = wcdp.make_sentence(toy_lexicon, "Quaxo fressen Gras")
    assert [t.position for t in sentence.tokens] == [1, 2, 3]
    unknown = sentence.entry_at(1)
    assert unknown.cat == "N"  # unknown forms fall back to a bare noun
    assert unknown.num is None
    assert sentence.entry_at(0) is ROOT_ENTRY
    assert ROOT_ENTRY.cat == "ROOTCAT"


def test_empty_sentence_is_rejected(toy_lexicon, toy_grammar):
    sentence = wcdp.make_sentence(toy_lexicon, "")
    with pytest.raises(EmptySentenceError):
        wcdp.disambiguate(sentence, toy_grammar)


def test_candidate_relation_ordering_and_rendering():
    a = CandidateRelation(layer="syn", label="OBJ", dep=1, dom=2, entry_index=0)
    b = CandidateRelation(layer="sem", label="AG", dep=1, dom=2, entry_index=0)
    c = CandidateRelation(layer="syn", label="SUBJ", dep=2, dom=0, entry_index=0)
    assert sorted([c, b, a], key=lambda x: x.sort_key) == [a, b, c]
    assert str(a) == "syn:1:OBJ:2"
