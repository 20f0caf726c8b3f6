"""Shared fixtures: bundled grammars, lexica, and the arbitration table."""

import pytest

import wcdp
from wcdp.fixtures import path as fixture_path

# Each row: case id, sentence, expected (syn, sem) labels for the two
# nouns in surface order, expected score, expected violated constraints.
ARBITRATION_TABLE = [
    ("2a", "Pferde fressen Gras", ("SUBJ", "AG", "OBJ", "PAT"), 1.0, set()),
    ("2b", "Gras fressen Pferde", ("OBJ", "PAT", "SUBJ", "AG"), 0.6, {"sy3"}),
    ("2c", "Pferd fressen Gras", ("SUBJ", "AG", "OBJ", "PAT"), 0.1, {"sy2"}),
    ("2d", "Gras fressen Pferd", ("OBJ", "PAT", "SUBJ", "AG"), 0.06,
     {"sy2", "sy3"}),
    ("3a", "Autos fressen Geld", ("SUBJ", "AG", "OBJ", "PAT"), 0.07,
     {"se2", "se3"}),
    ("3b", "Geld fressen Autos", ("OBJ", "PAT", "SUBJ", "AG"), 0.042,
     {"se2", "se3", "sy3"}),
    ("3c", "Auto fressen Geld", ("SUBJ", "AG", "OBJ", "PAT"), 0.007,
     {"sy2", "se2", "se3"}),
    ("3d", "Geld fressen Auto", ("SUBJ", "AG", "OBJ", "PAT"), 0.007,
     {"sy2", "se2", "se3"}),
    ("4a", "Gräser fressen Pferd", ("SUBJ", "AG", "OBJ", "PAT"), 0.07,
     {"se2", "se3"}),
]

TOY_VOCABULARY = ["Pferde", "Pferd", "Gras", "Gräser", "fressen",
                  "Autos", "Auto", "Geld"]


@pytest.fixture(scope="session")
def toy_grammar():
    return wcdp.load_grammar(fixture_path("toy.gram"))


@pytest.fixture(scope="session")
def toy_lexicon():
    return wcdp.load_lexicon(fixture_path("toy.lex"))


@pytest.fixture(scope="session")
def pp_grammar():
    return wcdp.load_grammar(fixture_path("pp.gram"))


@pytest.fixture(scope="session")
def pp_lexicon():
    return wcdp.load_lexicon(fixture_path("pp.lex"))


def noun_positions(sentence):
    return [t.position for t in sentence.tokens
            if sentence.entry_at(t.position).cat == "N"]


def noun_labels(sentence, analysis_like):
    """(syn, sem) labels of the two nouns, in surface order."""
    out = []
    for pos in noun_positions(sentence):
        out.append(analysis_like.relation_for(pos, "syn").label)
        out.append(analysis_like.relation_for(pos, "sem").label)
    return tuple(out)
