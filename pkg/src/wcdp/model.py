"""Word forms, features, sentences and candidate dependency relations.

Feature values use ``None`` for "unspecified".  An explicitly empty set
(``semprop={}`` in a lexicon file) is a specified value that satisfies no
membership test, while an absent feature is unconstrained.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import GrammarSyntaxError

SYN = "syn"
SEM = "sem"
LAYERS = (SYN, SEM)

ROOT_CAT = "ROOTCAT"
ROOT_FORM = "<root>"

_NUM_VALUES = ("sg", "pl")


@dataclass(frozen=True, eq=True)
class LexicalEntry:
    form: str
    cat: str
    num: str | None = None
    case: frozenset[str] | None = None
    semprop: frozenset[str] | None = None
    extra: tuple[tuple[str, frozenset[str]], ...] = ()

    def __post_init__(self):
        if not self.form:
            raise ValueError("empty word form")
        if self.num is not None and self.num not in _NUM_VALUES:
            raise ValueError(f"bad number feature {self.num!r}")

    def feature(self, name: str):
        """Return a named feature value, or None when unspecified."""
        if name == "num":
            return self.num
        if name == "case":
            return self.case
        if name == "semprop":
            return self.semprop
        if name == "cat":
            return self.cat
        if name == "word":
            return self.form
        for key, value in self.extra:
            if key == name:
                return value
        return None


ROOT_ENTRY = LexicalEntry(form=ROOT_FORM, cat=ROOT_CAT)


def unknown_entry(form: str) -> LexicalEntry:
    """Fallback entry for out-of-vocabulary forms: a fully underspecified noun."""
    return LexicalEntry(form=form, cat="N")


@dataclass(frozen=True)
class Token:
    position: int
    form: str
    entries: tuple[LexicalEntry, ...]


@dataclass(frozen=True)
class Sentence:
    tokens: tuple[Token, ...]

    def __post_init__(self):
        for i, tok in enumerate(self.tokens, start=1):
            if tok.position != i:
                raise ValueError("token positions must be consecutive from 1")

    def __len__(self) -> int:
        return len(self.tokens)

    def token(self, position: int) -> Token:
        return self.tokens[position - 1]

    def entry_at(self, position: int, entry_index: int = 0) -> LexicalEntry:
        if position == 0:
            return ROOT_ENTRY
        return self.token(position).entries[entry_index]

    @property
    def forms(self) -> tuple[str, ...]:
        return tuple(t.form for t in self.tokens)


@dataclass(frozen=True, order=True)
class CandidateRelation:
    """One hypothesized dependency: a labelled arc on one layer.

    ``dep`` is the modifier position, ``dom`` the modifiee position
    (0 means the root pseudo-node).  ``entry_index`` picks the lexical
    entry of the modifier when its form is ambiguous.
    """

    layer: str
    label: str
    dep: int
    dom: int
    entry_index: int = 0

    def __post_init__(self):
        if self.layer not in LAYERS:
            raise ValueError(f"bad layer {self.layer!r}")
        if self.dep < 1 or self.dom < 0 or self.dep == self.dom:
            raise ValueError(f"bad arc {self.dep}->{self.dom}")

    @property
    def sort_key(self):
        return (self.dep, 0 if self.layer == SYN else 1, self.label,
                self.dom, self.entry_index)

    def __str__(self):
        return f"{self.layer}:{self.dep}:{self.label}:{self.dom}"


class Lexicon:
    """A mapping from word forms to their lexical entries."""

    def __init__(self, entries: Iterable[LexicalEntry] = ()):
        self._by_form: dict[str, list[LexicalEntry]] = {}
        for entry in entries:
            self.add(entry)

    def add(self, entry: LexicalEntry) -> None:
        self._by_form.setdefault(entry.form, []).append(entry)

    def lookup(self, form: str) -> tuple[LexicalEntry, ...]:
        """All entries for a form; empty tuple when the form is unknown."""
        return tuple(self._by_form.get(form, ()))

    @property
    def forms(self) -> tuple[str, ...]:
        return tuple(self._by_form)


_SET_RE = re.compile(r"^\{(.*)\}$")
_PUNCT = ".,;:!?\"'"


def _parse_value(raw: str):
    m = _SET_RE.match(raw)
    if m:
        inner = m.group(1).strip()
        if not inner:
            return frozenset()
        return frozenset(part.strip() for part in inner.split(","))
    return raw


def parse_lexicon(text: str) -> Lexicon:
    """Parse the line-oriented lexicon format ``form key=value ...``."""
    lexicon = Lexicon()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        form = parts[0]
        fields: dict = {"form": form, "cat": None}
        extra: list[tuple[str, frozenset[str]]] = []
        for part in parts[1:]:
            if "=" not in part:
                raise GrammarSyntaxError(lineno, f"expected key=value, got {part!r}")
            key, raw_value = part.split("=", 1)
            value = _parse_value(raw_value)
            if key in ("cat", "num"):
                if not isinstance(value, str):
                    raise GrammarSyntaxError(lineno, f"{key} takes a plain symbol")
                fields[key] = value
            elif key in ("case", "semprop"):
                if isinstance(value, str):
                    value = frozenset((value,))
                fields[key] = value
            else:
                if isinstance(value, str):
                    value = frozenset((value,))
                extra.append((key, value))
        if fields["cat"] is None:
            raise GrammarSyntaxError(lineno, f"entry for {form!r} lacks cat=")
        try:
            lexicon.add(LexicalEntry(extra=tuple(extra), **fields))
        except ValueError as exc:
            raise GrammarSyntaxError(lineno, str(exc)) from exc
    return lexicon


def load_lexicon(path) -> Lexicon:
    with open(path, encoding="utf-8") as handle:
        return parse_lexicon(handle.read())


def tokenize(text: str) -> list[str]:
    """Whitespace tokenization with edge punctuation stripped."""
    forms = []
    for chunk in text.split():
        form = chunk.strip(_PUNCT)
        if form:
            forms.append(form)
    return forms


def make_sentence(lexicon: Lexicon, text_or_forms) -> Sentence:
    """Build a sentence, mapping unknown forms to an underspecified noun."""
    if isinstance(text_or_forms, str):
        forms = tokenize(text_or_forms)
    else:
        forms = list(text_or_forms)
    tokens = []
    for i, form in enumerate(forms, start=1):
        entries = lexicon.lookup(form)
        if not entries:
            entries = (unknown_entry(form),)
        tokens.append(Token(position=i, form=form, entries=entries))
    return Sentence(tokens=tuple(tokens))
