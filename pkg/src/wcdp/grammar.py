"""Penalty-weighted constraints: file syntax, expression AST, evaluation.

Grammar files are line oriented:

    label-set syn SUBJ OBJ ROOT
    label-set sem AG PAT TOP
    category-set N V ROOTCAT
    alpha 10
    constraint sy2 layer=syn arity=1 pf=0.1 : lab(X)=SUBJ -> num(dep(X))=num(dom(X))
    pinduced pss2 : synlab(X)=DET => assign : case(syndom(X)) := case(syndom(X)) ^ case(dep(X))

Expressions support the accessors dep/dom/lab (and the layer-explicit
syndom/semdom/synlab/semlab), the node features pos/word/cat/num/case/
semprop/feature(name, .), the operators = != < <= in & | ! -> <-> and set
intersection ^.  ``A -> B`` is violated only when A holds and B fails.

Feature matching is lenient: comparing two feature accessors where either
side is unspecified holds, while an unspecified feature never equals a
spelled-out literal.  Membership tests against an unconstrained (absent)
set hold; an explicitly empty set satisfies nothing.
"""

from __future__ import annotations

import copy
import enum
import re
from dataclasses import dataclass, field

from .errors import (
    AccessorScopeError,
    GrammarSyntaxError,
    PfOutOfRangeError,
    UndeclaredLabelError,
)
from .model import SEM, SYN, CandidateRelation, LexicalEntry, Sentence


class Verdict(enum.Enum):
    HOLDS = "holds"
    VIOLATED = "violated"
    INAPPLICABLE = "inapplicable"


# ---------------------------------------------------------------------------
# evaluation context


@dataclass(frozen=True)
class NodeRef:
    position: int
    entry: LexicalEntry


class EvalContext:
    """A sentence plus an overlay of projected feature values.

    The overlay maps (position, feature name) to a value and is how
    preference-induced feature projections take effect without copying
    the sentence.
    """

    def __init__(self, sentence: Sentence, overlay: dict | None = None):
        self.sentence = sentence
        self.overlay = overlay if overlay is not None else {}

    def node_for(self, position: int, entry_index: int = 0) -> NodeRef:
        return NodeRef(position, self.sentence.entry_at(position, entry_index))

    def feature(self, node: NodeRef, name: str):
        key = (node.position, name)
        if key in self.overlay:
            return self.overlay[key]
        return node.entry.feature(name)


# ---------------------------------------------------------------------------
# expression AST


class Expr:
    is_feature_accessor = False

    def eval(self, ctx: EvalContext, binding: dict):
        raise NotImplementedError

    def unparse(self) -> str:
        raise NotImplementedError

    def children(self) -> tuple["Expr", ...]:
        return ()

    def walk(self):
        yield self
        for child in self.children():
            yield from child.walk()


@dataclass
class Var(Expr):
    name: str

    def eval(self, ctx, binding):
        return binding[self.name]

    def unparse(self):
        return self.name


@dataclass
class Lit(Expr):
    value: object  # str symbol, int, or frozenset of symbols

    def eval(self, ctx, binding):
        return self.value

    def unparse(self):
        if isinstance(self.value, frozenset):
            return "{" + ",".join(sorted(self.value)) + "}"
        return str(self.value)


def _relation_of(expr: Expr, ctx, binding) -> CandidateRelation:
    value = expr.eval(ctx, binding)
    if not isinstance(value, CandidateRelation):
        raise AccessorScopeError(f"{expr.unparse()} is not a relation")
    return value


@dataclass
class Dep(Expr):
    rel: Expr

    def eval(self, ctx, binding):
        x = _relation_of(self.rel, ctx, binding)
        return ctx.node_for(x.dep, x.entry_index)

    def unparse(self):
        return f"dep({self.rel.unparse()})"

    def children(self):
        return (self.rel,)


@dataclass
class Dom(Expr):
    rel: Expr
    layer: str | None = None  # None = generic dom(), else syndom/semdom

    def eval(self, ctx, binding):
        x = _relation_of(self.rel, ctx, binding)
        if self.layer is not None and x.layer != self.layer:
            raise AccessorScopeError(
                f"{self.layer}dom applied to a {x.layer}-layer relation")
        return ctx.node_for(x.dom)

    def unparse(self):
        name = "dom" if self.layer is None else f"{self.layer}dom"
        return f"{name}({self.rel.unparse()})"

    def children(self):
        return (self.rel,)


@dataclass
class Lab(Expr):
    rel: Expr
    layer: str | None = None

    def eval(self, ctx, binding):
        x = _relation_of(self.rel, ctx, binding)
        if self.layer is not None and x.layer != self.layer:
            raise AccessorScopeError(
                f"{self.layer}lab applied to a {x.layer}-layer relation")
        return x.label

    def unparse(self):
        name = "lab" if self.layer is None else f"{self.layer}lab"
        return f"{name}({self.rel.unparse()})"

    def children(self):
        return (self.rel,)


def _node_of(expr: Expr, ctx, binding) -> NodeRef:
    value = expr.eval(ctx, binding)
    if not isinstance(value, NodeRef):
        raise AccessorScopeError(f"{expr.unparse()} is not a node")
    return value


@dataclass
class Pos(Expr):
    node: Expr

    def eval(self, ctx, binding):
        return _node_of(self.node, ctx, binding).position

    def unparse(self):
        return f"pos({self.node.unparse()})"

    def children(self):
        return (self.node,)


@dataclass
class FeatureAccess(Expr):
    """word/cat/num/case/semprop or feature(name, node)."""

    name: str
    node: Expr
    is_feature_accessor = True

    def eval(self, ctx, binding):
        node = _node_of(self.node, ctx, binding)
        return ctx.feature(node, self.name)

    def unparse(self):
        if self.name in ("word", "cat", "num", "case", "semprop"):
            return f"{self.name}({self.node.unparse()})"
        return f"feature({self.name}, {self.node.unparse()})"

    def children(self):
        return (self.node,)


def _as_position(value):
    if isinstance(value, NodeRef):
        return value.position
    return value


def _lenient_eq(left: Expr, right: Expr, lv, rv) -> bool:
    lv = _as_position(lv)
    rv = _as_position(rv)
    if lv is None or rv is None:
        if lv is None and rv is None:
            return True
        # One side unspecified: lenient only for feature-feature comparison.
        return left.is_feature_accessor and right.is_feature_accessor
    return lv == rv


@dataclass
class Cmp(Expr):
    op: str  # = != < <=
    left: Expr
    right: Expr

    def eval(self, ctx, binding):
        lv = self.left.eval(ctx, binding)
        rv = self.right.eval(ctx, binding)
        if self.op == "=":
            return _lenient_eq(self.left, self.right, lv, rv)
        if self.op == "!=":
            return not _lenient_eq(self.left, self.right, lv, rv)
        lv = _as_position(lv)
        rv = _as_position(rv)
        if lv is None or rv is None:
            return False
        if self.op == "<":
            return lv < rv
        return lv <= rv

    def unparse(self):
        return f"{self.left.unparse()}{self.op}{self.right.unparse()}"

    def children(self):
        return (self.left, self.right)


@dataclass
class In(Expr):
    left: Expr
    right: Expr

    def eval(self, ctx, binding):
        lv = self.left.eval(ctx, binding)
        rv = self.right.eval(ctx, binding)
        if rv is None or lv is None:
            # Absent feature set = unconstrained.
            return True
        if isinstance(lv, frozenset):
            return bool(lv & rv)
        return lv in rv

    def unparse(self):
        return f"{self.left.unparse()} in {self.right.unparse()}"

    def children(self):
        return (self.left, self.right)


@dataclass
class Inter(Expr):
    left: Expr
    right: Expr

    def eval(self, ctx, binding):
        lv = self.left.eval(ctx, binding)
        rv = self.right.eval(ctx, binding)
        if lv is None:
            return rv
        if rv is None:
            return lv
        return lv & rv

    def unparse(self):
        return f"{self.left.unparse()} ^ {self.right.unparse()}"

    def children(self):
        return (self.left, self.right)


@dataclass
class Not(Expr):
    arg: Expr

    def eval(self, ctx, binding):
        return not self.arg.eval(ctx, binding)

    def unparse(self):
        return f"!({self.arg.unparse()})"

    def children(self):
        return (self.arg,)


@dataclass
class BoolOp(Expr):
    op: str  # & | -> <->
    left: Expr
    right: Expr

    def eval(self, ctx, binding):
        lv = bool(self.left.eval(ctx, binding))
        if self.op == "&":
            return lv and bool(self.right.eval(ctx, binding))
        if self.op == "|":
            return lv or bool(self.right.eval(ctx, binding))
        rv = bool(self.right.eval(ctx, binding))
        if self.op == "->":
            return (not lv) or rv
        return lv == rv  # <->

    def unparse(self):
        return f"({self.left.unparse()} {self.op} {self.right.unparse()})"

    def children(self):
        return (self.left, self.right)


# ---------------------------------------------------------------------------
# constraints and grammar


@dataclass
class Constraint:
    id: str
    scope: str  # syn | sem | cross
    arity: int
    pf: float
    expr: Expr

    @property
    def guard(self) -> Expr | None:
        if isinstance(self.expr, BoolOp) and self.expr.op == "->":
            return self.expr.left
        return None

    @property
    def body(self) -> Expr:
        if isinstance(self.expr, BoolOp) and self.expr.op == "->":
            return self.expr.right
        return self.expr

    @property
    def strict(self) -> bool:
        return self.pf == 0.0

    def pretty(self) -> str:
        return (f"constraint {self.id} layer={self.scope} arity={self.arity} "
                f"pf={self.pf} : {self.expr.unparse()}")


@dataclass
class FeatureAssignment:
    """Consequent of the form ``feature(node-expr) := set-expr``."""

    feature: str
    target: Expr  # node-valued expression over X
    value: Expr  # set-valued expression over X

    def pretty(self) -> str:
        if self.feature in ("case", "semprop", "num"):
            head = f"{self.feature}({self.target.unparse()})"
        else:
            head = f"feature({self.feature}, {self.target.unparse()})"
        return f"assign : {head} := {self.value.unparse()}"


@dataclass
class PreferenceInducedConstraint:
    id: str
    trigger: Expr  # unary over X
    pf: float = 0.0  # penalty of the induced constraint (template form)
    template: Expr | None = None  # over Y (and Z), X-parts get substituted
    assignment: FeatureAssignment | None = None
    template_layers: dict[str, str] = field(default_factory=dict)

    @property
    def kind(self) -> str:
        return "assign" if self.assignment is not None else "constraint"

    def pretty(self) -> str:
        if self.assignment is not None:
            tail = self.assignment.pretty()
        else:
            tail = f"constraint : {self.template.unparse()}"
        pf = f" pf={self.pf}" if self.assignment is None else ""
        return f"pinduced {self.id}{pf} : {self.trigger.unparse()} => {tail}"


@dataclass
class Grammar:
    syn_labels: tuple[str, ...] = ()
    sem_labels: tuple[str, ...] = ()
    categories: tuple[str, ...] = ()
    constraints: tuple[Constraint, ...] = ()
    pinduced: tuple[PreferenceInducedConstraint, ...] = ()
    alpha: float = 10.0

    def labels(self, layer: str) -> tuple[str, ...]:
        return self.syn_labels if layer == SYN else self.sem_labels

    def constraint(self, cid: str) -> Constraint:
        for c in self.constraints:
            if c.id == cid:
                return c
        raise KeyError(cid)

    def without(self, *ids: str) -> "Grammar":
        """A copy with the named constraints / pinduced rules dropped."""
        return Grammar(
            syn_labels=self.syn_labels,
            sem_labels=self.sem_labels,
            categories=self.categories,
            constraints=tuple(c for c in self.constraints if c.id not in ids),
            pinduced=tuple(p for p in self.pinduced if p.id not in ids),
            alpha=self.alpha,
        )

    def unary_constraints(self, layer: str):
        return [c for c in self.constraints if c.arity == 1 and c.scope == layer]

    def binary_constraints(self):
        return [c for c in self.constraints if c.arity == 2]

    def pretty(self) -> str:
        lines = []
        if self.syn_labels:
            lines.append("label-set syn " + " ".join(self.syn_labels))
        if self.sem_labels:
            lines.append("label-set sem " + " ".join(self.sem_labels))
        if self.categories:
            lines.append("category-set " + " ".join(self.categories))
        lines.append(f"alpha {self.alpha}")
        lines.extend(c.pretty() for c in self.constraints)
        lines.extend(p.pretty() for p in self.pinduced)
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# expression parser

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<op><->|->|:=|!=|<=|[=<(){},&|!^])"
    r"|(?P<int>\d+)"
    r"|(?P<ident>\w+(?:-\w+)*))",
    re.UNICODE,
)

_VARS = ("X", "Y", "Z")
_FEATURES = ("word", "cat", "num", "case", "semprop")


class _ExprParser:
    def __init__(self, text: str, lineno: int):
        self.lineno = lineno
        self.tokens = self._lex(text)
        self.pos = 0

    def _lex(self, text: str):
        tokens = []
        i = 0
        while i < len(text):
            m = _TOKEN_RE.match(text, i)
            if not m:
                if text[i:].strip():
                    raise GrammarSyntaxError(
                        self.lineno, f"unexpected character {text[i:].strip()[0]!r}")
                break
            i = m.end()
            if m.lastgroup == "op":
                tokens.append(("op", m.group("op")))
            elif m.lastgroup == "int":
                tokens.append(("int", int(m.group("int"))))
            else:
                ident = m.group("ident")
                if ident == "in":
                    tokens.append(("op", "in"))
                else:
                    tokens.append(("ident", ident))
        tokens.append(("end", ""))
        return tokens

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, value: str):
        kind, tok = self.next()
        if tok != value:
            raise GrammarSyntaxError(self.lineno, f"expected {value!r}, got {tok!r}")

    def fail(self, message: str):
        raise GrammarSyntaxError(self.lineno, message)

    # precedence: <-> lowest, then ->, |, &, !, comparison, ^, atoms

    def parse(self) -> Expr:
        expr = self.parse_iff()
        if self.peek()[0] != "end":
            self.fail(f"trailing input at {self.peek()[1]!r}")
        return expr

    def parse_iff(self) -> Expr:
        left = self.parse_impl()
        while self.peek() == ("op", "<->"):
            self.next()
            left = BoolOp("<->", left, self.parse_impl())
        return left

    def parse_impl(self) -> Expr:
        left = self.parse_or()
        if self.peek() == ("op", "->"):
            self.next()
            return BoolOp("->", left, self.parse_impl())
        return left

    def parse_or(self) -> Expr:
        left = self.parse_and()
        while self.peek() == ("op", "|"):
            self.next()
            left = BoolOp("|", left, self.parse_and())
        return left

    def parse_and(self) -> Expr:
        left = self.parse_not()
        while self.peek() == ("op", "&"):
            self.next()
            left = BoolOp("&", left, self.parse_not())
        return left

    def parse_not(self) -> Expr:
        if self.peek() == ("op", "!"):
            self.next()
            return Not(self.parse_not())
        return self.parse_cmp()

    def parse_cmp(self) -> Expr:
        left = self.parse_inter()
        kind, tok = self.peek()
        if kind == "op" and tok in ("=", "!=", "<", "<=", "in"):
            self.next()
            right = self.parse_inter()
            if tok == "in":
                return In(left, right)
            return Cmp(tok, left, right)
        return left

    def parse_inter(self) -> Expr:
        left = self.parse_atom()
        while self.peek() == ("op", "^"):
            self.next()
            left = Inter(left, self.parse_atom())
        return left

    def parse_atom(self) -> Expr:
        kind, tok = self.next()
        if tok == "(":
            inner = self.parse_iff()
            self.expect(")")
            return inner
        if tok == "{":
            items = []
            if self.peek() != ("op", "}"):
                while True:
                    ik, item = self.next()
                    if ik not in ("ident", "int"):
                        self.fail(f"bad set element {item!r}")
                    items.append(str(item))
                    if self.peek() == ("op", ","):
                        self.next()
                        continue
                    break
            self.expect("}")
            return Lit(frozenset(items))
        if kind == "int":
            return Lit(tok)
        if kind == "ident":
            if self.peek() == ("op", "("):
                return self.parse_call(tok)
            if tok in _VARS:
                return Var(tok)
            return Lit(tok)
        self.fail(f"unexpected token {tok!r}")

    def parse_call(self, name: str) -> Expr:
        self.expect("(")
        if name == "feature":
            kind, fname = self.next()
            if kind != "ident":
                self.fail("feature() needs a feature name")
            self.expect(",")
            node = self.parse_iff()
            self.expect(")")
            return FeatureAccess(fname, node)
        arg = self.parse_iff()
        self.expect(")")
        if name == "dep":
            return Dep(arg)
        if name == "dom":
            return Dom(arg)
        if name == "syndom":
            return Dom(arg, SYN)
        if name == "semdom":
            return Dom(arg, SEM)
        if name == "lab":
            return Lab(arg)
        if name == "synlab":
            return Lab(arg, SYN)
        if name == "semlab":
            return Lab(arg, SEM)
        if name == "pos":
            return Pos(arg)
        if name in _FEATURES:
            return FeatureAccess(name, arg)
        self.fail(f"unknown accessor {name!r}")


def parse_expression(text: str, lineno: int = 0) -> Expr:
    return _ExprParser(text, lineno).parse()


# ---------------------------------------------------------------------------
# grammar file parser


def _check_labels(expr: Expr, grammar: Grammar, cid: str):
    declared = set(grammar.syn_labels) | set(grammar.sem_labels)
    for node in expr.walk():
        lits: list[str] = []
        if isinstance(node, Cmp) and node.op in ("=", "!="):
            sides = (node.left, node.right)
            if any(isinstance(s, Lab) for s in sides):
                lits = [s.value for s in sides
                        if isinstance(s, Lit) and isinstance(s.value, str)]
        elif isinstance(node, In) and isinstance(node.left, Lab):
            if isinstance(node.right, Lit) and isinstance(node.right.value, frozenset):
                lits = list(node.right.value)
        for lit in lits:
            if lit not in declared:
                raise UndeclaredLabelError(
                    f"constraint {cid}: label {lit!r} is not declared")


def _check_scope(expr: Expr, scope: str, cid: str):
    if scope == "cross":
        return
    banned = SEM if scope == SYN else SYN
    for node in expr.walk():
        if isinstance(node, (Lab, Dom)) and node.layer == banned:
            raise AccessorScopeError(
                f"constraint {cid}: {banned}-layer accessor in a {scope} constraint")


def _check_vars(expr: Expr, allowed: set[str], cid: str, lineno: int):
    for node in expr.walk():
        if isinstance(node, Var) and node.name not in allowed:
            raise GrammarSyntaxError(
                lineno, f"constraint {cid}: variable {node.name} not allowed here")


def _infer_template_layers(template: Expr, lineno: int) -> dict[str, str]:
    layers: dict[str, str] = {}
    for node in template.walk():
        if isinstance(node, (Lab, Dom)) and node.layer is not None:
            if isinstance(node.rel, Var) and node.rel.name != "X":
                name = node.rel.name
                if layers.setdefault(name, node.layer) != node.layer:
                    raise GrammarSyntaxError(
                        lineno, f"template variable {name} used on both layers")
    for node in template.walk():
        if isinstance(node, Var) and node.name != "X" and node.name not in layers:
            raise GrammarSyntaxError(
                lineno,
                f"template variable {node.name} needs a layer-explicit accessor")
    return layers


_KEYVAL_RE = re.compile(r"(\w+)=(\S+)")


def _parse_keyvals(text: str, lineno: int) -> dict[str, str]:
    out = {}
    for part in text.split():
        m = _KEYVAL_RE.fullmatch(part)
        if not m:
            raise GrammarSyntaxError(lineno, f"expected key=value, got {part!r}")
        out[m.group(1)] = m.group(2)
    return out


def parse_grammar(text: str) -> Grammar:
    """Parse a grammar file; raises GrammarSyntaxError with a line number."""
    syn_labels: list[str] = []
    sem_labels: list[str] = []
    categories: list[str] = []
    constraints: list[Constraint] = []
    pinduced: list[PreferenceInducedConstraint] = []
    alpha = 10.0
    seen_ids: set[str] = set()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "label-set":
            layer, _, names = rest.partition(" ")
            if layer == SYN:
                syn_labels.extend(names.split())
            elif layer == SEM:
                sem_labels.extend(names.split())
            else:
                raise GrammarSyntaxError(lineno, f"unknown layer {layer!r}")
        elif head == "category-set":
            categories.extend(rest.split())
        elif head == "alpha":
            alpha = float(rest)
        elif head == "constraint":
            cid, _, tail = rest.partition(" ")
            if cid in seen_ids:
                raise GrammarSyntaxError(lineno, f"duplicate constraint id {cid!r}")
            seen_ids.add(cid)
            opts_text, sep, expr_text = tail.partition(":")
            if not sep:
                raise GrammarSyntaxError(lineno, "missing ':' before expression")
            opts = _parse_keyvals(opts_text, lineno)
            scope = opts.get("layer", SYN)
            if scope not in (SYN, SEM, "cross"):
                raise GrammarSyntaxError(lineno, f"bad layer {scope!r}")
            arity = int(opts.get("arity", "1"))
            if arity not in (1, 2):
                raise GrammarSyntaxError(lineno, f"bad arity {arity}")
            try:
                pf = float(opts.get("pf", "0.0"))
            except ValueError:
                raise GrammarSyntaxError(lineno, f"bad pf {opts.get('pf')!r}")
            if not 0.0 <= pf < 1.0:
                raise PfOutOfRangeError(
                    f"constraint {cid}: pf={pf} outside [0, 1)")
            expr = parse_expression(expr_text, lineno)
            allowed = {"X"} if arity == 1 else {"X", "Y"}
            _check_vars(expr, allowed, cid, lineno)
            _check_scope(expr, scope, cid)
            constraints.append(Constraint(cid, scope, arity, pf, expr))
        elif head == "pinduced":
            pid, _, tail = rest.partition(" ")
            if pid in seen_ids:
                raise GrammarSyntaxError(lineno, f"duplicate constraint id {pid!r}")
            seen_ids.add(pid)
            opts_text, sep, body = tail.partition(":")
            if not sep:
                raise GrammarSyntaxError(lineno, "missing ':' after pinduced header")
            opts = _parse_keyvals(opts_text, lineno)
            try:
                pf = float(opts.get("pf", "0.0"))
            except ValueError:
                raise GrammarSyntaxError(lineno, f"bad pf {opts.get('pf')!r}")
            if not 0.0 <= pf < 1.0:
                raise PfOutOfRangeError(f"pinduced {pid}: pf={pf} outside [0, 1)")
            trig_text, arrow, conseq = body.partition("=>")
            if not arrow:
                raise GrammarSyntaxError(lineno, "missing '=>' in pinduced rule")
            trigger = parse_expression(trig_text, lineno)
            _check_vars(trigger, {"X"}, pid, lineno)
            kind, sep2, conseq_body = conseq.strip().partition(":")
            kind = kind.strip()
            if not sep2 or kind not in ("constraint", "assign"):
                raise GrammarSyntaxError(
                    lineno, "pinduced consequent must be 'constraint : ...' "
                    "or 'assign : ...'")
            if kind == "assign":
                target_text, sep3, value_text = conseq_body.partition(":=")
                if not sep3:
                    raise GrammarSyntaxError(lineno, "missing ':=' in assignment")
                target = parse_expression(target_text, lineno)
                if not isinstance(target, FeatureAccess):
                    raise GrammarSyntaxError(
                        lineno, "assignment target must be a feature accessor")
                value = parse_expression(value_text, lineno)
                _check_vars(target, {"X"}, pid, lineno)
                _check_vars(value, {"X"}, pid, lineno)
                pinduced.append(PreferenceInducedConstraint(
                    id=pid, trigger=trigger,
                    assignment=FeatureAssignment(
                        feature=target.name, target=target.node, value=value)))
            else:
                template = parse_expression(conseq_body, lineno)
                _check_vars(template, {"X", "Y", "Z"}, pid, lineno)
                layers = _infer_template_layers(template, lineno)
                pinduced.append(PreferenceInducedConstraint(
                    id=pid, trigger=trigger, pf=pf, template=template,
                    template_layers=layers))
        else:
            raise GrammarSyntaxError(lineno, f"unknown directive {head!r}")

    grammar = Grammar(
        syn_labels=tuple(syn_labels),
        sem_labels=tuple(sem_labels),
        categories=tuple(categories),
        constraints=tuple(constraints),
        pinduced=tuple(pinduced),
        alpha=alpha,
    )
    for c in grammar.constraints:
        _check_labels(c.expr, grammar, c.id)
    for p in grammar.pinduced:
        _check_labels(p.trigger, grammar, p.id)
        if p.template is not None:
            _check_labels(p.template, grammar, p.id)
    return grammar


def load_grammar(path) -> Grammar:
    with open(path, encoding="utf-8") as handle:
        return parse_grammar(handle.read())


# ---------------------------------------------------------------------------
# evaluation


def _verdict(constraint: Constraint, ctx: EvalContext, binding: dict) -> Verdict:
    guard = constraint.guard
    if guard is not None and not guard.eval(ctx, binding):
        return Verdict.INAPPLICABLE
    if constraint.body.eval(ctx, binding):
        return Verdict.HOLDS
    return Verdict.VIOLATED


def eval_unary(constraint: Constraint, x: CandidateRelation,
               ctx: EvalContext) -> Verdict:
    if constraint.arity != 1:
        raise ValueError(f"{constraint.id} is not unary")
    if constraint.scope != "cross" and x.layer != constraint.scope:
        raise AccessorScopeError(
            f"{constraint.id} is {constraint.scope}-scoped, got a {x.layer} relation")
    return _verdict(constraint, ctx, {"X": x})


def _orientations(constraint: Constraint, x: CandidateRelation,
                  y: CandidateRelation):
    if constraint.scope == "cross":
        if x.layer == SYN and y.layer == SEM:
            yield (x, y)
        if y.layer == SYN and x.layer == SEM:
            yield (y, x)
    else:
        if x.layer == constraint.scope and y.layer == constraint.scope:
            yield (x, y)
            yield (y, x)


def eval_binary(constraint: Constraint, x: CandidateRelation,
                y: CandidateRelation, ctx: EvalContext) -> Verdict:
    """Symmetric evaluation: violated if either orientation violates."""
    if constraint.arity != 2:
        raise ValueError(f"{constraint.id} is not binary")
    oriented = list(_orientations(constraint, x, y))
    if not oriented:
        raise AccessorScopeError(
            f"{constraint.id} ({constraint.scope}) does not apply to "
            f"a {x.layer}/{y.layer} pair")
    verdicts = [_verdict(constraint, ctx, {"X": a, "Y": b}) for a, b in oriented]
    if Verdict.VIOLATED in verdicts:
        return Verdict.VIOLATED
    if Verdict.HOLDS in verdicts:
        return Verdict.HOLDS
    return Verdict.INAPPLICABLE


def binary_applicable(constraint: Constraint, x: CandidateRelation,
                      y: CandidateRelation) -> bool:
    return any(True for _ in _orientations(constraint, x, y))


# ---------------------------------------------------------------------------
# template instantiation for preference-induced constraints


def substitute_trigger(expr: Expr, x: CandidateRelation, ctx: EvalContext) -> Expr:
    """Replace every X-dependent subexpression by its value for x."""

    def mentions_x(e: Expr) -> bool:
        return any(isinstance(n, Var) and n.name == "X" for n in e.walk())

    def rewrite(e: Expr) -> Expr:
        if not mentions_x(e):
            return e
        if isinstance(e, (Pos, Lab, FeatureAccess, Cmp, In, Inter)) and all(
                not isinstance(v, Var) or v.name == "X"
                for v in e.walk() if isinstance(v, Var)):
            value = e.eval(ctx, {"X": x})
            if isinstance(value, NodeRef):
                value = value.position
            return Lit(value)
        if isinstance(e, BoolOp):
            return BoolOp(e.op, rewrite(e.left), rewrite(e.right))
        if isinstance(e, Not):
            return Not(rewrite(e.arg))
        if isinstance(e, Cmp):
            return Cmp(e.op, rewrite(e.left), rewrite(e.right))
        if isinstance(e, In):
            return In(rewrite(e.left), rewrite(e.right))
        if isinstance(e, Inter):
            return Inter(rewrite(e.left), rewrite(e.right))
        raise AccessorScopeError(
            f"cannot instantiate {e.unparse()} against the trigger relation")

    return rewrite(expr)


def instantiate_template(rule: PreferenceInducedConstraint,
                         x: CandidateRelation, ctx: EvalContext) -> Constraint:
    """Bind the trigger relation into the rule's constraint template."""
    # Deep copy before renaming: substitute_trigger reuses subtrees that do
    # not mention X, and renaming Var nodes in place would corrupt the
    # stored template for later activations.
    closed = copy.deepcopy(substitute_trigger(rule.template, x, ctx))
    variables = sorted({n.name for n in closed.walk() if isinstance(n, Var)})
    arity = len(variables)
    if arity == 0 or arity > 2:
        raise AccessorScopeError(
            f"pinduced {rule.id}: template instantiates to arity {arity}")
    # Normalize variable names to X (and Y) for evaluation.
    rename = {old: new for old, new in zip(variables, ("X", "Y"))}
    for node in closed.walk():
        if isinstance(node, Var):
            node.name = rename[node.name]
    layers = {rename[v]: rule.template_layers.get(v, "") for v in variables}
    if arity == 1:
        scope = layers.get("X") or SYN
        return Constraint(rule.id, scope, 1, rule.pf, closed)
    lx, ly = layers.get("X"), layers.get("Y")
    if lx == ly:
        scope = lx or SYN
    else:
        scope = "cross"
        # eval orientation expects X=syn, Y=sem for cross constraints
        if lx == SEM:
            swap = {"X": "Y", "Y": "X"}
            for node in closed.walk():
                if isinstance(node, Var):
                    node.name = swap[node.name]
    return Constraint(rule.id, scope, 2, rule.pf, closed)
