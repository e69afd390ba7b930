"""Ground signs, rule templates, unification and commutative combination.

Feature structures are flat: a sign carries a category, an orthography and a
map from feature names to atoms (``str``), indices (``int``) or, in rule
templates only, variables (:class:`Var`).
"""

from __future__ import annotations

import enum
import re
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Optional, Union


class GrammarError(ValueError):
    """Malformed grammar text or an inconsistent grammar definition."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message)


class MorphologyError(GrammarError):
    """A fusing rule applied to a pair missing from the morph table."""


class PrecedenceViolation(Exception):
    """Two rule applications over the same pair of signs disagree."""

    def __init__(self, a: "Sign", b: "Sign", mothers: list["Sign"]):
        self.a = a
        self.b = b
        self.mothers = mothers
        super().__init__(
            "combining %s with %s is not determinate: %s"
            % (a, b, " | ".join(repr(m.orth) for m in mothers)))


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


FeatureValue = Union[str, int, Var]


def _format_value(v: FeatureValue) -> str:
    return str(v)


def _freeze(feats) -> tuple:
    if isinstance(feats, Mapping):
        feats = feats.items()
    return tuple(sorted(feats))


@dataclass(frozen=True)
class Sign:
    """A category, an orthography and a flat feature map.

    ``feats`` is stored as a sorted tuple of pairs so signs are hashable and
    compare by content.
    """

    cat: str
    orth: str
    feats: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "feats", _freeze(self.feats))

    @classmethod
    def make(cls, cat: str, orth: str, **feats: FeatureValue) -> "Sign":
        return cls(cat, orth, feats)

    def get(self, name: str, default=None):
        for k, v in self.feats:
            if k == name:
                return v
        return default

    @property
    def fmap(self) -> dict:
        return dict(self.feats)

    def is_ground(self) -> bool:
        return not any(isinstance(v, Var) for _, v in self.feats)

    def sort_key(self) -> tuple:
        return (self.cat, self.orth,
                tuple((k, type(v).__name__, str(v)) for k, v in self.feats))

    def __str__(self) -> str:
        inner = ",".join([self.cat] + ["%s=%s" % (k, _format_value(v))
                                       for k, v in self.feats])
        return "%s[%s]" % (self.orth, inner)


@dataclass(frozen=True)
class Template:
    """Category plus feature constraints; values may be variables."""

    cat: str
    feats: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "feats", _freeze(self.feats))

    @classmethod
    def make(cls, cat: str, **feats: FeatureValue) -> "Template":
        return cls(cat, feats)

    def variables(self) -> set[str]:
        return {v.name for _, v in self.feats if isinstance(v, Var)}

    def instantiate(self, bindings: Mapping[str, FeatureValue]) -> tuple:
        out = []
        for k, v in self.feats:
            if isinstance(v, Var):
                v = bindings[v.name]
            out.append((k, v))
        return tuple(out)

    def __str__(self) -> str:
        return "%s[%s]" % (self.cat, ",".join(
            "%s=%s" % (k, _format_value(v)) for k, v in self.feats))


def unify(template: Template, candidate: Sign,
          bindings: Optional[Mapping[str, FeatureValue]] = None):
    """Match ``candidate`` against ``template`` under ``bindings``.

    Returns the extended bindings as a new dict, or None on failure. The
    input mapping is never modified. Features of the candidate that the
    template does not mention are unconstrained.
    """
    if template.cat != candidate.cat:
        return None
    out = dict(bindings) if bindings else {}
    have = candidate.fmap
    for name, want in template.feats:
        if name not in have:
            return None
        got = have[name]
        if isinstance(want, Var):
            bound = out.get(want.name, _UNBOUND)
            if bound is _UNBOUND:
                out[want.name] = got
            elif not _same(bound, got):
                return None
        elif not _same(want, got):
            return None
    return out


_UNBOUND = object()


def _same(a: FeatureValue, b: FeatureValue) -> bool:
    # 1 and "1" are different values; so are True and 1
    return type(a) is type(b) and a == b


_OPS = {
    ">": lambda a, b: a > b,
    ">=": lambda a, b: a >= b,
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    "=": lambda a, b: a == b,
    "!=": lambda a, b: a != b,
}


@dataclass(frozen=True)
class Term:
    base: Union[Var, int]
    offset: int = 0

    def value(self, bindings):
        v = self.base
        if isinstance(v, Var):
            v = bindings[v.name]
        if self.offset:
            if not isinstance(v, int):
                return None
            v = v + self.offset
        return v

    def __str__(self) -> str:
        if not self.offset:
            return str(self.base)
        return "%s%+d" % (self.base, self.offset)


@dataclass(frozen=True)
class Constraint:
    """A side condition such as ``R > P`` over daughter variables."""

    left: Term
    op: str
    right: Term

    def holds(self, bindings) -> bool:
        a = self.left.value(bindings)
        b = self.right.value(bindings)
        if a is None or b is None:
            return False
        if self.op in ("=", "!="):
            return _OPS[self.op](_same(a, b), True)
        if not (isinstance(a, int) and isinstance(b, int)):
            return False
        return _OPS[self.op](a, b)

    def variables(self) -> set[str]:
        return {t.base.name for t in (self.left, self.right)
                if isinstance(t.base, Var)}

    def __str__(self) -> str:
        return "%s %s %s" % (self.left, self.op, self.right)


class OrthMode(enum.Enum):
    CONCAT = "concat"
    FUSE = "fuse"


@dataclass(frozen=True)
class Rule:
    name: str
    mother: Template
    left: Template
    right: Template
    orth_mode: OrthMode = OrthMode.CONCAT
    where: tuple = ()

    def apply(self, left: Sign, right: Sign, morph: Mapping) -> Optional[Sign]:
        """Mother sign for ``left`` followed by ``right``, or None."""
        b = unify(self.left, left)
        if b is None:
            return None
        b = unify(self.right, right, b)
        if b is None:
            return None
        if not all(c.holds(b) for c in self.where):
            return None
        if self.orth_mode is OrthMode.FUSE:
            try:
                orth = morph[left.orth, right.orth]
            except KeyError:
                raise MorphologyError(
                    "rule %s fuses %r + %r but the morph table has no entry"
                    % (self.name, left.orth, right.orth)) from None
        else:
            orth = left.orth + " " + right.orth
        return Sign(self.mother.cat, orth, self.mother.instantiate(b))

    def __str__(self) -> str:
        s = "rule %s: %s -> %s %s" % (self.name, self.mother, self.left,
                                      self.right)
        if self.orth_mode is OrthMode.FUSE:
            s += " fuse"
        if self.where:
            s += " where " + ", ".join(str(c) for c in self.where)
        return s


@dataclass(frozen=True)
class Grammar:
    rules: tuple = ()
    morph: Mapping = field(default_factory=dict)
    features: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        object.__setattr__(self, "features", frozenset(self.features))
        seen = set()
        for r in self.rules:
            if r.name in seen:
                raise GrammarError("duplicate rule name %r" % r.name)
            seen.add(r.name)

    def rule(self, name: str) -> Rule:
        for r in self.rules:
            if r.name == name:
                return r
        raise KeyError(name)

    def __hash__(self):
        return id(self)


def mothers(a: Sign, b: Sign, grammar: Grammar) -> list[Sign]:
    """Every distinct mother obtainable from ``a`` and ``b`` in either order.

    Attempts run rule by rule, each in both orientations, with the pair put
    in a canonical order first so the result does not depend on argument
    order.
    """
    if b.sort_key() < a.sort_key():
        a, b = b, a
    found: list[Sign] = []
    for rule in grammar.rules:
        for left, right in ((a, b), (b, a)):
            m = rule.apply(left, right, grammar.morph)
            if m is not None and m not in found:
                found.append(m)
    return found


def combine(a: Sign, b: Sign, grammar: Grammar,
            strict: bool = True) -> Optional[Sign]:
    """Combine two ground signs regardless of their order.

    Returns the mother sign, or None when no rule applies. If the attempts
    produce more than one distinct mother the grammar is not precedence
    monotonic: with ``strict`` this raises :class:`PrecedenceViolation`,
    otherwise the first rule wins and a warning is issued.
    """
    found = mothers(a, b, grammar)
    if not found:
        return None
    if len(found) > 1:
        if strict:
            raise PrecedenceViolation(a, b, found)
        warnings.warn(str(PrecedenceViolation(a, b, found)), stacklevel=2)
    return found[0]


# grammar files

_NAME = r"[A-Za-z_][\w\-]*"
_ITEM_RE = re.compile(r"\s*(%s)\s*\[([^\]]*)\]" % _NAME)
_RULE_RE = re.compile(r"^rule\s+(%s)\s*:\s*(.*)$" % _NAME)
_MORPH_RE = re.compile(r"^morph\s+(\S+)\s*\+\s*(\S+)\s*=\s*(\S+)$")
_FEATURE_RE = re.compile(r"^feature\s+(%s)$" % _NAME)
_CONSTRAINT_RE = re.compile(r"^(\S+?)\s*(>=|<=|!=|>|<|=)\s*(\S+)$")
_TERM_RE = re.compile(r"^(%s|-?\d+)(?:([+-])(\d+))?$" % _NAME)


def parse_value(token: str, line: Optional[int] = None,
                allow_vars: bool = True) -> FeatureValue:
    """Integers are indices, uppercase-initial tokens variables, else atoms."""
    token = token.strip()
    if not token or re.search(r"\s", token):
        raise GrammarError("bad feature value %r" % token, line)
    if re.fullmatch(r"-?\d+", token):
        return int(token)
    if token[0].isupper():
        if not allow_vars:
            raise GrammarError("variable %s not allowed here" % token, line)
        return Var(token)
    return token


def parse_features(body: str, line: Optional[int] = None,
                   allow_vars: bool = True) -> dict:
    feats = {}
    for part in body.split(","):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise GrammarError("expected feature=value, got %r" % part, line)
        k, v = part.split("=", 1)
        k = k.strip()
        if not re.fullmatch(_NAME, k):
            raise GrammarError("bad feature name %r" % k, line)
        if k in feats:
            raise GrammarError("feature %s given twice" % k, line)
        feats[k] = parse_value(v, line, allow_vars)
    return feats


def _parse_templates(text: str, line: int) -> tuple[list[Template], str]:
    out = []
    pos = 0
    while True:
        m = _ITEM_RE.match(text, pos)
        if not m:
            break
        out.append(Template(m.group(1), parse_features(m.group(2), line)))
        pos = m.end()
    return out, text[pos:].strip()


def _parse_term(tok: str, line: int) -> Term:
    m = _TERM_RE.match(tok)
    if not m:
        raise GrammarError("bad constraint term %r" % tok, line)
    base = parse_value(m.group(1), line)
    if isinstance(base, str):
        raise GrammarError("constraint terms must be variables or integers",
                           line)
    offset = 0
    if m.group(2):
        offset = int(m.group(3)) * (1 if m.group(2) == "+" else -1)
    return Term(base, offset)


def _parse_rule(name: str, body: str, line: int) -> Rule:
    if "->" not in body:
        raise GrammarError("rule %s: missing '->'" % name, line)
    lhs, rhs = body.split("->", 1)
    mother, rest = _parse_templates(lhs, line)
    if len(mother) != 1 or rest:
        raise GrammarError("rule %s: expected one mother" % name, line)
    daughters, rest = _parse_templates(rhs, line)
    if len(daughters) != 2:
        raise GrammarError("rule %s: rules must be binary" % name, line)
    mode = OrthMode.CONCAT
    where: list[Constraint] = []
    if rest.startswith("fuse"):
        mode = OrthMode.FUSE
        rest = rest[len("fuse"):].strip()
    if rest.startswith("where"):
        for c in rest[len("where"):].split(","):
            m = _CONSTRAINT_RE.match(c.strip())
            if not m:
                raise GrammarError("rule %s: bad constraint %r" % (name, c),
                                   line)
            where.append(Constraint(_parse_term(m.group(1), line), m.group(2),
                                    _parse_term(m.group(3), line)))
        rest = ""
    if rest:
        raise GrammarError("rule %s: unexpected %r" % (name, rest), line)
    rule = Rule(name, mother[0], daughters[0], daughters[1], mode,
                tuple(where))
    bound = rule.left.variables() | rule.right.variables()
    unbound = rule.mother.variables() - bound
    for c in rule.where:
        unbound |= c.variables() - bound
    if unbound:
        raise GrammarError("rule %s: unbound variable(s) %s"
                           % (name, ", ".join(sorted(unbound))), line)
    return rule


def parse_grammar(text: str) -> Grammar:
    """Parse the line-oriented grammar format.

    >>> g = parse_grammar('''
    ... feature idx
    ... rule r: NP[idx=X] -> DET[idx=X] N[idx=X]
    ... ''')
    >>> [r.name for r in g.rules]
    ['r']
    """
    features: set[str] = set()
    rules: list[Rule] = []
    names: set[str] = set()
    morph: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split(";", 1)[0].strip()
        if not line:
            continue
        m = _FEATURE_RE.match(line)
        if m:
            features.add(m.group(1))
            continue
        m = _RULE_RE.match(line)
        if m:
            rule = _parse_rule(m.group(1), m.group(2), lineno)
            if rule.name in names:
                raise GrammarError("duplicate rule name %r" % rule.name,
                                   lineno)
            for t in (rule.mother, rule.left, rule.right):
                for k, _ in t.feats:
                    if k not in features:
                        raise GrammarError(
                            "rule %s uses undeclared feature %r"
                            % (rule.name, k), lineno)
            names.add(rule.name)
            rules.append(rule)
            continue
        m = _MORPH_RE.match(line)
        if m:
            key = (m.group(1), m.group(2))
            if key in morph and morph[key] != m.group(3):
                raise GrammarError("conflicting morph entries for %s + %s"
                                   % key, lineno)
            morph[key] = m.group(3)
            continue
        raise GrammarError("cannot parse %r" % line, lineno)
    return Grammar(tuple(rules), morph, frozenset(features))


def load_grammar(path) -> Grammar:
    return parse_grammar(Path(path).read_text(encoding="utf-8"))
