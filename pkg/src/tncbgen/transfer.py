"""Word-for-word lexical transfer of a source bag and its bracketing."""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .bag import Bag
from .initialize import (Bracketing, BracketingError, bracketing_labels,
                         default_leaf_map)
from .signs import GrammarError, Sign, Template, parse_features, unify


class TransferError(ValueError):
    pass


class UnsupportedEntry(TransferError):
    """Set-to-set entries are parsed but never executed."""


@dataclass(frozen=True)
class LexPattern:
    cat: str
    orth: str
    template: Template

    def matches(self, sign: Sign, bindings=None):
        if sign.cat != self.cat or sign.orth != self.orth:
            return None
        return unify(self.template, sign, bindings)

    def __str__(self) -> str:
        return "%s:%s[%s]" % (self.cat, self.orth, ",".join(
            "%s=%s" % kv for kv in self.template.feats))


@dataclass(frozen=True)
class BilingualEntry:
    source: tuple
    target: tuple
    line: Optional[int] = None

    @property
    def one_to_one(self) -> bool:
        return len(self.source) == 1 and len(self.target) == 1

    def __str__(self) -> str:
        return "xfer %s => %s" % (" + ".join(map(str, self.source)),
                                  " + ".join(map(str, self.target)))


@dataclass(frozen=True)
class SourceBag:
    bag: Bag
    bracketing: Bracketing


_PATTERN_RE = re.compile(r"^\s*([^\s:\[\]]+):([^\s\[\]]+)\s*\[([^\]]*)\]\s*$")


def _parse_side(text: str, line: int) -> tuple:
    out = []
    for part in text.split("+"):
        m = _PATTERN_RE.match(part)
        if not m:
            raise GrammarError("bad lexeme %r" % part.strip(), line)
        feats = parse_features(m.group(3), line)
        out.append(LexPattern(m.group(1), m.group(2),
                              Template(m.group(1), feats)))
    return tuple(out)


def parse_lexicon(text: str) -> list[BilingualEntry]:
    """Parse ``xfer SRC => TGT`` lines; ``;`` starts a comment."""
    entries = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split(";", 1)[0].strip()
        if not line:
            continue
        if not line.startswith("xfer ") or "=>" not in line:
            raise GrammarError("cannot parse %r" % line, lineno)
        src, tgt = line[len("xfer "):].split("=>", 1)
        source = _parse_side(src, lineno)
        target = _parse_side(tgt, lineno)
        bound = set().union(*(p.template.variables() for p in source))
        free = set().union(*(p.template.variables() for p in target)) - bound
        if free:
            raise GrammarError("target variable(s) %s not bound on the "
                               "source side" % ", ".join(sorted(free)),
                               lineno)
        entries.append(BilingualEntry(source, target, lineno))
    return entries


def load_lexicon(path) -> list[BilingualEntry]:
    return parse_lexicon(Path(path).read_text(encoding="utf-8"))


def _instantiate(p: LexPattern, bindings) -> Sign:
    return Sign(p.cat, p.orth, p.template.instantiate(bindings))


def transfer_sign(sign: Sign, lexicon: list[BilingualEntry]) -> Sign:
    hits = []
    for e in lexicon:
        if e.one_to_one:
            b = e.source[0].matches(sign)
            if b is not None:
                hits.append((e, b))
        elif any(p.matches(sign) is not None for p in e.source):
            raise UnsupportedEntry("entry on line %s maps sets of signs; "
                                   "only one-to-one transfer is supported"
                                   % e.line)
    if not hits:
        raise TransferError("no lexicon entry covers %s" % sign)
    if len(hits) > 1:
        raise TransferError("%s is covered by several entries (lines %s)"
                            % (sign, ", ".join(str(e.line) for e, _ in hits)))
    e, b = hits[0]
    return _instantiate(e.target[0], b)


def _relabel(b: Bracketing, names: dict) -> Bracketing:
    if isinstance(b, tuple):
        return (_relabel(b[0], names), _relabel(b[1], names))
    return names[b]


def transfer_bag(src: SourceBag,
                 lexicon: list[BilingualEntry]) -> tuple[Bag, Bracketing]:
    """Map every source sign through the lexicon, keeping leaf ids.

    Returns the target bag and the source bracketing relabelled leaf for
    leaf: each label becomes the target orthography, or the leaf id where
    that orthography is not unique in the target bag.
    """
    signs = tuple(transfer_sign(s, lexicon) for s in src.bag.signs)
    target = Bag(src.bag.ids, signs)
    try:
        leaf_map = default_leaf_map(src.bracketing, src.bag)
    except BracketingError as e:
        raise TransferError(str(e)) from None
    labels = bracketing_labels(src.bracketing)
    if sorted(leaf_map[lab] for lab in labels) != list(range(len(signs))):
        raise TransferError("bracketing does not cover the source bag")
    counts: dict = {}
    for s in signs:
        counts[s.orth] = counts.get(s.orth, 0) + 1
    names = {}
    for lab in labels:
        pos = leaf_map[lab]
        orth = signs[pos].orth
        names[lab] = orth if counts[orth] == 1 else str(target.ids[pos])
    return target, _relabel(src.bracketing, names)


def index_groups(bag: Bag, features=None) -> list[frozenset]:
    """Partition of leaf positions by shared index values.

    Returns, for each index value carried by two or more signs, the set of
    positions carrying it. Every integer counts as an index unless
    ``features`` names the features to look at; ordinal features such as
    ranks should be left out.
    """
    groups: dict = {}
    for pos, s in enumerate(bag.signs):
        for k, v in s.feats:
            if features is not None and k not in features:
                continue
            if isinstance(v, int) and not isinstance(v, bool):
                groups.setdefault(v, set()).add(pos)
    return sorted((frozenset(g) for g in groups.values() if len(g) > 1),
                  key=sorted)

