"""Initial TNCBs for the generator: worst-case comb, random, or mirrored."""

from __future__ import annotations

import random
import re
from pathlib import Path
from typing import Mapping, Optional, Union

from .bag import Bag
from .tncb import Tncb, TncbError

Bracketing = Union[str, tuple]


class BracketingError(ValueError):
    pass


def right_branching(bag: Bag) -> Tncb:
    """Comb whose every interior node has a leaf as its right child.

    Leaves read left to right in bag order, so the first two bag elements
    form the deepest pair: ``(((a b) c) d)``.
    """
    if not len(bag):
        raise ValueError("empty bag")
    t = Tncb()
    ids = [t.add_leaf(s, i) for i, s in enumerate(bag.signs)]
    top = ids[0]
    for m in ids[1:]:
        top = t.add_pair(top, m)
    t.root = top
    return t


def _remy(n: int, rng: random.Random) -> tuple:
    """Uniform random binary tree shape with ``n`` leaves, grown leaf by leaf.

    Returns ``(kids, parent, leaves)``; ``kids[i]`` is None for leaves and
    node 0 is not necessarily the root.
    """
    kids: list = [None]
    parent: list = [None]
    leaves = [0]
    for _ in range(n - 1):
        target = rng.randrange(len(kids))
        new_leaf = len(kids)
        kids.append(None)
        parent.append(None)
        leaves.append(new_leaf)
        inner = len(kids)
        pair = [target, new_leaf]
        if rng.random() < 0.5:
            pair.reverse()
        kids.append(pair)
        p = parent[target]
        parent.append(p)
        if p is not None:
            k = kids[p]
            k[k.index(target)] = inner
        parent[target] = inner
        parent[new_leaf] = inner
    return kids, parent, leaves


def random_tncb(bag: Bag, seed: int) -> Tncb:
    """Uniformly random shape and leaf assignment, fixed by ``seed``."""
    if not len(bag):
        raise ValueError("empty bag")
    rng = random.Random(seed)
    kids, parent, leaves = _remy(len(bag), rng)
    order = list(range(len(bag)))
    rng.shuffle(order)
    assign = dict(zip(leaves, order))
    root = next(i for i, p in enumerate(parent) if p is None)
    t = Tncb()

    def build(i):
        if kids[i] is None:
            pos = assign[i]
            return t.add_leaf(bag.signs[pos], pos)
        a, b = kids[i]
        return t.add_pair(build(a), build(b))

    t.root = build(root)
    return t


_TOKEN_RE = re.compile(r"\(|\)|[^\s()]+")


def parse_bracketing(text: str) -> Bracketing:
    """Parse ``((hon wa) (akai desu))`` into nested 2-tuples of labels."""
    tokens = _TOKEN_RE.findall(text)
    if not tokens:
        raise BracketingError("empty bracketing")
    pos = 0

    def item():
        nonlocal pos
        if pos >= len(tokens):
            raise BracketingError("unexpected end of bracketing")
        tok = tokens[pos]
        pos += 1
        if tok == ")":
            raise BracketingError("unexpected ')'")
        if tok != "(":
            return tok
        parts = []
        while pos < len(tokens) and tokens[pos] != ")":
            parts.append(item())
        if pos >= len(tokens):
            raise BracketingError("missing ')'")
        pos += 1
        if len(parts) == 1:
            return parts[0]
        if len(parts) != 2:
            raise BracketingError(
                "bracketings must be binary; got %d daughters in (%s)"
                % (len(parts), " ".join(format_bracketing(p) for p in parts)))
        return tuple(parts)

    out = item()
    if pos != len(tokens):
        raise BracketingError("trailing tokens after bracketing")
    return out


def format_bracketing(b: Bracketing) -> str:
    if isinstance(b, tuple):
        return "(%s %s)" % (format_bracketing(b[0]), format_bracketing(b[1]))
    return str(b)


def bracketing_labels(b: Bracketing) -> list[str]:
    if isinstance(b, tuple):
        return bracketing_labels(b[0]) + bracketing_labels(b[1])
    return [b]


def load_bracketing(path) -> Bracketing:
    return parse_bracketing(Path(path).read_text(encoding="utf-8"))


def default_leaf_map(b: Bracketing, bag: Bag) -> dict:
    """Resolve each label to a bag position, by leaf id first, then orth."""
    by_id = {str(i): n for n, i in enumerate(bag.ids)}
    by_orth: dict = {}
    for n, s in enumerate(bag.signs):
        by_orth.setdefault(s.orth, []).append(n)
    out = {}
    for lab in bracketing_labels(b):
        if lab in by_id:
            out[lab] = by_id[lab]
        elif len(by_orth.get(lab, ())) == 1:
            out[lab] = by_orth[lab][0]
        elif lab in by_orth:
            raise BracketingError("label %r matches several bag signs; "
                                  "use leaf ids" % lab)
        else:
            raise BracketingError("label %r is not in the bag" % lab)
    return out


def from_bracketing(b: Bracketing, bag: Bag,
                    leaf_map: Optional[Mapping[str, int]] = None) -> Tncb:
    """Mirror a source bracketing over the signs of ``bag``.

    ``leaf_map`` sends labels to bag positions; by default labels are
    matched against leaf ids, then orthographies.
    """
    labels = bracketing_labels(b)
    if len(set(labels)) != len(labels):
        raise BracketingError("duplicate label in bracketing")
    if leaf_map is None:
        leaf_map = default_leaf_map(b, bag)
    missing = [lab for lab in labels if lab not in leaf_map]
    if missing:
        raise BracketingError("unmapped label(s): %s" % ", ".join(missing))
    targets = [leaf_map[lab] for lab in labels]
    if len(set(targets)) != len(targets):
        raise BracketingError("two labels map to the same bag leaf")
    if sorted(targets) != list(range(len(bag))):
        raise BracketingError("bracketing does not cover the bag exactly")
    t = Tncb()

    def build(x):
        if isinstance(x, tuple):
            return t.add_pair(build(x[0]), build(x[1]))
        pos = leaf_map[x]
        return t.add_leaf(bag.signs[pos], pos)

    try:
        t.root = build(b)
    except TncbError as e:
        raise BracketingError(str(e)) from None
    return t
