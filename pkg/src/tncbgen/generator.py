"""Greedy test/rewrite generation over a TNCB."""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Optional

from .bag import Bag
from .signs import Grammar, combine
from .tncb import MoveKind, MoveStep, Tncb


class MonotonicityViolation(Exception):
    """Generation broke the progress guarantees a suitable grammar gives."""


class RewriteBound(enum.Enum):
    BOUND_N_MINUS_1 = "n-1"
    UNBOUNDED = "unbounded"


class ViolationPolicy(enum.Enum):
    STRICT = "strict"
    FIRST_RULE_WINS = "first-rule-wins"


@dataclass(frozen=True)
class GenConfig:
    max_rewrites_policy: RewriteBound = RewriteBound.BOUND_N_MINUS_1
    violation_policy: ViolationPolicy = ViolationPolicy.STRICT

    @property
    def strict(self) -> bool:
        return self.violation_policy is ViolationPolicy.STRICT


@dataclass
class TraceStep:
    step: int
    kind: str
    mover_orth: str
    dest_orth: str
    disrupted: int
    combine_calls: int

    def to_json(self) -> dict:
        return {"step": self.step, "kind": self.kind,
                "mover_orth": self.mover_orth, "dest_orth": self.dest_orth,
                "disrupted": self.disrupted,
                "combine_calls": self.combine_calls}


@dataclass
class GenResult:
    success: bool
    orth: Optional[str]
    fragments: list[str]
    trace: list[TraceStep] = field(default_factory=list)
    moves: list[MoveStep] = field(default_factory=list)
    evaluations: int = 0
    rewrites: int = 0
    tncb: Optional[Tncb] = None

    @property
    def combine_calls(self) -> int:
        return self.evaluations


def improvement_metric(t: Tncb) -> int:
    """Number of well-formed nodes; every accepted move must raise it."""
    return sum(1 for m in t.preorder() if t.well_formed(m))


def mover_order(t: Tncb, maximal: list[int]) -> list[int]:
    """Candidate movers: deepest first, then smallest, then left to right.

    Small, deeply embedded fragments are repaired before larger
    constituents are torn out of place.
    """
    rank = {m: i for i, m in enumerate(maximal)}
    return sorted(maximal,
                  key=lambda m: (-t.depth(m), t.leaf_count(m), rank[m]))


def adjunction_sites(t: Tncb, maximal: list[int], mover: int) -> list:
    """``(disrupted, site)`` pairs, fewest disrupted nodes first.

    Ties break by host in scan order, then breadth-first within the host.
    """
    sites = []
    for hi, h in enumerate(maximal):
        if h == mover:
            continue
        for bi, (d, s) in enumerate(t.levels(h)):
            if d:
                sites.append((d, hi, bi, s))
    sites.sort()
    return [(d, s) for d, _, _, s in sites]


def find_move(t: Tncb, grammar: Grammar, strict: bool = True,
              stats: Optional[Counter] = None) -> Optional[MoveStep]:
    """First legal move in scan order, or None.

    For each mover, conjunction with every other maximal TNCB is tried
    before any adjunction, and adjunctions that disrupt fewer nodes come
    first.
    """
    maximal = t.maximal()
    calls = 0

    def ok(a, b):
        nonlocal calls
        calls += 1
        return combine(t.value[a], t.value[b], grammar, strict) is not None

    try:
        for m in mover_order(t, maximal):
            for d in maximal:
                if d != m and ok(m, d):
                    return MoveStep(m, d, MoveKind.CONJOIN, 0)
            for disrupted, s in adjunction_sites(t, maximal, m):
                if ok(m, s):
                    return MoveStep(m, s, MoveKind.ADJOIN, disrupted)
        return None
    finally:
        if stats is not None:
            stats["combine"] += calls


def fragments(t: Tncb) -> list[str]:
    return [t.orth(m) for m in t.maximal()]


def generate(bag: Bag, initial: Tncb, grammar: Grammar,
             config: GenConfig = GenConfig(),
             observer: Optional[Callable] = None) -> GenResult:
    """Run the test/rewrite cycle from ``initial`` (which is modified).

    ``observer(tncb, step, marked)`` is called after each move has been
    applied and re-evaluated; ``marked`` is the set of nodes the move left
    undetermined.

    Raises :class:`MonotonicityViolation` if a move fails to increase the
    number of well-formed nodes, or if the n-1 rewrite bound is exceeded
    under :attr:`RewriteBound.BOUND_N_MINUS_1`.
    """
    if sorted(map(_key, initial.leaf_signs())) != sorted(map(_key, bag)):
        raise ValueError("initial TNCB leaves differ from the bag")
    n = len(bag)
    strict = config.strict
    stats: Counter = Counter()
    t = initial
    trace: list[TraceStep] = []
    moves: list[MoveStep] = []
    t.evaluate(grammar, strict, stats)
    progress = improvement_metric(t)
    while not t.well_formed(t.root):
        before = stats["combine"]
        step = find_move(t, grammar, strict, stats)
        if step is None:
            break
        if config.max_rewrites_policy is RewriteBound.BOUND_N_MINUS_1 \
                and len(moves) >= n - 1:
            raise MonotonicityViolation(
                "no success after %d rewrites for a bag of %d signs"
                % (len(moves), n))
        mover_orth = t.orth(step.mover)
        dest_orth = t.orth(step.destination)
        t.move(step, grammar, strict, stats)
        marked = t.undetermined()
        t.evaluate(grammar, strict, stats)
        moves.append(step)
        trace.append(TraceStep(len(moves), step.kind.value, mover_orth,
                               dest_orth, step.disrupted,
                               stats["combine"] - before))
        if observer is not None:
            observer(t, step, marked)
        now = improvement_metric(t)
        if now <= progress:
            raise MonotonicityViolation(
                "move %d (%s %r to %r) did not increase the number of "
                "well-formed nodes (%d -> %d)"
                % (len(moves), step.kind.value, mover_orth, dest_orth,
                   progress, now))
        progress = now
    ok = t.well_formed(t.root)
    return GenResult(
        success=ok,
        orth=t.orth(t.root) if ok else None,
        fragments=fragments(t),
        trace=trace,
        moves=moves,
        evaluations=stats["combine"],
        rewrites=len(moves),
        tncb=t,
    )


def _key(s):
    return s.sort_key()
