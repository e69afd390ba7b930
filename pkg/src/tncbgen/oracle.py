"""Exhaustive reference generation and monotonicity checkers.

The bag chart maps every subset of the bag (a bitmask over leaf positions)
to the set of signs derivable from exactly that subset. It is exact but
exponential, so it is only used on small bags.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .bag import Bag
from .generator import (GenConfig, MonotonicityViolation, RewriteBound,
                        generate)
from .initialize import random_tncb
from .signs import Grammar, MorphologyError, PrecedenceViolation, Sign, mothers
from .tncb import MoveKind

DEFAULT_LIMIT = 10


class OracleLimitError(ValueError):
    pass


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _sorted_signs(signs) -> list[Sign]:
    return sorted(signs, key=Sign.sort_key)


@dataclass
class Violation:
    kind: str
    witness: str
    detail: str = ""

    def line(self) -> str:
        s = "%-11s %s" % (self.kind, self.witness)
        if self.detail:
            s += "  " + self.detail
        return s


@dataclass
class BagChart:
    n: int
    cells: dict
    combine_calls: int = 0
    violations: list = field(default_factory=list)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def signs(self, mask: int) -> set:
        return self.cells.get(mask, set())

    def full(self) -> set:
        return self.signs(self.full_mask)


def build_chart(bag: Bag, grammar: Grammar,
                limit: Optional[int] = DEFAULT_LIMIT) -> BagChart:
    """Fill the bag chart bottom-up over subset size.

    Each unordered split of a subset is visited once and every pair of
    signs across it is combined with :func:`mothers`, so ambiguous
    combinations are recorded rather than raised.
    """
    n = len(bag)
    if limit is not None and n > limit:
        raise OracleLimitError("bag of %d signs exceeds the oracle limit of %d"
                               % (n, limit))
    cells: dict = {}
    for i, s in enumerate(bag.signs):
        cells[1 << i] = {s}
    chart = BagChart(n, cells)
    names = [s.orth for s in bag.signs]
    seen_witness = set()
    masks = sorted((m for m in range(1, 1 << n) if _popcount(m) > 1),
                   key=lambda m: (_popcount(m), m))
    for mask in masks:
        out: set = set()
        sub = (mask - 1) & mask
        while sub:
            other = mask ^ sub
            if sub < other:
                left, right = cells.get(sub), cells.get(other)
                if left and right:
                    _split(chart, grammar, sub, other, left, right, out,
                           names, seen_witness)
            sub = (sub - 1) & mask
        if out:
            cells[mask] = out
    return chart


def _subset_name(mask: int, names: list[str]) -> str:
    return "{%s}" % ",".join(names[i] for i in range(len(names))
                             if mask >> i & 1)


def _split(chart, grammar, sub, other, left, right, out, names, seen):
    results = {}
    for a in _sorted_signs(left):
        for b in _sorted_signs(right):
            chart.combine_calls += 1
            try:
                found = mothers(a, b, grammar)
            except MorphologyError as e:
                key = ("morph", a, b)
                if key not in seen:
                    seen.add(key)
                    chart.violations.append(Violation(
                        "morph-gap", "%s + %s" % (a.orth, b.orth), str(e)))
                found = []
            results[a, b] = found
            if len(found) > 1:
                key = ("ambiguous",) + tuple(sorted((a.orth, b.orth)))
                if key not in seen:
                    seen.add(key)
                    chart.violations.append(Violation(
                        "precedence", "%s + %s" % (a.orth, b.orth),
                        "mothers=%s split=%s|%s" % (
                            " | ".join(repr(m.orth) for m in found),
                            _subset_name(sub, names),
                            _subset_name(other, names))))
            out.update(found)
    ok = [p for p, f in results.items() if f]
    bad = [p for p, f in results.items() if not f]
    if ok and bad:
        (a, b), (c, d) = bad[0], ok[0]
        key = ("split", sub, other)
        if key not in seen:
            seen.add(key)
            chart.violations.append(Violation(
                "precedence", "%s + %s fails" % (a.orth, b.orth),
                "but %s + %s combines over the same split %s|%s" % (
                    c.orth, d.orth, _subset_name(sub, names),
                    _subset_name(other, names))))


def all_realizations(bag: Bag, grammar: Grammar,
                     limit: Optional[int] = DEFAULT_LIMIT) -> set[str]:
    """Orthographies of every sign derivable from the whole bag."""
    return {s.orth for s in build_chart(bag, grammar, limit).full()}


def enumerate_realizations(bag: Bag, grammar: Grammar) -> set[str]:
    """Literal search: every permutation under every binary bracketing.

    Rules are applied with daughters in surface order only, so this shares
    nothing with the commutative combination used elsewhere. Exponential in
    the worst way; keep bags to six signs or so.
    """
    found: set = set()
    for perm in set(itertools.permutations(bag.signs)):
        memo: dict = {}

        def span(i, j):
            if (i, j) in memo:
                return memo[i, j]
            if j - i == 1:
                res = {perm[i]}
            else:
                res = set()
                for k in range(i + 1, j):
                    for a in span(i, k):
                        for b in span(k, j):
                            for rule in grammar.rules:
                                m = rule.apply(a, b, grammar.morph)
                                if m is not None:
                                    res.add(m)
            memo[i, j] = res
            return res

        found |= {s.orth for s in span(0, len(perm))}
    return found


@dataclass
class Report:
    violations: list = field(default_factory=list)
    bags: int = 0
    runs: int = 0
    aborted: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def extend(self, other: "Report") -> None:
        self.violations.extend(other.violations)
        self.bags += other.bags
        self.runs += other.runs
        self.aborted += other.aborted

    def count(self, kind: str) -> int:
        return sum(1 for v in self.violations if v.kind == kind)

    def format(self) -> str:
        lines = [v.line() for v in self.violations]
        lines.append("summary: bags=%d runs=%d aborted=%d precedence=%d "
                     "dominance=%d morph-gap=%d"
                     % (self.bags, self.runs, self.aborted,
                        self.count("precedence"), self.count("dominance"),
                        self.count("morph-gap")))
        return "\n".join(lines) + "\n"


def check_precedence_monotonicity(grammar: Grammar, bags: Iterable[Bag],
                                  limit: Optional[int] = DEFAULT_LIMIT
                                  ) -> Report:
    """Chart every bag and report non-determinate combinations.

    Two kinds of witness are reported: a pair of signs with more than one
    mother, and a split of a subset over which one arrangement of the
    parts combines while another does not.
    """
    report = Report()
    seen = set()
    for bag in bags:
        report.bags += 1
        chart = build_chart(bag, grammar, limit)
        for v in chart.violations:
            key = (v.kind, v.witness)
            if key not in seen:
                seen.add(key)
                report.violations.append(v)
    return report


def check_dominance_monotonicity(grammar: Grammar, bags: Iterable[Bag],
                                 trials: int, seed: int,
                                 limit: Optional[int] = DEFAULT_LIMIT
                                 ) -> Report:
    """Run the generator from random TNCBs and audit every adjunction.

    After each adjunction the disrupted nodes must all re-evaluate to
    well-formed signs. Runs that stop on a precedence violation are
    counted as aborted; the precedence checker reports those.
    """
    report = Report()
    seen = set()
    rng = random.Random(seed)
    config = GenConfig(max_rewrites_policy=RewriteBound.UNBOUNDED)
    for bag in bags:
        if limit is not None and len(bag) > limit:
            raise OracleLimitError("bag of %d signs exceeds the oracle limit "
                                   "of %d" % (len(bag), limit))
        report.bags += 1
        for _ in range(trials):
            t = random_tncb(bag, rng.randrange(2 ** 31))
            start = t.bracketing()

            def audit(t, step, marked):
                if step.kind is not MoveKind.ADJOIN:
                    return
                new = t.parent[step.mover]
                disrupted = t.ancestors(new)[:step.disrupted]
                broken = [m for m in disrupted if not t.well_formed(m)]
                if not broken:
                    return
                site = t.orth(step.destination)
                mover = t.orth(step.mover)
                key = (mover, site)
                if key in seen:
                    return
                seen.add(key)
                report.violations.append(Violation(
                    "dominance", "%s adjoined to %s" % (mover, site),
                    "%d of %d disrupted node(s) ill-formed after "
                    "re-evaluation; initial=%s" % (
                        len(broken), len(disrupted), start)))

            report.runs += 1
            try:
                generate(bag, t, grammar, config, observer=audit)
            except (MonotonicityViolation, PrecedenceViolation,
                    MorphologyError):
                report.aborted += 1
    return report
