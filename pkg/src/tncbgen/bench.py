"""Scaling measurements for the greedy generator and the bag chart.

Work is counted in combine calls, which is machine independent; wall time
is reported alongside but never used for acceptance.
"""

from __future__ import annotations

import enum
import math
import random
import time
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Optional

import numpy as np

from .bag import Bag
from .generator import generate
from .initialize import random_tncb, right_branching
from .oracle import DEFAULT_LIMIT, build_chart
from .signs import Grammar, Sign, parse_grammar


class Template(enum.Enum):
    NP_ADJUNCTS = "np-adjuncts"
    CLAUSE_CHAIN = "clause-chain"


class Method(enum.Enum):
    GREEDY = "greedy"
    ORACLE = "oracle"


ADJECTIVES = ("brown", "big", "old", "fierce", "loyal", "hungry", "lazy",
              "clever", "noisy", "shaggy", "proud", "gentle")
ADVERBS = ("loudly", "again", "today", "outside", "briefly", "twice",
           "angrily", "suddenly", "nightly", "alone", "there", "still")


@lru_cache(maxsize=None)
def grammar_resource(name: str) -> Grammar:
    text = resources.files("tncbgen").joinpath("data", name).read_text(
        encoding="utf-8")
    return parse_grammar(text)


def _word(words, rank: int, stem: str) -> str:
    if rank <= len(words):
        return words[rank - 1]
    return "%s%d" % (stem, rank)


def synth_bag(template: Template, k: int) -> tuple[Bag, Grammar]:
    """Bag of ``k + 4`` signs: the dog barked plus ``k`` ranked modifiers.

    NP_ADJUNCTS adds adjectives to the subject noun; CLAUSE_CHAIN adds
    adverbials to the verb phrase. Bag order puts PAST and dog first, so
    the right-branching initial TNCB is the worst case of the worked
    example.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    template = Template(template)
    base = [
        ("past", Sign.make("TNS", "PAST", ev=2)),
        ("dog", Sign.make("N", "dog", idx=1, next=0)),
        ("bark", Sign.make("V", "bark", ev=2, subj=1)),
        ("the", Sign.make("DET", "the", spec=1)),
    ]
    if template is Template.NP_ADJUNCTS:
        grammar = grammar_resource("english.gram")
        extra = [(_word(ADJECTIVES, r, "adj"),
                  Sign.make("ADJ", _word(ADJECTIVES, r, "adj"), mod=1,
                            rank=r)) for r in range(1, k + 1)]
    else:
        grammar = grammar_resource("clause.gram")
        extra = [(_word(ADVERBS, r, "adv"),
                  Sign.make("ADV", _word(ADVERBS, r, "adv"), ev=2, rank=r))
                 for r in range(1, k + 1)]
    items = base + extra
    return Bag(tuple(i for i, _ in items), tuple(s for _, s in items)), grammar


def expected_realization(template: Template, k: int) -> str:
    template = Template(template)
    if template is Template.NP_ADJUNCTS:
        adjs = [_word(ADJECTIVES, r, "adj") for r in range(k, 0, -1)]
        return " ".join(["the"] + adjs + ["dog", "barked"])
    advs = [_word(ADVERBS, r, "adv") for r in range(1, k + 1)]
    return " ".join(["the", "dog", "barked"] + advs)


@dataclass
class BenchRow:
    n: int
    rewrites: Optional[int]
    combine_calls: int
    wall_time: float
    method: Method

    def cells(self) -> list[str]:
        rewrites = "" if self.rewrites is None else str(self.rewrites)
        return [str(self.n), rewrites,
                str(self.combine_calls), "%.6f" % self.wall_time,
                self.method.value]


HEADER = ["n", "rewrites", "combine_calls", "wall_time_s", "method"]


@dataclass
class BenchResult:
    rows: list = field(default_factory=list)
    exponent: float = float("nan")
    oracle_local_exponents: list = field(default_factory=list)
    max_random_rewrites: dict = field(default_factory=dict)
    template: Template = Template.NP_ADJUNCTS

    def greedy(self) -> list[BenchRow]:
        return [r for r in self.rows if r.method is Method.GREEDY]

    def oracle(self) -> list[BenchRow]:
        return [r for r in self.rows if r.method is Method.ORACLE]

    @property
    def oracle_superpolynomial(self) -> bool:
        e = self.oracle_local_exponents
        return len(e) >= 2 and all(b > a for a, b in zip(e, e[1:]))

    def bound_holds(self) -> bool:
        ok = all(r.rewrites <= r.n - 1 for r in self.greedy())
        return ok and all(v <= n - 1
                          for n, v in self.max_random_rewrites.items())


def fit_exponent(ns, calls) -> float:
    """Least-squares slope of log(calls) against log(n)."""
    x = np.log(np.asarray(ns, dtype=float))
    y = np.log(np.asarray(calls, dtype=float))
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)


def local_exponents(ns, calls) -> list[float]:
    """Slopes between consecutive points on the log-log curve.

    These grow without bound for super-polynomial growth and settle to the
    degree for polynomial growth.
    """
    out = []
    for (n0, c0), (n1, c1) in zip(zip(ns, calls), zip(ns[1:], calls[1:])):
        out.append(math.log(c1 / c0) / math.log(n1 / n0))
    return out


def run_bench(sizes, reps: int = 1, seed: int = 0,
              template: Template = Template.NP_ADJUNCTS,
              oracle_limit: Optional[int] = DEFAULT_LIMIT) -> BenchResult:
    """Greedy runs from worst-case TNCBs, plus the chart for contrast.

    ``reps`` extra runs per size start from random TNCBs seeded from
    ``seed``; only their maximum rewrite count is kept, to audit the
    rewrite bound. Oracle rows cover the sizes within ``oracle_limit``.
    """
    sizes = list(sizes)
    if not sizes:
        raise ValueError("no sizes given")
    if sizes != sorted(sizes) or len(set(sizes)) != len(sizes):
        raise ValueError("sizes must be strictly ascending")
    if any(n < 4 for n in sizes):
        raise ValueError("bags have at least 4 signs")
    template = Template(template)
    result = BenchResult(template=template)
    rng = random.Random(seed)
    for n in sizes:
        bag, grammar = synth_bag(template, n - 4)
        t0 = time.perf_counter()
        res = generate(bag, right_branching(bag), grammar)
        elapsed = time.perf_counter() - t0
        if not res.success:
            raise RuntimeError("greedy generation failed on %s k=%d"
                               % (template.value, n - 4))
        result.rows.append(BenchRow(n, res.rewrites, res.evaluations,
                                    elapsed, Method.GREEDY))
        worst = 0
        for _ in range(reps):
            r = generate(bag, random_tncb(bag, rng.randrange(2 ** 31)),
                         grammar)
            worst = max(worst, r.rewrites)
        if reps:
            result.max_random_rewrites[n] = worst
    for n in sizes:
        if oracle_limit is not None and n > oracle_limit:
            break
        bag, grammar = synth_bag(template, n - 4)
        t0 = time.perf_counter()
        chart = build_chart(bag, grammar, oracle_limit)
        elapsed = time.perf_counter() - t0
        result.rows.append(BenchRow(n, None, chart.combine_calls, elapsed,
                                    Method.ORACLE))
    g = result.greedy()
    if len(g) >= 2:
        result.exponent = fit_exponent([r.n for r in g],
                                       [r.combine_calls for r in g])
    o = result.oracle()
    if len(o) >= 2:
        result.oracle_local_exponents = local_exponents(
            [r.n for r in o], [r.combine_calls for r in o])
    return result


def format_rows(result: BenchResult, emit: str = "table") -> str:
    rows = [HEADER] + [r.cells() for r in result.rows]
    if emit == "csv":
        return "\n".join(",".join(r) for r in rows) + "\n"
    widths = [max(len(r[i]) for r in rows) for i in range(len(HEADER))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths))
                     for r in rows) + "\n"


def format_summary(result: BenchResult) -> str:
    lines = [
        "# template: %s" % result.template.value,
        "# greedy fitted exponent (log combine_calls vs log n): %.3f"
        % result.exponent,
        "# oracle local exponents: %s" % " ".join(
            "%.2f" % e for e in result.oracle_local_exponents),
        "# oracle growth super-polynomial: %s"
        % ("yes" if result.oracle_superpolynomial else "no"),
        "# rewrite bound n-1 held: %s"
        % ("yes" if result.bound_holds() else "NO"),
    ]
    return "\n".join(lines) + "\n"
