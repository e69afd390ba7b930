"""Command-line interface.

Exit status: 0 success, 1 linguistic failure (or violations found by
``check``), 2 bad input, 3 grammar assumption violated during generation.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .bag import Bag, BagError, load_bag
from .bench import Template, format_rows, format_summary, run_bench
from .generator import (GenConfig, MonotonicityViolation, RewriteBound,
                        ViolationPolicy, generate)
from .initialize import (BracketingError, format_bracketing, from_bracketing,
                         load_bracketing, random_tncb, right_branching)
from .oracle import (DEFAULT_LIMIT, OracleLimitError, Report,
                     all_realizations, check_dominance_monotonicity,
                     check_precedence_monotonicity)
from .signs import GrammarError, PrecedenceViolation, load_grammar
from .transfer import SourceBag, TransferError, load_lexicon, transfer_bag

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_ASSUMPTION = 0, 1, 2, 3


class InputError(Exception):
    pass


@dataclass
class RunSpec:
    grammar: object = None
    bag: Optional[Bag] = None
    bracketing: object = None
    lexicon: object = None
    seed: int = 0


def _load(loader, path, what):
    try:
        return loader(path)
    except FileNotFoundError:
        raise InputError("%s file not found: %s" % (what, path)) from None
    except (GrammarError, BagError, BracketingError, ValueError) as e:
        raise InputError("%s %s: %s" % (what, path, e)) from None


def _spec(args) -> RunSpec:
    spec = RunSpec(seed=getattr(args, "seed", 0))
    if getattr(args, "grammar", None):
        spec.grammar = _load(load_grammar, args.grammar, "grammar")
    if getattr(args, "bag", None):
        spec.bag = _load(load_bag, args.bag, "bag")
    if getattr(args, "bracketing", None):
        spec.bracketing = _load(load_bracketing, args.bracketing,
                                "bracketing")
    if getattr(args, "lexicon", None):
        spec.lexicon = _load(load_lexicon, args.lexicon, "lexicon")
    return spec


def _transfer(spec: RunSpec):
    if spec.bracketing is None:
        raise InputError("transfer needs a source bracketing")
    try:
        return transfer_bag(SourceBag(spec.bag, spec.bracketing),
                            spec.lexicon)
    except TransferError as e:
        raise InputError("transfer: %s" % e) from None


def cmd_generate(args) -> int:
    spec = _spec(args)
    bag, bracketing = spec.bag, spec.bracketing
    if spec.lexicon is not None:
        bag, bracketing = _transfer(spec)
    if args.init == "mirror":
        if bracketing is None:
            raise InputError("--init mirror needs --bracketing")
        try:
            initial = from_bracketing(bracketing, bag)
        except BracketingError as e:
            raise InputError(str(e)) from None
    elif args.init == "random":
        initial = random_tncb(bag, spec.seed)
    else:
        initial = right_branching(bag)
    config = GenConfig(
        RewriteBound.UNBOUNDED if args.unbounded
        else RewriteBound.BOUND_N_MINUS_1,
        ViolationPolicy.FIRST_RULE_WINS if args.lenient
        else ViolationPolicy.STRICT)
    result = generate(bag, initial, spec.grammar, config)
    if args.trace:
        Path(args.trace).write_text(
            json.dumps([s.to_json() for s in result.trace], indent=2) + "\n",
            encoding="utf-8")
    if result.success:
        print(result.orth)
        return EXIT_OK
    for frag in result.fragments:
        print(frag)
    print("generation failed after %d rewrite(s); %d fragment(s)"
          % (result.rewrites, len(result.fragments)), file=sys.stderr)
    return EXIT_FAIL


def cmd_oracle(args) -> int:
    spec = _spec(args)
    try:
        found = all_realizations(spec.bag, spec.grammar, args.limit)
    except OracleLimitError as e:
        raise InputError(str(e)) from None
    for orth in sorted(found):
        print(orth)
    print("%d realization(s)" % len(found), file=sys.stderr)
    return EXIT_OK


def _manifest(path) -> list[Bag]:
    try:
        entries = json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise InputError("manifest file not found: %s" % path) from None
    except json.JSONDecodeError as e:
        raise InputError("manifest %s: %s" % (path, e)) from None
    if not isinstance(entries, list):
        raise InputError("manifest %s: expected a list of bag paths" % path)
    base = Path(path).parent
    return [_load(load_bag, base / p, "bag") for p in entries]


def cmd_check(args) -> int:
    spec = _spec(args)
    bags = _manifest(args.manifest)
    try:
        report = Report()
        report.extend(check_precedence_monotonicity(spec.grammar, bags,
                                                    args.limit))
        dom = check_dominance_monotonicity(spec.grammar, bags, args.trials,
                                           spec.seed, args.limit)
        report.violations.extend(dom.violations)
        report.runs += dom.runs
        report.aborted += dom.aborted
    except OracleLimitError as e:
        raise InputError(str(e)) from None
    sys.stdout.write(report.format())
    return EXIT_OK if report.ok else EXIT_FAIL


def _sizes(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        if "-" in part:
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    return out


def cmd_bench(args) -> int:
    try:
        sizes = _sizes(args.sizes)
    except ValueError:
        raise InputError("bad --sizes %r" % args.sizes) from None
    try:
        result = run_bench(sizes, args.reps, args.seed,
                           Template(args.template), args.oracle_max)
    except ValueError as e:
        raise InputError(str(e)) from None
    sys.stdout.write(format_rows(result, args.emit))
    sys.stdout.write(format_summary(result))
    if args.plot:
        from .plotting import plot_bench
        plot_bench(result, args.plot)
    return EXIT_OK


def cmd_transfer(args) -> int:
    spec = _spec(args)
    bag, bracketing = _transfer(spec)
    bag_text = bag.dumps()
    brk_text = format_bracketing(bracketing) + "\n"
    if args.out_bag:
        Path(args.out_bag).write_text(bag_text, encoding="utf-8")
    else:
        sys.stdout.write(bag_text)
    if args.out_bracketing:
        Path(args.out_bracketing).write_text(brk_text, encoding="utf-8")
    else:
        sys.stdout.write(brk_text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="tncbgen",
        description="Greedy bag generation over commutative bracketings.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="order a bag of target signs")
    g.add_argument("--grammar", required=True)
    g.add_argument("--bag", required=True,
                   help="target bag, or source bag when --lexicon is given")
    g.add_argument("--bracketing", help="source bracketing for --init mirror")
    g.add_argument("--lexicon", help="transfer the bag through this lexicon")
    g.add_argument("--init", choices=["right", "random", "mirror"],
                   default="right")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--trace", help="write the move trace as JSON")
    g.add_argument("--unbounded", action="store_true",
                   help="do not enforce the n-1 rewrite bound")
    g.add_argument("--lenient", action="store_true",
                   help="on an ambiguous combination take the first rule "
                        "and warn instead of failing")
    g.set_defaults(func=cmd_generate)

    o = sub.add_parser("oracle", help="list every realization of a bag")
    o.add_argument("--grammar", required=True)
    o.add_argument("--bag", required=True)
    o.add_argument("--limit", type=int, default=DEFAULT_LIMIT)
    o.set_defaults(func=cmd_oracle)

    c = sub.add_parser("check", help="test a grammar for monotonicity")
    c.add_argument("--grammar", required=True)
    c.add_argument("--manifest", required=True,
                   help="JSON list of bag files, relative to the manifest")
    c.add_argument("--trials", type=int, default=100)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--limit", type=int, default=DEFAULT_LIMIT)
    c.set_defaults(func=cmd_check)

    b = sub.add_parser("bench", help="measure scaling")
    b.add_argument("--template", choices=[t.value for t in Template],
                   default=Template.NP_ADJUNCTS.value)
    b.add_argument("--sizes", default="4-16",
                   help="bag sizes, e.g. 4-16 or 4,6,8")
    b.add_argument("--reps", type=int, default=0,
                   help="random-start runs per size for the rewrite audit")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--oracle-max", type=int, default=16,
                   help="largest bag given to the chart")
    b.add_argument("--emit", choices=["table", "csv"], default="table")
    b.add_argument("--plot", help="write a log-log figure to this file")
    b.set_defaults(func=cmd_bench)

    t = sub.add_parser("transfer", help="map a source bag to the target")
    t.add_argument("--bag", required=True)
    t.add_argument("--bracketing", required=True)
    t.add_argument("--lexicon", required=True)
    t.add_argument("--out-bag")
    t.add_argument("--out-bracketing")
    t.set_defaults(func=cmd_transfer)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_INPUT
    except (MonotonicityViolation, PrecedenceViolation) as e:
        print("assumption violated: %s" % e, file=sys.stderr)
        return EXIT_ASSUMPTION


if __name__ == "__main__":
    sys.exit(main())
