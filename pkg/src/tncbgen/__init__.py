"""Greedy bag generation for lexicalist machine translation.

A bag of instantiated target signs is ordered by repeatedly evaluating a
commutative derivation tree (a TNCB) and moving its maximal well-formed
fragments until the whole tree is well-formed.
"""

from .bag import Bag, load_bag
from .generator import (GenConfig, GenResult, MonotonicityViolation,
                        find_move, generate, improvement_metric)
from .initialize import from_bracketing, random_tncb, right_branching
from .signs import (Grammar, PrecedenceViolation, Sign, combine,
                    load_grammar, parse_grammar, unify)
from .tncb import INCONSISTENT, UNDETERMINED, MoveKind, MoveStep, Tncb

__version__ = "0.1.0"
