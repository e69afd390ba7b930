import pytest

from tncbgen import (Bag, GenConfig, MonotonicityViolation,
                     PrecedenceViolation, find_move, from_bracketing,
                     generate, improvement_metric, load_bag, load_grammar,
                     random_tncb, right_branching)
from tncbgen.generator import RewriteBound, ViolationPolicy
from tncbgen.signs import Sign, parse_grammar
from tncbgen.tncb import MoveKind, from_nested

WORKED_MOVES = [("conjoin", "PAST", "bark"), ("conjoin", "dog", "the"),
             ("adjoin", "brown", "dog"), ("adjoin", "big", "brown dog")]


def states(bag, grammar):
    """TNCB snapshots after each move of the worked example."""
    seen = []
    res = generate(bag, right_branching(bag), grammar,
                   observer=lambda t, step, marked: seen.append(t.copy()))
    return res, seen


def test_worked_example(english, dog_bag):
    res = generate(dog_bag, right_branching(dog_bag), english)
    assert res.success
    assert res.orth == "the big brown dog barked"
    assert [(s.kind, s.mover_orth, s.dest_orth) for s in res.trace] == \
        WORKED_MOVES
    assert res.rewrites == 4


def test_first_move_is_past_to_bark(english, dog_bag):
    t = right_branching(dog_bag)
    t.evaluate(english)
    step = find_move(t, english)
    assert step.kind is MoveKind.CONJOIN
    assert (t.orth(step.mover), t.orth(step.destination)) == ("PAST", "bark")


def test_fragments_after_two_moves(english, dog_bag):
    # "the dog" and "barked" combine at once, so three fragments remain
    _, seen = states(dog_bag, english)
    t = seen[1]
    assert sorted(t.orth(m) for m in t.maximal()) == \
        sorted(["the dog barked", "brown", "big"])


def test_big_adjoins_to_brown_dog_not_lower(english, dog_bag):
    _, seen = states(dog_bag, english)
    t = seen[2]
    step = find_move(t, english)
    assert t.orth(step.mover) == "big"
    assert step.kind is MoveKind.ADJOIN
    assert t.orth(step.destination) == "brown dog"


def test_metric_strictly_increases(english, dog_bag):
    t0 = right_branching(dog_bag)
    t0.evaluate(english)
    metrics = [improvement_metric(t0)]
    _, seen = states(dog_bag, english)
    metrics += [improvement_metric(t) for t in seen]
    assert metrics[0] == 6 and metrics[-1] == 11
    assert all(a < b for a, b in zip(metrics, metrics[1:]))


def test_thethe_fails_with_both_fragments(english, thethe_bag):
    res = generate(thethe_bag, right_branching(thethe_bag), english)
    assert not res.success
    assert res.fragments == ["the", "the"]
    assert res.orth is None


def test_no_move_when_nothing_combines(english, thethe_bag):
    t = right_branching(thethe_bag)
    t.evaluate(english)
    assert find_move(t, english) is None


def test_mirrored_japanese_needs_no_rewrite(english):
    g = english
    book = Sign.make("N", "book", idx=1, next=0)
    the = Sign.make("DET", "the", spec=1)
    red = Sign.make("ADJ", "red", mod=1, pred="yes")
    is_ = Sign.make("COP", "is", ev=2, subj=1)
    t = from_nested(((book, the), (red, is_)))
    res = generate(Bag.of([book, the, red, is_]), t, g)
    assert res.success and res.rewrites == 0
    assert res.orth == "the book is red"


def test_leaves_must_match_bag(english, dog_bag, thethe_bag):
    with pytest.raises(ValueError):
        generate(dog_bag, right_branching(thethe_bag), english)


def test_random_starts_succeed_within_bound(english, dog_bag):
    for seed in range(1, 200):
        res = generate(dog_bag, random_tncb(dog_bag, seed), english)
        assert res.success and res.orth == "the big brown dog barked"
        assert res.rewrites <= len(dog_bag) - 1


def test_dominance_failure_is_reported(data):
    g = load_grammar(data / "dominance_adversarial.gram")
    bag = load_bag(data / "the_brown_dog.bag.json")
    t = from_bracketing((("the", "dog"), "brown"), bag)
    with pytest.raises(MonotonicityViolation):
        generate(bag, t, g)


def test_precedence_policy(data):
    g = load_grammar(data / "precedence_adversarial.gram")
    bag = load_bag(data / "brown_dog.bag.json")
    with pytest.raises(PrecedenceViolation):
        generate(bag, right_branching(bag), g)
    lenient = GenConfig(violation_policy=ViolationPolicy.FIRST_RULE_WINS)
    with pytest.warns(UserWarning):
        res = generate(bag, right_branching(bag), g, lenient)
    assert res.success and res.orth == "brown dog"


def test_index_chain_within_bound():
    g = parse_grammar("feature k\n"
                      "rule r: A[k=K] -> A[k=J] B[k=K] where K = J+1\n")
    a, b, c = (Sign.make("A", "a", k=0), Sign.make("B", "b", k=1),
               Sign.make("B", "c", k=2))
    bag = Bag.of([a, b, c])
    for config in (GenConfig(), GenConfig(RewriteBound.UNBOUNDED)):
        res = generate(bag, from_nested(((a, c), b)), g, config)
        assert res.success and res.orth == "a b c"
        assert res.rewrites == 1


def test_trace_json_fields(english, dog_bag):
    res = generate(dog_bag, right_branching(dog_bag), english)
    j = res.trace[2].to_json()
    assert j["kind"] == "adjoin" and j["disrupted"] == 2
    assert sum(s.combine_calls for s in res.trace) <= res.evaluations
