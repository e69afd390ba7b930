"""Random operation driver shared by the property tests."""

from collections import Counter

from tncbgen.bench import Template, synth_bag
from tncbgen.initialize import random_tncb
from tncbgen.signs import combine
from tncbgen.tncb import INCONSISTENT, UNDETERMINED, is_sign


class PropertyFailure(AssertionError):
    pass


def leaf_multiset(t, n=None):
    return Counter(t.value[m].sort_key() for m in t.leaves(n))


def attached_count(t):
    return sum(1 for _ in t.preorder())


def check_sound(t, grammar):
    """Every reachable node carries the value its children determine."""
    for m in t.preorder():
        v = t.value[m]
        if v is UNDETERMINED:
            raise PropertyFailure("node %d left undetermined" % m)
        if t.is_leaf(m):
            continue
        a, b = (t.value[c] for c in t.kids[m])
        if is_sign(a) and is_sign(b):
            want = combine(a, b, grammar)
            want = INCONSISTENT if want is None else want
        else:
            want = INCONSISTENT
        if v != want:
            raise PropertyFailure("node %d holds %r, children give %r"
                                  % (m, v, want))


def _fresh_values(t, grammar):
    c = t.copy()
    for m in c.preorder():
        if not c.is_leaf(m):
            c.value[m] = UNDETERMINED
    c.evaluate(grammar)
    return c


def op_swap(t, grammar, rng):
    inner = [m for m in t.preorder() if not t.is_leaf(m)]
    if not inner:
        return False
    m = rng.choice(inner)
    before = {k: t.value[k] for k in t.preorder()}
    t.swap(m)
    after = _fresh_values(t, grammar)
    for k, v in before.items():
        if after.value[k] != v:
            raise PropertyFailure("swapping node %d changed node %d" % (m, k))
    return True


def op_delete(t, grammar, rng):
    ms = [m for m in t.maximal() if m != t.root]
    if not ms:
        return False
    c = t.copy()
    m = rng.choice(ms)
    whole = leaf_multiset(c)
    c.delete(m)
    c.check()
    if leaf_multiset(c) + leaf_multiset(c, m) != whole:
        raise PropertyFailure("delete lost or gained leaves")
    return True


def _inside(t, n, top):
    while n is not None:
        if n == top:
            return True
        n = t.parent[n]
    return False


def op_move(t, grammar, rng):
    ms = [m for m in t.maximal() if m != t.root]
    if not ms:
        return False
    m = rng.choice(ms)
    options = []
    for b in t.maximal():
        if b != m and combine(t.value[m], t.value[b], grammar) is not None:
            options.append(("conjoin", b))
    for s in t.preorder():
        if t.well_formed(s) and not t.is_maximal(s) \
                and not _inside(t, s, m) \
                and combine(t.value[m], t.value[s], grammar) is not None:
            options.append(("adjoin", s))
    if not options:
        return False
    kind, dest = rng.choice(options)
    count = attached_count(t)
    whole = leaf_multiset(t)
    spare = t.delete(m)
    if kind == "conjoin":
        t.conjoin(m, dest, grammar, node=spare)
    else:
        t.adjoin(m, dest, grammar, node=spare)
    t.check()
    if attached_count(t) != count:
        raise PropertyFailure("move changed the node count")
    if leaf_multiset(t) != whole:
        raise PropertyFailure("move changed the leaves")
    t.evaluate(grammar)
    check_sound(t, grammar)
    return True


def op_evaluate(t, grammar, rng):
    t.evaluate(grammar)
    check_sound(t, grammar)
    return True


OPS = (op_swap, op_delete, op_move, op_evaluate)


def random_bag(rng):
    bag, grammar = synth_bag(rng.choice(list(Template)), rng.randrange(0, 6))
    return bag, grammar


def run_ops(rng, steps):
    """Apply ``steps`` random operations to one random TNCB.

    Returns how many operations actually applied.
    """
    bag, grammar = random_bag(rng)
    t = random_tncb(bag, rng.randrange(2 ** 31))
    t.evaluate(grammar)
    whole = leaf_multiset(t)
    done = 0
    for _ in range(steps):
        op = rng.choice(OPS)
        if op(t, grammar, rng):
            done += 1
        if leaf_multiset(t) != whole:
            raise PropertyFailure("%s changed the leaves" % op.__name__)
    return done
