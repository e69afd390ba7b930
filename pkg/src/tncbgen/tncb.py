"""Target-language normalised commutative bracketings.

A :class:`Tncb` is a binary derivation tree with unordered children, kept in
an arena of integer node ids. Each node's value is a :class:`Sign` (the node
is well-formed), :data:`INCONSISTENT` or :data:`UNDETERMINED`. Child slots
keep their creation order, which only fixes traversal order; evaluation
never depends on it.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Optional, Union

from .signs import Grammar, Sign, combine


class Status(enum.Enum):
    INCONSISTENT = "inconsistent"
    UNDETERMINED = "undetermined"

    def __repr__(self) -> str:
        return self.name


INCONSISTENT = Status.INCONSISTENT
UNDETERMINED = Status.UNDETERMINED

Value = Union[Sign, Status]


class TncbError(ValueError):
    """An operation was applied outside its precondition."""


class MoveKind(enum.Enum):
    CONJOIN = "conjoin"
    ADJOIN = "adjoin"


@dataclass(frozen=True)
class MoveStep:
    mover: int
    destination: int
    kind: MoveKind
    disrupted: int = 0

    def __post_init__(self):
        if (self.disrupted == 0) != (self.kind is MoveKind.CONJOIN):
            raise TncbError("a conjunction disrupts nothing; an adjunction "
                            "disrupts at least one node")


def is_sign(v) -> bool:
    return isinstance(v, Sign)


class Tncb:
    """Arena-backed TNCB.

    Nodes that are not reachable from :attr:`root` are detached: either
    freed slots awaiting reuse by a move, or subtrees removed by
    :meth:`delete`.
    """

    def __init__(self):
        self.value: list[Value] = []
        self.kids: list[Optional[list[int]]] = []
        self.parent: list[Optional[int]] = []
        self.leaf_pos: list[Optional[int]] = []
        self.root: Optional[int] = None

    # construction

    def add_leaf(self, sign: Sign, pos: Optional[int] = None) -> int:
        if not sign.is_ground():
            raise TncbError("leaf sign must be ground")
        n = len(self.value)
        self.value.append(sign)
        self.kids.append(None)
        self.parent.append(None)
        self.leaf_pos.append(n if pos is None else pos)
        return n

    def add_pair(self, a: int, b: int) -> int:
        for c in (a, b):
            if self.parent[c] is not None or c == self.root:
                raise TncbError("node %d is already attached" % c)
        if a == b:
            raise TncbError("a node cannot be paired with itself")
        n = len(self.value)
        self.value.append(UNDETERMINED)
        self.kids.append([a, b])
        self.parent.append(None)
        self.leaf_pos.append(None)
        self.parent[a] = n
        self.parent[b] = n
        return n

    def copy(self) -> "Tncb":
        t = Tncb()
        t.value = list(self.value)
        t.kids = [None if k is None else list(k) for k in self.kids]
        t.parent = list(self.parent)
        t.leaf_pos = list(self.leaf_pos)
        t.root = self.root
        return t

    # inspection

    def is_leaf(self, n: int) -> bool:
        return self.kids[n] is None and self.leaf_pos[n] is not None

    def children(self, n: int) -> tuple:
        k = self.kids[n]
        return () if k is None else tuple(k)

    def sign(self, n: int) -> Sign:
        v = self.value[n]
        if not is_sign(v):
            raise TncbError("node %d is not well-formed" % n)
        return v

    def well_formed(self, n: int) -> bool:
        return is_sign(self.value[n])

    def preorder(self, n: Optional[int] = None) -> Iterator[int]:
        """Top-down, left-to-right node order."""
        if n is None:
            n = self.root
        if n is None:
            return
        stack = [n]
        while stack:
            m = stack.pop()
            yield m
            k = self.kids[m]
            if k is not None:
                stack.append(k[1])
                stack.append(k[0])

    def levels(self, n: int) -> Iterator[tuple[int, int]]:
        """Breadth-first ``(depth below n, node)`` pairs, n itself at 0."""
        q = deque([(0, n)])
        while q:
            d, m = q.popleft()
            yield d, m
            for c in self.children(m):
                q.append((d + 1, c))

    def nodes(self) -> list[int]:
        return list(self.preorder())

    def leaves(self, n: Optional[int] = None) -> list[int]:
        return [m for m in self.preorder(n) if self.is_leaf(m)]

    def leaf_signs(self) -> list[Sign]:
        return [self.value[m] for m in self.leaves()]

    def node_count(self) -> int:
        return sum(1 for _ in self.preorder())

    def leaf_count(self, n: Optional[int] = None) -> int:
        return len(self.leaves(n))

    def interior_count(self) -> int:
        return self.node_count() - self.leaf_count()

    def depth(self, n: int) -> int:
        d = 0
        while self.parent[n] is not None:
            n = self.parent[n]
            d += 1
        return d

    def ancestors(self, n: int) -> list[int]:
        out = []
        p = self.parent[n]
        while p is not None:
            out.append(p)
            p = self.parent[p]
        return out

    def is_maximal(self, n: int) -> bool:
        if not self.well_formed(n):
            return False
        p = self.parent[n]
        return p is None or not self.well_formed(p)

    def host(self, n: int) -> int:
        """The maximal TNCB containing well-formed node ``n``."""
        if not self.well_formed(n):
            raise TncbError("node %d is not well-formed" % n)
        while self.parent[n] is not None and self.well_formed(self.parent[n]):
            n = self.parent[n]
        return n

    def maximal(self) -> list[int]:
        """Well-formed nodes whose parent is not, in top-down order."""
        out = []
        stack = [self.root] if self.root is not None else []
        while stack:
            m = stack.pop()
            if self.well_formed(m):
                out.append(m)
                continue
            k = self.kids[m]
            if k is not None:
                stack.append(k[1])
                stack.append(k[0])
        return out

    def undetermined(self) -> set[int]:
        return {m for m in self.preorder() if self.value[m] is UNDETERMINED}

    def orth(self, n: int) -> str:
        return self.sign(n).orth

    def label(self, n: int) -> str:
        v = self.value[n]
        if is_sign(v):
            return v.orth
        return "*" if v is INCONSISTENT else "?"

    def bracketing(self, n: Optional[int] = None) -> str:
        """Nested parenthesised leaf orthographies, in child-slot order."""
        if n is None:
            n = self.root
        if self.is_leaf(n):
            return self.value[n].orth
        a, b = self.kids[n]
        return "(%s %s)" % (self.bracketing(a), self.bracketing(b))

    def __repr__(self) -> str:
        if self.root is None:
            return "Tncb()"
        return "Tncb(%s)" % self.bracketing()

    def check(self) -> None:
        """Assert the structural invariants; raises TncbError."""
        seen = set()
        leaves = 0
        for m in self.preorder():
            if m in seen:
                raise TncbError("node %d reachable twice" % m)
            seen.add(m)
            k = self.kids[m]
            if k is None:
                if self.leaf_pos[m] is None:
                    raise TncbError("node %d has no content" % m)
                if not is_sign(self.value[m]):
                    raise TncbError("leaf %d is not well-formed" % m)
                leaves += 1
            else:
                if len(k) != 2:
                    raise TncbError("node %d is not binary" % m)
                for c in k:
                    if self.parent[c] != m:
                        raise TncbError("parent link of %d broken" % c)
        if self.root is not None and self.parent[self.root] is not None:
            raise TncbError("root has a parent")
        if len(seen) and len(seen) - leaves != leaves - 1:
            raise TncbError("interior count is not leaves - 1")

    # evaluation

    def evaluate(self, grammar: Grammar, strict: bool = True,
                 stats=None) -> int:
        """Fill in every undetermined node; return the combine calls made.

        Settled nodes are never recomputed. ``stats`` may be a
        :class:`collections.Counter`, whose ``"combine"`` entry is bumped.
        """
        calls = 0
        if self.root is None:
            return 0
        # children before parents
        order = [m for m in self.preorder() if self.value[m] is UNDETERMINED]
        for m in reversed(order):
            a, b = self.kids[m]
            va, vb = self.value[a], self.value[b]
            assert va is not UNDETERMINED and vb is not UNDETERMINED
            if is_sign(va) and is_sign(vb):
                calls += 1
                s = combine(va, vb, grammar, strict)
                self.value[m] = INCONSISTENT if s is None else s
            else:
                self.value[m] = INCONSISTENT
        if stats is not None:
            stats["combine"] += calls
        return calls

    # rewriting

    def _replace(self, old: int, new: int) -> None:
        """Put ``new`` into the slot ``old`` occupies."""
        p = self.parent[old]
        if p is None:
            if old != self.root:
                raise TncbError("node %d is detached" % old)
            self.root = new
        else:
            k = self.kids[p]
            k[k.index(old)] = new
        self.parent[new] = p
        self.parent[old] = None

    def _unsettle_above(self, n: int) -> list[int]:
        marked = self.ancestors(n)
        for m in marked:
            self.value[m] = UNDETERMINED
        return marked

    def attached(self, n: int) -> bool:
        while self.parent[n] is not None:
            n = self.parent[n]
        return n == self.root

    def delete(self, m: int) -> int:
        """Detach maximal node ``m``; return the freed id of its old parent.

        The sibling of ``m`` takes the parent's place and every node above
        the splice point becomes undetermined.
        """
        if m == self.root:
            raise TncbError("cannot delete the root")
        if not self.attached(m):
            raise TncbError("node %d is not in the tree" % m)
        if not self.is_maximal(m):
            raise TncbError("node %d is not maximal" % m)
        p = self.parent[m]
        a, b = self.kids[p]
        sib = b if a == m else a
        self._replace(p, sib)
        self._unsettle_above(sib)
        self.kids[p] = None
        self.value[p] = UNDETERMINED
        self.parent[m] = None
        return p

    def _new_pair(self, dest: int, mover: int, sign: Sign,
                  node: Optional[int]) -> int:
        if node is None:
            node = len(self.value)
            self.value.append(sign)
            self.kids.append(None)
            self.parent.append(None)
            self.leaf_pos.append(None)
        elif self.kids[node] is not None or self.parent[node] is not None \
                or node == self.root or self.leaf_pos[node] is not None:
            raise TncbError("node %d is not free" % node)
        self._replace(dest, node)
        self.kids[node] = [dest, mover]
        self.parent[dest] = node
        self.parent[mover] = node
        self.value[node] = sign
        return node

    def _check_mover(self, a: int) -> None:
        if self.parent[a] is not None or a == self.root:
            raise TncbError("node %d must be detached first" % a)
        if not self.well_formed(a):
            raise TncbError("node %d is not well-formed" % a)

    def conjoin(self, a: int, b: int, grammar: Grammar,
                node: Optional[int] = None, strict: bool = True,
                stats=None) -> int:
        """Attach detached node ``a`` beside maximal node ``b``.

        Returns the id of the new well-formed node; nodes above it become
        undetermined. ``node`` names a freed slot to reuse.
        """
        self._check_mover(a)
        if not self.attached(b) or not self.is_maximal(b):
            raise TncbError("node %d is not a maximal node of the tree" % b)
        if stats is not None:
            stats["combine"] += 1
        s = combine(self.value[a], self.value[b], grammar, strict)
        if s is None:
            raise TncbError("%r and %r do not combine"
                            % (self.orth(a), self.orth(b)))
        new = self._new_pair(b, a, s, node)
        self._unsettle_above(new)
        return new

    def adjoin(self, a: int, site: int, grammar: Grammar,
               node: Optional[int] = None, strict: bool = True,
               stats=None) -> tuple[int, int]:
        """Insert detached node ``a`` beside ``site`` inside a maximal node.

        Returns ``(new node, disrupted count)``. The disrupted nodes are the
        nodes of the host maximal TNCB that dominate the new node.
        """
        self._check_mover(a)
        if not self.attached(site) or not self.well_formed(site) \
                or self.is_maximal(site):
            raise TncbError("node %d is not strictly inside a maximal node"
                            % site)
        host = self.host(site)
        if stats is not None:
            stats["combine"] += 1
        s = combine(self.value[a], self.value[site], grammar, strict)
        if s is None:
            raise TncbError("%r and %r do not combine"
                            % (self.orth(a), self.orth(site)))
        new = self._new_pair(site, a, s, node)
        marked = self._unsettle_above(new)
        disrupted = marked.index(host) + 1
        return new, disrupted

    def move(self, step: MoveStep, grammar: Grammar, strict: bool = True,
             stats=None) -> int:
        """Delete the mover and reattach it; node count is unchanged."""
        spare = self.delete(step.mover)
        if step.kind is MoveKind.CONJOIN:
            return self.conjoin(step.mover, step.destination, grammar,
                                node=spare, strict=strict, stats=stats)
        new, disrupted = self.adjoin(step.mover, step.destination, grammar,
                                     node=spare, strict=strict, stats=stats)
        if disrupted != step.disrupted:
            raise TncbError("move disrupted %d nodes, expected %d"
                            % (disrupted, step.disrupted))
        return new

    def swap(self, n: int) -> None:
        """Exchange the child slots of ``n`` (an equivalent TNCB)."""
        k = self.kids[n]
        if k is not None:
            k.reverse()


def leaf(sign: Sign) -> Tncb:
    t = Tncb()
    t.root = t.add_leaf(sign, 0)
    return t


def from_nested(nested, grammar: Optional[Grammar] = None) -> Tncb:
    """Build a TNCB from nested 2-tuples of signs, leaves numbered in order.

    >>> from tncbgen.signs import Sign
    >>> a, b = Sign("A", "a"), Sign("B", "b")
    >>> from_nested((a, b)).bracketing()
    '(a b)'
    """
    t = Tncb()

    def build(x):
        if isinstance(x, Sign):
            return t.add_leaf(x)
        if len(x) != 2:
            raise TncbError("TNCBs are binary")
        return t.add_pair(build(x[0]), build(x[1]))

    t.root = build(nested)
    # leaves numbered left to right
    for i, m in enumerate(t.leaves()):
        t.leaf_pos[m] = i
    if grammar is not None:
        t.evaluate(grammar)
    return t
