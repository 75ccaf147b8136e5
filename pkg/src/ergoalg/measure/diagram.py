"""Reduced, translation-invariant multi-valued decision diagrams.

A node tests one coordinate of a two-sided symbol sequence and branches on
its value. Child pointers carry a *skip*: the distance from the parent's
coordinate to the coordinate the child tests. Because no node stores an
absolute coordinate, a diagram and every shift of it share the same nodes,
and shifting an event is just a change of offset.

Nodes are hash-consed and reduced (a node whose children all coincide is
never built), so two diagrams denote the same set of sequences exactly when
they are the same object at the same offset.
"""
from __future__ import annotations

import sys
import threading
import weakref
from fractions import Fraction
from itertools import count
from math import gcd as _gcd
from typing import Callable, Hashable, Iterable, Optional

# Diagrams over long windows recurse once per coordinate.
if sys.getrecursionlimit() < 20000:
    sys.setrecursionlimit(20000)

_uids = count()


class Node:
    __slots__ = ("edges", "uid", "__weakref__")

    def __init__(self, edges):
        self.edges = edges
        self.uid = next(_uids)

    @property
    def is_terminal(self) -> bool:
        return self.edges is None

    def __repr__(self):
        if self is TRUE:
            return "⊤"
        if self is FALSE:
            return "⊥"
        return f"Node#{self.uid}"


TRUE = Node(None)
FALSE = Node(None)

_unique: "weakref.WeakValueDictionary[tuple, Node]" = weakref.WeakValueDictionary()
_lock = threading.Lock()

Ref = tuple[int, Node]  # (absolute or relative position, node)


def mk(edges: tuple[Ref, ...]) -> Ref:
    """Hash-cons a node; returns ``(shift, node)`` relative to the caller.

    ``edges`` holds one ``(skip, child)`` pair per symbol. Terminal children
    always use skip 0. If every edge is identical the node is redundant and
    the shared child is returned instead.
    """
    edges = tuple((0, c) if c.edges is None else (s, c) for s, c in edges)
    first = edges[0]
    if all(e == first for e in edges[1:]):
        return first
    key = tuple((s, c.uid) for s, c in edges)
    with _lock:
        node = _unique.get(key)
        if node is None:
            node = Node(edges)
            _unique[key] = node
    return 0, node


def const(value: bool) -> Node:
    return TRUE if value else FALSE


# ---------------------------------------------------------------------------
# Boolean operations


def negate(node: Node, memo: Optional[dict] = None) -> Node:
    if node is TRUE:
        return FALSE
    if node is FALSE:
        return TRUE
    memo = {} if memo is None else memo
    hit = memo.get(node.uid)
    if hit is not None:
        return hit
    shift, out = mk(tuple((s, negate(c, memo)) for s, c in node.edges))
    assert shift == 0  # negation never makes a node redundant
    memo[node.uid] = out
    return out


_OPS: dict[str, Callable[[bool, bool], bool]] = {
    "and": lambda x, y: x and y,
    "or": lambda x, y: x or y,
    "xor": lambda x, y: x != y,
    "diff": lambda x, y: x and not y,
}


def _with_const(op: str, value: bool, other: Ref, const_left: bool, memo) -> Optional[Ref]:
    """Resolve ``op`` when one operand is a terminal, or return None."""
    pos, node = other
    f = _OPS[op]
    if const_left:
        lo, hi = f(value, False), f(value, True)
    else:
        lo, hi = f(False, value), f(True, value)
    if lo == hi:
        return 0, const(lo)
    if hi:
        return pos, node
    return pos, negate(node, memo.setdefault("neg", {}))


def apply(op: str, a: Ref, b: Ref) -> Ref:
    """Combine two positioned diagrams; positions are absolute coordinates."""
    memo: dict = {}
    pa, na = a
    pb, nb = b
    pos, node = _apply(op, na, nb, pb - pa, memo)
    return (0, node) if node.edges is None else (pa + pos, node)


def _apply(op: str, a: Node, b: Node, d: int, memo) -> Ref:
    # ``a`` sits at coordinate 0 and ``b`` at coordinate ``d``; the result
    # position is reported relative to ``a``.
    if a.edges is None and b.edges is None:
        return 0, const(_OPS[op](a is TRUE, b is TRUE))
    if a.edges is None:
        return _with_const(op, a is TRUE, (d, b), True, memo)
    if b.edges is None:
        return _with_const(op, b is TRUE, (0, a), False, memo)
    key = (a.uid, b.uid, d)
    hit = memo.get(key)
    if hit is not None:
        return hit
    top = min(0, d)
    children = []
    for ea, eb in zip(a.edges, b.edges):
        if top == 0:
            pa, ca = ea
        else:
            pa, ca = 0, a
        if d == top:
            pb, cb = d + eb[0], eb[1]
        else:
            pb, cb = d, b
        rel, node = _apply(op, ca, cb, pb - pa, memo)
        children.append((pa + rel - top, node))
    shift, node = mk(tuple(children))
    out = (top + shift, node)
    memo[key] = out
    return out


# ---------------------------------------------------------------------------
# Evaluation helpers


_measure_cache: "weakref.WeakKeyDictionary[Node, dict]" = weakref.WeakKeyDictionary()


def measure(node: Node, probs: tuple[Fraction, ...]) -> Fraction:
    """Exact probability of the event rooted at ``node``.

    Probabilities are scaled to integer weights over a common denominator
    ``Q`` so the recursion runs on integers; a node at height ``h`` stores
    its measure times ``Q**h``.
    """
    if node is TRUE:
        return Fraction(1)
    if node is FALSE:
        return Fraction(0)
    with _lock:
        per_node = _measure_cache.get(node)
        if per_node is not None and probs in per_node:
            return per_node[probs]
    Q = 1
    for p in probs:
        Q = Q * p.denominator // _gcd(Q, p.denominator)
    weights = [p.numerator * (Q // p.denominator) for p in probs]
    memo: dict = {}

    def walk(n: Node) -> tuple[int, int]:
        if n is TRUE:
            return 1, 0
        if n is FALSE:
            return 0, 0
        hit = memo.get(n.uid)
        if hit is not None:
            return hit
        parts = [(s, walk(c)) for s, c in n.edges]
        h = max(1, max(s + ch for s, (_, ch) in parts))
        total = 0
        for w, (s, (m, ch)) in zip(weights, parts):
            if m:
                total += w * m * Q ** (h - 1 - ch)
        memo[n.uid] = out = (total, h)
        return out

    m, h = walk(node)
    value = Fraction(m, Q ** h)
    with _lock:
        _measure_cache.setdefault(node, {})[probs] = value
    return value


def depth(node: Node, memo: Optional[dict] = None) -> int:
    """Largest coordinate (relative to the root) tested on any path."""
    if node.edges is None:
        return -1
    memo = {} if memo is None else memo
    hit = memo.get(node.uid)
    if hit is not None:
        return hit
    best = 0
    for s, c in node.edges:
        if c.edges is not None:
            best = max(best, s + depth(c, memo))
    memo[node.uid] = best
    return best


def evaluate(node: Node, word: Callable[[int], int]) -> bool:
    """Membership of a sequence given as a coordinate -> symbol function.

    Coordinates are relative to the root node.
    """
    pos = 0
    while node.edges is not None:
        s, node = node.edges[word(pos)]
        pos += s
    return node is TRUE


def size(node: Node) -> int:
    seen = set()
    stack = [node]
    while stack:
        n = stack.pop()
        if n.edges is None or n.uid in seen:
            continue
        seen.add(n.uid)
        stack.extend(c for _, c in n.edges)
    return len(seen)


def words(node: Node, width: int, alphabet: int) -> list[tuple[int, ...]]:
    """Enumerate accepted words over relative coordinates ``0..width-1``."""
    out: list[tuple[int, ...]] = []

    def walk(n: Node, at: int, prefix: tuple[int, ...]):
        if n.edges is None:
            if n is TRUE:
                _expand(prefix, width - len(prefix), alphabet, out)
            return
        if len(prefix) < at:
            for sym in range(alphabet):
                walk(n, at, prefix + (sym,))
            return
        for sym, (s, c) in enumerate(n.edges):
            walk(c, at + s, prefix + (sym,))

    walk(node, 0, ())
    return out


def _expand(prefix, rest, alphabet, out):
    if rest == 0:
        out.append(prefix)
        return
    for sym in range(alphabet):
        _expand(prefix + (sym,), rest - 1, alphabet, out)


# ---------------------------------------------------------------------------
# Construction


def from_words(word_set: Iterable[tuple[int, ...]], width: int, alphabet: int) -> Ref:
    """Diagram accepting exactly the sequences whose window matches a word.

    Returns ``(relative position, node)`` with coordinates relative to the
    window start.
    """
    memo: dict = {}

    def build(pos: int, suffixes: frozenset) -> Ref:
        if not suffixes:
            return 0, FALSE
        if pos == width:
            return 0, TRUE
        hit = memo.get((pos, suffixes))
        if hit is not None:
            return hit
        children = []
        for sym in range(alphabet):
            sub = frozenset(w[1:] for w in suffixes if w[0] == sym)
            rel, node = build(pos + 1, sub)
            children.append((1 + rel, node))
        shift, node = mk(tuple(children))
        memo[(pos, suffixes)] = (shift, node)
        return shift, node

    return build(0, frozenset(tuple(w) for w in word_set))


def from_automaton(start: Hashable, length: int, alphabet: int,
                   step: Callable[[Hashable, int, int], object],
                   final: Callable[[Hashable], bool]) -> Ref:
    """Build a diagram from a deterministic automaton read left to right.

    ``step(state, position, symbol)`` returns the next state, or ``True`` /
    ``False`` to accept or reject immediately. After ``length`` symbols the
    verdict is ``final(state)``. Positions run ``0..length-1`` and the
    returned reference is relative to position 0.
    """
    levels: list[set] = [{start}]
    for pos in range(length):
        nxt = set()
        for state in levels[-1]:
            for sym in range(alphabet):
                r = step(state, pos, sym)
                if r is not True and r is not False:
                    nxt.add(r)
        levels.append(nxt)
    below: dict = {state: (0, const(bool(final(state)))) for state in levels[length]}
    for pos in range(length - 1, -1, -1):
        here = {}
        for state in levels[pos]:
            children = []
            for sym in range(alphabet):
                r = step(state, pos, sym)
                if r is True or r is False:
                    children.append((0, const(r)))
                else:
                    rel, node = below[r]
                    children.append((1 + rel, node))
            here[state] = mk(tuple(children))
        below = here
    return below[start]
