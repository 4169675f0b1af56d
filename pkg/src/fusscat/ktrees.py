"""(m+1)-ary trees, their search labelling and the reading bijection.

A node is a :class:`KTree` carrying exactly m+1 ordered child slots; an
empty slot (and the empty tree) is ``None``.  The arity m is implied by the
number of slots; for the empty tree it has to be supplied separately.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterator, Optional

from fusscat.sylvester import EnumerationBoundError, avoids_132, enumeration_cap, is_mpermutation
from fusscat.words import Word, format_word


@dataclass(frozen=True)
class KTree:
    children: tuple

    @property
    def m(self) -> int:
        return len(self.children) - 1

    def __len__(self) -> int:
        return size(self)

    def __str__(self) -> str:
        return format_tree(self)


Tree = Optional[KTree]


@dataclass(frozen=True)
class Labelled:
    """A node of a search-labelled tree."""

    label: int
    children: tuple


def node(*children: Tree) -> KTree:
    return KTree(tuple(children))


def leaf(m: int) -> KTree:
    return KTree((None,) * (m + 1))


def size(t: Tree) -> int:
    if t is None:
        return 0
    return 1 + sum(size(c) for c in t.children)


def fuss_catalan(m: int, n: int) -> int:
    """Number of (m+1)-ary trees with n nodes: binomial(mn+n, n) / (mn+1)."""
    if m < 1 or n < 0:
        raise ValueError("need m >= 1 and n >= 0")
    return comb(m * n + n, n) // (m * n + 1)


def format_tree(t: Tree) -> str:
    if t is None:
        return "()"
    return "(" + " ".join(format_tree(c) for c in t.children) + ")"


def parse_tree(text: str) -> Tree:
    """Inverse of :func:`format_tree`; all nodes must have the same arity."""
    tokens = [ch for ch in text if not ch.isspace()]
    pos = 0

    def parse() -> Tree:
        nonlocal pos
        if pos >= len(tokens) or tokens[pos] != "(":
            raise ValueError(f"expected '(' at token {pos} in {text!r}")
        pos += 1
        kids = []
        while pos < len(tokens) and tokens[pos] == "(":
            kids.append(parse())
        if pos >= len(tokens) or tokens[pos] != ")":
            raise ValueError(f"expected ')' at token {pos} in {text!r}")
        pos += 1
        if not kids:
            return None
        if len(kids) < 2:
            raise ValueError(f"a node needs at least 2 child slots in {text!r}")
        return KTree(tuple(kids))

    t = parse()
    if pos != len(tokens):
        raise ValueError(f"trailing input at token {pos} in {text!r}")
    arities = set(_arities(t))
    if len(arities) > 1:
        raise ValueError(f"mixed node arities {sorted(arities)} in {text!r}")
    return t


def _arities(t: Tree) -> Iterator[int]:
    if t is not None:
        yield len(t.children)
        for c in t.children:
            yield from _arities(c)


def search_labelling(t: KTree) -> Labelled:
    """Label nodes 1..n: subtree m, ..., subtree 1, then the node, then subtree m+1."""
    if t is None:
        raise ValueError("cannot label the empty tree")
    counter = 0

    def visit(s: Tree):
        nonlocal counter
        if s is None:
            return None
        m = s.m
        kids: list = [None] * (m + 1)
        for i in range(m - 1, -1, -1):
            kids[i] = visit(s.children[i])
        counter += 1
        label = counter
        kids[m] = visit(s.children[m])
        return Labelled(label, tuple(kids))

    return visit(t)


def reading_word(t: KTree) -> Word:
    """Read subtree m+1, subtree 1, root, subtree 2, root, ..., subtree m, root."""
    if t is None:
        raise ValueError("cannot read the empty tree")
    out: list[int] = []

    def read(s: Optional[Labelled]) -> None:
        if s is None:
            return
        kids = s.children
        read(kids[-1])
        for c in kids[:-1]:
            read(c)
            out.append(s.label)

    read(search_labelling(t))
    return tuple(out)


def tree_from_word(w: Word) -> KTree:
    """Rebuild the tree whose reading word is ``w`` (a 132-avoiding m-permutation)."""
    if not w:
        raise ValueError("the empty word encodes the empty tree; m is undefined")
    m = w.count(w[-1])
    if not is_mpermutation(w, m):
        raise ValueError(f"{format_word(w)} is not an m-permutation")
    if not avoids_132(w):
        raise ValueError(f"{format_word(w)} contains the pattern 132")
    return _decode(w, m)


def _decode(w: Word, m: int) -> Tree:
    if not w:
        return None
    r = w[-1]
    cuts = [i for i, a in enumerate(w) if a == r]
    if len(cuts) != m:
        raise ValueError(f"root {r} occurs {len(cuts)} times, expected {m}")
    head = w[: cuts[0]]
    split = 0
    while split < len(head) and head[split] > r:
        split += 1
    right, first = head[:split], head[split:]
    if any(a > r for a in first):
        raise ValueError(f"letters above root {r} are not a prefix of {format_word(head)}")
    chunks = [first] + [w[cuts[i] + 1: cuts[i + 1]] for i in range(m - 1)] + [right]
    return KTree(tuple(_decode(c, m) for c in chunks))


def enumerate_ktrees(m: int, n: int, cap: int | None = None) -> list[KTree]:
    """All (m+1)-ary trees with n nodes, in a fixed deterministic order."""
    cap = enumeration_cap() if cap is None else cap
    total = fuss_catalan(m, n)
    if total > cap:
        raise EnumerationBoundError(f"{total} trees exceed cap {cap}")
    memo: dict[int, list[Tree]] = {0: [None]}

    def trees(k: int) -> list[Tree]:
        if k not in memo:
            memo[k] = [KTree(kids) for kids in _slot_fillings(k - 1, m + 1, trees)]
        return memo[k]

    out = trees(n)
    if len({format_tree(t) for t in out}) != len(out):
        raise AssertionError("duplicate trees in enumeration")
    return list(out)


def _slot_fillings(k: int, slots: int, trees) -> Iterator[tuple]:
    if slots == 1:
        for t in trees(k):
            yield (t,)
        return
    for first in range(k + 1):
        for t in trees(first):
            for rest in _slot_fillings(k - first, slots - 1, trees):
                yield (t,) + rest
