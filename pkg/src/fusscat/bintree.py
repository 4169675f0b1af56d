"""Complete binary trees with labelled internal nodes and a single generator leaf.

Dendriform and Dias trees subclass :class:`Node` so that the two never
compare equal; the leaf ``g`` is shared.
"""

from __future__ import annotations

import re
from typing import Iterator

from fusscat.relations import Monomial, op_from_name, op_name


class Leaf:
    __slots__ = ()
    ops = 0

    def __repr__(self) -> str:
        return "g"

    def sort_key(self) -> tuple:
        return (0, "g")


LEAF = Leaf()


class Node:
    """Internal node; ``op`` is the operation number in ``0..m``."""

    __slots__ = ("op", "left", "right", "ops", "_hash")
    dias = False

    def __init__(self, op: int, left, right):
        self.op = op
        self.left = left
        self.right = right
        self.ops = 1 + left.ops + right.ops
        self._hash = hash((type(self).__name__, op, left, right))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if type(other) is not type(self) or self._hash != other._hash:
            return False
        return self.op == other.op and self.left == other.left and self.right == other.right

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.op}, {self.left!r}, {self.right!r})"

    def sort_key(self) -> tuple:
        return (self.ops, _plain(self))


def _plain(t) -> str:
    if isinstance(t, Leaf):
        return "g"
    return f"({t.op} {_plain(t.left)} {_plain(t.right)})"


def format_sexpr(t, m: int) -> str:
    if isinstance(t, Leaf):
        return "g"
    return f"({op_name(t.op, m, t.dias)} {format_sexpr(t.left, m)} {format_sexpr(t.right, m)})"


# operation heads first so that compact input such as "(<(<gg)g)" tokenizes
_TOKEN = re.compile(r"\s*(\(|\)|-\||\|-|[<>g]|[om]\d+|[^\s()]+)")


def parse_sexpr(text: str, m: int, node_cls: type[Node]):
    """Parse ``g`` / ``(HEAD left right)``; errors report the character offset."""
    tokens: list[tuple[str, int]] = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            if text[pos:].strip() == "":
                break
            raise SyntaxError(f"unexpected character at position {pos}: {text[pos:]!r}")
        tokens.append((match.group(1), match.start(1)))
        pos = match.end()
    idx = 0

    def fail(msg: str) -> SyntaxError:
        where = tokens[idx][1] if idx < len(tokens) else len(text)
        return SyntaxError(f"{msg} at position {where} in {text!r}")

    def parse():
        nonlocal idx
        if idx >= len(tokens):
            raise fail("unexpected end of input")
        tok = tokens[idx][0]
        if tok == "g":
            idx += 1
            return LEAF
        if tok != "(":
            raise fail(f"expected 'g' or '(' but found {tok!r}")
        idx += 1
        if idx >= len(tokens):
            raise fail("missing operation")
        head = tokens[idx][0]
        try:
            op = op_from_name(head, m, node_cls.dias)
        except ValueError as exc:
            raise fail(str(exc)) from None
        idx += 1
        left = parse()
        right = parse()
        if idx >= len(tokens) or tokens[idx][0] != ")":
            raise fail("expected ')'")
        idx += 1
        return node_cls(op, left, right)

    tree = parse()
    if idx != len(tokens):
        raise fail("trailing input")
    return tree


def edges(t) -> Iterator[Monomial]:
    """Every parent/child edge between internal nodes, as ``(side, parent, child)``."""
    if isinstance(t, Leaf):
        return
    if isinstance(t.left, Node):
        yield ("L", t.op, t.left.op)
        yield from edges(t.left)
    if isinstance(t.right, Node):
        yield ("R", t.op, t.right.op)
        yield from edges(t.right)


def root_edges(t) -> list[Monomial]:
    out = []
    if isinstance(t, Node):
        if isinstance(t.left, Node):
            out.append(("L", t.op, t.left.op))
        if isinstance(t.right, Node):
            out.append(("R", t.op, t.right.op))
    return out


def split_root(t, side: str):
    """Operands ``(u, v, w)`` of the two-operation monomial at the root on ``side``."""
    if side == "L":
        return t.left.left, t.left.right, t.right
    return t.left, t.right.left, t.right.right


def build(mono: Monomial, u, v, w, node_cls: type[Node]):
    side, r, c = mono
    if side == "L":
        return node_cls(r, node_cls(c, u, v), w)
    return node_cls(r, u, node_cls(c, v, w))


def all_trees(k: int, m: int, node_cls: type[Node]) -> list:
    """Every tree with exactly k internal nodes over operations ``0..m``."""
    memo: dict[int, list] = {0: [LEAF]}

    def trees(j: int) -> list:
        if j not in memo:
            memo[j] = [
                node_cls(op, left, right)
                for a in range(j)
                for left in trees(a)
                for right in trees(j - 1 - a)
                for op in range(m + 1)
            ]
        return memo[j]

    return trees(k)


def restricted_trees(k: int, m: int, node_cls: type[Node], edge_ok) -> list:
    """Trees with k internal nodes all of whose edges satisfy ``edge_ok``."""
    memo: dict[int, list] = {0: [LEAF]}

    def trees(j: int) -> list:
        if j not in memo:
            out = []
            for op in range(m + 1):
                for a in range(j):
                    lefts = [t for t in trees(a) if not isinstance(t, Node) or edge_ok(("L", op, t.op))]
                    if not lefts:
                        continue
                    rights = [
                        t for t in trees(j - 1 - a) if not isinstance(t, Node) or edge_ok(("R", op, t.op))
                    ]
                    out.extend(node_cls(op, left, right) for left in lefts for right in rights)
            memo[j] = out
        return memo[j]

    return trees(k)


def positions(t, path: tuple = ()) -> Iterator[tuple[tuple, object]]:
    """Every internal subtree with its path from the root (``0`` left, ``1`` right)."""
    if isinstance(t, Node):
        yield path, t
        yield from positions(t.left, path + (0,))
        yield from positions(t.right, path + (1,))


def replace_at(t, path: tuple, new):
    if not path:
        return new
    cls = type(t)
    if path[0] == 0:
        return cls(t.op, replace_at(t.left, path[1:], new), t.right)
    return cls(t.op, t.left, replace_at(t.right, path[1:], new))


def count_restricted(max_ops: int, m: int, edge_ok) -> list[list[int]]:
    """``counts[k][x]``: trees with k internal nodes, root operation x, all edges ok.

    Index ``x = m + 1`` holds the single leaf (k = 0).  Counts only, so it
    reaches sizes where listing the trees would not fit in memory.
    """
    leaf = m + 1
    counts = [[0] * (m + 2) for _ in range(max_ops + 1)]
    counts[0][leaf] = 1
    for k in range(1, max_ops + 1):
        for op in range(m + 1):
            total = 0
            for a in range(k):
                left = sum(
                    c for x, c in enumerate(counts[a]) if c and (x == leaf or edge_ok(("L", op, x)))
                )
                if not left:
                    continue
                right = sum(
                    c for x, c in enumerate(counts[k - 1 - a]) if c and (x == leaf or edge_ok(("R", op, x)))
                )
                total += left * right
            counts[k][op] = total
    return counts


def census_from_counts(counts: list[list[int]], m: int) -> dict[str, list[int]]:
    """Reshape :func:`count_restricted` output like ``census_by_root``."""
    out = {"total": [sum(row) for row in counts]}
    for x in range(m + 1):
        out[str(x)] = [row[x] for row in counts]
    return out
