"""The free m-dendriform algebra on one generator.

Elements are integer combinations of operator trees (:class:`OpNode`
over the generator leaf ``g``).  Each relation is oriented away from its
single forbidden two-node pattern; :meth:`Dendriform.normalize` rewrites a
tree into normal forms children first, then at the root.  Evaluation sends
``g`` to ``F_{1^m}`` in mFQSym.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Iterable

from fusscat import bintree
from fusscat.bintree import LEAF, Leaf, Node
from fusscat.ktrees import KTree, fuss_catalan
from fusscat.lincomb import LinComb, rank
from fusscat.mfqsym import MFQSym, reduce_triple
from fusscat.relations import Monomial, Relation, dendriform_relations, evaluate_side, special_patterns
from fusscat.sylvester import EnumerationBoundError, closure, enumeration_cap, lifts_classes

DEFAULT_STEP_LIMIT = 10**7


class OpNode(Node):
    """Internal node of an m-dendriform operator tree."""

    __slots__ = ()
    dias = False


def forbidden_patterns(m: int) -> frozenset[Monomial]:
    return special_patterns(m)


def is_normal(t, m: int) -> bool:
    forbidden = special_patterns(m)
    return not any(e in forbidden for e in bintree.edges(t))


def parse_expr(text: str, m: int):
    return bintree.parse_sexpr(text, m, OpNode)


def print_expr(t, m: int) -> str:
    return bintree.format_sexpr(t, m)


def infix(t, m: int) -> str:
    """Human-readable infix form such as ``(g o1 g) < g``."""
    if isinstance(t, Leaf):
        return "g"
    symbol = "<" if t.op == 0 else ">" if t.op == m else f"o{t.op}"

    def side(s):
        return infix(s, m) if isinstance(s, Leaf) else f"({infix(s, m)})"

    return f"{side(t.left)} {symbol} {side(t.right)}"


def orient(relations: Iterable[Relation], forbidden: frozenset[Monomial]) -> dict[Monomial, LinComb]:
    """Rewrite rules ``forbidden monomial -> combination of monomials``."""
    rules: dict[Monomial, LinComb] = {}
    for rel in relations:
        hits = [(s, mono) for s, side in (("lhs", rel.lhs), ("rhs", rel.rhs)) for mono in side if mono in forbidden]
        if len(hits) != 1:
            raise ValueError(f"relation {rel.name} has {len(hits)} forbidden monomials")
        which, mono = hits[0]
        same, other = (rel.lhs, rel.rhs) if which == "lhs" else (rel.rhs, rel.lhs)
        target = LinComb(other) - LinComb(x for x in same if x != mono)
        if mono in rules:
            raise ValueError(f"pattern {mono} oriented twice")
        rules[mono] = target
    return rules


class RewriteLimitError(RuntimeError):
    """Normalization exceeded its step budget or revisited a tree."""


@dataclass
class DimensionReport:
    m: int
    n: int
    census: int
    fuss_catalan: int
    rank: int | None

    @property
    def ok(self) -> bool:
        return self.census == self.fuss_catalan and self.rank in (None, self.census)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "census": self.census,
            "closed_form": self.fuss_catalan,
            "rank": self.rank,
            "match": self.ok,
        }


@dataclass
class ClassSumCertificate:
    """Outcome of :meth:`Dendriform.certify_class_sum`."""

    word: tuple
    explicit_word: tuple
    explicit_terms: int
    lifts: list = field(default_factory=list)
    total_terms: int = 0
    ok: bool = False

    def to_json(self) -> dict:
        from fusscat.words import format_word

        return {
            "word": format_word(self.word),
            "explicit_word": format_word(self.explicit_word),
            "explicit_terms": self.explicit_terms,
            "lifted_letters": self.lifts,
            "total_terms": self.total_terms,
            "pass": self.ok,
        }


class Dendriform:
    """Free m-dendriform algebra on one generator, with its realization in mFQSym."""

    def __init__(self, m: int, step_limit: int = DEFAULT_STEP_LIMIT):
        if m < 1:
            raise ValueError("m must be at least 1")
        self.m = m
        self.step_limit = step_limit
        self.forbidden = special_patterns(m)
        self.rules = orient(dendriform_relations(m), self.forbidden)
        self.fqsym = MFQSym(m)
        self._nf: dict = {}
        self._root_nf: dict = {}
        self._active: set = set()
        self._steps = 0
        self._normal: dict[int, list] = {}
        self._eval: dict = {LEAF: self.fqsym.generator()}

    def __repr__(self) -> str:
        return f"Dendriform(m={self.m})"

    def node(self, op: int, left, right) -> OpNode:
        if not 0 <= op <= self.m:
            raise ValueError(f"operation {op} out of range 0..{self.m}")
        return OpNode(op, left, right)

    def parse(self, text: str):
        return parse_expr(text, self.m)

    def show(self, t) -> str:
        return print_expr(t, self.m)

    def is_normal(self, t) -> bool:
        return not any(e in self.forbidden for e in bintree.edges(t))

    # rewriting

    def normalize(self, t) -> LinComb:
        """Rewrite ``t`` into a combination of trees avoiding every forbidden pattern."""
        self._steps = 0
        return self._normalize(t)

    def normalize_lincomb(self, lc: LinComb) -> LinComb:
        acc: dict = {}
        for t, c in lc.items():
            for s, d in self.normalize(t).items():
                acc[s] = acc.get(s, 0) + c * d
        return LinComb(acc)

    def _normalize(self, t) -> LinComb:
        hit = self._nf.get(t)
        if hit is not None:
            return hit
        if isinstance(t, Leaf):
            res = LinComb.basis(t)
        else:
            left = self._normalize(t.left)
            right = self._normalize(t.right)
            acc: dict = {}
            for a, ca in left.items():
                for b, cb in right.items():
                    for s, cs in self._normalize_root(OpNode(t.op, a, b)).items():
                        acc[s] = acc.get(s, 0) + ca * cb * cs
            res = LinComb(acc)
        self._nf[t] = res
        return res

    def _normalize_root(self, t) -> LinComb:
        """Normalize a tree whose two subtrees are already normal."""
        hit = self._root_nf.get(t)
        if hit is not None:
            return hit
        pattern = next((e for e in bintree.root_edges(t) if e in self.forbidden), None)
        if pattern is None:
            res = LinComb.basis(t)
        else:
            if t in self._active:
                raise RewriteLimitError(f"rewriting cycle through {self.show(t)}")
            self._steps += 1
            if self._steps > self.step_limit:
                raise RewriteLimitError(f"more than {self.step_limit} rewrite steps")
            self._active.add(t)
            try:
                u, v, w = bintree.split_root(t, pattern[0])
                acc: dict = {}
                for mono, c in self.rules[pattern].items():
                    for s, cs in self._normalize(bintree.build(mono, u, v, w, OpNode)).items():
                        acc[s] = acc.get(s, 0) + c * cs
                res = LinComb(acc)
            finally:
                self._active.discard(t)
        self._root_nf[t] = res
        return res

    # census

    def enumerate_normal(self, k_ops: int, cap: int | None = None) -> list:
        """All normal trees with ``k_ops`` operators."""
        cap = enumeration_cap() if cap is None else cap
        expected = fuss_catalan(self.m, k_ops + 1)
        if expected > cap:
            raise EnumerationBoundError(f"{expected} normal trees exceed cap {cap}")
        if k_ops not in self._normal:
            trees = bintree.restricted_trees(k_ops, self.m, OpNode, lambda e: e not in self.forbidden)
            self._normal[k_ops] = sorted(trees, key=lambda t: t.sort_key())
        return list(self._normal[k_ops])

    def census_counts(self, max_ops: int) -> dict[str, list[int]]:
        """Same shape as :meth:`census_by_root`, by counting instead of listing."""
        counts = bintree.count_restricted(max_ops, self.m, lambda e: e not in self.forbidden)
        return bintree.census_from_counts(counts, self.m)

    def census_by_root(self, max_ops: int) -> dict[str, list[int]]:
        """Counts of normal trees by root label for 0..max_ops operators.

        Keys are ``"total"`` and the operation numbers as strings; the leaf
        counts only toward ``"total"``.
        """
        out = {"total": []}
        out.update({str(x): [] for x in range(self.m + 1)})
        for k in range(max_ops + 1):
            trees = self.enumerate_normal(k)
            out["total"].append(len(trees))
            for x in range(self.m + 1):
                out[str(x)].append(sum(1 for t in trees if isinstance(t, Node) and t.op == x))
        return out

    # realization

    def evaluate(self, t) -> LinComb:
        """Image in mFQSym: ``g`` goes to ``F_{1^m}``, nodes to their operation."""
        hit = self._eval.get(t)
        if hit is None:
            hit = self.fqsym.op(t.op, self.evaluate(t.left), self.evaluate(t.right))
            self._eval[t] = hit
        return hit

    def evaluate_lincomb(self, lc: LinComb) -> LinComb:
        total = LinComb()
        for t, c in lc.items():
            total = total + c * self.evaluate(t)
        return total

    def expr_from_ktree(self, k: KTree):
        """An expression evaluating to the class sum of the tree's reading word."""
        if k is None:
            raise ValueError("the empty tree has no expression")
        m = self.m
        if k.m != m:
            raise ValueError(f"tree has arity {k.m + 1}, expected {m + 1}")
        kids = k.children
        if all(c is None for c in kids):
            return LEAF
        if kids[m] is not None:
            stripped = KTree(kids[:m] + (None,))
            return OpNode(0, self.expr_from_ktree(stripped), self.expr_from_ktree(kids[m]))
        j = max(i for i in range(m) if kids[i] is not None) + 1
        if j == 1:
            return OpNode(m, self.expr_from_ktree(kids[0]), LEAF)
        inner = kids[j - 1].children
        left = KTree(inner[:m] + (None,))
        right = KTree(kids[: j - 1] + (inner[m],) + (None,) * (m + 1 - j))
        return OpNode(m + 1 - j, self.expr_from_ktree(left), self.expr_from_ktree(right))

    def certify_class_sum(self, t, word) -> ClassSumCertificate:
        """Certify that ``t`` evaluates to the coefficient-1 sum over the class of ``word``.

        While ``t = E < g``, ``word`` starts with m copies of its largest
        letter M, and the rest of ``word`` ends with its own largest letter,
        the check moves to ``E`` and ``word`` without its Ms: ``x < F_{1^m}``
        is exactly the insertion of m new largest letters before the last
        letter of x (:func:`fusscat.sylvester.lift_max`), which under that
        condition maps the class of the shorter word onto the class of the
        longer one.  What remains is compared term by term against a
        breadth-first class.
        """
        m = self.m
        lifts = []
        factor = 1
        w = tuple(word)
        while (
            isinstance(t, Node)
            and t.op == 0
            and isinstance(t.right, Leaf)
            and len(w) > m
            and w[:m] == (max(w),) * m
            and max(w) not in w[m:]
            and lifts_classes(w[m:])
        ):
            lifts.append(max(w))
            w = w[m:]
            factor *= comb(len(w) - 1 + m, m)
            t = t.left
        image = self.evaluate(t)
        members = closure(w)
        ok = image == LinComb(members)
        return ClassSumCertificate(tuple(word), w, len(image), lifts, factor * len(image), ok)

    def dimension_check(self, n: int, with_rank: bool = True) -> DimensionReport:
        """Census of degree-n normal forms against C^(m)_n, plus the rank of their images."""
        trees = self.enumerate_normal(n - 1)
        r = rank([self.evaluate(t) for t in trees]) if with_rank else None
        return DimensionReport(self.m, n, len(trees), fuss_catalan(self.m, n), r)

    def check_soundness(self, trees: Iterable) -> object | None:
        """First tree whose image changes under normalization, or None."""
        for t in trees:
            if self.evaluate_lincomb(self.normalize(t)) != self.evaluate(t):
                return t
        return None


def merged_operations(m: int):
    """The m operations of the (m-1)-dendriform structure: ``o_{m-1}`` and ``>`` merged."""
    if m < 2:
        raise ValueError("need m >= 2")
    alg = MFQSym(m, strict=False)

    def op(label: int, a: LinComb, b: LinComb) -> LinComb:
        if label < m - 1:
            return alg.op(label, a, b)
        return alg.op(m - 1, a, b) + alg.op(m, a, b)

    return op


def check_lower_structure(m: int, triples: Iterable[tuple], reduced: bool = True) -> tuple | None:
    """Check the (m-1)-dendriform relations for the merged operations.

    Returns the first failing ``(relation name, u, v, w)`` or None.
    """
    op = merged_operations(m)
    rels = dendriform_relations(m - 1)
    seen = set()
    for u, v, w in triples:
        key = reduce_triple(u, v, w) if reduced else (u, v, w)
        if key in seen:
            continue
        seen.add(key)
        U, V, W = (LinComb.basis(x) for x in key)
        for rel in rels:
            if evaluate_side(rel.lhs, op, U, V, W) != evaluate_side(rel.rhs, op, U, V, W):
                return rel.name, u, v, w
    return None
