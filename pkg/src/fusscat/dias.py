"""The m-Dias algebras, quadratic duals of the m-dendriform algebras.

Every relation equates single trees, so rewriting is monomial: each tree
with a non-valid two-node pattern is sent to the unique valid member of
its relation.  A tree is in normal form when every edge between internal
nodes is valid.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from graphlib import CycleError, TopologicalSorter
from math import comb

from fusscat import bintree
from fusscat.bintree import Leaf, Node
from fusscat.dendriform import RewriteLimitError
from fusscat.relations import Monomial, dias_relation_groups, monomial_str, special_patterns
from fusscat.sylvester import EnumerationBoundError, enumeration_cap

DEFAULT_STEP_LIMIT = 10**6


class DiasNode(Node):
    """Internal node of an m-Dias tree; heads print as ``-|``, ``m<i>``, ``|-``."""

    __slots__ = ()
    dias = True


def valid_patterns(m: int) -> frozenset[Monomial]:
    return special_patterns(m)


@dataclass(frozen=True)
class Rule:
    name: str
    source: Monomial
    target: Monomial

    def describe(self, m: int) -> str:
        return f"{monomial_str(self.source, m, True)} -> {monomial_str(self.target, m, True)}"


def dias_rules(m: int) -> list[Rule]:
    """One rule per non-valid monomial, pointing at the valid member of its relation."""
    valid = special_patterns(m)
    rules = []
    seen: set[Monomial] = set()
    for name, group in dias_relation_groups(m):
        targets = [x for x in group if x in valid]
        if len(targets) != 1:
            raise ValueError(f"relation {name} has {len(targets)} valid members")
        for mono in group:
            if mono in valid:
                continue
            if mono in seen:
                raise ValueError(f"monomial {mono} appears in two relations")
            seen.add(mono)
            rules.append(Rule(name, mono, targets[0]))
    return rules


@dataclass
class ConfluenceCertificate:
    m: int
    trees: int = 0
    rewritable: int = 0
    failures: list = field(default_factory=list)
    table: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "operators": 3,
            "trees": self.trees,
            "rewritable": self.rewritable,
            "pass": self.ok,
            "failures": self.failures,
            "table": self.table,
        }


@dataclass
class AcyclicityCertificate:
    m: int
    max_ops: int
    vertices: int = 0
    edges: int = 0
    acyclic: bool = True
    longest_chain: int = 0
    cycle: list | None = None

    @property
    def ok(self) -> bool:
        return self.acyclic

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "max_ops": self.max_ops,
            "vertices": self.vertices,
            "edges": self.edges,
            "acyclic": self.acyclic,
            "longest_chain": self.longest_chain,
            "cycle": self.cycle,
        }


class Dias:
    """Free m-Dias algebra on one generator, presented by monomial rewriting."""

    def __init__(self, m: int, step_limit: int = DEFAULT_STEP_LIMIT):
        if m < 1:
            raise ValueError("m must be at least 1")
        self.m = m
        self.step_limit = step_limit
        self.valid = special_patterns(m)
        self.rules = dias_rules(m)
        self._rule_of = {r.source: r for r in self.rules}
        self._nf: dict = {}
        self._active: set = set()
        self._steps = 0

    def __repr__(self) -> str:
        return f"Dias(m={self.m})"

    def parse(self, text: str):
        return bintree.parse_sexpr(text, self.m, DiasNode)

    def show(self, t) -> str:
        return bintree.format_sexpr(t, self.m)

    def is_normal(self, t) -> bool:
        return all(e in self.valid for e in bintree.edges(t))

    def _apply(self, rule: Rule, t):
        u, v, w = bintree.split_root(t, rule.source[0])
        return bintree.build(rule.target, u, v, w, DiasNode)

    def root_reducts(self, t) -> list[tuple[Rule, object]]:
        out = []
        for e in bintree.root_edges(t):
            rule = self._rule_of.get(e)
            if rule is not None:
                out.append((rule, self._apply(rule, t)))
        return out

    def one_step_reducts(self, t) -> list[tuple[tuple, Rule, object]]:
        """Every single rule application anywhere in ``t``: ``(path, rule, result)``."""
        out = []
        for path, sub in bintree.positions(t):
            for rule, new in self.root_reducts(sub):
                out.append((path, rule, bintree.replace_at(t, path, new)))
        return out

    def normal_form(self, t):
        """The unique all-valid tree equivalent to ``t`` (children first, then the root)."""
        self._steps = 0
        return self._normal_form(t)

    def _normal_form(self, t):
        if isinstance(t, Leaf):
            return t
        hit = self._nf.get(t)
        if hit is not None:
            return hit
        s = DiasNode(t.op, self._normal_form(t.left), self._normal_form(t.right))
        reducts = self.root_reducts(s)
        if not reducts:
            res = s
        else:
            if s in self._active:
                raise RewriteLimitError(f"rewriting cycle through {self.show(s)}")
            self._steps += 1
            if self._steps > self.step_limit:
                raise RewriteLimitError(f"more than {self.step_limit} rewrite steps")
            self._active.add(s)
            try:
                res = self._normal_form(reducts[0][1])
            finally:
                self._active.discard(s)
        self._nf[t] = res
        self._nf[s] = res
        return res

    def terminal_forms(self, t) -> set:
        """Ends of every maximal rewrite sequence from ``t``, over all strategies."""
        ends: set = set()
        seen: set = set()
        stack = [t]
        while stack:
            x = stack.pop()
            if x in seen:
                continue
            seen.add(x)
            nxt = self.one_step_reducts(x)
            if not nxt:
                ends.add(x)
            stack.extend(r for _, _, r in nxt)
        return ends

    def enumerate_normal(self, k_ops: int, cap: int | None = None) -> list:
        cap = enumeration_cap() if cap is None else cap
        expected = comb(k_ops + self.m, k_ops)
        if expected > cap:
            raise EnumerationBoundError(f"{expected} normal trees exceed cap {cap}")
        trees = bintree.restricted_trees(k_ops, self.m, DiasNode, lambda e: e in self.valid)
        return sorted(trees, key=lambda t: t.sort_key())

    def census_counts(self, max_ops: int) -> dict[str, list[int]]:
        """Same shape as :meth:`census_by_root`, by counting instead of listing."""
        counts = bintree.count_restricted(max_ops, self.m, lambda e: e in self.valid)
        return bintree.census_from_counts(counts, self.m)

    def census_by_root(self, max_ops: int) -> dict[str, list[int]]:
        out = {"total": []}
        out.update({str(x): [] for x in range(self.m + 1)})
        for k in range(max_ops + 1):
            trees = self.enumerate_normal(k)
            out["total"].append(len(trees))
            for x in range(self.m + 1):
                out[str(x)].append(sum(1 for t in trees if isinstance(t, Node) and t.op == x))
        return out

    def all_trees(self, k_ops: int, cap: int | None = None) -> list:
        cap = enumeration_cap() if cap is None else cap
        from fusscat.ktrees import fuss_catalan

        total = (self.m + 1) ** k_ops * fuss_catalan(1, k_ops)
        if total > cap:
            raise EnumerationBoundError(f"{total} trees exceed cap {cap}")
        return bintree.all_trees(k_ops, self.m, DiasNode)

    def congruence_classes(self, k_ops: int) -> list[frozenset]:
        """Classes of trees with ``k_ops`` operators under the relations, both directions."""
        trees = self.all_trees(k_ops)
        neighbours: dict = {t: set() for t in trees}
        for t in trees:
            for _, _, r in self.one_step_reducts(t):
                neighbours[t].add(r)
                neighbours[r].add(t)
        seen: set = set()
        out = []
        for t in trees:
            if t in seen:
                continue
            comp = {t}
            stack = [t]
            while stack:
                x = stack.pop()
                for y in neighbours[x]:
                    if y not in comp:
                        comp.add(y)
                        stack.append(y)
            seen |= comp
            out.append(frozenset(comp))
        return out

    def check_local_confluence(self) -> ConfluenceCertificate:
        """All one-step reducts of every 3-operator tree share one normal form."""
        cert = ConfluenceCertificate(self.m)
        for t in self.all_trees(3):
            cert.trees += 1
            target = self.normal_form(t)
            reducts = self.one_step_reducts(t)
            if not reducts:
                continue
            cert.rewritable += 1
            rows = []
            joinable = True
            for path, rule, r in reducts:
                nf = self.normal_form(r)
                joinable &= nf == target
                rows.append(
                    {
                        "position": "".join(map(str, path)) or "root",
                        "rule": rule.name,
                        "result": self.show(r),
                        "normal_form": self.show(nf),
                    }
                )
            entry = {
                "tree": self.show(t),
                "normal_form": self.show(target),
                "reducts": rows,
                "joinable": joinable,
            }
            cert.table.append(entry)
            if not joinable:
                cert.failures.append(entry)
        return cert

    def check_acyclic(self, k_ops: int) -> AcyclicityCertificate:
        """The one-step rewrite digraph on all trees with at most ``k_ops`` operators has no cycle."""
        cert = AcyclicityCertificate(self.m, k_ops)
        graph: dict = {}
        for k in range(k_ops + 1):
            for t in self.all_trees(k):
                succ = {r for _, _, r in self.one_step_reducts(t)}
                graph[t] = succ
                cert.edges += len(succ)
        cert.vertices = len(graph)
        # predecessors-first order for TopologicalSorter: a rewrite t -> r puts r after t
        preds: dict = {t: set() for t in graph}
        for t, succ in graph.items():
            for r in succ:
                preds[r].add(t)
        try:
            order = list(TopologicalSorter(preds).static_order())
        except CycleError as exc:
            cert.acyclic = False
            cert.cycle = [self.show(x) for x in exc.args[1]]
            return cert
        depth = {t: 0 for t in graph}
        for t in order:
            for r in graph[t]:
                depth[r] = max(depth[r], depth[t] + 1)
        cert.longest_chain = max(depth.values(), default=0)
        return cert
