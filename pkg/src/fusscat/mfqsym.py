"""The algebra mFQSym on m-permutations and its splitting into m+1 operations.

``F_a F_b`` is the sum of the shuffles of ``a`` with ``b`` shifted by
``max(a)``.  Every shuffle term places the last letter of ``a`` somewhere
among the letters of ``b``; where it lands relative to the right-to-left
minima of ``b`` decides which of the m+1 operations the term belongs to:

* operation 0 (``<``): after the last letter of ``b``;
* operation i (``o_i``): strictly between minima ``m_{i+1}(b)`` and ``m_i(b)``;
* operation m (``>``): before ``m_m(b)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import product as cartesian
from typing import Iterator

from fusscat.lincomb import LinComb, bilinear
from fusscat.relations import Relation, dendriform_relations, evaluate_side, monomial_str
from fusscat.sylvester import classes, closure, is_mpermutation, mpermutations
from fusscat.words import Word, format_word, interleavings, shift


def rtl_minima(w: Word) -> list[int]:
    """1-based positions i with ``w[j] >= w[i]`` for all j > i, right to left."""
    if not w:
        raise ValueError("the empty word has no right-to-left minima")
    out = []
    low = None
    for i in range(len(w) - 1, -1, -1):
        if low is None or w[i] <= low:
            out.append(i + 1)
            low = w[i]
    return out


@dataclass(frozen=True)
class MinimaSplit:
    tau_prime: Word
    tau_second: Word
    tau_last: int
    minima_positions: tuple[int, ...]


def split_at_minimum(tau: Word, i: int) -> MinimaSplit:
    """Cut ``tau`` before its i-th right-to-left minimum and before its last letter."""
    mins = rtl_minima(tau)
    if not 1 <= i <= len(mins):
        raise ValueError(f"{format_word(tau)} has {len(mins)} right-to-left minima, asked for {i}")
    cut = mins[i - 1] - 1
    p = len(tau)
    head = tau[:cut]
    middle = tau[cut: p - 1] if cut < p - 1 else ()
    return MinimaSplit(head, middle, tau[-1], tuple(mins))


def landing_range(tau: Word, label: int, m: int) -> range:
    """Allowed counts of ``tau`` letters preceding the last letter of the left operand."""
    if not 0 <= label <= m:
        raise ValueError(f"operation {label} out of range 0..{m}")
    mins = rtl_minima(tau)
    if len(mins) < m:
        raise ValueError(f"{format_word(tau)} has fewer than {m} right-to-left minima")
    p = len(tau)
    if label == 0:
        return range(p, p + 1)
    if label == m:
        return range(0, mins[m - 1])
    return range(mins[label], mins[label - 1])


@lru_cache(maxsize=8192)
def op_words(sigma: Word, tau: Word, label: int, m: int) -> tuple[Word, ...]:
    """Terms of ``F_sigma op F_tau`` for one operation, as distinct words.

    Built directly as ``(sigma' sh tau[:t]) . sigma_last . tau[t:]`` over the
    allowed landing counts t, so no rejected shuffle term is ever formed.
    """
    if not sigma or not tau:
        raise ValueError("operations are defined on nonempty words only")
    t_shift = shift(tau, max(sigma))
    head, last = sigma[:-1], sigma[-1:]
    out = []
    for t in landing_range(tau, label, m):
        tail = last + t_shift[t:]
        for mixed in interleavings(head, t_shift[:t]):
            out.append(mixed + tail)
    return tuple(out)


def product_words(alpha: Word, beta: Word) -> Iterator[Word]:
    return interleavings(alpha, shift(beta, max(alpha, default=0)))


class MFQSym:
    """mFQSym for a fixed m.

    With ``strict=True`` (the default) every basis word is checked to be an
    m-permutation.  ``strict=False`` admits arbitrary words whose right
    operands have at least m right-to-left minima.
    """

    def __init__(self, m: int, strict: bool = True):
        if m < 1:
            raise ValueError("m must be at least 1")
        self.m = m
        self.strict = strict

    def __repr__(self) -> str:
        return f"MFQSym(m={self.m})"

    def _check(self, a: LinComb) -> None:
        if not self.strict:
            return
        for w in a:
            if not is_mpermutation(w, self.m):
                raise ValueError(f"{format_word(w)} is not a {self.m}-permutation")

    def F(self, w: Word) -> LinComb:
        lc = LinComb.basis(tuple(w))
        self._check(lc)
        return lc

    def generator(self) -> LinComb:
        return LinComb.basis((1,) * self.m)

    def product(self, a: LinComb, b: LinComb) -> LinComb:
        self._check(a)
        self._check(b)
        return bilinear(product_words, a, b)

    def op(self, label: int, a: LinComb, b: LinComb) -> LinComb:
        self._check(a)
        self._check(b)
        m = self.m
        return bilinear(lambda x, y: op_words(x, y, label, m), a, b)

    def prec(self, a: LinComb, b: LinComb) -> LinComb:
        return self.op(0, a, b)

    def mid(self, i: int, a: LinComb, b: LinComb) -> LinComb:
        if not 1 <= i <= self.m - 1:
            raise ValueError(f"middle operation index {i} out of range 1..{self.m - 1}")
        return self.op(i, a, b)

    def succ(self, a: LinComb, b: LinComb) -> LinComb:
        return self.op(self.m, a, b)


@dataclass
class AxiomReport:
    m: int
    max_size: int
    method: str
    relations: int = 0
    triples: int = 0
    sampled: int = 0
    checks: int = 0
    counterexample: dict | None = None
    seed: int | None = None

    @property
    def ok(self) -> bool:
        return self.counterexample is None

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "max_size": self.max_size,
            "method": self.method,
            "relations": self.relations,
            "triples": self.triples,
            "sampled": self.sampled,
            "seed": self.seed,
            "checks": self.checks,
            "pass": self.ok,
            "counterexample": self.counterexample,
        }


def skeleton(w: Word) -> Word:
    """The subsequence of ``w`` at its right-to-left minima."""
    return tuple(w[i - 1] for i in reversed(rtl_minima(w)))


def reduce_triple(u: Word, v: Word, w: Word) -> tuple[Word, Word, Word]:
    """Replace a relation triple by the letters its operations can see.

    The left operand contributes only its last letter; the other two only
    their right-to-left minima.  Every other letter lands freely in every
    term on both sides of a relation, so a relation holds on the full
    triple exactly when it holds on the reduced one.
    """
    return (1,), skeleton(v), skeleton(w)


def check_relation(alg: MFQSym, rel: Relation, u: Word, v: Word, w: Word) -> tuple[bool, LinComb, LinComb]:
    op = alg.op
    U, V, W = (LinComb.basis(x) for x in (u, v, w))
    lhs = evaluate_side(rel.lhs, op, U, V, W)
    rhs = evaluate_side(rel.rhs, op, U, V, W)
    return lhs == rhs, lhs, rhs


def _operands(m: int, max_size: int) -> list[Word]:
    out: list[Word] = []
    for n in range(1, max_size + 1):
        out.extend(mpermutations(m, n))
    return out


def verify_axioms(
    m: int,
    max_size: int,
    *,
    method: str = "reduced",
    samples: int = 0,
    sample_max_size: int | None = None,
    seed: int = 0,
    relations: list[Relation] | None = None,
) -> AxiomReport:
    """Check every m-dendriform relation on all triples of m-permutations.

    Operands range over sizes 1..max_size.  ``samples`` extra triples of
    sizes up to ``sample_max_size`` are drawn with ``random.Random(seed)``.
    ``method="direct"`` multiplies the operands as given; ``"reduced"``
    first applies :func:`reduce_triple` and deduplicates.
    """
    if method not in ("direct", "reduced"):
        raise ValueError(f"unknown method {method!r}")
    rels = dendriform_relations(m) if relations is None else relations
    report = AxiomReport(m, max_size, method, relations=len(rels), seed=seed if samples else None)
    words = _operands(m, max_size)
    triples: list[tuple[Word, Word, Word]] = list(cartesian(words, repeat=3))
    report.triples = len(triples)
    if samples:
        pool = _operands(m, sample_max_size or max_size)
        rng = random.Random(seed)
        triples += [tuple(rng.choice(pool) for _ in range(3)) for _ in range(samples)]
        report.sampled = samples
    alg = MFQSym(m, strict=(method == "direct"))
    done: set = set()
    for triple in triples:
        key = reduce_triple(*triple) if method == "reduced" else triple
        if key in done:
            continue
        done.add(key)
        for rel in rels:
            report.checks += 1
            ok, lhs, rhs = check_relation(alg, rel, *key)
            if not ok:
                report.counterexample = {
                    "relation": rel.name,
                    "lhs": " + ".join(monomial_str(x, m) for x in rel.lhs),
                    "rhs": " + ".join(monomial_str(x, m) for x in rel.rhs),
                    "u": format_word(triple[0]),
                    "v": format_word(triple[1]),
                    "w": format_word(triple[2]),
                    "evaluated_on": [format_word(x) for x in key],
                    "lhs_minus_rhs_terms": len(lhs - rhs),
                }
                return report
    return report


def check_partition(m: int, sigma: Word, tau: Word, reduced: bool = False) -> bool:
    """The m+1 operations on ``F_sigma, F_tau`` sum to their product, with no overlap.

    With ``reduced=True`` the check runs on ``(last letter of sigma, tau)``.
    Every term for the full pair is obtained from a term for the reduced
    pair by one linear map (interleave the rest of sigma before its last
    letter, relabel), the same map for all m+1 operations and the product,
    so the reduced identity implies the full one.
    """
    if reduced:
        sigma = (1,)
    alg = MFQSym(m, strict=not reduced)
    a, b = LinComb.basis(tuple(sigma)), LinComb.basis(tuple(tau))
    parts = [alg.op(x, a, b) for x in range(m + 1)]
    total = LinComb()
    for part in parts:
        if set(part.support()) & set(total.support()):
            return False
        total = total + part
    return total == alg.product(a, b)


@dataclass
class PartitionReport:
    m: int
    max_size: int
    method: str
    pairs: int = 0
    checks: int = 0
    counterexample: tuple | None = None

    @property
    def ok(self) -> bool:
        return self.counterexample is None

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "max_size": self.max_size,
            "method": self.method,
            "pairs": self.pairs,
            "checks": self.checks,
            "pass": self.ok,
            "counterexample": None if self.ok else [format_word(x) for x in self.counterexample],
        }


def verify_partition(m: int, max_size: int, method: str = "reduced") -> PartitionReport:
    """Run :func:`check_partition` on every pair of m-permutations of sizes 1..max_size."""
    if method not in ("direct", "reduced"):
        raise ValueError(f"unknown method {method!r}")
    words = _operands(m, max_size)
    report = PartitionReport(m, max_size, method, pairs=len(words) ** 2)
    if method == "reduced":
        # the left operand only matters through its last letter
        todo = [((1,), tau) for tau in words]
    else:
        todo = list(cartesian(words, repeat=2))
    for sigma, tau in todo:
        report.checks += 1
        if not check_partition(m, sigma, tau, reduced=(method == "reduced")):
            report.counterexample = (sigma, tau)
            break
    return report


def class_sum(members) -> LinComb:
    return LinComb(members)


def decompose_into_classes(lc: LinComb) -> list[frozenset] | None:
    """Split the support of ``lc`` into full sylvester classes.

    Returns None if some coefficient is not 1 or the support is not a union
    of whole classes.
    """
    if any(c != 1 for _, c in lc.items()):
        return None
    support = set(lc.support())
    out = []
    while support:
        w = min(support)
        cls = closure(w)
        if not cls <= support:
            return None
        support -= cls
        out.append(cls)
    return out


def class_product_closure(m: int, op: int | str, class_a, class_b) -> bool:
    """Whether ``op`` applied to two class sums is a sum of whole classes.

    ``op`` is an operation number ``0..m`` or ``"full"`` for the product.
    """
    alg = MFQSym(m)
    a = class_sum(class_a)
    b = class_sum(class_b)
    res = alg.product(a, b) if op == "full" else alg.op(op, a, b)
    return decompose_into_classes(res) is not None


def classes_up_to(m: int, max_size: int) -> list[frozenset]:
    """Member sets of all sylvester classes of m-permutations of sizes 1..max_size."""
    out = []
    for n in range(1, max_size + 1):
        out.extend(c.members for c in classes(m, n))
    return out
