"""Quadratic relations of m-dendriform and m-Dias algebras as data.

Operations are numbered ``0..m``: 0 is the left operation, ``i`` with
``1 <= i <= m-1`` the i-th middle one, ``m`` the right one.

A two-operation monomial in ``u, v, w`` is a triple ``(side, root, child)``:

* ``("L", r, c)`` is ``(u c v) r w``
* ``("R", r, c)`` is ``u r (v c w)``

The same triple doubles as a parent/child edge pattern of a binary tree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

Monomial = tuple[str, int, int]


def op_name(label: int, m: int, dias: bool = False) -> str:
    if not 0 <= label <= m:
        raise ValueError(f"operation {label} out of range for m={m}")
    if label == 0:
        return "-|" if dias else "<"
    if label == m:
        return "|-" if dias else ">"
    return f"m{label}" if dias else f"o{label}"


def op_from_name(name: str, m: int, dias: bool = False) -> int:
    left, right, mid = ("-|", "|-", "m") if dias else ("<", ">", "o")
    if name == left:
        return 0
    if name == right:
        return m
    if name.startswith(mid) and name[len(mid):].isdigit():
        i = int(name[len(mid):])
        if 1 <= i <= m - 1:
            return i
        raise ValueError(f"middle operation index {i} out of range 1..{m - 1}")
    raise ValueError(f"unknown operation {name!r}")


def monomial_str(mono: Monomial, m: int, dias: bool = False) -> str:
    side, r, c = mono
    rn, cn = op_name(r, m, dias), op_name(c, m, dias)
    if side == "L":
        return f"(u {cn} v) {rn} w"
    return f"u {rn} (v {cn} w)"


@dataclass(frozen=True)
class Relation:
    """``sum(lhs) == sum(rhs)`` with every monomial at coefficient 1."""

    name: str
    lhs: tuple[Monomial, ...]
    rhs: tuple[Monomial, ...]


def dendriform_relations(m: int) -> list[Relation]:
    """The binomial(m+2, 2) relations between the m+1 operations."""
    if m < 1:
        raise ValueError("m must be at least 1")
    ops = range(m + 1)
    mids = range(1, m)
    rels = [Relation("un", (("L", 0, 0),), tuple(("R", 0, x) for x in ops))]
    rels += [Relation(f"de{i}", (("L", 0, i),), (("R", i, 0),)) for i in mids]
    rels.append(Relation("tr", (("L", 0, m),), (("R", m, 0),)))
    rels += [
        Relation(f"qu{i}", (("L", i, 0),), (("R", i, m),) + tuple(("R", i, j) for j in range(i, m)))
        for i in mids
    ]
    rels.append(Relation("ci", tuple(("L", m, x) for x in ops), (("R", m, m),)))
    rels += [
        Relation(f"si{i}", (("L", i, m),) + tuple(("L", i, j) for j in range(m - i, m)), (("R", m, i),))
        for i in mids
    ]
    rels += [
        Relation(f"se{k},{i}", (("L", i, k),), (("R", k + i, i),))
        for k in mids
        for i in mids
        if k + i < m
    ]
    return rels


def dias_relation_groups(m: int) -> list[tuple[str, tuple[Monomial, ...]]]:
    """The m-Dias relations as groups of monomials that are all equal."""
    if m < 1:
        raise ValueError("m must be at least 1")
    ops = range(m + 1)
    mids = range(1, m)
    groups = [("un", (("L", 0, 0),) + tuple(("R", 0, x) for x in ops))]
    groups += [(f"de{i}", (("L", 0, i), ("R", i, 0))) for i in mids]
    groups.append(("tr", (("L", 0, m), ("R", m, 0))))
    groups += [
        (f"qu{i}", (("L", i, 0), ("R", i, m)) + tuple(("R", i, j) for j in range(i, m)))
        for i in mids
    ]
    groups.append(("ci", tuple(("L", m, x) for x in ops) + (("R", m, m),)))
    groups += [
        (f"si{i}", tuple(("L", i, j) for j in range(m - i, m)) + (("L", i, m), ("R", m, i)))
        for i in mids
    ]
    groups += [
        (f"se{k},{i}", (("L", i, k), ("R", k + i, i)))
        for k in mids
        for i in mids
        if k + i < m
    ]
    return groups


def special_patterns(m: int) -> frozenset[Monomial]:
    """Edge patterns forbidden in dendriform normal forms, valid in Dias ones.

    ``(<,L,<)``, ``(oi,R,<)``, ``(oi,L,<)``, ``(>,R,<)``, ``(>,R,>)``,
    ``(>,R,oi)`` for all i, and ``(oj,R,oi)`` for i < j.
    """
    pats = {("L", 0, 0), ("R", m, 0), ("R", m, m)}
    for i in range(1, m):
        pats |= {("R", i, 0), ("L", i, 0), ("R", m, i)}
        for j in range(i + 1, m):
            pats.add(("R", j, i))
    return frozenset(pats)


def evaluate_monomial(mono: Monomial, op: Callable, u, v, w):
    """Evaluate a monomial given a bilinear ``op(label, x, y)``."""
    side, r, c = mono
    if side == "L":
        return op(r, op(c, u, v), w)
    return op(r, u, op(c, v, w))


def evaluate_side(monos, op: Callable, u, v, w):
    total = None
    for mono in monos:
        val = evaluate_monomial(mono, op, u, v, w)
        total = val if total is None else total + val
    return total
