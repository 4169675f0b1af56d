"""Finite integer linear combinations over a hashable basis."""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from fractions import Fraction
from typing import Callable, Hashable, TypeVar

K = TypeVar("K", bound=Hashable)


def _order_key(key):
    sort_key = getattr(key, "sort_key", None)
    return sort_key() if sort_key is not None else key


class LinComb(Mapping):
    """An immutable map ``basis element -> nonzero int``.

    Iteration follows the canonical order of the basis: tuples (words) sort
    lexicographically, tree objects sort by their ``sort_key()``.
    Missing keys read as coefficient 0 through :meth:`coeff`.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping | Iterable | None = None):
        acc: dict = {}
        if terms is None:
            pass
        elif isinstance(terms, Mapping):
            for key, c in terms.items():
                if c:
                    acc[key] = acc.get(key, 0) + c
        else:
            for key in terms:
                acc[key] = acc.get(key, 0) + 1
        self._terms = {k: c for k, c in acc.items() if c}

    @classmethod
    def _raw(cls, terms: dict) -> "LinComb":
        # caller guarantees no zero coefficients
        obj = cls.__new__(cls)
        obj._terms = terms
        return obj

    @classmethod
    def basis(cls, key) -> "LinComb":
        return cls._raw({key: 1})

    def __getitem__(self, key):
        return self._terms[key]

    def coeff(self, key) -> int:
        return self._terms.get(key, 0)

    def __iter__(self) -> Iterator:
        return iter(sorted(self._terms, key=_order_key))

    def __len__(self) -> int:
        return len(self._terms)

    def items(self):
        return [(k, self._terms[k]) for k in self]

    def support(self) -> frozenset:
        return frozenset(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, LinComb):
            return self._terms == other._terms
        if isinstance(other, Mapping):
            return self._terms == {k: c for k, c in other.items() if c}
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    def __add__(self, other: "LinComb") -> "LinComb":
        if not isinstance(other, LinComb):
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                del out[k]
        return LinComb._raw(out)

    def __neg__(self) -> "LinComb":
        return LinComb._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "LinComb") -> "LinComb":
        if not isinstance(other, LinComb):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar: int) -> "LinComb":
        if not isinstance(scalar, int):
            return NotImplemented
        if scalar == 0:
            return LinComb()
        return LinComb._raw({k: scalar * c for k, c in self._terms.items()})

    __rmul__ = __mul__

    def map_keys(self, f: Callable) -> "LinComb":
        acc: dict = {}
        for k, c in self._terms.items():
            nk = f(k)
            acc[nk] = acc.get(nk, 0) + c
        return LinComb(acc)

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for k, c in self.items():
            name = k if not isinstance(k, tuple) else "".join(map(str, k)) or "ε"
            parts.append(f"{name}" if c == 1 else f"{c}*{name}")
        return " + ".join(parts)


def accumulate(pairs: Iterable[tuple[object, int]]) -> LinComb:
    """Sum ``(key, coeff)`` pairs into a LinComb."""
    acc: dict = {}
    for k, c in pairs:
        acc[k] = acc.get(k, 0) + c
    return LinComb(acc)


def bilinear(f: Callable[[object, object], Iterable], a: LinComb, b: LinComb) -> LinComb:
    """Extend ``f(x, y)`` (an iterable of basis keys, or a LinComb) bilinearly."""
    acc: dict = {}
    for x, cx in a._terms.items():
        for y, cy in b._terms.items():
            c = cx * cy
            res = f(x, y)
            if isinstance(res, LinComb):
                for k, ck in res._terms.items():
                    acc[k] = acc.get(k, 0) + c * ck
            else:
                for k in res:
                    acc[k] = acc.get(k, 0) + c
    return LinComb(acc)


def rank(vectors: Iterable[LinComb]) -> int:
    """Rank over the rationals, by exact sparse Gaussian elimination."""
    pivots: dict = {}
    for vec in vectors:
        row = {k: Fraction(c) for k, c in vec._terms.items()}
        while row:
            lead = min(row, key=_order_key)
            pivot_row = pivots.get(lead)
            if pivot_row is None:
                c = row[lead]
                pivots[lead] = {k: x / c for k, x in row.items()}
                break
            c = row[lead]
            for k, x in pivot_row.items():
                y = row.get(k, 0) - c * x
                if y:
                    row[k] = y
                else:
                    row.pop(k, None)
    return len(pivots)
