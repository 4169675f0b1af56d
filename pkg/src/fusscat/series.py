"""Exact truncated power series and the generating-series checks.

All arithmetic is over ``Fraction`` and exact through the truncation order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from fusscat.ktrees import fuss_catalan


class TruncSeries:
    """A power series ``c_0 + c_1 x + ... + c_N x^N`` modulo ``x^(N+1)``."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Iterable, order: int):
        if order < 0:
            raise ValueError("order must be nonnegative")
        cs = [Fraction(c) for c in coeffs][: order + 1]
        cs += [Fraction(0)] * (order + 1 - len(cs))
        self.order = order
        self.coeffs = tuple(cs)

    @classmethod
    def constant(cls, c, order: int) -> "TruncSeries":
        return cls([c], order)

    @classmethod
    def x(cls, order: int) -> "TruncSeries":
        return cls([0, 1], order)

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k <= self.order else Fraction(0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        terms = [f"{c}*x^{k}" for k, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) or "0"

    def _lift(self, other) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            if other.order != self.order:
                raise ValueError(f"order mismatch: {self.order} vs {other.order}")
            return other
        return TruncSeries.constant(other, self.order)

    def __add__(self, other) -> "TruncSeries":
        o = self._lift(other)
        return TruncSeries([a + b for a, b in zip(self.coeffs, o.coeffs)], self.order)

    __radd__ = __add__

    def __neg__(self) -> "TruncSeries":
        return TruncSeries([-a for a in self.coeffs], self.order)

    def __sub__(self, other) -> "TruncSeries":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "TruncSeries":
        return self._lift(other) - self

    def __mul__(self, other) -> "TruncSeries":
        o = self._lift(other)
        n = self.order
        out = [Fraction(0)] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j in range(n + 1 - i):
                    out[i + j] += a * o.coeffs[j]
        return TruncSeries(out, n)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "TruncSeries":
        if e < 0:
            return self.reciprocal() ** (-e)
        result = TruncSeries.constant(1, self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def reciprocal(self) -> "TruncSeries":
        c0 = self.coeffs[0]
        if c0 == 0:
            raise ZeroDivisionError("series with zero constant term has no reciprocal")
        out = [1 / c0]
        for k in range(1, self.order + 1):
            s = sum(self.coeffs[j] * out[k - j] for j in range(1, k + 1))
            out.append(-s / c0)
        return TruncSeries(out, self.order)

    def __truediv__(self, other) -> "TruncSeries":
        return self * self._lift(other).reciprocal()

    def compose(self, inner: "TruncSeries") -> "TruncSeries":
        """``self(inner(x))``; ``inner`` must have zero constant term."""
        inner = self._lift(inner)
        if inner.coeffs[0] != 0:
            raise ValueError("inner series must have zero constant term")
        # Horner from the top coefficient down
        out = TruncSeries.constant(0, self.order)
        for c in reversed(self.coeffs):
            out = out * inner + c
        return out

    def negate_argument(self) -> "TruncSeries":
        """``self(-x)``."""
        return TruncSeries([c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs)], self.order)

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]


@dataclass
class SeriesCheck:
    name: str
    ok: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "pass": self.ok, "detail": self.detail}


def first_mismatch(a: Sequence, b: Sequence) -> int | None:
    for k, (x, y) in enumerate(zip(a, b)):
        if x != y:
            return k
    if len(a) != len(b):
        return min(len(a), len(b))
    return None


def _compare(name: str, got: Sequence, want: Sequence) -> SeriesCheck:
    k = first_mismatch(list(got), list(want))
    if k is None:
        return SeriesCheck(name, True)
    g = got[k] if k < len(got) else None
    w = want[k] if k < len(want) else None
    return SeriesCheck(name, False, f"coefficient {k}: got {g}, expected {w}")


def fixed_point_iterates(m: int, order: int, steps: int) -> list[TruncSeries]:
    """``U^0 = 1`` and ``U^(t+1) = (1 + x U^t)^(m+1)`` for t < steps."""
    x = TruncSeries.x(order)
    u = TruncSeries.constant(1, order)
    out = [u]
    for _ in range(steps):
        u = (1 + x * u) ** (m + 1)
        out.append(u)
    return out


def solve_dendriform_series(m: int, order: int) -> TruncSeries:
    """The power-series solution of ``U = (1 + xU)^(m+1)``.

    Iteration ``t`` fixes coefficient ``t - 1``, so ``order + 1`` steps suffice.
    """
    return fixed_point_iterates(m, order, order + 1)[-1]


def fuss_catalan_series(m: int, order: int) -> TruncSeries:
    return TruncSeries([fuss_catalan(m, k + 1) for k in range(order + 1)], order)


def dendriform_partials(m: int, order: int) -> dict[str, TruncSeries]:
    """Closed forms of the partial series by root operation.

    ``U_<  = U xU / (1 + xU)``, ``U_oi = U xU / (1 + xU)^(i+1)``, ``U_> = xU``.
    Keys are operation numbers as strings, plus ``"total"``.
    """
    u = solve_dendriform_series(m, order)
    x = TruncSeries.x(order)
    xu = x * u
    base = 1 + xu
    out = {"total": u}
    for i in range(m):
        out[str(i)] = u * xu / base ** (i + 1)
    out[str(m)] = xu
    return out


def _census_series(census: dict, key: str, order: int) -> TruncSeries:
    values = census[key]
    if len(values) < order + 1:
        raise ValueError(f"census for {key!r} has {len(values)} terms, need {order + 1}")
    return TruncSeries(values[: order + 1], order)


def check_partial_system(m: int, order: int, census_by_root: dict) -> list[SeriesCheck]:
    """Check the root-split system and the closed partial forms against a census.

    ``census_by_root`` maps ``"total"`` and ``"0"``..``str(m)`` to counts of
    normal trees with 0..order operators.
    """
    x = TruncSeries.x(order)
    U = _census_series(census_by_root, "total", order)
    parts = [_census_series(census_by_root, str(i), order) for i in range(m + 1)]
    checks = []
    total = 1 + sum(parts[1:], parts[0])
    checks.append(_compare("sum of partials", total.coeffs, U.coeffs))
    not_prec = U - parts[0]
    checks.append(_compare("root <", (x * not_prec * U).coeffs, parts[0].coeffs))
    right = not_prec
    for i in range(1, m):
        want = x * not_prec * right
        checks.append(_compare(f"root o{i}", want.coeffs, parts[i].coeffs))
        right = right - parts[i]
    checks.append(_compare("root >", (x * U).coeffs, parts[m].coeffs))
    closed = dendriform_partials(m, order)
    for key in ["total"] + [str(i) for i in range(m + 1)]:
        got = _census_series(census_by_root, key, order)
        checks.append(_compare(f"closed form {key}", got.coeffs, closed[key].coeffs))
    return checks


def dias_series(m: int, order: int) -> TruncSeries:
    """``1 / (1 - x)^(m+1)``, whose coefficients are ``binom(k+m, k)``."""
    x = TruncSeries.x(order)
    return (1 - x) ** (-(m + 1))


def dias_partials(m: int, order: int) -> dict[str, TruncSeries]:
    """``U_-| = x/(1-x)``, ``U_mi = x/(1-x)^(i+1)``, ``U_|- = xU``."""
    x = TruncSeries.x(order)
    u = dias_series(m, order)
    out = {"total": u}
    for i in range(m):
        out[str(i)] = x / (1 - x) ** (i + 1)
    out[str(m)] = x * u
    return out


def check_dias_system(m: int, order: int, census_by_root: dict) -> list[SeriesCheck]:
    closed = dias_partials(m, order)
    checks = []
    for key in ["total"] + [str(i) for i in range(m + 1)]:
        got = _census_series(census_by_root, key, order)
        checks.append(_compare(f"dias {key}", got.coeffs, closed[key].coeffs))
    checks.append(
        _compare("dias binomials", closed["total"].coeffs, [comb(k + m, k) for k in range(order + 1)])
    )
    return checks


def koszul_series(m: int, order: int) -> tuple[TruncSeries, TruncSeries]:
    """``f = sum C^(m)_n x^n`` and ``h = sum binom(n+m-1, n-1) x^n``, both from n = 1."""
    f = TruncSeries([0] + [fuss_catalan(m, n) for n in range(1, order + 1)], order)
    h = TruncSeries([0] + [comb(n + m - 1, n - 1) for n in range(1, order + 1)], order)
    return f, h


def koszul_inversion_check(m: int, order: int) -> list[SeriesCheck]:
    """``f(-h(-x)) = x`` and ``h(-f(-x)) = x`` through ``order``."""
    if order < 2:
        raise ValueError("order must be at least 2")
    f, h = koszul_series(m, order)
    x = TruncSeries.x(order)
    one = f.compose(-h.negate_argument())
    two = h.compose(-f.negate_argument())
    return [
        _compare("f(-h(-x)) = x", one.coeffs, x.coeffs),
        _compare("h(-f(-x)) = x", two.coeffs, x.coeffs),
    ]
