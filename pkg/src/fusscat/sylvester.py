"""Sylvester congruence on words and its classes of m-permutations.

Classes are computed by breadth-first closure under single adjacent
exchanges, never by binary-search-tree insertion, so that the other
modules can be checked against this one.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from math import factorial

from sympy.utilities.iterables import multiset_permutations

from fusscat.lincomb import LinComb
from fusscat.words import Word, format_word, interleavings

DEFAULT_ENUM_CAP = 200_000


def enumeration_cap() -> int:
    """Exhaustive-enumeration bound, overridable with ``FUSSCAT_ENUM_CAP``."""
    return int(os.environ.get("FUSSCAT_ENUM_CAP", DEFAULT_ENUM_CAP))


class EnumerationBoundError(ValueError):
    """An exhaustive enumeration would exceed the configured bound."""


def is_mpermutation(w: Word, m: int | None = None) -> bool:
    """True if every value 1..n occurs exactly ``m`` times (``m`` inferred if None)."""
    if not w:
        return True
    n = max(w)
    if m is None:
        m, r = divmod(len(w), n)
        if r:
            return False
    if len(w) != m * n:
        return False
    counts = [0] * n
    for a in w:
        counts[a - 1] += 1
    return all(c == m for c in counts)


def mpermutation_degree(w: Word) -> tuple[int, int]:
    """Return ``(m, n)`` for an m-permutation word, raising otherwise."""
    if not w:
        raise ValueError("the empty word has no degree")
    n = max(w)
    m = w.count(1)
    if not is_mpermutation(w, m):
        raise ValueError(f"{format_word(w)} is not an m-permutation")
    return m, n


def mpermutations(m: int, n: int) -> list[Word]:
    """All m-permutations of size n in lexicographic order."""
    count = factorial(m * n) // factorial(m) ** n
    if count > enumeration_cap():
        raise EnumerationBoundError(
            f"{count} {m}-permutations of size {n} exceed cap {enumeration_cap()}"
        )
    letters = [a for a in range(1, n + 1) for _ in range(m)]
    return [tuple(p) for p in multiset_permutations(letters)]


def adjacent(w: Word) -> set[Word]:
    """Words one exchange ``ac <-> ca`` away, with a later letter ``b``, ``a <= b < c``."""
    out = set()
    p = len(w)
    for i in range(p - 1):
        x, y = w[i], w[i + 1]
        if x == y:
            continue
        a, c = (x, y) if x < y else (y, x)
        if any(a <= b < c for b in w[i + 2:]):
            out.add(w[:i] + (y, x) + w[i + 2:])
    return out


def avoids_132(w: Word) -> bool:
    """No positions i < j < k with ``w[i] <= w[k] < w[j]``."""
    p = len(w)
    # for each k, is there i < j < k with w[i] <= w[k] < w[j]?
    # track, scanning j, the smallest earlier letter seen before j
    for k in range(2, p):
        target = w[k]
        low = w[0]
        for j in range(1, k):
            if low <= target < w[j]:
                return False
            low = min(low, w[j])
    return True


@dataclass(frozen=True)
class SylvesterClass:
    members: frozenset
    canonical: Word

    def sorted_members(self) -> list[Word]:
        return sorted(self.members)

    def class_sum(self) -> LinComb:
        return LinComb(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def to_json(self) -> dict:
        return {
            "members": [format_word(w) for w in self.sorted_members()],
            "canonical": format_word(self.canonical),
            "size": len(self.members),
        }


def closure(w: Word) -> frozenset:
    """The congruence class of ``w``, by breadth-first search."""
    seen = {w}
    queue = deque([w])
    while queue:
        x = queue.popleft()
        for y in adjacent(x):
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def _canonical_of(members: frozenset) -> Word:
    avoiders = [x for x in members if avoids_132(x)]
    if len(avoiders) != 1:
        raise AssertionError(
            f"class of {format_word(next(iter(members)))} has {len(avoiders)} "
            "132-avoiding members, expected exactly one"
        )
    return avoiders[0]


def sylvester_class(w: Word) -> SylvesterClass:
    members = closure(w)
    return SylvesterClass(members, _canonical_of(members))


def classes(m: int, n: int) -> list[SylvesterClass]:
    """Partition of all m-permutations of size n, ordered by canonical word."""
    seen: set[Word] = set()
    out = []
    for w in mpermutations(m, n):
        if w in seen:
            continue
        cls = sylvester_class(w)
        seen |= cls.members
        out.append(cls)
    out.sort(key=lambda c: c.canonical)
    return out


def class_count(m: int, n: int) -> int:
    return len(classes(m, n))


def lift_max(w: Word, k: int) -> list[Word]:
    """Insert k copies of a new largest letter M anywhere before the last letter of ``w``.

    When the last letter of ``w`` is also its largest, every other letter
    ``a`` satisfies ``a <= w[-1] < M``, so M commutes with all letters but
    the last, and M is never a witness ``b`` for another exchange.  Then
    this sends the class of ``w`` onto the class of ``M^k w``, each member
    to ``binomial(|w| - 1 + k, k)`` distinct words.  Without that condition
    the images can spill over several classes (``w = 21`` is an example).
    """
    if not w:
        raise ValueError("cannot lift the empty word")
    big = (max(w) + 1,) * k
    last = w[-1:]
    return [head + last for head in interleavings(w[:-1], big)]


def lifts_classes(w: Word) -> bool:
    """Whether :func:`lift_max` maps the class of ``w`` onto a class."""
    return bool(w) and w[-1] == max(w)
