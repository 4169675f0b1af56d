"""Words over the positive integers: evaluation, shifting, shuffles.

A word is a plain ``tuple`` of positive ints; the empty tuple is the empty
word.  Sums of words are :class:`~fusscat.lincomb.LinComb` instances.
"""

from __future__ import annotations

from collections.abc import Iterable
from itertools import combinations
from typing import Iterator, Union

from fusscat.lincomb import LinComb

Word = tuple[int, ...]
WordLike = Union[str, Iterable[int]]


def parse_word(text: WordLike) -> Word:
    """Build a word from ``"2112"``, ``"9,9,7"`` or any iterable of ints.

    Whitespace inside the compact digit form is ignored, so the grouped
    spelling ``"9977 8 66433224"`` is accepted too.
    """
    if isinstance(text, str):
        s = text.strip()
        if "," in s:
            letters = tuple(int(tok) for tok in s.split(",") if tok.strip())
        else:
            digits = "".join(s.split())
            if not digits.isdigit() and digits:
                raise ValueError(f"not a word: {text!r}")
            letters = tuple(int(ch) for ch in digits)
    else:
        letters = tuple(int(x) for x in text)
    if any(a < 1 for a in letters):
        raise ValueError(f"letters must be positive integers: {text!r}")
    return letters


def format_word(w: Word) -> str:
    """Compact digits when every letter is at most 9, else comma-separated.

    A one-letter word above 9 gets a trailing comma (``"12,"``) so that it
    does not read back as two digits.
    """
    if all(a <= 9 for a in w):
        return "".join(map(str, w))
    if len(w) == 1:
        return f"{w[0]},"
    return ",".join(map(str, w))


def evaluation(w: Word) -> list[int]:
    counts = [0] * (max(w) if w else 0)
    for a in w:
        counts[a - 1] += 1
    return counts


def shift(w: Word, k: int) -> Word:
    if k < 0:
        raise ValueError("shift amount must be nonnegative")
    return tuple(a + k for a in w)


def interleavings(u: Word, v: Word) -> Iterator[Word]:
    """Every interleaving of ``u`` and ``v``, one per choice of positions for ``u``.

    Repeated words are yielded repeatedly, which gives the shuffle its
    multiplicities.
    """
    p, q = len(u), len(v)
    total = p + q
    for pos in combinations(range(total), p):
        out = [0] * total
        iu = iv = 0
        j = 0
        for i in range(total):
            if j < p and pos[j] == i:
                out[i] = u[iu]
                iu += 1
                j += 1
            else:
                out[i] = v[iv]
                iv += 1
        yield tuple(out)


def shuffle(u: Word, v: Word) -> LinComb:
    return LinComb(interleavings(u, v))


def shifted_shuffle(u: Word, v: Word, shift_amount: int) -> LinComb:
    """``u`` shuffled with ``v`` shifted by ``shift_amount``; needs ``shift_amount >= max(u)``."""
    if u and shift_amount < max(u):
        raise ValueError(
            f"shift {shift_amount} is below max letter {max(u)}; alphabets would overlap"
        )
    return shuffle(u, shift(v, shift_amount))


def lincomb_to_json(lc: LinComb) -> list[dict[str, str]]:
    return [{"word": format_word(w), "coeff": str(c)} for w, c in lc.items()]


def lincomb_from_json(data: list[dict[str, str]]) -> LinComb:
    acc: dict[Word, int] = {}
    for entry in data:
        w = parse_word(entry["word"])
        acc[w] = acc.get(w, 0) + int(entry["coeff"])
    return LinComb(acc)
