"""Free m-dendriform algebras, their m-Dias duals, and the combinatorics behind them.

Modules:

* :mod:`fusscat.words` -- words, shuffle and shifted shuffle
* :mod:`fusscat.sylvester` -- sylvester congruence and 132-avoiding representatives
* :mod:`fusscat.ktrees` -- (m+1)-ary trees and the reading bijection
* :mod:`fusscat.mfqsym` -- the algebra on m-permutations and its m+1 operations
* :mod:`fusscat.dendriform` -- operator trees, rewriting, census, realization
* :mod:`fusscat.dias` -- the dual m-Dias algebras
* :mod:`fusscat.series` -- exact truncated power series checks
* :mod:`fusscat.cli` -- the ``fusscat`` command
"""

from fusscat.lincomb import LinComb
from fusscat.words import Word, parse_word, format_word

SCHEMA = "fusscat/1"

__all__ = ["LinComb", "Word", "parse_word", "format_word", "SCHEMA"]
