"""
Schubert symbols for Gr(k, n) and their order combinatorics.

A Schubert symbol is a strictly increasing k-tuple of integers in [1, n],
written here as a plain tuple.  Symbols are enumerated in lexicographic
order, which refines the componentwise partial order

    lam <= mu   iff   lam_i <= mu_i for every i.

Each symbol also has a 0/1 word of length n carrying ones exactly at the
symbol's entries; the word form is the canonical boundary datum for
puzzle enumeration.

For a symbol lam the module computes

- ``dim(lam)``: the cell dimension sum_i (lam_i - i),
- the reversal set R(lam): symbols obtained by replacing an entry by a
  smaller value not in lam (these sit strictly below lam),
- the inversion set I(lam): replacing an entry by a larger unused value,
- the adjacent set Ad(lam): symbols sharing exactly k-1 entries,
- covering arrows: mu is an arrow of lam when lam <= mu and
  dim(mu) = dim(lam) + 1.

``SymbolLattice`` precomputes all of this once per (k, n) and memoizes
saturated descending chains, which the structure-constant formulas
consume heavily.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from .errors import ParameterError

Symbol = tuple  # strictly increasing tuple of ints


def check_kn(k: int, n: int) -> None:
    if not (isinstance(k, int) and isinstance(n, int) and 1 <= k < n):
        raise ParameterError(f"need integers 1 <= k < n, got k={k!r}, n={n!r}")


def enumerate_symbols(k: int, n: int) -> list[Symbol]:
    """All Schubert symbols for (k, n) in lexicographic order."""
    check_kn(k, n)
    return [tuple(c) for c in combinations(range(1, n + 1), k)]


def dim(sym: Symbol) -> int:
    """Cell dimension sum_i (sym_i - i)."""
    return sum(e - i for i, e in enumerate(sym, start=1))


def word(sym: Symbol, n: int) -> str:
    """0/1 word of length n with ones at the symbol's entries."""
    chars = ["0"] * n
    for e in sym:
        chars[e - 1] = "1"
    return "".join(chars)


def symbol_of_word(w: str) -> Symbol:
    if set(w) - {"0", "1"}:
        raise ParameterError(f"not a 0/1 word: {w!r}")
    return tuple(i + 1 for i, ch in enumerate(w) if ch == "1")


def leq(a: Symbol, b: Symbol) -> bool:
    """Componentwise partial order a <= b."""
    return all(x <= y for x, y in zip(a, b))


def reversal_pairs(sym: Symbol) -> list[tuple[int, int]]:
    """Pairs (s, s') with s in sym, s' not in sym, s' < s."""
    inside = set(sym)
    return [(s, sp) for s in sym for sp in range(1, s) if sp not in inside]


def inversion_pairs(sym: Symbol, n: int) -> list[tuple[int, int]]:
    """Pairs (s, s') with s in sym, s' not in sym, s' > s."""
    inside = set(sym)
    return [(s, sp) for s in sym for sp in range(s + 1, n + 1) if sp not in inside]


def exchange(sym: Symbol, s: int, sp: int) -> Symbol:
    """Replace entry s by sp and re-sort."""
    return tuple(sorted(set(sym) - {s} | {sp}))


def reversal_set(sym: Symbol) -> set:
    return {exchange(sym, s, sp) for s, sp in reversal_pairs(sym)}


def inversion_set(sym: Symbol, n: int) -> set:
    return {exchange(sym, s, sp) for s, sp in inversion_pairs(sym, n)}


def adjacent_set(sym: Symbol, n: int) -> set:
    """Symbols sharing exactly k-1 entries with sym."""
    return reversal_set(sym) | inversion_set(sym, n)


def sigma_r(sym: Symbol, n: int) -> Symbol:
    """The involution sending entry i to n+1-i (sorted)."""
    return tuple(sorted(n + 1 - e for e in sym))


def sigma_r_word(w: str) -> str:
    """On words, the involution is string reversal."""
    return w[::-1]


def complement(sym: Symbol, n: int) -> Symbol:
    """The complementary (n-k)-symbol."""
    inside = set(sym)
    return tuple(i for i in range(1, n + 1) if i not in inside)


class SymbolLattice:
    """All Schubert symbols of one (k, n) with their order data.

    Symbols are referred to by their lexicographic index 0..m where
    m + 1 = C(n, k).  All attribute lists are indexed accordingly:

    - ``d[i]``, ``dprime[i]``: dimension and codimension of symbol i,
    - ``R[i]``, ``I[i]``, ``Ad[i]``: index lists (sorted),
    - ``arrows[i]``: up-covers (j with lam_i <= lam_j, d_j = d_i + 1),
    - ``down_covers[i]``: the opposite covers,
    - ``sigma_r_index[i]``: index of the sigma_r image of symbol i.

    Instances are immutable after construction and cached per (k, n).
    """

    def __init__(self, k: int, n: int):
        check_kn(k, n)
        self.k = k
        self.n = n
        self.symbols = enumerate_symbols(k, n)
        self.m = len(self.symbols) - 1
        self.index = {sym: i for i, sym in enumerate(self.symbols)}
        self.words = [word(sym, n) for sym in self.symbols]
        self.d = [dim(sym) for sym in self.symbols]
        self.dprime = [k * (n - k) - di for di in self.d]
        self.R = [
            sorted(self.index[t] for t in reversal_set(sym)) for sym in self.symbols
        ]
        self.I = [
            sorted(self.index[t] for t in inversion_set(sym, n))
            for sym in self.symbols
        ]
        self.Ad = [sorted(set(r) | set(i)) for r, i in zip(self.R, self.I)]
        self._leq = [
            [leq(a, b) for b in self.symbols] for a in self.symbols
        ]
        self.arrows = [
            sorted(
                j
                for j, dj in enumerate(self.d)
                if dj == self.d[i] + 1 and self._leq[i][j]
            )
            for i in range(self.m + 1)
        ]
        self.down_covers = [
            sorted(
                j
                for j, dj in enumerate(self.d)
                if dj == self.d[i] - 1 and self._leq[j][i]
            )
            for i in range(self.m + 1)
        ]
        self.sigma_r_index = [
            self.index[sigma_r(sym, n)] for sym in self.symbols
        ]
        self._chains: dict = {}

    def leq_idx(self, i: int, j: int) -> bool:
        return self._leq[i][j]

    def upper_set(self, *idxs: int) -> list[int]:
        """Indices q with lam_q >= lam_i for every given i, ascending."""
        return [
            q
            for q in range(self.m + 1)
            if all(self._leq[i][q] for i in idxs)
        ]

    def chains(self, start: int, end: int) -> tuple:
        """Saturated descending chains start -> ... -> end through covers.

        Each chain is a tuple of indices beginning with ``start`` and
        ending with ``end``; consecutive entries drop the dimension by
        exactly one.  Returns () when end is not below start.
        """
        key = (start, end)
        cached = self._chains.get(key)
        if cached is not None:
            return cached
        if start == end:
            result: tuple = ((start,),)
        elif not self._leq[end][start] or self.d[end] >= self.d[start]:
            result = ()
        else:
            acc = []
            for nxt in self.down_covers[start]:
                for tail in self.chains(nxt, end):
                    acc.append((start,) + tail)
            result = tuple(acc)
        self._chains[key] = result
        return result

    def __repr__(self):
        return f"SymbolLattice(k={self.k}, n={self.n}, size={self.m + 1})"


@lru_cache(maxsize=None)
def lattice(k: int, n: int) -> SymbolLattice:
    """Cached lattice for (k, n)."""
    return SymbolLattice(k, n)
