"""
Structure constants of divisive weighted Grassmann orbifolds.

Everything here runs relative to a weight vector in the divisibility-
descending presentation (b_i | b_{i-1}) with integer exponent data
(W, a), and expands products of the distinguished basis classes.

Equivariant route.  The product of basis classes i and j is assembled
from puzzle data: for every symbol q above both, each puzzle P with the
conjugated boundary (i, j; q) contributes its coefficient polynomials

    a_s(P),   s = 0..|P|,

read off from the factorization prod_s (bwt(p_s) + (b(p_s)/b_0) B) in a
formal variable B, where for an equivariant piece with reversed-
alphabet pair (u, v), u < v:

    b(p_s)   = w_u - w_v             (an integer),
    bwt(p_s) = y_u - y_v - (b(p_s)/b_0) Y_0.

The formal B stands for the degree-one basis class; its powers expand
through iterated Pieri steps into the chain sums

    c(q, s)[l] = sum over descending cover chains l -> ... -> q of
                 b_0^r / (b_{l_1} ... b_{l_r}) *
                 sum over compositions (j_0..j_r) of s - r of
                 prod_t (Y_0 - (b_0 / b_{l_t}) Y_{l_t})^{j_t},

zero when s < r = dim(l) - dim(q).  Contracting a_s(P) against c(q, s)
yields the equivariant table; it must agree with the localization
oracle entrywise.

Ordinary route.  In ordinary cohomology only dimension-matching triples
survive; the constant is the puzzle count plus correction terms

    D(i, j; l, q) = sum over chains l -> ... -> q of
                    (sum_P prod_s b(p_s)) / (b_{l_1} ... b_{l_d}),

summed over q strictly below l and above i, j.  Results are checked to
be nonnegative integers.

Positivity.  Equivariant constants rewritten in the forms

    g_q = y_q - y_{q+1} - ((w_q - w_{q+1}) / b_0) Y_0,  q = 1..n-1,

together with Y_0, must use only the g's, with nonnegative coefficients.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from . import gkm, plucker, puzzles, symbols
from .errors import InternalInconsistencyError, NotDivisiveError, ParameterError
from .polynomial import (
    Poly,
    expand_linear_product,
    linear_form,
    rewrite_in_linear_basis,
)


class WeightedContext:
    """Shared caches for one (b, k, n) in divisive presentation."""

    def __init__(self, b, k: int, n: int):
        vec = tuple(plucker._check_weight_vector_shape(b, k, n))
        if not plucker.validate_weight_vector(vec, k, n):
            raise ParameterError("not a valid weight vector")
        if not plucker.is_descending_divisible(vec):
            raise NotDivisiveError(
                "structure constants need the divisive presentation"
            )
        self.b = vec
        self.k = k
        self.n = n
        self.lattice = symbols.lattice(k, n)
        self.wa = plucker.solve_wa(vec, k, n)
        self._pieri: dict = {}
        self._line_powers: dict = {}
        self._piece_checked: set = set()

    # -- piece data ----------------------------------------------------

    def piece_value(self, u: int, v: int) -> int:
        """b(p) = w_u - w_v for a reversed-alphabet pair (u, v), u < v.

        Checked once per pair against a representative symbol pair
        (lam_e, lam_f) with Y_e - Y_f = y_u - y_v.
        """
        w = self.wa.W
        value = w[u - 1] - w[v - 1]
        if (u, v) not in self._piece_checked:
            lat = self.lattice
            f_sym = next(
                sym for sym in lat.symbols if v in sym and u not in sym
            )
            e_sym = symbols.exchange(f_sym, v, u)
            delta = self.b[lat.index[e_sym]] - self.b[lat.index[f_sym]]
            if delta != value:
                raise InternalInconsistencyError(
                    "piece value depends on the representative pair"
                )
            self._piece_checked.add((u, v))
        return value

    def piece_weight_data(self, puz) -> list:
        """(u, v, b(p), bwt(p)) per equivariant piece of the puzzle."""
        n = self.n
        y0 = linear_form(n, self.lattice.symbols[0])
        out = []
        for u, v in puz.conjugated_pairs():
            bp = self.piece_value(u, v)
            bwt = (
                Poly.variable(n, u)
                - Poly.variable(n, v)
                - Fraction(bp, self.b[0]) * y0
            )
            out.append((u, v, bp, bwt))
        return out

    def a_coefficients(self, puz) -> list:
        """Coefficients a_0..a_|P| of the piece-factor expansion."""
        factors = [
            (bwt, Fraction(bp, self.b[0]))
            for _, _, bp, bwt in self.piece_weight_data(puz)
        ]
        return expand_linear_product(self.n, factors)

    # -- Pieri powers ----------------------------------------------------

    def _line_power(self, l: int, exp: int) -> Poly:
        key = (l, exp)
        cached = self._line_powers.get(key)
        if cached is None:
            n = self.n
            base = linear_form(n, self.lattice.symbols[0]) - Fraction(
                self.b[0], self.b[l]
            ) * linear_form(n, self.lattice.symbols[l])
            cached = base**exp
            self._line_powers[key] = cached
        return cached

    def pieri_power(self, q: int, s: int) -> dict:
        """Map l -> coefficient of basis_l in (degree-one class)^s * basis_q."""
        if s < 0:
            raise ParameterError("power must be nonnegative")
        key = (q, s)
        cached = self._pieri.get(key)
        if cached is not None:
            return cached
        lat = self.lattice
        n = self.n
        out: dict = {}
        for l in range(lat.m + 1):
            if not lat.leq_idx(q, l):
                continue
            r = lat.d[l] - lat.d[q]
            if r > s:
                continue
            total = Poly.zero(n)
            for chain in lat.chains(l, q):
                denom = 1
                for t in chain[1:]:
                    denom *= self.b[t]
                scale = Fraction(self.b[0] ** r, denom)
                comp_sum = Poly.zero(n)
                for J in _compositions(s - r, r + 1):
                    term = Poly.one(n)
                    for t, jt in zip(chain, J):
                        if jt:
                            term = term * self._line_power(t, jt)
                    comp_sum = comp_sum + term
                total = total + scale * comp_sum
            if not total.is_zero():
                out[l] = total
        self._pieri[key] = out
        return out

    # -- tables -----------------------------------------------------------

    def equivariant_constants(self, i: int, j: int) -> dict:
        """Map l -> equivariant structure constant polynomial."""
        lat = self.lattice
        out: dict = {}
        for q in lat.upper_set(i, j):
            for puz in puzzles.puzzles_for(
                self.k, self.n, i, j, q, conjugated=True
            ):
                coeffs = self.a_coefficients(puz)
                for s, a_s in enumerate(coeffs):
                    if a_s.is_zero():
                        continue
                    for l, piece in self.pieri_power(q, s).items():
                        prev = out.get(l, Poly.zero(self.n))
                        out[l] = prev + a_s * piece
        return {l: p for l, p in sorted(out.items()) if not p.is_zero()}

    def equivariant_table(self) -> dict:
        m1 = self.lattice.m + 1
        table = {}
        for i in range(m1):
            for j in range(i, m1):
                cell = self.equivariant_constants(i, j)
                table[(i, j)] = cell
                if i != j:
                    table[(j, i)] = cell
        return table

    def classical_constant(self, i: int, j: int, l: int) -> int:
        """Unweighted dimension-matching constant: the puzzle count."""
        lat = self.lattice
        if lat.d[i] + lat.d[j] != lat.d[l]:
            raise ParameterError("classical constants need matching dimensions")
        return len(
            puzzles.puzzles_for(self.k, self.n, i, j, l, conjugated=True)
        )

    def ordinary_constants(self, i: int, j: int) -> dict:
        """Map l (dimension-matching only) -> integer structure constant."""
        lat = self.lattice
        target_d = lat.d[i] + lat.d[j]
        out = {}
        for l in lat.upper_set(i, j):
            if lat.d[l] != target_d:
                continue
            total = Fraction(self.classical_constant(i, j, l))
            for q in lat.upper_set(i, j):
                if q == l or not lat.leq_idx(q, l):
                    continue
                found = puzzles.puzzles_for(
                    self.k, self.n, i, j, q, conjugated=True
                )
                if not found:
                    continue
                numerator = 0
                for puz in found:
                    prod = 1
                    for u, v in puz.conjugated_pairs():
                        prod *= self.piece_value(u, v)
                    numerator += prod
                if numerator == 0:
                    continue
                for chain in lat.chains(l, q):
                    denom = 1
                    for t in chain[1:]:
                        denom *= self.b[t]
                    total += Fraction(numerator, denom)
            if total:
                if total.denominator != 1 or total < 0:
                    raise InternalInconsistencyError(
                        "ordinary constant must be a nonnegative integer"
                    )
                out[l] = int(total)
        return out

    def ordinary_table(self) -> dict:
        m1 = self.lattice.m + 1
        table = {}
        for i in range(m1):
            for j in range(i, m1):
                cell = self.ordinary_constants(i, j)
                table[(i, j)] = cell
                if i != j:
                    table[(j, i)] = cell
        return table

    # -- positivity -------------------------------------------------------

    def positivity_forms(self) -> list:
        """The rewrite basis (g_1, ..., g_{n-1}, Y_0)."""
        n = self.n
        y0 = linear_form(n, self.lattice.symbols[0])
        w = self.wa.W
        forms = []
        for q in range(1, n):
            forms.append(
                Poly.variable(n, q)
                - Poly.variable(n, q + 1)
                - Fraction(w[q - 1] - w[q], self.b[0]) * y0
            )
        forms.append(y0)
        return forms

    def change_basis_positivity(self, p: Poly) -> Poly:
        """p rewritten as a polynomial in (g_1..g_{n-1}, Y_0)."""
        return rewrite_in_linear_basis(p, self.positivity_forms())


def _compositions(total: int, parts: int):
    """All tuples of ``parts`` nonnegative integers summing to ``total``."""
    if parts == 1:
        yield (total,)
        return
    for cuts in combinations(range(total + parts - 1), parts - 1):
        out = []
        prev = -1
        for c in cuts:
            out.append(c - prev - 1)
            prev = c
        out.append(total + parts - 2 - prev)
        yield tuple(out)


@lru_cache(maxsize=None)
def context(b: tuple, k: int, n: int) -> WeightedContext:
    return WeightedContext(b, k, n)


def pieri_power_constants(b, k: int, n: int, q: int, s: int) -> dict:
    return context(tuple(b), k, n).pieri_power(q, s)


def weighted_equivariant_constants(b, k: int, n: int, i: int, j: int) -> dict:
    return context(tuple(b), k, n).equivariant_constants(i, j)


def ordinary_constants(b, k: int, n: int, i: int, j: int) -> dict:
    return context(tuple(b), k, n).ordinary_constants(i, j)


def change_basis_positivity(p: Poly, b, k: int, n: int) -> Poly:
    """Rewrite p in the positivity basis (g_1..g_{n-1}, Y_0) of b."""
    return context(tuple(b), k, n).change_basis_positivity(p)


def verify_integrality(table) -> tuple:
    """(ok, counterexample) over a table of polynomial or integer cells."""
    for key in sorted(table):
        cell = table[key]
        for l in sorted(cell):
            value = cell[l]
            if isinstance(value, int):
                continue
            if isinstance(value, Fraction):
                if value.denominator != 1:
                    return False, (key, l, str(value))
                continue
            if not value.is_integral():
                return False, (key, l, value.render())
    return True, None


def verify_positivity(table, b, k: int, n: int) -> tuple:
    """(ok, counterexample): rewritten cells must avoid Y_0 and stay >= 0."""
    ctx = context(tuple(b), k, n)
    for key in sorted(table):
        cell = table[key]
        for l in sorted(cell):
            value = cell[l]
            if isinstance(value, int):
                if value < 0:
                    return False, (key, l, str(value))
                continue
            rewritten = ctx.change_basis_positivity(value)
            for expo, coeff in rewritten.terms.items():
                if expo[n - 1] != 0:
                    return False, (key, l, "depends on Y_0")
                if coeff < 0:
                    return False, (key, l, f"negative coefficient {coeff}")
    return True, None


def localize_table(b, k: int, n: int) -> dict:
    """Oracle table over all (i, j); the comparison target for the pipeline."""
    m1 = symbols.lattice(k, n).m + 1
    table = {}
    for i in range(m1):
        for j in range(i, m1):
            cell = gkm.localize_product(b, k, n, i, j)
            table[(i, j)] = cell
            if i != j:
                table[(j, i)] = cell
    return table
