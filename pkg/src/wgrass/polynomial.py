"""
Exact sparse multivariate polynomials over arbitrary-precision rationals.

A polynomial in n variables is a map from exponent tuples (length n) to
nonzero ``Fraction`` coefficients.  All arithmetic is exact; floats are
rejected.  The canonical monomial order is graded lexicographic (higher
total degree first, ties broken by the exponent tuple with y1 heaviest),
which fixes the text rendering and the leading term used by division.

Variables are anonymous; rendering defaults to y1..yn but accepts any
name list, so the same class also serves rewritten bases such as
(g1, ..., g_{n-1}, Y0).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .errors import ParameterError

Q = Fraction


def _coerce(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise ParameterError(f"coefficients must be exact rationals, got {type(c)}")


def _grlex_key(expo: tuple) -> tuple:
    return (sum(expo), expo)


class Poly:
    """Immutable sparse polynomial; do not mutate ``terms`` after creation."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict | None = None):
        self.nvars = nvars
        clean = {}
        if terms:
            for expo, c in terms.items():
                c = _coerce(c)
                if c:
                    clean[tuple(expo)] = c
        self.terms = clean

    # -- constructors ------------------------------------------------

    @staticmethod
    def zero(nvars: int) -> "Poly":
        return Poly(nvars)

    @staticmethod
    def const(nvars: int, c) -> "Poly":
        return Poly(nvars, {(0,) * nvars: _coerce(c)})

    @staticmethod
    def one(nvars: int) -> "Poly":
        return Poly.const(nvars, 1)

    @staticmethod
    def variable(nvars: int, i: int) -> "Poly":
        """The variable y_i, 1-based."""
        if not 1 <= i <= nvars:
            raise ParameterError(f"variable index {i} out of range 1..{nvars}")
        expo = [0] * nvars
        expo[i - 1] = 1
        return Poly(nvars, {tuple(expo): Fraction(1)})

    # -- basic queries -----------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def constant_value(self) -> Fraction:
        """The value of a degree-<=0 polynomial."""
        if self.is_zero():
            return Fraction(0)
        if self.degree() > 0:
            raise ParameterError("not a constant polynomial")
        return next(iter(self.terms.values()))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    def leading(self) -> tuple:
        """(exponent, coefficient) of the graded-lex leading term."""
        expo = max(self.terms, key=_grlex_key)
        return expo, self.terms[expo]

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # -- ring operations ---------------------------------------------

    def _check_compatible(self, other: "Poly") -> None:
        if self.nvars != other.nvars:
            raise ParameterError(
                f"variable sets differ: {self.nvars} vs {other.nvars}"
            )

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.nvars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check_compatible(other)
        terms = dict(self.terms)
        for expo, c in other.terms.items():
            s = terms.get(expo, Fraction(0)) + c
            if s:
                terms[expo] = s
            else:
                terms.pop(expo, None)
        out = Poly.__new__(Poly)
        out.nvars = self.nvars
        out.terms = terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = Poly.__new__(Poly)
        out.nvars = self.nvars
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _coerce(other)
            if not c:
                return Poly.zero(self.nvars)
            out = Poly.__new__(Poly)
            out.nvars = self.nvars
            out.terms = {e: v * c for e, v in self.terms.items()}
            return out
        if not isinstance(other, Poly):
            return NotImplemented
        self._check_compatible(other)
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                expo = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(expo, Fraction(0)) + c1 * c2
                if s:
                    terms[expo] = s
                else:
                    terms.pop(expo, None)
        out = Poly.__new__(Poly)
        out.nvars = self.nvars
        out.terms = terms
        return out

    __rmul__ = __mul__

    def __pow__(self, exp: int):
        if not (isinstance(exp, int) and exp >= 0):
            raise ParameterError("exponent must be a nonnegative integer")
        result = Poly.one(self.nvars)
        base = self
        while exp:
            if exp & 1:
                result = result * base
            base = base * base if exp > 1 else base
            exp >>= 1
        return result

    # -- division, substitution, evaluation ---------------------------

    def divide_exact(self, divisor: "Poly"):
        """Return q with self == divisor * q, or None when not divisible."""
        if not isinstance(divisor, Poly):
            raise ParameterError("divisor must be a Poly")
        self._check_compatible(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return Poly.zero(self.nvars)
        dlead, dc = divisor.leading()
        rem = dict(self.terms)
        quot: dict = {}
        while rem:
            expo = max(rem, key=_grlex_key)
            diff = tuple(a - b for a, b in zip(expo, dlead))
            if any(x < 0 for x in diff):
                return None
            c = rem[expo] / dc
            quot[diff] = quot.get(diff, Fraction(0)) + c
            for de, dv in divisor.terms.items():
                tgt = tuple(a + b for a, b in zip(diff, de))
                s = rem.get(tgt, Fraction(0)) - c * dv
                if s:
                    rem[tgt] = s
                else:
                    rem.pop(tgt, None)
        return Poly(self.nvars, quot)

    def substitute(self, images: dict) -> "Poly":
        """Simultaneously replace variables by polynomials.

        ``images`` maps 1-based variable indices to Poly values over the
        *target* variable space; unmapped variables map to themselves
        (requires target nvars == source nvars for those).
        """
        if not images:
            return self
        target_n = next(iter(images.values())).nvars
        full = {}
        for i in range(1, self.nvars + 1):
            img = images.get(i)
            if img is None:
                img = Poly.variable(target_n, i)
            elif img.nvars != target_n:
                raise ParameterError("substitution images disagree on nvars")
            full[i] = img
        powers: dict = {i: [Poly.one(target_n), full[i]] for i in full}

        def power(i: int, e: int) -> Poly:
            lst = powers[i]
            while len(lst) <= e:
                lst.append(lst[-1] * lst[1])
            return lst[e]

        out = Poly.zero(target_n)
        for expo, c in self.terms.items():
            term = Poly.const(target_n, c)
            for i, e in enumerate(expo, start=1):
                if e:
                    term = term * power(i, e)
            out = out + term
        return out

    def permute_variables(self, images: dict) -> "Poly":
        """Relabel variables by the 1-based index map ``images``."""
        terms = {}
        for expo, c in self.terms.items():
            new = [0] * self.nvars
            for i, e in enumerate(expo, start=1):
                new[images.get(i, i) - 1] += e
            terms[tuple(new)] = terms.get(tuple(new), Fraction(0)) + c
        return Poly(self.nvars, terms)

    def evaluate(self, point) -> Fraction:
        vals = [_coerce(v) for v in point]
        if len(vals) != self.nvars:
            raise ParameterError("point has wrong length")
        total = Fraction(0)
        for expo, c in self.terms.items():
            v = c
            for x, e in zip(vals, expo):
                if e:
                    v *= x**e
            total += v
        return total

    # -- rendering -----------------------------------------------------

    def render(self, names=None) -> str:
        """Canonical text form, graded-lex descending monomials."""
        if not self.terms:
            return "0"
        if names is None:
            names = [f"y{i}" for i in range(1, self.nvars + 1)]
        pieces = []
        for expo in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[expo]
            factors = [
                names[i] if e == 1 else f"{names[i]}^{e}"
                for i, e in enumerate(expo)
                if e
            ]
            mono = "*".join(factors)
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    __str__ = render

    def __repr__(self):
        return f"Poly({self.nvars}, {self.render()})"

    @staticmethod
    def parse(text: str, nvars: int, names=None) -> "Poly":
        """Inverse of ``render`` on its own output."""
        if names is None:
            names = [f"y{i}" for i in range(1, nvars + 1)]
        position = {name: i for i, name in enumerate(names)}
        text = text.strip()
        if text == "0":
            return Poly.zero(nvars)
        normalized = text.replace(" - ", " + -")
        terms: dict = {}
        for chunk in normalized.split(" + "):
            chunk = chunk.strip()
            sign = 1
            if chunk.startswith("-"):
                sign = -1
                chunk = chunk[1:]
            coeff = Fraction(sign)
            expo = [0] * nvars
            for factor in chunk.split("*"):
                if factor[0].isdigit():
                    coeff *= Fraction(factor)
                    continue
                name, _, power = factor.partition("^")
                if name not in position:
                    raise ParameterError(f"unknown variable {name!r}")
                expo[position[name]] += int(power) if power else 1
            key = tuple(expo)
            terms[key] = terms.get(key, Fraction(0)) + coeff
        return Poly(nvars, terms)


def linear_form(nvars: int, support) -> Poly:
    """Sum of the variables y_s over s in ``support`` (1-based)."""
    terms = {}
    for s in support:
        expo = [0] * nvars
        expo[s - 1] = 1
        key = tuple(expo)
        terms[key] = terms.get(key, Fraction(0)) + 1
    return Poly(nvars, terms)


def expand_linear_product(nvars: int, factors) -> list:
    """Coefficients of prod_s (a_s + b_s*B) as polynomials in B.

    ``factors`` is a sequence of (a_s, b_s) with a_s a Poly and b_s a
    rational scalar.  Returns [alpha_0, ..., alpha_t]; the empty product
    gives [1].  alpha_s equals the sum over s-subsets S of
    prod_{i in S} b_i * prod_{i not in S} a_i.
    """
    coeffs = [Poly.one(nvars)]
    for a, b in factors:
        b = _coerce(b)
        nxt = [Poly.zero(nvars) for _ in range(len(coeffs) + 1)]
        for s, c in enumerate(coeffs):
            nxt[s] = nxt[s] + a * c
            nxt[s + 1] = nxt[s + 1] + c * b
        coeffs = nxt
    return coeffs


def expand_linear_product_subsets(nvars: int, factors) -> list:
    """Subset-sum form of ``expand_linear_product``; reference route."""
    t = len(factors)
    out = []
    for s in range(t + 1):
        total = Poly.zero(nvars)
        for chosen in combinations(range(t), s):
            chosen_set = set(chosen)
            term = Poly.one(nvars)
            for i, (a, b) in enumerate(factors):
                term = term * (_coerce(b) if i in chosen_set else a)
            total = total + term
        out.append(total)
    return out


def rewrite_in_linear_basis(p: Poly, forms: list) -> Poly:
    """Rewrite p in the coordinates given by n independent linear forms.

    The result is a polynomial in len(forms) fresh variables g_1..g_n
    with p == result(g_i -> forms[i]).  Raises when the forms are not a
    basis of the linear span of the original variables.
    """
    from .linalg import invert

    n = p.nvars
    if len(forms) != n:
        raise ParameterError("need exactly nvars linear forms")
    mat = []
    for f in forms:
        if f.nvars != n or (not f.is_zero() and f.degree() != 1):
            raise ParameterError("basis entries must be linear forms")
        row = [Fraction(0)] * n
        for expo, c in f.terms.items():
            row[expo.index(1)] = c
        mat.append(row)
    inv = invert(mat)
    if inv is None:
        raise ParameterError("forms are not linearly independent")
    # y_s = sum_t inv[s][t] * g_t
    images = {
        s + 1: Poly(n, {
            tuple(1 if u == t else 0 for u in range(n)): inv[s][t]
            for t in range(n)
            if inv[s][t]
        })
        for s in range(n)
    }
    return p.substitute(images)
