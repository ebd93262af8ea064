"""
Plucker relations, weight vectors, and Plucker permutations.

The cone Pl(k, n) of decomposable k-vectors in C^(m+1), m+1 = C(n, k),
is cut out by the quadratic exchange relations

    sum_j (-1)^j z_{r_j} z_{s_j} = 0,

one for every head (i_1 < ... < i_{k-1}) and tail (l_0 < ... < l_k),
where symbol r_j sorts (i_1, ..., i_{k-1}, l_j) (with the sorting sign
folded into the coefficient) and s_j is the tail with l_j removed.
For 2k > n the same set is produced through the complement bijection
with Pl(n-k, n).

A weight vector b (positive integers, one per coordinate) is *valid*
when every relation has constant pair-sum b_{r_j} + b_{s_j}; exactly
then the scaling action t.z = (t^{b_i} z_i) preserves Pl(k, n).

A permutation sigma of the coordinates is a *Plucker permutation* when
signs t in {+1, -1}^(m+1) exist with t.sigma(z) in Pl(k, n) for every
Plucker point z.  Membership is decided in two stages: sampled points
pin down the only viable sign patterns, then an exact linear-algebra
check confirms that every pulled-back relation lies in the span of the
generating relations.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations, product
from math import gcd

from . import linalg, symbols
from .errors import (
    CapacityError,
    InternalInconsistencyError,
    InvalidWeightVectorError,
    ParameterError,
)

FULL_SCOPE_LIMIT = 10  # full permutation search allowed while m+1 <= 10


# ---------------------------------------------------------------------------
# Relations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PluckerRelation:
    """A quadratic relation sum_t coefs[t] * z_{pairs[t][0]} z_{pairs[t][1]}."""

    pairs: tuple
    coefs: tuple

    def evaluate(self, z):
        total = 0
        for (r, s), c in zip(self.pairs, self.coefs):
            total += c * z[r] * z[s]
        return total

    def render(self) -> str:
        pieces = []
        for (r, s), c in zip(self.pairs, self.coefs):
            sign = "+" if c > 0 else "-"
            pieces.append(f"{sign}z{r}*z{s}")
        return " ".join(pieces)


def _sort_sign(seq) -> tuple:
    """Sorted tuple and the sign of the sorting permutation (0 on repeats)."""
    items = list(seq)
    if len(set(items)) != len(items):
        return tuple(sorted(items)), 0
    inversions = sum(
        1
        for a in range(len(items))
        for b in range(a + 1, len(items))
        if items[a] > items[b]
    )
    return tuple(sorted(items)), (-1) ** inversions


def _canonical_relation(term_map: dict):
    """Normalize a pair->coefficient map into a PluckerRelation or None."""
    items = [(pair, c) for pair, c in sorted(term_map.items()) if c]
    if len(items) < 2:
        return None
    g = 0
    for _, c in items:
        g = gcd(g, abs(c))
    lead = items[0][1]
    flip = -1 if lead < 0 else 1
    pairs = tuple(pair for pair, _ in items)
    coefs = tuple(flip * c // g for _, c in items)
    return PluckerRelation(pairs, coefs)


def _direct_relations(k: int, n: int) -> set:
    syms = symbols.enumerate_symbols(k, n)
    index = {s: i for i, s in enumerate(syms)}
    rels = set()
    for head in combinations(range(1, n + 1), k - 1):
        head_set = set(head)
        for tail in combinations(range(1, n + 1), k + 1):
            term_map: dict = {}
            for j, l in enumerate(tail):
                if l in head_set:
                    continue
                sym_r, sign_r = _sort_sign(head + (l,))
                sym_s = tuple(x for x in tail if x != l)
                r, s = index[sym_r], index[sym_s]
                pair = (r, s) if r <= s else (s, r)
                term_map[pair] = term_map.get(pair, 0) + (-1) ** j * sign_r
            rel = _canonical_relation(term_map)
            if rel is not None:
                rels.add(rel)
    return rels


@lru_cache(maxsize=None)
def generate_relations(k: int, n: int) -> tuple:
    """Deduplicated, sign-normalized generating relations for Pl(k, n)."""
    symbols.check_kn(k, n)
    if 2 * k <= n:
        rels = _direct_relations(k, n)
    else:
        kp = n - k
        syms = symbols.enumerate_symbols(k, n)
        syms_p = symbols.enumerate_symbols(kp, n)
        index = {s: i for i, s in enumerate(syms)}
        comp_idx = [index[symbols.complement(s, n)] for s in syms_p]
        comp_sign = [
            _sort_sign(symbols.complement(s, n) + s)[1] for s in syms_p
        ]
        rels = set()
        for rel in _direct_relations(kp, n):
            term_map: dict = {}
            for (r, s), c in zip(rel.pairs, rel.coefs):
                cr, cs = comp_idx[r], comp_idx[s]
                pair = (cr, cs) if cr <= cs else (cs, cr)
                coef = c * comp_sign[r] * comp_sign[s]
                term_map[pair] = term_map.get(pair, 0) + coef
            mapped = _canonical_relation(term_map)
            if mapped is not None:
                rels.add(mapped)
    return tuple(sorted(rels, key=lambda rel: rel.pairs))


def is_plucker_point(z, k: int, n: int) -> bool:
    """Membership test: all relations vanish (z must be nonzero)."""
    vec = [Fraction(v) for v in z]
    m1 = len(symbols.enumerate_symbols(k, n))
    if len(vec) != m1:
        raise ParameterError(f"coordinate vector must have length {m1}")
    if not any(vec):
        raise ParameterError("the zero vector is excluded from Pl(k, n)")
    return all(rel.evaluate(vec) == 0 for rel in generate_relations(k, n))


def sample_plucker_point(k: int, n: int, seed: int) -> tuple:
    """Minor vector of a random rational k x n matrix, all minors nonzero."""
    symbols.check_kn(k, n)
    rng = random.Random(seed)
    syms = symbols.enumerate_symbols(k, n)
    while True:
        mat = [
            [Fraction(rng.randint(-9, 9)) for _ in range(n)] for _ in range(k)
        ]
        minors = []
        for sym in syms:
            sub = [[row[c - 1] for c in sym] for row in mat]
            minors.append(linalg.det(sub))
        if all(minors):
            return tuple(minors)


# ---------------------------------------------------------------------------
# Weight vectors and (W, a) solutions
# ---------------------------------------------------------------------------


def _check_weight_vector_shape(b, k: int, n: int) -> list:
    vec = list(b)
    m1 = len(symbols.enumerate_symbols(k, n))
    if len(vec) != m1:
        raise ParameterError(f"weight vector must have length {m1}")
    for x in vec:
        if not isinstance(x, int) or x < 1:
            raise ParameterError("weights must be integers >= 1")
    return vec


def validate_weight_vector(b, k: int, n: int) -> bool:
    """True iff every relation has constant pair-sum."""
    vec = _check_weight_vector_shape(b, k, n)
    for rel in generate_relations(k, n):
        sums = {vec[r] + vec[s] for r, s in rel.pairs}
        if len(sums) > 1:
            return False
    return True


@dataclass(frozen=True)
class WASolution:
    """Integer exponent data (W, a) reproducing b_i = a + sum_{u in lam_i} w_u."""

    W: tuple
    a: int

    def weight_of(self, sym) -> int:
        return self.a + sum(self.W[u - 1] for u in sym)


def solve_wa(b, k: int, n: int) -> WASolution:
    """Integer (W, a) with a in [1, k] reproducing the weight vector.

    Fixes w_1 via the reference symbol (2, ..., k+1): the congruence
    a = b_ref + sum_j (b_{r_j} - b_{s_j})  (mod k) picks a, then the
    pairwise differences w_1 - w_j follow from single-entry exchanges.
    """
    vec = _check_weight_vector_shape(b, k, n)
    if not validate_weight_vector(vec, k, n):
        raise InvalidWeightVectorError("not a valid weight vector")
    syms = symbols.enumerate_symbols(k, n)
    index = {s: i for i, s in enumerate(syms)}

    def difference(j: int) -> int:
        # w_1 - w_j via a symbol containing 1 but not j.
        others = [x for x in range(2, n + 1) if x != j]
        sym_r = tuple(sorted([1] + others[: k - 1]))
        sym_s = symbols.exchange(sym_r, 1, j)
        return vec[index[sym_r]] - vec[index[sym_s]]

    diffs = {j: difference(j) for j in range(2, n + 1)}
    ref = tuple(range(2, k + 2))
    val = vec[index[ref]] + sum(diffs[j] for j in range(2, k + 2))
    a = (val - 1) % k + 1
    w1 = (val - a) // k
    W = [w1] + [w1 - diffs[j] for j in range(2, n + 1)]
    sol = WASolution(tuple(W), a)
    for sym, bi in zip(syms, vec):
        if sol.weight_of(sym) != bi:
            raise InvalidWeightVectorError(
                "no integer (W, a) reproduces this weight vector"
            )
    return sol


def weights_from_wa(W, a: int, k: int, n: int) -> tuple:
    """The weight vector induced by exponent data (W, a)."""
    return tuple(a + sum(W[u - 1] for u in sym)
                 for sym in symbols.enumerate_symbols(k, n))


def is_primitive(b) -> bool:
    g = 0
    for x in b:
        g = gcd(g, x)
    return g == 1


def primitive_part(b) -> tuple:
    g = 0
    for x in b:
        g = gcd(g, x)
    return tuple(x // g for x in b)


def _prime_factors(x: int) -> set:
    out = set()
    d = 2
    while d * d <= x:
        while x % d == 0:
            out.add(d)
            x //= d
        d += 1
    if x > 1:
        out.add(x)
    return out


def normalize(b, k: int, n: int) -> tuple:
    """Primitive form, then divide out primes dividing all but one entry.

    The second step only triggers for k = 1 (projective space); a valid
    vector with relations can never have all but one entry divisible by
    a prime.
    """
    vec = list(primitive_part(b))
    changed = True
    while changed:
        changed = False
        primes = set()
        for x in vec:
            primes |= _prime_factors(x)
        for p in sorted(primes):
            divisible = [i for i, x in enumerate(vec) if x % p == 0]
            if len(divisible) == len(vec) - 1:
                for i in divisible:
                    vec[i] //= p
                changed = True
                break
    return tuple(vec)


# ---------------------------------------------------------------------------
# Plucker permutations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SignedPermutation:
    """A Plucker permutation with a sign witness: z -> (signs_i z_{perm(i)})."""

    perm: tuple
    signs: tuple


@lru_cache(maxsize=None)
def _permutation_context(k: int, n: int):
    """Shared exact data for the permutation predicate."""
    rels = generate_relations(k, n)
    m1 = len(symbols.enumerate_symbols(k, n))
    all_pairs = sorted({pair for rel in rels for pair in rel.pairs})
    pair_pos = {pair: t for t, pair in enumerate(all_pairs)}
    rows = []
    for rel in rels:
        row = [Fraction(0)] * len(all_pairs)
        for pair, c in zip(rel.pairs, rel.coefs):
            row[pair_pos[pair]] = Fraction(c)
        rows.append(row)
    span_rref, span_pivots = linalg.rref(rows)
    span_rref = span_rref[: len(span_pivots)]
    samples = [sample_plucker_point(k, n, seed) for seed in range(17, 17 + 50)]
    return rels, m1, set(all_pairs), pair_pos, span_rref, span_pivots, samples


def _sign_patterns(rel, sigma, samples) -> list:
    """Sign patterns eps with sum_t c_t eps_t z_{s(r_t)} z_{s(s_t)} = 0."""
    T = len(rel.pairs)
    admissible = []
    for eps in product((1, -1), repeat=T):
        ok = True
        for z in samples:
            total = Fraction(0)
            for t, ((r, s), c) in enumerate(zip(rel.pairs, rel.coefs)):
                total += c * eps[t] * z[sigma[r]] * z[sigma[s]]
            if total:
                ok = False
                break
        if ok:
            admissible.append(eps)
    return admissible


def _solve_signs(rels, pattern_choice, m1):
    """Global signs t with t_r t_s = eps for each constrained pair, or None."""
    constraint: dict = {}
    for rel, eps in zip(rels, pattern_choice):
        for (r, s), e in zip(rel.pairs, eps):
            if r == s:
                if e != 1:
                    return None
                continue
            if constraint.get((r, s), e) != e:
                return None
            constraint[(r, s)] = e
    adj: dict = {}
    for (r, s), e in constraint.items():
        adj.setdefault(r, []).append((s, e))
        adj.setdefault(s, []).append((r, e))
    signs = [0] * m1
    for root in range(m1):
        if signs[root]:
            continue
        signs[root] = 1
        stack = [root]
        while stack:
            u = stack.pop()
            for v, e in adj.get(u, ()):  # t_u * t_v = e
                want = e * signs[u]
                if signs[v] == 0:
                    signs[v] = want
                    stack.append(v)
                elif signs[v] != want:
                    return None
    return tuple(signs)


def _confirm_signs(sigma, signs, ctx) -> bool:
    """Exact check: every signed pulled-back relation lies in the span."""
    rels, _, _, pair_pos, span_rref, span_pivots, _ = ctx
    for rel in rels:
        vec = [Fraction(0)] * len(pair_pos)
        for (r, s), c in zip(rel.pairs, rel.coefs):
            ir, is_ = sigma[r], sigma[s]
            pair = (ir, is_) if ir <= is_ else (is_, ir)
            pos = pair_pos.get(pair)
            if pos is None:
                return False
            vec[pos] += c * signs[r] * signs[s]
        if not linalg.in_row_span(vec, span_rref, span_pivots):
            return False
    return True


def is_plucker_permutation(sigma, k: int, n: int):
    """Sign witness making sigma a Plucker permutation, or None.

    Stage one screens sign patterns per relation on sampled Plucker
    points and propagates them to a global sign vector; stage two
    confirms symbolically that each pulled-back relation stays in the
    rational span of the generating relations.
    """
    ctx = _permutation_context(k, n)
    rels, m1, pairs, _, _, _, samples = ctx
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(m1)):
        raise ParameterError(f"not a permutation of 0..{m1 - 1}")
    if not rels:
        return SignedPermutation(sigma, (1,) * m1)
    for r, s in pairs:
        ir, is_ = sigma[r], sigma[s]
        if ((ir, is_) if ir <= is_ else (is_, ir)) not in pairs:
            return None
    options = [_sign_patterns(rel, sigma, samples) for rel in rels]
    if any(not opts for opts in options):
        return None

    def search(idx: int, chosen: list):
        if idx == len(rels):
            signs = _solve_signs(rels, chosen, m1)
            if signs is not None and _confirm_signs(sigma, signs, ctx):
                return signs
            return None
        for eps in options[idx]:
            chosen.append(eps)
            if _solve_signs(rels[: idx + 1], chosen, m1) is not None:
                found = search(idx + 1, chosen)
                if found is not None:
                    return found
            chosen.pop()
        return None

    signs = search(0, [])
    if signs is None:
        return None
    return SignedPermutation(sigma, signs)


def _sn_induced_permutation(phi, k: int, n: int) -> tuple:
    """The coordinate permutation induced by phi in S_n (phi as 1-based map)."""
    syms = symbols.enumerate_symbols(k, n)
    index = {s: i for i, s in enumerate(syms)}
    sigma = [0] * len(syms)
    for i, sym in enumerate(syms):
        image = tuple(sorted(phi[u - 1] for u in sym))
        sigma[i] = index[image]
    return tuple(sigma)


def _full_scope_candidates(k: int, n: int):
    """Backtracking enumeration of pair-structure-preserving permutations."""
    rels = generate_relations(k, n)
    m1 = len(symbols.enumerate_symbols(k, n))
    pairs = {pair for rel in rels for pair in rel.pairs}
    partners = [set() for _ in range(m1)]
    for r, s in pairs:
        partners[r].add(s)
        partners[s].add(r)

    sigma = [-1] * m1
    used = [False] * m1

    def consistent(i: int) -> bool:
        for j in range(i):
            a, b = (j, i) if j <= i else (i, j)
            ia, ib = sigma[a], sigma[b]
            img = (ia, ib) if ia <= ib else (ib, ia)
            if ((a, b) in pairs) != (img in pairs):
                return False
        return True

    def rec(i: int):
        if i == m1:
            yield tuple(sigma)
            return
        for v in range(m1):
            if used[v]:
                continue
            sigma[i] = v
            used[v] = True
            if consistent(i):
                yield from rec(i + 1)
            used[v] = False
        sigma[i] = -1

    yield from rec(0)


@lru_cache(maxsize=None)
def _enumerate_cached(k: int, n: int, scope: str) -> tuple:
    m1 = len(symbols.enumerate_symbols(k, n))
    if scope == "identity":
        return (SignedPermutation(tuple(range(m1)), (1,) * m1),)
    if scope == "sn":
        found = {}
        for phi in permutations(range(1, n + 1)):
            sigma = _sn_induced_permutation(phi, k, n)
            if sigma in found:
                continue
            witness = is_plucker_permutation(sigma, k, n)
            if witness is None:
                raise InternalInconsistencyError(
                    "induced permutation failed the Plucker predicate"
                )
            found[sigma] = witness
        return tuple(found[s] for s in sorted(found))
    if scope == "full":
        if m1 > FULL_SCOPE_LIMIT:
            raise CapacityError(
                f"full scope needs m+1 <= {FULL_SCOPE_LIMIT}, got {m1}"
            )
        out = []
        for sigma in _full_scope_candidates(k, n):
            witness = is_plucker_permutation(sigma, k, n)
            if witness is not None:
                out.append(witness)
        return tuple(sorted(out, key=lambda w: w.perm))
    raise ParameterError(f"unknown scope {scope!r}")


def enumerate_plucker_permutations(k: int, n: int, scope: str = "full") -> list:
    """All Plucker permutations in the requested scope, with witnesses.

    scope "full" exhausts every coordinate permutation (capacity-capped),
    "sn" only those induced by column permutations in S_n, and
    "identity" the identity alone.
    """
    symbols.check_kn(k, n)
    return list(_enumerate_cached(k, n, scope))


def scope_ladder(k: int, n: int, scope: str = "auto"):
    """Yield permutations in the search order identity, sn, full."""
    if scope != "auto":
        yield from enumerate_plucker_permutations(k, n, scope)
        return
    m1 = len(symbols.enumerate_symbols(k, n))
    seen = set()
    ladder = ["identity", "sn"]
    if m1 <= FULL_SCOPE_LIMIT:
        ladder.append("full")
    for sc in ladder:
        for w in enumerate_plucker_permutations(k, n, sc):
            if w.perm not in seen:
                seen.add(w.perm)
                yield w


def apply_permutation(sigma, b, k: int, n: int) -> tuple:
    """(sigma b)_i = b_{sigma(i)}; sigma must be a Plucker permutation."""
    if isinstance(sigma, SignedPermutation):
        perm = sigma.perm
    else:
        witness = is_plucker_permutation(tuple(sigma), k, n)
        if witness is None:
            raise ParameterError("not a Plucker permutation")
        perm = witness.perm
    vec = _check_weight_vector_shape(b, k, n)
    return tuple(vec[perm[i]] for i in range(len(vec)))


def _divisibility_chain_possible(b) -> bool:
    vals = sorted(b, reverse=True)
    return all(vals[i + 1] and vals[i] % vals[i + 1] == 0
               for i in range(len(vals) - 1))


def is_descending_divisible(b) -> bool:
    return all(b[i - 1] % b[i] == 0 for i in range(1, len(b)))


def is_divisive(b, k: int, n: int, scope: str = "auto"):
    """A Plucker permutation sigma with b_{sigma(i)} | b_{sigma(i-1)}, or None."""
    vec = _check_weight_vector_shape(b, k, n)
    if not validate_weight_vector(vec, k, n):
        raise InvalidWeightVectorError("not a valid weight vector")
    if not _divisibility_chain_possible(vec):
        return None
    for witness in scope_ladder(k, n, scope):
        if is_descending_divisible(apply_permutation(witness, vec, k, n)):
            return witness
    return None


def divisive_presentation(b, k: int, n: int, scope: str = "auto"):
    """(sigma, sigma b) with sigma b divisibility-descending, or None."""
    witness = is_divisive(b, k, n, scope)
    if witness is None:
        return None
    return witness, apply_permutation(witness, b, k, n)


def equivalence(b, c, k: int, n: int, scope: str = "auto"):
    """(sigma, r) with c = r * sigma(b) over the enumerated scope, or None.

    A None answer at restricted scope means "not found in scope", not a
    disproof.
    """
    vb = _check_weight_vector_shape(b, k, n)
    vc = _check_weight_vector_shape(c, k, n)
    gb = 0
    gc = 0
    for x in vb:
        gb = gcd(gb, x)
    for x in vc:
        gc = gcd(gc, x)
    pb = [x // gb for x in vb]
    pc = [x // gc for x in vc]
    r = Fraction(gc, gb)
    for witness in scope_ladder(k, n, scope):
        if list(apply_permutation(witness, pb, k, n)) == pc:
            return witness, r
    return None
