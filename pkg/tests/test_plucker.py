"""Plucker relations, weight vectors, permutations."""

import random
from fractions import Fraction

import pytest

from wgrass import linalg, plucker, symbols
from wgrass.errors import CapacityError, InvalidWeightVectorError, ParameterError


def test_relation_2_4_exact():
    rels = plucker.generate_relations(2, 4)
    assert len(rels) == 1
    assert rels[0].render() == "+z0*z5 -z1*z4 +z2*z3"


def test_relation_count_2_5():
    assert len(plucker.generate_relations(2, 5)) == 5


def test_relation_span_matches_quadric_kernel():
    # independent oracle: the span of the relations must equal the space of
    # quadratic forms vanishing on sampled points of Pl(k, n)
    for (k, n) in [(2, 4), (2, 5)]:
        syms = symbols.enumerate_symbols(k, n)
        m1 = len(syms)
        pairs = [(r, s) for r in range(m1) for s in range(r, m1)]
        pos = {p: t for t, p in enumerate(pairs)}
        rows = []
        for seed in range(len(pairs) + 5):
            z = plucker.sample_plucker_point(k, n, 1000 + seed)
            rows.append([z[r] * z[s] for r, s in pairs])
        kernel_dim = len(pairs) - linalg.rank(rows)
        rels = plucker.generate_relations(k, n)
        rel_rows = []
        for rel in rels:
            row = [Fraction(0)] * len(pairs)
            for pair, c in zip(rel.pairs, rel.coefs):
                row[pos[pair]] = Fraction(c)
            rel_rows.append(row)
        assert linalg.rank(rel_rows) == len(rels) == kernel_dim


def test_relations_projective_space_empty():
    assert plucker.generate_relations(1, 4) == ()
    assert plucker.generate_relations(3, 4) == ()


def test_complement_route_spans_direct_route():
    # for 2k > n the complement-generated set must span the same quadrics
    rels = plucker.generate_relations(3, 5)
    direct = plucker._direct_relations(3, 5)
    m1 = len(symbols.enumerate_symbols(3, 5))
    pairs = sorted({p for rel in set(rels) | direct for p in rel.pairs})
    pos = {p: t for t, p in enumerate(pairs)}

    def as_rows(relset):
        rows = []
        for rel in relset:
            row = [Fraction(0)] * len(pairs)
            for pair, c in zip(rel.pairs, rel.coefs):
                row[pos[pair]] = Fraction(c)
            rows.append(row)
        return rows

    rref_rows, pivots = linalg.rref(as_rows(rels))
    rref_rows = rref_rows[: len(pivots)]
    for row in as_rows(direct):
        assert linalg.in_row_span(row, rref_rows, pivots)
    assert linalg.rank(as_rows(rels)) == linalg.rank(as_rows(list(direct)))


def test_membership_examples():
    e0 = [1] + [0] * 5
    assert plucker.is_plucker_point(e0, 2, 4)
    assert not plucker.is_plucker_point([1] * 6, 2, 4)
    # with z1 = 0 the single relation evaluates to 1 - 0 + 1 = 2
    assert not plucker.is_plucker_point([1, 0, 1, 1, 1, 1], 2, 4)
    with pytest.raises(ParameterError):
        plucker.is_plucker_point([0] * 6, 2, 4)


def test_sampled_points_are_members():
    for (k, n) in [(2, 4), (2, 5), (3, 5)]:
        for seed in range(5):
            z = plucker.sample_plucker_point(k, n, seed)
            assert plucker.is_plucker_point(z, k, n)
            assert all(z)


def test_validate_weight_vector():
    assert plucker.validate_weight_vector([5, 1, 4, 3, 6, 2], 2, 4)
    assert plucker.validate_weight_vector([1] * 10, 2, 5)
    assert not plucker.validate_weight_vector([1, 1, 1, 1, 1, 2], 2, 4)
    with pytest.raises(ParameterError):
        plucker.validate_weight_vector([1, 2], 2, 4)
    with pytest.raises(ParameterError):
        plucker.validate_weight_vector([1, 1, 1, 1, 1, 0], 2, 4)


def test_symbolic_scaling_invariance():
    # for valid b, each relation evaluated on (t^{b_i} z_i) collects into a
    # single power of t, for every sampled point; an invalid vector fails
    def orbit_stays(b, k, n, seeds):
        rels = plucker.generate_relations(k, n)
        for seed in range(seeds):
            z = plucker.sample_plucker_point(k, n, 4000 + seed)
            for rel in rels:
                by_power = {}
                for (r, s), c in zip(rel.pairs, rel.coefs):
                    p = b[r] + b[s]
                    by_power[p] = by_power.get(p, Fraction(0)) + c * z[r] * z[s]
                if any(v for v in by_power.values()):
                    return False
        return True

    assert orbit_stays((5, 1, 4, 3, 6, 2), 2, 4, seeds=50)
    assert orbit_stays((2, 2, 2, 1, 1, 1), 2, 4, seeds=50)
    assert not orbit_stays((1, 1, 1, 1, 1, 2), 2, 4, seeds=3)


def test_solve_wa_worked_instance():
    sol = plucker.solve_wa([5, 1, 4, 3, 6, 2], 2, 4)
    assert sol.W == (1, 3, -1, 2) and sol.a == 1


def test_solve_wa_constant_vector():
    sol = plucker.solve_wa([1] * 6, 2, 4)
    assert sol.W == (0, 0, 0, 0) and sol.a == 1


def test_solve_wa_integer_despite_fractional_naive_route():
    # the a = 1 route would give half-integer W here; a = 2 is integral
    sol = plucker.solve_wa([5, 1, 4, 4, 7, 3], 2, 4)
    assert sol.a == 2 and sol.W == (0, 3, -1, 2)
    syms = symbols.enumerate_symbols(2, 4)
    assert [sol.weight_of(s) for s in syms] == [5, 1, 4, 4, 7, 3]


def test_solve_wa_rejects_invalid():
    with pytest.raises(InvalidWeightVectorError):
        plucker.solve_wa([1, 1, 1, 1, 1, 2], 2, 4)


def test_solve_wa_projective_space():
    # no relations for k = 1: every positive vector is valid
    b = (3, 2, 5)
    assert plucker.validate_weight_vector(b, 1, 3)
    sol = plucker.solve_wa(b, 1, 3)
    assert sol.a == 1 and sol.W == (2, 1, 4)
    assert plucker.weights_from_wa(sol.W, sol.a, 1, 3) == b


def test_wa_roundtrip_randomized():
    rng = random.Random(99)
    for _ in range(40):
        k, n = rng.choice([(2, 4), (2, 5), (3, 5)])
        W = tuple(rng.randint(0, 6) for _ in range(n))
        a = rng.randint(1, k)
        b = plucker.weights_from_wa(W, a, k, n)
        sol = plucker.solve_wa(b, k, n)
        assert plucker.weights_from_wa(sol.W, sol.a, k, n) == b


def test_permutation_counts_2_4():
    full = plucker.enumerate_plucker_permutations(2, 4, "full")
    sn = plucker.enumerate_plucker_permutations(2, 4, "sn")
    assert len(full) == 48
    assert len(sn) == 24
    perms_full = {w.perm for w in full}
    assert {w.perm for w in sn} <= perms_full
    assert tuple(range(6)) in perms_full


def test_witness_signs_act_on_samples():
    for w in plucker.enumerate_plucker_permutations(2, 4, "full"):
        for seed in range(3):
            z = plucker.sample_plucker_point(2, 4, 300 + seed)
            image = [w.signs[i] * z[w.perm[i]] for i in range(6)]
            assert plucker.is_plucker_point(image, 2, 4)


def test_group_closure_2_4():
    perms = {w.perm for w in plucker.enumerate_plucker_permutations(2, 4, "full")}
    rng = random.Random(17)
    pool = sorted(perms)
    for _ in range(100):
        a = rng.choice(pool)
        b = rng.choice(pool)
        composed = tuple(a[b[i]] for i in range(6))
        inverse = tuple(sorted(range(6), key=lambda i: a[i]))
        assert composed in perms
        assert inverse in perms


def test_full_scope_2_5_is_the_induced_group():
    # the relation pairing at (2, 5) is the disjointness (Kneser) graph on
    # 2-subsets of [5], whose automorphism group is exactly the column
    # group S_5; full scope therefore finds nothing beyond the induced set
    full = plucker.enumerate_plucker_permutations(2, 5, "full")
    sn = plucker.enumerate_plucker_permutations(2, 5, "sn")
    assert len(full) == len(sn) == 120
    assert {w.perm for w in full} == {w.perm for w in sn}


def test_non_plucker_permutation_rejected():
    # swapping a single pair 0 <-> 1 breaks the monomial pairing at (2, 4)
    sigma = (1, 0, 2, 3, 4, 5)
    assert plucker.is_plucker_permutation(sigma, 2, 4) is None


def test_full_scope_capacity():
    with pytest.raises(CapacityError):
        plucker.enumerate_plucker_permutations(2, 6, "full")


def test_apply_permutation_examples():
    ident = tuple(range(6))
    b = (5, 1, 4, 3, 6, 2)
    assert plucker.apply_permutation(ident, b, 2, 4) == b
    swap = (5, 1, 2, 3, 4, 0)
    got = plucker.apply_permutation(swap, (2, 6, 6, 2, 2, 6), 2, 4)
    assert got == (6, 6, 6, 2, 2, 2)
    with pytest.raises(ParameterError):
        plucker.apply_permutation((1, 0, 2, 3, 4, 5), b, 2, 4)


def test_is_divisive_examples():
    w = plucker.is_divisive((2, 6, 6, 2, 2, 6), 2, 4)
    assert w is not None
    image = plucker.apply_permutation(w, (2, 6, 6, 2, 2, 6), 2, 4)
    assert plucker.is_descending_divisible(image)
    assert plucker.is_divisive((1,) * 6, 2, 4).perm == tuple(range(6))
    assert plucker.is_divisive((5, 1, 4, 3, 6, 2), 2, 4) is None


def test_normalize():
    assert plucker.normalize((2, 2, 2, 2, 2, 2), 2, 4) == (1,) * 6
    assert plucker.normalize((5, 1, 4, 3, 6, 2), 2, 4) == (5, 1, 4, 3, 6, 2)
    # projective-space normalization divides the divisible entries
    assert plucker.normalize((1, 2), 1, 2) == (1, 1)
    assert plucker.normalize((1, 2, 4), 1, 3) == (1, 1, 2)
    assert plucker.normalize((4, 2, 2), 1, 3) == (2, 1, 1)


def test_equivalence():
    b = (2, 6, 6, 2, 2, 6)
    found = plucker.equivalence(b, tuple(3 * x for x in b), 2, 4)
    assert found is not None
    w, r = found
    assert r == 3 and w.perm == tuple(range(6))
    found = plucker.equivalence(b, (6, 6, 6, 2, 2, 2), 2, 4)
    assert found is not None
    w, r = found
    assert plucker.apply_permutation(w, b, 2, 4) == (6, 6, 6, 2, 2, 2)
    assert r == 1
    assert plucker.equivalence((1,) * 6, (5, 1, 4, 3, 6, 2), 2, 4) is None


def test_adjacent_vectors_of_primitive_vector_are_primitive():
    rng = random.Random(31)
    checked = 0
    while checked < 30:
        k, n = rng.choice([(2, 4), (2, 5)])
        W = tuple(rng.randint(0, 5) for _ in range(n))
        a = rng.randint(1, k)
        b = plucker.primitive_part(plucker.weights_from_wa(W, a, k, n))
        if not plucker.is_primitive(b):
            continue
        lat = symbols.lattice(k, n)
        for i in range(lat.m + 1):
            adjacent = [b[j] for j in lat.Ad[i]] + [b[i]]
            assert plucker.is_primitive(tuple(adjacent))
        checked += 1
