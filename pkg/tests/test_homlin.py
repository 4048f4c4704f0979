import random

import pytest
from hypothesis import given, settings, strategies as st

from gfhkit.homlin import (
    Z, Z2, ChainComplex, ChainComplexError, GradedRanks, SparseMatrix, homology,
    rank_mod2, rank_nullity_audit, relative_homology, simplicial_chains,
    smith_normal_form,
)

RP2 = [[1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 6, 2],
       [2, 3, 5], [3, 4, 6], [4, 5, 2], [5, 6, 3], [6, 2, 4]]


def brute_factors(dense):
    """Invariant factors from determinantal divisors (independent oracle)."""
    from itertools import combinations
    from math import gcd
    import sympy
    m = sympy.Matrix(dense)
    divs = [1]
    for k in range(1, min(m.shape) + 1):
        g = 0
        for rows in combinations(range(m.rows), k):
            for cols in combinations(range(m.cols), k):
                g = gcd(g, int(m.extract(list(rows), list(cols)).det()))
        if g == 0:
            break
        divs.append(g)
    return [divs[i] // divs[i - 1] for i in range(1, len(divs))]


def torus_cw():
    # one vertex, edges a b, face with boundary a + b - a - b = 0
    return ChainComplex({0: 1, 1: 2, 2: 1}, {}, Z)


def disk_cw():
    # vertex v, loop e, face D with boundary e
    return ChainComplex({0: 1, 1: 1, 2: 1}, {2: SparseMatrix(1, 1, {(0, 0): 1})}, Z)


def test_snf_diagonal():
    assert smith_normal_form(SparseMatrix.from_dense([[2, 0], [0, 6]])) == ([2, 6], 2)


def test_snf_zero():
    assert smith_normal_form(SparseMatrix.zeros(3, 3)) == ([], 0)


def test_snf_rp2_boundary():
    c, _ = simplicial_chains(RP2)
    factors, rank = smith_normal_form(c.d(2))
    assert (c.dims[0], c.dims[1], c.dims[2]) == (6, 15, 10)
    assert rank == 10
    assert [d for d in factors if d != 1] == [2]


@pytest.mark.parametrize("dense", [
    [[4, 6], [6, 4]],
    [[2, 4, 4], [-6, 6, 12], [10, -4, -16]],
    [[0, 3, 0], [9, 0, 0]],
    [[12, 18], [30, 42], [8, 0]],
])
def test_snf_against_determinantal_divisors(dense):
    factors, rank = smith_normal_form(SparseMatrix.from_dense(dense))
    assert factors == brute_factors(dense)
    assert rank == len(factors)


def test_homology_sphere():
    c = ChainComplex({0: 1, 2: 1}, {}, Z)
    assert homology(c) == GradedRanks({0: (1, ()), 2: (1, ())})


def test_homology_torus():
    assert homology(torus_cw()) == GradedRanks({0: (1, ()), 1: (2, ()), 2: (1, ())})


def test_homology_rp2_both_rings():
    c, _ = simplicial_chains(RP2)
    assert homology(c, Z) == GradedRanks({0: (1, ()), 1: (0, (2,))})
    assert homology(c, Z2) == GradedRanks.from_ranks({0: 1, 1: 1, 2: 1})


def test_torsion_is_prime_power_multiset():
    c = ChainComplex({0: 1, 1: 1}, {1: SparseMatrix(1, 1, {(0, 0): 12})}, Z)
    assert homology(c).torsion(0) == (3, 4)


def test_rejects_nonzero_square():
    bad = ChainComplex({0: 1, 1: 1, 2: 1},
                       {1: SparseMatrix(1, 1, {(0, 0): 1}), 2: SparseMatrix(1, 1, {(0, 0): 1})})
    with pytest.raises(ChainComplexError):
        homology(bad)


def test_sparse_matrix_rejects_duplicates():
    with pytest.raises(ValueError):
        SparseMatrix.from_triples(2, 2, [(0, 0, 1), (0, 0, 2)])


def test_relative_disk_circle():
    assert relative_homology(disk_cw(), {0: [0], 1: [0]}) == GradedRanks({2: (1, ())})


def test_relative_self_is_zero():
    c, s = simplicial_chains(RP2)
    assert relative_homology(c, {k: range(n) for k, n in c.dims.items()}).is_zero()


def test_relative_torus_mod_skeleton():
    assert relative_homology(torus_cw(), {0: [0], 1: [0, 1]}) == GradedRanks({2: (1, ())})


def test_relative_rejects_open_subcomplex():
    with pytest.raises(ChainComplexError):
        relative_homology(disk_cw(), {2: [0]})


def test_relative_empty_equals_absolute():
    c, _ = simplicial_chains(RP2)
    assert relative_homology(c, {}) == homology(c)


def random_complex(seed, ring):
    rng = random.Random(seed)
    # random simplicial complex on 7 vertices: closure of a few random triangles and edges
    facets = [rng.sample(range(7), rng.choice([2, 3, 3, 4])) for _ in range(rng.randint(2, 9))]
    return simplicial_chains(facets, ring)[0]


def permute(c, seed):
    rng = random.Random(seed)
    perms = {}
    for k, n in c.dims.items():
        p = list(range(n))
        rng.shuffle(p)
        perms[k] = p
    bd = {k: m.permuted(perms[k - 1], perms[k]) for k, m in c.boundary.items()}
    return ChainComplex(c.dims, bd, c.ring)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 10**6), st.sampled_from([Z, Z2]))
def test_homology_basis_reorder_invariant(seed, pseed, ring):
    c = random_complex(seed, ring)
    assert homology(c) == homology(permute(c, pseed))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_square_zero_and_rank_nullity(seed):
    c = random_complex(seed, Z)
    assert c.square_defects() == []
    assert rank_nullity_audit(c)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_universal_coefficients(seed):
    c = random_complex(seed, Z)
    assert homology(c, Z).mod2_ranks() == homology(c, Z2).ranks()


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-9, 9), min_size=3, max_size=3), min_size=1, max_size=3))
def test_snf_matches_oracle_random(dense):
    factors, _ = smith_normal_form(SparseMatrix.from_dense(dense))
    assert factors == brute_factors(dense)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(0, 1), min_size=5, max_size=5), min_size=1, max_size=6))
def test_rank_mod2_matches_oracle(dense):
    import numpy as np
    m = np.array(dense, dtype=np.uint8) % 2
    rank, row = 0, 0
    for col in range(m.shape[1]):
        piv = next((r for r in range(row, m.shape[0]) if m[r, col]), None)
        if piv is None:
            continue
        m[[row, piv]] = m[[piv, row]]
        for r in range(m.shape[0]):
            if r != row and m[r, col]:
                m[r] ^= m[row]
        row += 1
        rank += 1
    assert rank_mod2(SparseMatrix.from_dense(dense)) == rank
