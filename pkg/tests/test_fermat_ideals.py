from itertools import combinations
from math import comb

import numpy as np
import pytest
import sympy

from fermat_mld.fermat_ideals import (
    DataVector,
    arrangement_slice_ideal,
    critical_ideal,
    expanded_minor,
    factored_minor,
    fermat_polynomial,
    linear_sum,
    minor,
    partition_ideal,
    remove_arrangement,
    remove_arrangement_all_forms,
    symmetric_sum,
    x_ring,
    z_ring,
)
from fermat_mld.groebner import Ideal, degree_projective, ideal_equals, reduce
from fermat_mld.partitions import Partition, all_partitions

from conftest import from_sympy_poly

P = 32003


def determinant_minor(u, d, i, j, k, ring):
    """Oracle: expand the 3x3 determinant of rows (u, x, x^d) with sympy."""
    xs = sympy.symbols(ring.names)
    cols = (i, j, k)
    M = sympy.Matrix([[u[c] for c in cols], [xs[c] for c in cols], [xs[c] ** d for c in cols]])
    return from_sympy_poly(sympy.Poly(sympy.expand(M.det()), *xs), ring)


def rng_for(*key):
    return np.random.default_rng(list(key))


# --- constructors -----------------------------------------------------------


def test_fermat_polynomial_examples():
    R = x_ring(2)
    x0, x1, x2 = R.gens()
    assert fermat_polynomial(2, 2, R) == x0**2 + x1**2 + x2**2
    R1 = x_ring(1)
    a, b = R1.gens()
    assert fermat_polynomial(1, 3, R1) == a**3 + b**3
    for n in range(1, 6):
        f = fermat_polynomial(n, 4)
        assert f((1,) * (n + 1)) == (n + 1) % P
    with pytest.raises(ValueError):
        fermat_polynomial(0, 3)
    with pytest.raises(ValueError):
        fermat_polynomial(2, 1)


def test_data_vector_validation():
    with pytest.raises(ValueError):
        DataVector((1, 0, 2), P)
    with pytest.raises(ValueError):
        DataVector((1, P - 1), P)
    u = DataVector((3, 4, 5), P)
    assert u.sum_u == 12 and not u.is_ones()
    assert DataVector.ones(4, P).is_ones()
    rng = rng_for(7)
    for _ in range(50):
        v = DataVector.random(5, 101, rng)
        assert all(1 <= e < 101 for e in v.u) and v.sum_u != 0


def test_minor_examples():
    R = x_ring(2)
    x0, x1, x2 = R.gens()
    ones = DataVector.ones(3)
    assert minor(ones, 2, 0, 1, 2, R) == (x0 - x1) * (x1 - x2) * (x2 - x0)
    assert minor(ones, 3, 0, 1, 2, R)((1, 2, 3)) == 12
    u = DataVector((5, 7, 11))
    for d in range(2, 6):
        assert minor(u, d, 0, 1, 2, R)((4, 4, 4)) == 0
    with pytest.raises(ValueError):
        minor(ones, 3, 0, 2, 1, R)
    with pytest.raises(ValueError):
        minor(ones, 3, 0, 1, 3, R)


def test_minor_matches_determinant_ones():
    for n in range(2, 5):
        R = x_ring(n)
        ones = DataVector.ones(n + 1)
        for d in range(2, 6):
            for i, j, k in combinations(range(n + 1), 3):
                assert minor(ones, d, i, j, k, R) == determinant_minor(ones.u, d, i, j, k, R)


def test_minor_matches_determinant_random():
    rng = rng_for(11)
    for n in range(2, 5):
        R = x_ring(n)
        for d in range(2, 6):
            u = DataVector.random(n + 1, P, rng)
            for i, j, k in combinations(range(n + 1), 3):
                assert minor(u, d, i, j, k, R) == determinant_minor(u.u, d, i, j, k, R)


def test_factored_equals_expanded():
    for s in range(3, 6):
        R = z_ring(s)
        for d in range(2, 7):
            for i, j, k in combinations(range(1, s + 1), 3):
                f = factored_minor(s, d, i, j, k, R)
                g = expanded_minor((1,) * s, d, i - 1, j - 1, k - 1, R)
                assert f == g


def test_factored_minor_basics():
    R = z_ring(3)
    z1, z2, z3 = R.gens()
    assert factored_minor(3, 2, 1, 2, 3, R) == (z1 - z2) * (z2 - z3) * (z3 - z1)
    f = factored_minor(3, 4, 1, 2, 3, R)
    assert f.substitute([z2, z1, z3]) == -f
    with pytest.raises(ValueError):
        factored_minor(3, 3, 0, 1, 2, R)


def test_symmetric_sum_examples():
    R = z_ring(3)
    z1, z2, z3 = R.gens()
    assert symmetric_sum((0, 1, 2), 0, R) == R.one()
    assert symmetric_sum((0, 1), 2, R) == z1**2 + z1 * z2 + z2**2
    for r in range(1, 4):
        for m in range(0, 6):
            assert len(symmetric_sum(range(r), m, R).terms) == comb(m + r - 1, r - 1)
    with pytest.raises(ValueError):
        symmetric_sum((), 2, R)


def test_critical_ideal_generator_counts():
    rng = rng_for(1)
    I = critical_ideal(2, 2, DataVector.ones(3))
    assert len(I.generators) == 2
    I = critical_ideal(3, 2, DataVector.random(4, P, rng))
    assert len(I.generators) == 5
    with pytest.raises(ValueError):
        critical_ideal(1, 3, DataVector.ones(2))


def test_arrangement_slice_generator_count():
    for n in range(1, 5):
        assert len(arrangement_slice_ideal(n, 3).generators) == 2 + comb(n + 1, 2)


# --- degrees ----------------------------------------------------------------


def test_random_fiber_degrees():
    rng = rng_for(3)
    u = DataVector.random(3, P, rng)
    assert degree_projective(remove_arrangement(critical_ideal(2, 3, u))) == 9
    u = DataVector.random(4, P, rng)
    assert degree_projective(remove_arrangement(critical_ideal(3, 2, u))) == 14


def test_difference_degree_2_3():
    u = DataVector.random(3, P, rng_for(5))
    I = critical_ideal(2, 3, u)
    J = I + linear_sum(I.ring)
    assert degree_projective(I) - degree_projective(J) == 9


def test_remove_arrangement_without_arrangement_points():
    R = x_ring(2)
    x0, x1, x2 = R.gens()
    # two points [1:2:4] and [1:3:5], neither on x0+x1+x2 = 0
    I = Ideal([x1 - 2 * x0, x2 - 4 * x0], R)
    I2 = Ideal([x1 - 3 * x0, x2 - 5 * x0], R)
    J = Ideal([f * g for f in I.generators for g in I2.generators], R)
    assert degree_projective(J) == 2
    assert degree_projective(remove_arrangement(J)) == 2


@pytest.mark.parametrize("n,d", [(2, 3), (3, 2), (2, 4)])
def test_arrangement_removal_single_form_suffices(n, d):
    u = DataVector.random(n + 1, P, rng_for(n, d))
    I = critical_ideal(n, d, u)
    assert degree_projective(remove_arrangement(I)) == degree_projective(
        remove_arrangement_all_forms(I))


@pytest.mark.parametrize("n,d", [(n, d) for n in (2, 3, 4) for d in (2, 3, 4)])
def test_slice_ideal_independent_of_data(n, d):
    S = arrangement_slice_ideal(n, d)
    rng = rng_for(n, d, 99)
    for _ in range(3):
        u = DataVector.random(n + 1, P, rng)
        I = critical_ideal(n, d, u)
        assert ideal_equals(S, I + linear_sum(I.ring))


@pytest.mark.parametrize("n,d", [(n, d) for n in (2, 3, 4) for d in (2, 3, 4)])
def test_ones_fiber_matches_random_fiber(n, d):
    ones = degree_projective(remove_arrangement(critical_ideal(n, d, DataVector.ones(n + 1))))
    u = DataVector.random(n + 1, P, rng_for(n, d, 2))
    rand = degree_projective(remove_arrangement(critical_ideal(n, d, u)))
    assert ones == rand


def test_partition_ideal_degrees():
    assert degree_projective(partition_ideal(Partition((1, 1)), 3)) == 2
    assert degree_projective(partition_ideal(Partition((2, 1)), 3)) == 3
    assert degree_projective(partition_ideal(Partition((1, 1, 1)), 3)) == 0
    with pytest.raises(ValueError):
        partition_ideal(Partition((3,)), 3)


@pytest.mark.parametrize("d", range(3, 8))
def test_bezout_bound_three_parts(d):
    assert degree_projective(partition_ideal(Partition((1, 1, 1)), d)) <= d * (d - 2)


# --- structural identities ---------------------------------------------------


def test_symmetric_sum_recurrence():
    rng = rng_for(47)
    R = z_ring(6)
    z = R.gens()
    for _ in range(240):
        size = int(rng.integers(3, 7))
        I = sorted(int(v) for v in rng.choice(6, size=size, replace=False))
        h, k = (int(v) for v in rng.choice(I, size=2, replace=False))
        m = int(rng.integers(1, 6))
        lhs = (symmetric_sum([i for i in I if i != k], m, R)
               - symmetric_sum([i for i in I if i != h], m, R))
        rhs = (z[h] - z[k]) * symmetric_sum(I, m - 1, R)
        assert lhs == rhs


def _long_partitions(max_m):
    for m in range(3, max_m + 1):
        for a in all_partitions(m, min_len=3):
            yield a


@pytest.mark.parametrize("d", range(3, 6))
def test_complete_sums_lie_in_partition_ideal(d):
    for a in _long_partitions(6):
        s = len(a)
        I = partition_ideal(a, d)
        G = I.groebner_basis()
        for w in range(3, s + 1):
            if d - w + 1 < 0:
                continue
            for idx in combinations(range(s), w):
                f = symmetric_sum(idx, d - w + 1, I.ring)
                assert reduce(f, G).is_zero(), (a, d, idx)


def test_partition_ideal_symmetric_under_equal_parts():
    for parts, d in [((1, 1, 1), 4), ((2, 1, 1), 4), ((2, 2, 1), 3), ((1, 1, 1, 1), 4)]:
        a = Partition(parts)
        I = partition_ideal(a, d)
        z = I.ring.gens()
        for i, j in combinations(range(len(a)), 2):
            if a[i] != a[j]:
                continue
            images = list(z)
            images[i], images[j] = z[j], z[i]
            swapped = [g.substitute(images) for g in I.generators]
            assert ideal_equals(I, Ideal(swapped, I.ring))
