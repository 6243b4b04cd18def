"""Polynomials and ideals attached to the critical points of the likelihood
function on a Fermat hypersurface.

Coordinates of the ambient projective space are ``x0..xn``.  Partition ideals
live in a smaller ring ``z1..zs``, one variable per distinct coordinate value.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np

from .groebner import Ideal, saturate
from .partitions import Partition
from .polyring import DEFAULT_PRIME, Polynomial, Ring, polynomial_sum


def x_ring(n: int, p: int = DEFAULT_PRIME) -> Ring:
    return Ring(n + 1, p, names=tuple(f"x{i}" for i in range(n + 1)))


def z_ring(s: int, p: int = DEFAULT_PRIME) -> Ring:
    return Ring(s, p, names=tuple(f"z{i}" for i in range(1, s + 1)))


@dataclass(frozen=True)
class DataVector:
    """Nonzero data counts ``u`` over GF(p) with nonzero total."""

    u: tuple[int, ...]
    p: int = DEFAULT_PRIME

    def __post_init__(self):
        u = tuple(int(v) % self.p for v in self.u)
        if any(v == 0 for v in u):
            raise ValueError("data vector entries must be nonzero mod p")
        if sum(u) % self.p == 0:
            raise ValueError("data vector must have nonzero sum mod p")
        object.__setattr__(self, "u", u)

    @property
    def sum_u(self) -> int:
        return sum(self.u) % self.p

    def __len__(self):
        return len(self.u)

    def is_ones(self) -> bool:
        return all(v == 1 for v in self.u)

    @classmethod
    def ones(cls, n_plus_1: int, p: int = DEFAULT_PRIME) -> "DataVector":
        return cls((1,) * n_plus_1, p)

    @classmethod
    def random(cls, n_plus_1: int, p: int, rng: np.random.Generator) -> "DataVector":
        """Uniform entries in [1, p-1], redrawn until the sum is nonzero mod p."""
        while True:
            u = tuple(int(v) for v in rng.integers(1, p, size=n_plus_1))
            if sum(u) % p:
                return cls(u, p)


def fermat_polynomial(n: int, d: int, ring: Ring | None = None) -> Polynomial:
    if n < 1 or d < 2:
        raise ValueError(f"need n >= 1 and d >= 2, got n={n}, d={d}")
    ring = ring or x_ring(n)
    if ring.nvars != n + 1:
        raise ValueError("ring must have n+1 variables")
    terms = {}
    for i in range(n + 1):
        e = [0] * (n + 1)
        e[i] = d
        terms[tuple(e)] = 1
    return Polynomial(ring, terms)


def symmetric_sum(indices: Sequence[int], m: int, ring: Ring) -> Polynomial:
    """Complete homogeneous symmetric polynomial of degree ``m`` in ``indices``.

    ``indices`` are 0-based positions of ring variables.
    """
    indices = sorted(set(indices))
    if not indices:
        raise ValueError("empty index set")
    if m < 0:
        raise ValueError("negative degree")
    terms = {}
    for combo in _compositions(m, len(indices)):
        e = [0] * ring.nvars
        for idx, k in zip(indices, combo):
            e[idx] = k
        terms[tuple(e)] = 1
    return Polynomial(ring, terms)


def _compositions(m, r):
    if r == 1:
        yield (m,)
        return
    for first in range(m, -1, -1):
        for rest in _compositions(m - first, r - 1):
            yield (first,) + rest


def _vandermonde3(ring, i, j, k):
    x = ring.gens()
    return (x[i] - x[j]) * (x[j] - x[k]) * (x[k] - x[i])


def expanded_minor(u: Sequence[int], d: int, i: int, j: int, k: int, ring: Ring) -> Polynomial:
    """Minor of columns i<j<k of the matrix with rows u, x, x^d (three-term form)."""
    x = ring.gens()
    ui, uj, uk = u[i], u[j], u[k]
    return (
        ui * x[j] * x[k] * (x[k] ** (d - 1) - x[j] ** (d - 1))
        + uj * x[k] * x[i] * (x[i] ** (d - 1) - x[k] ** (d - 1))
        + uk * x[i] * x[j] * (x[j] ** (d - 1) - x[i] ** (d - 1))
    )


def _factored(ring, d, i, j, k):
    return _vandermonde3(ring, i, j, k) * symmetric_sum((i, j, k), d - 2, ring)


def minor(u: DataVector, d: int, i: int, j: int, k: int, ring: Ring | None = None) -> Polynomial:
    n_plus_1 = len(u)
    ring = ring or x_ring(n_plus_1 - 1, u.p)
    if not 0 <= i < j < k < n_plus_1:
        raise ValueError(f"need 0 <= i < j < k <= n, got {(i, j, k)}")
    if d < 2:
        raise ValueError("d must be at least 2")
    if u.is_ones():
        return _factored(ring, d, i, j, k)
    return expanded_minor(u.u, d, i, j, k, ring)


def factored_minor(s: int, d: int, i: int, j: int, k: int, ring: Ring | None = None) -> Polynomial:
    """(z_i - z_j)(z_j - z_k)(z_k - z_i) times the degree d-2 complete sum in z_i, z_j, z_k.

    Indices are 1-based, matching the variable names ``z1..zs``.
    """
    if not 1 <= i < j < k <= s:
        raise ValueError(f"need 1 <= i < j < k <= {s}, got {(i, j, k)}")
    if d < 2:
        raise ValueError("d must be at least 2")
    ring = ring or z_ring(s)
    return _factored(ring, d, i - 1, j - 1, k - 1)


def critical_ideal(n: int, d: int, u: DataVector) -> Ideal:
    """Fermat form plus every 3x3 minor of the (u; x; x^d) matrix."""
    if n < 2:
        raise ValueError("critical ideal needs n >= 2")
    if len(u) != n + 1:
        raise ValueError("data vector length must be n+1")
    ring = x_ring(n, u.p)
    gens = [fermat_polynomial(n, d, ring)]
    gens += [minor(u, d, i, j, k, ring) for i, j, k in combinations(range(n + 1), 3)]
    return Ideal(gens, ring)


def linear_sum(ring: Ring, weights: Sequence[int] | None = None) -> Polynomial:
    weights = weights or [1] * ring.nvars
    return polynomial_sum((w * x for w, x in zip(weights, ring.gens())), ring)


def remove_arrangement(I: Ideal) -> Ideal:
    """Saturate by x0 + ... + xn, which removes every point on the arrangement."""
    return saturate(I, linear_sum(I.ring))


def remove_arrangement_all_forms(I: Ideal) -> Ideal:
    """Saturate by each coordinate and by their sum, one form at a time."""
    J = I
    for x in I.ring.gens():
        J = saturate(J, x)
    return saturate(J, linear_sum(I.ring))


def arrangement_slice_ideal(n: int, d: int, p: int = DEFAULT_PRIME) -> Ideal:
    if n < 1:
        raise ValueError("need n >= 1")
    ring = x_ring(n, p)
    x = ring.gens()
    gens = [linear_sum(ring), fermat_polynomial(n, d, ring)]
    for k, h in combinations(range(n + 1), 2):
        gens.append(x[k] * x[h] * (x[h] ** (d - 1) - x[k] ** (d - 1)))
    return Ideal(gens, ring)


def _partition_generators(a: Partition, d: int, ring: Ring):
    s = len(a)
    z = ring.gens()
    gens = [polynomial_sum((ai * zi ** d for ai, zi in zip(a.parts, z)), ring)]
    for i, j, k in combinations(range(s), 3):
        gens.append(_factored(ring, d, i, j, k))
    return gens


def _difference_product(ring: Ring) -> Polynomial:
    z = ring.gens()
    out = ring.one()
    for i, j in combinations(range(ring.nvars), 2):
        out = out * (z[i] - z[j])
    return out


def partition_ideal_unweighted(a: Partition, d: int, p: int = DEFAULT_PRIME) -> Ideal:
    """Partition ideal saturated by the differences z_i - z_j only.

    Used by the by-difference strategy, which subtracts the points on the weighted
    hyperplane instead of saturating by it.
    """
    s = len(a)
    if s < 2:
        raise ValueError("partition ideal needs at least two parts")
    ring = z_ring(s, p)
    I = Ideal(_partition_generators(a, d, ring), ring)
    if s == 2:
        return I
    return saturate(I, _difference_product(ring))


def partition_ideal(a: Partition, d: int, p: int = DEFAULT_PRIME) -> Ideal:
    """Ideal of the a-critical points in the variables z1..zs.

    Saturates once by the product of the weighted sum a1*z1 + ... + as*zs and
    every difference z_i - z_j.  One auxiliary variable for the whole product is
    far cheaper than a chain of saturations by the single factors.  Two parts
    need no difference factor: z1 = z2 forces the origin.
    """
    s = len(a)
    if s < 2:
        raise ValueError("partition ideal needs at least two parts")
    ring = z_ring(s, p)
    I = Ideal(_partition_generators(a, d, ring), ring)
    f = linear_sum(ring, a.parts)
    if s > 2:
        f = f * _difference_product(ring)
    return saturate(I, f)
