"""
Counting critical points by coordinate pattern
==============================================

A critical point of the likelihood function on the Fermat surface
x0^3 + x1^3 + x2^3 + x3^3 = 0 has coordinates that take a few distinct values.
Grouping the points by how the four coordinates collapse onto distinct values
turns one big system in four variables into several small ones.
"""

from fermat_mld import EngineConfig, enumerate_partitions, mldeg
from fermat_mld.fermat_ideals import partition_ideal
from fermat_mld.groebner import degree_projective
from fermat_mld.partitions import coefficient_c, symmetry_order_o

n, d = 3, 3

# The patterns are partitions of n+1 = 4 into at most d parts.  All-equal is
# left out since [1:1:1:1] is not on the surface.
parts = enumerate_partitions(n + 1, d)
print("patterns:", ", ".join(str(a) for a in parts))

# Each pattern gets a small ideal in one variable per distinct value.
total = 0
for a in parts:
    deg = degree_projective(partition_ideal(a, d))
    c, o = coefficient_c(a), symmetry_order_o(a)
    # c counts the ways to place the values on coordinates, o the relabelings
    # of equally sized blocks, which would otherwise be counted twice
    print(f"{str(a):>8}: c={c:<3d} o={o}  deg={deg}  contributes {c * deg // o}")
    total += c * deg // o
print("sum:", total)

# The engine does the same thing and confirms it over two primes.
result = mldeg(n, d, EngineConfig(), "partitioning")
print("engine:", result.value, "primes", result.primes)
