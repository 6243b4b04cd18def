"""Sparse multivariate polynomials over a prime field.

A polynomial is an immutable, strictly descending tuple of ``(exponents, coeff)``
pairs.  Exponent vectors are plain tuples of ints; coefficients are ints in
``[0, p - 1]``.  Monomial orders are encoded as packed integer sort keys so that
comparing two monomials is a single integer comparison, which is what keeps the
Groebner kernel usable in pure Python.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass, field
from enum import IntEnum
from functools import reduce as _fold
from typing import Iterable, Mapping, Sequence

from sympy import isprime

Exponents = tuple

MIN_PRIME = 101
DEFAULT_PRIME = 32003
VERIFY_PRIME = 65537

# exponent field width inside a packed sort key
_BITS = 16
_CAP = (1 << _BITS) - 1


class RingMismatchError(ValueError):
    """Operands live in different rings (variable count, modulus or order)."""


class BadPrimeError(ValueError):
    """Modulus rejected by the prime screening rules."""


class Ordering(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


# ---------------------------------------------------------------------------
# prime field
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        check_prime(self.p)

    def __call__(self, value: int) -> int:
        return value % self.p

    def inv(self, value: int) -> int:
        value %= self.p
        if value == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.p})")
        return pow(value, -1, self.p)


def check_prime(p: int, forbidden_divisors: Iterable[int] = ()) -> int:
    """Validate a modulus; optionally reject primes dividing any given integer."""
    if not isinstance(p, int) or p < MIN_PRIME:
        raise BadPrimeError(f"modulus must be an integer >= {MIN_PRIME}, got {p!r}")
    if not isprime(p):
        raise BadPrimeError(f"{p} is not prime")
    for m in forbidden_divisors:
        if m % p == 0:
            raise BadPrimeError(f"prime {p} divides {m}")
    return p


# ---------------------------------------------------------------------------
# monomial orders
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MonomialOrder:
    """Block order: lex between consecutive variable blocks, grevlex inside each.

    ``blocks`` lists block sizes.  A single block is plain grevlex; ``(k, n - k)``
    is the elimination order for the first ``k`` variables.
    """

    blocks: tuple[int, ...]
    _keys: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    @classmethod
    def grevlex(cls, nvars: int) -> "MonomialOrder":
        return cls((nvars,))

    @classmethod
    def elimination(cls, k: int, nvars: int) -> "MonomialOrder":
        if not 0 < k < nvars:
            return cls.grevlex(nvars)
        return cls((k, nvars - k))

    @property
    def nvars(self) -> int:
        return sum(self.blocks)

    @property
    def kind(self) -> str:
        return "grevlex" if len(self.blocks) == 1 else f"elim({self.blocks[0]})"

    def key(self, exps: Exponents) -> int:
        """Packed integer with ``key(a) > key(b)`` iff ``a > b`` in this order."""
        k = self._keys.get(exps)
        if k is None:
            k = 0
            start = 0
            for size in self.blocks:
                block = exps[start:start + size]
                k = (k << _BITS) | sum(block)
                # last variable of the block is the most significant tie-breaker
                for e in reversed(block):
                    k = (k << _BITS) | (_CAP - e)
                start += size
            self._keys[exps] = k
        return k


def compare_monomials(a: Exponents, b: Exponents, order: MonomialOrder) -> Ordering:
    if len(a) != len(b) or len(a) != order.nvars:
        raise RingMismatchError("monomials with different variable counts")
    ka, kb = order.key(tuple(a)), order.key(tuple(b))
    return Ordering((ka > kb) - (ka < kb))


# ---------------------------------------------------------------------------
# ring and polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Ring:
    nvars: int
    p: int = DEFAULT_PRIME
    order: MonomialOrder = None
    names: tuple[str, ...] = None

    def __post_init__(self):
        if self.order is None:
            object.__setattr__(self, "order", MonomialOrder.grevlex(self.nvars))
        if self.order.nvars != self.nvars:
            raise RingMismatchError("order does not match the variable count")
        if self.names is None:
            object.__setattr__(self, "names", tuple(f"x{i}" for i in range(self.nvars)))

    @property
    def field(self) -> PrimeField:
        return PrimeField(self.p)

    def with_order(self, order: MonomialOrder) -> "Ring":
        return Ring(self.nvars, self.p, order, self.names)

    def gens(self) -> list["Polynomial"]:
        return [self.var(i) for i in range(self.nvars)]

    def var(self, i: int) -> "Polynomial":
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c: int) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: c})

    def monomial(self, exps: Sequence[int], coeff: int = 1) -> "Polynomial":
        return Polynomial(self, {tuple(exps): coeff})


class Polynomial:
    """Immutable sparse polynomial; ``terms`` is sorted strictly descending."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: Mapping[Exponents, int] | Iterable = ()):
        p = ring.p
        if not isinstance(terms, Mapping):
            merged: dict = {}
            for e, c in terms:
                merged[e] = merged.get(e, 0) + c
            terms = merged
        key = ring.order.key
        items = []
        for e, c in terms.items():
            if len(e) != ring.nvars:
                raise RingMismatchError(f"exponent vector {e} has wrong length")
            c %= p
            if c:
                items.append((tuple(e), c))
        items.sort(key=lambda t: key(t[0]), reverse=True)
        self.ring = ring
        self.terms = tuple(items)

    @classmethod
    def _raw(cls, ring: Ring, terms) -> "Polynomial":
        # trusted constructor: terms already reduced, nonzero and sorted
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = tuple(terms)
        return obj

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    @property
    def lm(self) -> Exponents:
        return self.terms[0][0]

    @property
    def lc(self) -> int:
        return self.terms[0][1]

    def total_degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e, _ in self.terms}) <= 1

    def monic(self) -> "Polynomial":
        if not self.terms or self.lc == 1:
            return self
        p = self.ring.p
        inv = pow(self.lc, -1, p)
        return Polynomial._raw(self.ring, [(e, c * inv % p) for e, c in self.terms])

    def as_dict(self) -> dict:
        return dict(self.terms)

    def in_ring(self, ring: Ring) -> "Polynomial":
        """Re-sort under another ring with the same variables and modulus."""
        if ring.nvars != self.ring.nvars or ring.p != self.ring.p:
            raise RingMismatchError("cannot move polynomial between these rings")
        if ring.order == self.ring.order:
            return Polynomial._raw(ring, self.terms)
        return Polynomial(ring, dict(self.terms))

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "Polynomial"):
        if self.ring.nvars != other.ring.nvars or self.ring.p != other.ring.p \
                or self.ring.order != other.ring.order:
            raise RingMismatchError("polynomials live in different rings")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, int):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return add(self, other)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Polynomial._raw(self.ring, [(e, p - c) for e, c in self.terms])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return add(self, -other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return add(other, -self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring.nvars == other.ring.nvars and self.ring.p == other.ring.p \
            and dict(self.terms) == dict(other.terms)

    def __hash__(self):
        return hash(frozenset(self.terms))

    def __call__(self, *point):
        if len(point) == 1 and isinstance(point[0], (list, tuple)):
            point = point[0]
        return evaluate(self, point)

    def mul_term(self, exps: Exponents, coeff: int) -> "Polynomial":
        """Multiply by ``coeff * x**exps`` (order-preserving, no re-sort)."""
        p = self.ring.p
        coeff %= p
        if not coeff:
            return self.ring.zero()
        return Polynomial._raw(
            self.ring,
            [(tuple(map(operator.add, e, exps)), c * coeff % p) for e, c in self.terms],
        )

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Replace variable ``i`` by ``images[i]``; result lives in the images' ring."""
        if len(images) != self.ring.nvars:
            raise RingMismatchError("need one image per variable")
        target = images[0].ring
        out = target.zero()
        for e, c in self.terms:
            term = target.constant(c)
            for img, k in zip(images, e):
                if k:
                    term = term * img ** k
            out = out + term
        return out

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.names
        parts = []
        for e, c in self.terms:
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k
            )
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)


def add(f: Polynomial, g: Polynomial) -> Polynomial:
    f._check(g)
    p = f.ring.p
    acc = dict(f.terms)
    for e, c in g.terms:
        v = (acc.get(e, 0) + c) % p
        if v:
            acc[e] = v
        else:
            acc.pop(e, None)
    return Polynomial(f.ring, acc)


def mul(f: Polynomial, g: Polynomial) -> Polynomial:
    f._check(g)
    if len(f.terms) < len(g.terms):
        f, g = g, f
    p = f.ring.p
    acc: dict = {}
    get = acc.get
    for eg, cg in g.terms:
        for ef, cf in f.terms:
            e = tuple(map(operator.add, ef, eg))
            acc[e] = (get(e, 0) + cf * cg) % p
    return Polynomial(f.ring, acc)


def evaluate(f: Polynomial, point: Sequence[int]) -> int:
    if len(point) != f.ring.nvars:
        raise RingMismatchError(
            f"point has {len(point)} coordinates, ring has {f.ring.nvars} variables"
        )
    p = f.ring.p
    point = [x % p for x in point]
    total = 0
    for e, c in f.terms:
        v = c
        for x, k in zip(point, e):
            if k:
                v = v * pow(x, k, p) % p
        total += v
    return total % p


def polynomial_sum(polys: Iterable[Polynomial], ring: Ring) -> Polynomial:
    return _fold(add, polys, ring.zero())
