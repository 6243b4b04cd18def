"""Groebner bases over prime fields and the ideal operations built on them.

The kernel is a Buchberger loop with the Gebauer-Moeller pair update (product
and chain criteria) and sugar-degree pair selection.  For homogeneous input the
sugar of a pair is the degree of its lcm, so this is the normal strategy.

Projective degrees are read off the Hilbert series of the lead-term ideal.
"""

from __future__ import annotations

import contextlib
import contextvars
import operator
import time
from typing import Iterable, Sequence

from .polyring import MonomialOrder, Polynomial, Ring, RingMismatchError


class DimensionError(ValueError):
    """The projective scheme is not zero-dimensional."""


class ComputationTimeout(RuntimeError):
    pass


_deadline: contextvars.ContextVar = contextvars.ContextVar("deadline", default=None)


@contextlib.contextmanager
def time_limit(seconds: float | None):
    """Abort Groebner computations started inside the block after ``seconds``."""
    if seconds is None:
        yield
        return
    token = _deadline.set(time.monotonic() + seconds)
    try:
        yield
    finally:
        _deadline.reset(token)


def _check_deadline():
    deadline = _deadline.get()
    if deadline is not None and time.monotonic() > deadline:
        raise ComputationTimeout("groebner computation exceeded its time limit")


# ---------------------------------------------------------------------------
# term-list kernel; a "poly" here is a descending list of (exps, coeff)
# ---------------------------------------------------------------------------


def _divides(a, b) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple(map(max, a, b))


def _coprime(a, b) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


def _normal_form(terms, basis, key, p, full=True):
    """Reduce ``terms`` by monic ``basis`` (a list of term lists)."""
    import heapq

    if not terms or not basis:
        return list(terms)
    heads = [(g[0][0], g) for g in basis]
    acc = {}
    heap = []
    for e, c in terms:
        acc[e] = c
        heap.append((-key(e), e))
    heapq.heapify(heap)
    out = []
    push, pop = heapq.heappush, heapq.heappop
    add = operator.add
    while heap:
        _, e = pop(heap)
        c = acc.pop(e, 0)
        if not c:
            continue
        for lm, g in heads:
            if _divides(lm, e):
                q = tuple(map(operator.sub, e, lm))
                for ge, gc in g[1:]:
                    ne = tuple(map(add, ge, q))
                    old = acc.get(ne)
                    if old is None:
                        acc[ne] = (-c * gc) % p
                        push(heap, (-key(ne), ne))
                    else:
                        v = (old - c * gc) % p
                        if v:
                            acc[ne] = v
                        else:
                            acc[ne] = 0
                break
        else:
            out.append((e, c))
            if not full:
                rest = [(x, acc[x]) for x in acc if acc[x]]
                rest.sort(key=lambda t: key(t[0]), reverse=True)
                return out + rest
    return out


def _monic(terms, p):
    c = terms[0][1]
    if c == 1:
        return terms
    inv = pow(c, -1, p)
    return [(e, v * inv % p) for e, v in terms]


def _spoly(f, g, key, p):
    """S-polynomial of two monic term lists."""
    lf, lg = f[0][0], g[0][0]
    lcm = _lcm(lf, lg)
    qf = tuple(map(operator.sub, lcm, lf))
    qg = tuple(map(operator.sub, lcm, lg))
    acc = {}
    for e, c in f[1:]:
        acc[tuple(map(operator.add, e, qf))] = c
    for e, c in g[1:]:
        ne = tuple(map(operator.add, e, qg))
        v = (acc.get(ne, 0) - c) % p
        if v:
            acc[ne] = v
        else:
            acc.pop(ne, None)
    out = [(e, c) for e, c in acc.items() if c]
    out.sort(key=lambda t: key(t[0]), reverse=True)
    return out


def _buchberger(polys, key, p):
    """Reduced Groebner basis of a list of nonzero term lists."""
    G = []  # all basis elements (term lists)
    sugar = []
    active = []  # indices of elements whose lead term is not redundant
    pairs = []  # (sugar, lcm-key, i, j, lcm)

    def update(h_idx):
        nonlocal active, pairs
        lh = G[h_idx][0][0]
        cands = [(g, _lcm(G[g][0][0], lh), _coprime(G[g][0][0], lh)) for g in active]
        accepted = []
        while cands:
            g, lcm, cop = cands.pop(0)
            if cop or not (
                any(_divides(l2, lcm) for _, l2, _ in cands)
                or any(_divides(l2, lcm) for _, l2, _ in accepted)
            ):
                accepted.append((g, lcm, cop))
        survivors = []
        for pr in pairs:
            i, j, lcm = pr[2], pr[3], pr[4]
            if _divides(lh, lcm) and _lcm(G[i][0][0], lh) != lcm \
                    and _lcm(G[j][0][0], lh) != lcm:
                continue
            survivors.append(pr)
        dh = sum(lh)
        for g, lcm, cop in accepted:
            if cop:
                continue  # product criterion
            dl = sum(lcm)
            s = max(sugar[g] + dl - sum(G[g][0][0]), sugar[h_idx] + dl - dh)
            survivors.append((s, key(lcm), g, h_idx, lcm))
        pairs = survivors
        active = [g for g in active if not _divides(lh, G[g][0][0])]
        active.append(h_idx)

    def add_poly(terms, s):
        G.append(terms)
        sugar.append(s)
        update(len(G) - 1)

    # inter-reduce the input a little: process by increasing lead term
    polys = sorted((_monic(f, p) for f in polys if f), key=lambda f: key(f[0][0]))
    for f in polys:
        r = _normal_form(f, [G[i] for i in active], key, p)
        if r:
            if sum(r[0][0]) == 0:
                return [[(r[0][0], 1)]]
            add_poly(_monic(r, p), max(sum(e) for e, _ in f))

    while pairs:
        _check_deadline()
        best = min(range(len(pairs)), key=lambda i: (pairs[i][0], pairs[i][1]))
        s, _, i, j, _ = pairs.pop(best)
        h = _spoly(G[i], G[j], key, p)
        if not h:
            continue
        h = _normal_form(h, [G[a] for a in active], key, p)
        if not h:
            continue
        if sum(h[0][0]) == 0:
            return [[(h[0][0], 1)]]
        add_poly(_monic(h, p), s)

    return _interreduce([G[i] for i in active], key, p)


def _interreduce(polys, key, p):
    polys = sorted(polys, key=lambda f: key(f[0][0]))
    minimal = []
    for f in polys:
        if not any(_divides(g[0][0], f[0][0]) for g in minimal):
            minimal.append(f)
    reduced = []
    for idx, f in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        tail = _normal_form(f[1:], others, key, p)
        reduced.append([f[0]] + tail)
    reduced.sort(key=lambda f: key(f[0][0]), reverse=True)
    return reduced


# ---------------------------------------------------------------------------
# public polynomial-level operations
# ---------------------------------------------------------------------------


def _common_ring(polys: Sequence[Polynomial]) -> Ring:
    ring = polys[0].ring
    for f in polys[1:]:
        if f.ring.nvars != ring.nvars or f.ring.p != ring.p or f.ring.order != ring.order:
            raise RingMismatchError("generators live in different rings")
    return ring


def reduce(f: Polynomial, basis: Sequence[Polynomial]) -> Polynomial:
    """Normal form of ``f`` modulo ``basis`` (fully reduced remainder)."""
    basis = [g for g in basis if g]
    if basis:
        _common_ring([f, *basis])
    ring = f.ring
    monic = [list(g.monic().terms) for g in basis]
    return Polynomial._raw(ring, _normal_form(f.terms, monic, ring.order.key, ring.p))


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    if not f or not g:
        raise ValueError("S-polynomial of the zero polynomial")
    ring = _common_ring([f, g])
    terms = _spoly(list(f.monic().terms), list(g.monic().terms), ring.order.key, ring.p)
    return Polynomial._raw(ring, terms)


def buchberger(gens: Sequence[Polynomial], order: MonomialOrder | None = None) -> list[Polynomial]:
    """Reduced Groebner basis of ``gens`` under ``order`` (default: the ring's)."""
    gens = [g for g in gens if g]
    if not gens:
        return []
    ring = _common_ring(gens)
    if order is not None and order != ring.order:
        ring = ring.with_order(order)
        gens = [g.in_ring(ring) for g in gens]
    basis = _buchberger([list(g.terms) for g in gens], ring.order.key, ring.p)
    return [Polynomial._raw(ring, b) for b in basis]


def groebner(gens, order=None):
    return buchberger(gens, order)


# ---------------------------------------------------------------------------
# Hilbert series of monomial ideals
# ---------------------------------------------------------------------------


def _minimalize(monos):
    monos = sorted(set(monos), key=sum)
    out = []
    for m in monos:
        if not any(_divides(g, m) for g in out):
            out.append(m)
    return out


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] += y
    return out


def hilbert_numerator(monos: Iterable[tuple]) -> list[int]:
    """Numerator N(t) of the Hilbert series N(t)/(1-t)^n of K[x]/(monos).

    Coefficient list, lowest degree first.  Uses the pivot recursion
    N(M) = N(M + (x^e)) + t^e * N(M : x^e).
    """
    monos = _minimalize(monos)
    return _hilbert(monos)


def _hilbert(monos):
    if not monos:
        return [1]
    if any(sum(m) == 0 for m in monos):
        return [0]
    # base case: pairwise coprime generators factor the quotient
    support = [0] * len(monos[0])
    coprime = True
    for m in monos:
        for i, e in enumerate(m):
            if e:
                if support[i]:
                    coprime = False
                support[i] += 1
    if coprime:
        out = [1]
        for m in monos:
            d = sum(m)
            factor = [1] + [0] * (d - 1) + [-1]
            out = _poly_mul(out, factor)
        return out
    # pivot on the most shared variable; exponents from mixed generators keep the
    # pivot outside the ideal
    var = max(range(len(support)), key=lambda i: support[i])
    exps = sorted(m[var] for m in monos if m[var] and m[var] != sum(m))
    e = exps[len(exps) // 2]
    pivot = tuple(e if i == var else 0 for i in range(len(support)))
    with_pivot = _minimalize(monos + [pivot])
    colon = _minimalize(
        tuple(max(x - y, 0) for x, y in zip(m, pivot)) for m in monos
    )
    left = _hilbert(with_pivot)
    right = [0] * e + _hilbert(colon)
    return _poly_add(left, right)


def _divide_one_minus_t(coeffs):
    """Return (quotient, remainder) of coeffs / (1 - t)."""
    # q_k = sum_{i<=k} c_i ; remainder is N(1) = sum c_i
    q = []
    run = 0
    for c in coeffs[:-1]:
        run += c
        q.append(run)
    return q, run + coeffs[-1]


def hilbert_polynomial_data(monos, nvars):
    """(affine dimension of K[x]/M, leading Hilbert coefficient numerator Q(1))."""
    num = hilbert_numerator(monos)
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    if num == [0]:
        return -1, 0
    k = 0
    while True:
        if len(num) == 1:
            break
        q, r = _divide_one_minus_t(num)
        if r != 0:
            break
        num = q
        k += 1
    return nvars - k, sum(num)


# ---------------------------------------------------------------------------
# ideals
# ---------------------------------------------------------------------------


class Ideal:
    """Generators plus a write-once cache of reduced Groebner bases per order."""

    def __init__(self, generators: Iterable[Polynomial], ring: Ring | None = None):
        gens = [g for g in generators]
        if ring is None:
            if not gens:
                raise ValueError("empty ideal needs an explicit ring")
            ring = gens[0].ring
        for g in gens:
            if g.ring.nvars != ring.nvars or g.ring.p != ring.p:
                raise RingMismatchError("generator outside the ideal's ring")
        self.ring = ring
        self.generators = tuple(g.in_ring(ring) for g in gens if g)
        self._bases: dict = {}

    def groebner_basis(self, order: MonomialOrder | None = None) -> list[Polynomial]:
        order = order or self.ring.order
        basis = self._bases.get(order)
        if basis is None:
            ring = self.ring.with_order(order)
            basis = buchberger([g.in_ring(ring) for g in self.generators]) if self.generators else []
            self._bases.setdefault(order, basis)
            basis = self._bases[order]
        return basis

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.generators)

    def is_unit(self) -> bool:
        gb = self.groebner_basis()
        return len(gb) == 1 and sum(gb[0].lm) == 0

    def contains(self, f: Polynomial) -> bool:
        return reduce(f.in_ring(self.ring), self.groebner_basis()).is_zero()

    def __contains__(self, f):
        return self.contains(f)

    def __add__(self, other):
        if isinstance(other, Polynomial):
            other = [other]
        if isinstance(other, Ideal):
            other = other.generators
        return Ideal(list(self.generators) + list(other), self.ring)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return ideal_equals(self, other)

    __hash__ = None

    def __len__(self):
        return len(self.generators)

    def __repr__(self):
        return f"Ideal({len(self.generators)} generators in {self.ring.nvars} variables)"

    def degree(self) -> int:
        return degree_projective(self)

    def saturate(self, f: Polynomial) -> "Ideal":
        return saturate(self, f)


def ideal_equals(I: Ideal, J: Ideal) -> bool:
    if I.ring.nvars != J.ring.nvars or I.ring.p != J.ring.p:
        raise RingMismatchError("ideals live in different rings")
    order = I.ring.order
    a = I.groebner_basis(order)
    b = J.groebner_basis(order)
    return [g.terms for g in a] == [g.terms for g in b]


def eliminate(I: Ideal, k: int) -> Ideal:
    """Generators of I intersected with the subring of the last n - k variables.

    The result lives in a ring of ``n - k`` variables (grevlex).
    """
    n = I.ring.nvars
    if not 0 <= k < n:
        raise ValueError(f"cannot eliminate {k} of {n} variables")
    sub = Ring(n - k, I.ring.p, names=I.ring.names[k:])
    if k == 0:
        return Ideal([g.in_ring(sub) for g in I.generators], sub)
    gb = I.groebner_basis(MonomialOrder.elimination(k, n))
    kept = []
    for g in gb:
        if all(not any(e[:k]) for e, _ in g.terms):
            kept.append(Polynomial._raw(sub, [(e[k:], c) for e, c in g.terms]))
    result = Ideal(kept, sub)
    # the restriction of the block order is grevlex, so this is already reduced
    result._bases[sub.order] = kept
    return result


def saturate(I: Ideal, f: Polynomial) -> Ideal:
    """Saturation I : f^oo via an auxiliary variable t and the generator t*f - 1."""
    if not f:
        raise ValueError("cannot saturate by the zero polynomial")
    ring = I.ring
    n = ring.nvars
    big = Ring(n + 1, ring.p, MonomialOrder.elimination(1, n + 1), ("_t",) + ring.names)

    def lift(g):
        return Polynomial._raw(big, []) if not g else Polynomial(
            big, {(0,) + e: c for e, c in g.terms}
        )

    t = big.var(0)
    gens = [lift(g) for g in I.generators] + [t * lift(f) - 1]
    elim = eliminate(Ideal(gens, big), 1)
    if ring.order == elim.ring.order:
        out = Ideal([Polynomial._raw(ring, h.terms) for h in elim.generators], ring)
        out._bases[ring.order] = list(out.generators)
        return out
    return Ideal([Polynomial(ring, dict(h.terms)) for h in elim.generators], ring)


def degree_projective(I: Ideal) -> int:
    """Degree of the zero-dimensional projective scheme V(I) of a homogeneous ideal."""
    if not I.is_homogeneous():
        raise ValueError("degree_projective needs a homogeneous ideal")
    gb = I.groebner_basis()
    if not gb:
        if I.ring.nvars <= 1:
            return 1 if I.ring.nvars == 1 else 0
        raise DimensionError(f"zero ideal defines all of P^{I.ring.nvars - 1}")
    dim, deg = hilbert_polynomial_data([g.lm for g in gb], I.ring.nvars)
    if dim <= 0:
        return 0
    if dim > 1:
        raise DimensionError(f"projective scheme has dimension {dim - 1}")
    return deg
