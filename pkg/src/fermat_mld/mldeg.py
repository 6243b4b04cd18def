"""ML degree of Fermat hypersurfaces: computational strategies, closed formulas
and the multi-prime consistency harness.

Strategy tags:

``random``             degree of the critical ideal for random data, arrangement saturated away
``random-diff``        same count as deg(critical ideal) - deg(critical ideal + (sum x))
``partitioning``       sum over partitions a of c_a * deg(I_a) / o_a
``partitioning-diff``  as above, each deg(I_a) obtained by subtraction
``closed``             closed formula (d = 2 or n = 2 only)
``auto``               closed when available, else partitioning-diff
"""

from __future__ import annotations

import logging
import os
import threading
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb

import numpy as np
from sympy import nextprime

from .fermat_ideals import (
    DataVector,
    arrangement_slice_ideal,
    critical_ideal,
    linear_sum,
    partition_ideal,
    partition_ideal_unweighted,
    remove_arrangement,
)
from .groebner import ComputationTimeout, degree_projective, time_limit
from .partitions import Partition, coefficient_c, enumerate_partitions, symmetry_order_o
from .polyring import DEFAULT_PRIME, VERIFY_PRIME, BadPrimeError, check_prime

log = logging.getLogger(__name__)

STRATEGIES = ("closed", "partitioning", "partitioning-diff", "random", "random-diff", "auto")
COMPUTED_STRATEGIES = ("partitioning", "partitioning-diff", "random", "random-diff")
MAX_RETRIES = 3


class InconsistentResultError(RuntimeError):
    """Independent primes (or data vectors) kept disagreeing."""


class StrategyNotApplicable(ValueError):
    pass


# ---------------------------------------------------------------------------
# configuration and results
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EngineConfig:
    primes: tuple[int, ...] = (DEFAULT_PRIME, VERIFY_PRIME)
    seed: int = 0
    parallelism: int = 1
    timeout: float | None = None
    strategy: str = "auto"

    def __post_init__(self):
        primes = tuple(int(p) for p in self.primes)
        if not primes:
            raise ValueError("at least one prime is required")
        for p in primes:
            check_prime(p)
        object.__setattr__(self, "primes", primes)
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if self.parallelism < 1:
            raise ValueError("parallelism must be positive")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must fit in 64 bits")

    @classmethod
    def from_env(cls, **kwargs) -> "EngineConfig":
        if "parallelism" not in kwargs and os.environ.get("FERMAT_MLD_THREADS"):
            kwargs["parallelism"] = int(os.environ["FERMAT_MLD_THREADS"])
        return cls(**kwargs)


@dataclass(frozen=True)
class BreakdownRow:
    partition: Partition
    c: int
    o: int
    degree: int
    contribution: int

    def to_dict(self):
        return {
            "partition": list(self.partition.parts),
            "c": self.c,
            "o": self.o,
            "degree": self.degree,
            "contribution": self.contribution,
        }


@dataclass
class MLDegreeResult:
    n: int
    d: int
    strategy: str
    value: int
    breakdown: list[BreakdownRow] | None = None
    primes: list[int] = field(default_factory=list)
    elapsed: dict[str, float] = field(default_factory=dict)

    @property
    def seconds(self) -> float:
        return sum(self.elapsed.values())

    def check(self):
        if self.breakdown is not None:
            assert self.value == sum(r.contribution for r in self.breakdown)
            for r in self.breakdown:
                assert r.c * r.degree == r.o * r.contribution

    def to_dict(self) -> dict:
        out = {
            "n": self.n,
            "d": self.d,
            "strategy": self.strategy,
            "value": self.value,
        }
        if self.breakdown is not None:
            out["breakdown"] = [r.to_dict() for r in self.breakdown]
        out["primes"] = list(self.primes)
        out["seconds"] = round(self.seconds, 6)
        return out


# ---------------------------------------------------------------------------
# closed formulas
# ---------------------------------------------------------------------------


def closed_form_quadric(n: int) -> int:
    if n < 1:
        raise ValueError("n must be at least 1")
    return 2 ** (n + 1) - 2


_PLANE_SHIFT = {0: 0, 2: 0, 3: 3, 5: 3, 4: 2, 1: 5}


def closed_form_plane_curve(d: int) -> int:
    if d < 2:
        raise ValueError("d must be at least 2")
    return d * d + d - _PLANE_SHIFT[d % 6]


def boundary_count_plane(d: int) -> int:
    """Number of points of the Fermat curve on the four arrangement lines."""
    if d < 2:
        raise ValueError("d must be at least 2")
    return 4 * d - _PLANE_SHIFT[d % 6]


def smooth_plane_curve_mldeg(d: int, boundary: int) -> int:
    """ML degree of a smooth plane curve of degree d meeting the arrangement in ``boundary`` points."""
    return d * d - 3 * d + boundary


def length2_degree(a1: int, a2: int, d: int) -> int:
    if not a1 >= a2 >= 1:
        raise ValueError("need a1 >= a2 >= 1")
    return d - 1 if a1 == a2 and d % 2 else d


def length2_total(n: int, d: int) -> int:
    """Number of critical points with exactly two distinct coordinate values."""
    if n < 1 or d < 2:
        raise ValueError("need n >= 1 and d >= 2")
    total = d * (2 ** n - 1)
    if d % 2 and n % 2:
        total -= comb(n + 1, (n + 1) // 2) // 2
    return total


def closed_form(n: int, d: int) -> int:
    if d == 2:
        return closed_form_quadric(n)
    if n == 2:
        return closed_form_plane_curve(d)
    raise StrategyNotApplicable(f"no closed formula for n={n}, d={d}")


def has_closed_form(n: int, d: int) -> bool:
    return d == 2 or n == 2


# ---------------------------------------------------------------------------
# partition degrees (memoized)
# ---------------------------------------------------------------------------

_memo: dict = {}
_memo_lock = threading.Lock()


def partition_degree(a: Partition, d: int, p: int, by_difference: bool = False) -> int:
    """Degree of the ideal of a-critical points over GF(p)."""
    key = (a.parts, d, p, by_difference)
    hit = _memo.get(key)
    if hit is not None:
        return hit
    if by_difference:
        tilde = partition_ideal_unweighted(a, d, p)
        deg = degree_projective(tilde) - degree_projective(
            tilde + linear_sum(tilde.ring, a.parts)
        )
    else:
        deg = degree_projective(partition_ideal(a, d, p))
    with _memo_lock:
        return _memo.setdefault(key, deg)


def clear_memo():
    with _memo_lock:
        _memo.clear()


def _degree_task(args):
    parts, d, p, by_difference, timeout = args
    with time_limit(timeout):
        return partition_degree(Partition(parts), d, p, by_difference)


def screen_prime(p: int, n: int, d: int, parts=()) -> int:
    return check_prime(p, forbidden_divisors=(d, n + 1, *parts))


def _fresh_prime(used, n, d, parts):
    q = max(used)
    while True:
        q = nextprime(q)
        try:
            return screen_prime(q, n, d, parts)
        except BadPrimeError:
            continue


def _partitioning_once(n, d, p, by_difference, cfg, parts_list):
    deadline = None if cfg.timeout is None else time.monotonic() + cfg.timeout
    degrees = {}
    pending = [a for a in parts_list if (a.parts, d, p, by_difference) not in _memo]
    for a in parts_list:
        if a not in pending:
            degrees[a] = _memo[(a.parts, d, p, by_difference)]
    if cfg.parallelism > 1 and len(pending) > 1:
        with ProcessPoolExecutor(max_workers=cfg.parallelism) as pool:
            futures = {
                a: pool.submit(_degree_task, (a.parts, d, p, by_difference, cfg.timeout))
                for a in pending
            }
            for a, fut in futures.items():
                remaining = None if deadline is None else max(deadline - time.monotonic(), 0)
                try:
                    deg = fut.result(timeout=remaining)
                except TimeoutError as exc:
                    for f in futures.values():
                        f.cancel()
                    raise ComputationTimeout(f"n={n}, d={d} exceeded {cfg.timeout}s") from exc
                with _memo_lock:
                    degrees[a] = _memo.setdefault((a.parts, d, p, by_difference), deg)
    else:
        with time_limit(cfg.timeout):
            for a in pending:
                degrees[a] = partition_degree(a, d, p, by_difference)
    rows = []
    for a in parts_list:
        c, o, deg = coefficient_c(a), symmetry_order_o(a), degrees[a]
        if (c * deg) % o:
            raise BadPrimeError(
                f"o_a={o} does not divide c_a*deg={c * deg} for a={a} over GF({p})"
            )
        rows.append(BreakdownRow(a, c, o, deg, c * deg // o))
    return rows


def _agree(results):
    """Most common value when it is backed by a strict majority of at least two runs."""
    values = [v for _, v in results]
    best = max(set(values), key=values.count)
    count = values.count(best)
    if count == len(values) or (count >= 2 and 2 * count > len(values)):
        return best
    return None


def mldeg_partitioning(n: int, d: int, cfg: EngineConfig | None = None,
                       by_difference: bool = False) -> MLDegreeResult:
    cfg = cfg or EngineConfig()
    if n < 1 or d < 2:
        raise ValueError("need n >= 1 and d >= 2")
    parts_list = enumerate_partitions(n + 1, d)
    all_parts = sorted({x for a in parts_list for x in a.parts})
    primes = list(cfg.primes)
    for p in primes:
        screen_prime(p, n, d, all_parts)
    strategy = "partitioning-diff" if by_difference else "partitioning"
    runs = []
    elapsed = {}
    queue = list(primes)
    retries = 0
    while queue:
        p = queue.pop(0)
        t0 = time.perf_counter()
        try:
            rows = _partitioning_once(n, d, p, by_difference, cfg, parts_list)
        except BadPrimeError as exc:
            log.warning("%s", exc)
            rows = None
        elapsed[f"p={p}"] = time.perf_counter() - t0
        if rows is not None:
            runs.append((p, rows))
        if not queue:
            ok = runs and _agree([(q, tuple(r.degree for r in rs)) for q, rs in runs])
            if ok and len(runs) >= min(2, len(primes)):
                break
            if retries >= MAX_RETRIES:
                raise InconsistentResultError(
                    f"partition degrees for n={n}, d={d} disagree across primes "
                    f"{[q for q, _ in runs]}"
                )
            retries += 1
            queue.append(_fresh_prime(primes + [q for q, _ in runs], n, d, all_parts))
            primes.append(queue[-1])
    degrees = _agree([(q, tuple(r.degree for r in rs)) for q, rs in runs])
    rows = next(rs for q, rs in runs if tuple(r.degree for r in rs) == degrees)
    used = [q for q, rs in runs if tuple(r.degree for r in rs) == degrees]
    result = MLDegreeResult(n, d, strategy, sum(r.contribution for r in rows), rows, used, elapsed)
    result.check()
    return result


def random_data_vector(n_plus_1: int, p: int, seed: int, attempt: int = 0) -> DataVector:
    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(p, attempt)))
    return DataVector.random(n_plus_1, p, rng)


def random_fiber_degree(n: int, d: int, u: DataVector, by_difference: bool = False) -> int:
    I = critical_ideal(n, d, u)
    if by_difference:
        return degree_projective(I) - degree_projective(arrangement_slice_ideal(n, d, u.p))
    return degree_projective(remove_arrangement(I))


def mldeg_random_data(n: int, d: int, cfg: EngineConfig | None = None,
                      by_difference: bool = False) -> MLDegreeResult:
    cfg = cfg or EngineConfig()
    if n < 2 or d < 2:
        raise ValueError("random-data strategies need n >= 2 and d >= 2")
    primes = list(cfg.primes)
    for p in primes:
        screen_prime(p, n, d)
    strategy = "random-diff" if by_difference else "random"
    runs = []
    elapsed = {}
    attempt = 0
    queue = [(p, 0) for p in primes]
    while True:
        while queue:
            p, attempt = queue.pop(0)
            u = random_data_vector(n + 1, p, cfg.seed, attempt)
            t0 = time.perf_counter()
            with time_limit(cfg.timeout):
                runs.append((p, random_fiber_degree(n, d, u, by_difference)))
            elapsed[f"p={p}"] = elapsed.get(f"p={p}", 0.0) + time.perf_counter() - t0
        value = _agree(runs)
        if value is not None and len(runs) >= min(2, len(primes)):
            break
        if attempt >= MAX_RETRIES or len(runs) > len(primes) + MAX_RETRIES:
            raise InconsistentResultError(
                f"random-data degrees for n={n}, d={d} disagree: {runs}"
            )
        fresh = _fresh_prime([q for q, _ in runs], n, d, ())
        queue.append((fresh, attempt + 1))
    used = [q for q, v in runs if v == value]
    return MLDegreeResult(n, d, strategy, value, None, used, elapsed)


def mldeg_closed(n: int, d: int) -> MLDegreeResult:
    t0 = time.perf_counter()
    value = closed_form(n, d)
    return MLDegreeResult(n, d, "closed", value, None, [], {"formula": time.perf_counter() - t0})


def mldeg(n: int, d: int, cfg: EngineConfig | None = None, strategy: str | None = None) -> MLDegreeResult:
    cfg = cfg or EngineConfig()
    strategy = strategy or cfg.strategy
    if strategy == "auto":
        strategy = "closed" if has_closed_form(n, d) else "partitioning-diff"
    if strategy == "closed":
        return mldeg_closed(n, d)
    if strategy in ("partitioning", "partitioning-diff"):
        return mldeg_partitioning(n, d, cfg, by_difference=strategy.endswith("diff"))
    if strategy in ("random", "random-diff"):
        return mldeg_random_data(n, d, cfg, by_difference=strategy.endswith("diff"))
    raise ValueError(f"unknown strategy {strategy!r}")


# ---------------------------------------------------------------------------
# cross-checking
# ---------------------------------------------------------------------------


@dataclass
class CrossCheckReport:
    n: int
    d: int
    values: dict[str, int]
    results: list[MLDegreeResult]
    value: int | None
    discrepancy: str | None = None

    @property
    def ok(self) -> bool:
        return self.discrepancy is None

    def to_dict(self) -> dict:
        return {"n": self.n, "d": self.d, "value": self.value, "values": dict(self.values),
                "ok": self.ok, "discrepancy": self.discrepancy}


def cross_check(n: int, d: int, cfg: EngineConfig | None = None,
                strategies=None, random_cap: int = 4, strict: bool = True) -> CrossCheckReport:
    """Run every applicable strategy over at least two primes and compare.

    ``random_cap`` bounds n for the random-data strategies, which work in n+1
    variables.  With ``strict`` an internal disagreement raises.
    """
    cfg = cfg or EngineConfig()
    if len(cfg.primes) < 2:
        extra = _fresh_prime(list(cfg.primes), n, d, range(1, n + 2))
        cfg = EngineConfig(cfg.primes + (extra,), cfg.seed, cfg.parallelism, cfg.timeout, cfg.strategy)
    if strategies is None:
        strategies = ["partitioning", "partitioning-diff"]
        if 2 <= n <= random_cap:
            strategies.append("random-diff")
        if has_closed_form(n, d):
            strategies.append("closed")
    results = [mldeg(n, d, cfg, s) for s in strategies]
    values = {r.strategy: r.value for r in results}
    distinct = sorted(set(values.values()))
    discrepancy = None
    if len(distinct) > 1:
        discrepancy = f"n={n}, d={d}: strategies disagree: {values}"
        if strict:
            raise InconsistentResultError(discrepancy)
    value = distinct[0] if len(distinct) == 1 else None
    return CrossCheckReport(n, d, values, results, value, discrepancy)


def result_from_dict(data: dict) -> MLDegreeResult:
    rows = None
    if "breakdown" in data:
        rows = [BreakdownRow(Partition(tuple(r["partition"])), r["c"], r["o"], r["degree"],
                             r["contribution"]) for r in data["breakdown"]]
    return MLDegreeResult(data["n"], data["d"], data["strategy"], data["value"], rows,
                          list(data.get("primes", [])), {"total": data.get("seconds", 0.0)})

