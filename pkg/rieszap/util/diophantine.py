from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
import numpy.typing as npt
from sympy import isprime, nextprime, sieve

from rieszap.util.circle_set import TWO_PI, ArcSet, SAlphaSpec, contains_many, coverage_depth, intersect, normalize_arrays
from rieszap.util.errors import InvalidInputError

log = logging.getLogger(__name__)

DISJOINT_TOL = 1e-12


class CoprimePair(NamedTuple):
    m: int
    n: int


@lru_cache(maxsize=8)
def _coprime_arrays(N: int) -> Tuple[npt.NDArray[np.int64], npt.NDArray[np.int64]]:
    ms: List[npt.NDArray[np.int64]] = []
    ns: List[npt.NDArray[np.int64]] = []
    for n in range(2, N + 1):
        m = np.arange(1, n, dtype=np.int64)
        m = m[np.gcd(m, n) == 1]
        ms.append(m)
        ns.append(np.full(m.size, n, dtype=np.int64))
    if not ms:
        empty = np.zeros(0, dtype=np.int64)
        return empty, empty
    return np.concatenate(ms), np.concatenate(ns)


def coprime_pairs(N: int) -> List[CoprimePair]:
    if N < 1:
        raise InvalidInputError("N must be positive, got %s" % N)
    m, n = _coprime_arrays(N)
    return [CoprimePair(int(a), int(b)) for a, b in zip(m, n)]


def _check_rho(rho: float) -> None:
    if not 0 < rho < 1:
        raise InvalidInputError("rho must lie in (0, 1), got %s" % rho)


def hits_by_denominator(xs: npt.ArrayLike, N: int, rho: float) -> npt.NDArray[np.int64]:
    """
    hits[i, n-1] is the number of m with 1 <= m < n, gcd(m, n) = 1 and
    |x_i - m/n| < 1/n^(1+rho), i.e. |n x_i - m| < n^(-rho).
    """
    x = np.asarray(xs, dtype=np.float64).ravel()
    n = np.arange(1, N + 1, dtype=np.int64)
    nx = np.multiply.outer(x, n.astype(np.float64))
    radius = n.astype(np.float64) ** (-rho)
    hits = np.zeros(nx.shape, dtype=np.int64)
    base = np.floor(nx).astype(np.int64)
    # only floor(nx) and floor(nx) + 1 can lie within n^(-rho) < 1 of nx
    for m in (base, base + 1):
        ok = (m >= 1) & (m < n) & (np.abs(nx - m) < radius)
        ok &= np.gcd(m, n) == 1
        hits += ok
    return hits


def count_M_rho(x: float, N: int, rho: float) -> int:
    if not 0 <= x <= 1:
        raise InvalidInputError("x must lie in [0, 1], got %s" % x)
    if N < 1:
        raise InvalidInputError("N must be positive, got %s" % N)
    _check_rho(rho)
    return int(hits_by_denominator([x], N, rho).sum())


def count_table(xs: npt.ArrayLike, sizes: Sequence[int], rho: float) -> npt.NDArray[np.int64]:
    """counts[i, j] = M_rho(x_i, sizes[j]) for every grid point at once."""
    _check_rho(rho)
    cumulative = np.cumsum(hits_by_denominator(xs, max(sizes), rho), axis=1)
    return cumulative[:, np.asarray(sizes) - 1]


def counting_grid(uniform: int, farey_order: int) -> npt.NDArray[np.float64]:
    points = [np.linspace(0.0, 1.0, uniform)] if uniform > 0 else []
    for n in range(1, farey_order + 1):
        m = np.arange(0, n + 1)
        m = m[np.gcd(m, n) == 1]
        points.append(m / n)
    if not points:
        return np.zeros(0)
    return np.unique(np.concatenate(points))


class CountingFit(NamedTuple):
    constant: float
    per_size_max: List[float]
    growth: List[float]
    stable: bool


def fit_counting_constant(sizes: Sequence[int], rho: float, x_grid: npt.ArrayLike, max_growth: float = 0.2) -> CountingFit:
    grid = np.asarray(x_grid, dtype=np.float64).ravel()
    if grid.size == 0:
        raise InvalidInputError("The x grid is empty")
    if len(sizes) < 2 or any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise InvalidInputError("Need at least two increasing sizes, got %s" % list(sizes))
    counts = count_table(grid, sizes, rho)
    ratios = counts / np.asarray(sizes, dtype=np.float64) ** (1.0 - rho)
    per_size = ratios.max(axis=0)
    growth: List[float] = []
    stable = True
    for a, b in zip(per_size, per_size[1:]):
        if a == 0:
            change = 0.0 if b == 0 else math.inf
        else:
            change = abs(b / a - 1.0)
        growth.append(float(change))
        stable = stable and bool(change < max_growth)
    return CountingFit(float(per_size.max()), [float(v) for v in per_size], growth, stable)


@dataclass(frozen=True)
class ShellCount:
    k: int
    count: int
    bound: float
    sharp_bound: float

    @property
    def within_bound(self) -> bool:
        return self.count <= self.bound

    @property
    def within_sharp_bound(self) -> bool:
        return self.count <= self.sharp_bound


def shell_counts(x: float, N: int, rho: float, hits: Optional[npt.NDArray[np.int64]] = None) -> List[ShellCount]:
    """
    Qualifying pairs per dyadic shell 2^-k N <= n <= 2^(1-k) N.

    Distinct fractions in one shell are at least 2^(2k)/(4N^2) apart, so the
    count is at most 8 * 2^(k(rho-1)) N^(1-rho) + 1.
    """
    _check_rho(rho)
    row = hits if hits is not None else hits_by_denominator([x], N, rho)[0]
    n = np.arange(1, N + 1)
    shells: List[ShellCount] = []
    k = 1
    while N / 2**k >= 1:
        lo, hi = N / 2**k, N / 2 ** (k - 1)
        mask = (n >= lo) & (n <= hi)
        scale = 2 ** (k * (rho - 1)) * N ** (1 - rho)
        shells.append(ShellCount(k, int(row[mask].sum()), 8 * scale + 1, 2 * scale))
        k += 1
    return shells


def is_prime(n: int) -> bool:
    return bool(isprime(n))


def primes_up_to(n: int) -> List[int]:
    return [int(p) for p in sieve.primerange(2, n + 1)]


def first_primes(count: int, predicate: Callable[[int], bool] = lambda p: True) -> List[int]:
    found: List[int] = []
    p = 1
    while len(found) < count:
        p = int(nextprime(p))
        if predicate(p):
            found.append(p)
    return found


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise InvalidInputError("%s is not a prime" % p)


def jpl_half_width(p: int, ell: int, spec: SAlphaSpec) -> float:
    return p * spec.delta(ell) / ell


def _jpl_centers(ell: int) -> npt.NDArray[np.float64]:
    if ell == 1:
        return np.zeros(1)
    j = np.arange(1, ell, dtype=np.int64)
    j = j[np.gcd(j, ell) == 1]
    return TWO_PI * j / ell


def jpl_arcs(p: int, ell: int, spec: SAlphaSpec) -> ArcSet:
    """The p-dilated coprime arcs 2 pi j/ell + p I_ell, gcd(j, ell) = 1."""
    _check_prime(p)
    if ell < 1:
        raise InvalidInputError("ell must be positive, got %s" % ell)
    if ell % p == 0:
        raise InvalidInputError("p = %s divides ell = %s" % (p, ell))
    centers = _jpl_centers(ell)
    half = jpl_half_width(p, ell, spec)
    return normalize_arrays(centers - half, centers + half, tag="Jcal[%d,%d]" % (p, ell))


@dataclass(frozen=True)
class EtaLadder:
    alpha: float
    etas: Tuple[float, ...]

    @property
    def d(self) -> int:
        return len(self.etas)

    @property
    def fixed_point(self) -> float:
        return self.alpha / (1.0 - self.alpha)

    @property
    def ratio(self) -> float:
        return 2.0 / (1.0 + self.alpha)

    def closed_form(self, i: int) -> float:
        """eta_i for i >= 1 from the explicit geometric formula."""
        return self.ratio ** (i - 1) * (self.etas[0] - self.fixed_point) + self.fixed_point

    def windows(self) -> List[Tuple[float, float]]:
        return list(zip(self.etas, self.etas[1:]))


def next_eta(eta: float, alpha: float) -> float:
    return 2.0 / (1.0 + alpha) * (eta - alpha / 2.0)


def eta_ladder(alpha: float) -> EtaLadder:
    if not 0 < alpha < 0.5:
        raise InvalidInputError("The ladder needs alpha in (0, 1/2), got %s" % alpha)
    eta = (alpha / (1.0 - alpha) + 1.0) / 2.0
    etas = [eta]
    while etas[-1] <= 1.0 / alpha:
        etas.append(next_eta(etas[-1], alpha))
    return EtaLadder(alpha, tuple(etas))


def prime_threshold(spec: SAlphaSpec, ladder: EtaLadder) -> float:
    """Real x with p^eta_1 < c0 p for every p > x."""
    return float(spec.c0 ** (1.0 / (ladder.etas[0] - 1.0)))


def next_prime_above(x: float, limit: float = 1e12) -> Optional[int]:
    if x > limit:
        return None
    return int(nextprime(math.floor(x)))


def check_pairwise_disjoint(p: int, ell1: int, ell2: int, spec: SAlphaSpec) -> bool:
    if ell1 >= ell2:
        raise InvalidInputError("Need ell1 < ell2, got %s and %s" % (ell1, ell2))
    overlap = intersect(jpl_arcs(p, ell1, spec), jpl_arcs(p, ell2, spec))
    return overlap.measure <= DISJOINT_TOL


def admissible_ells(p: int, lo: int, hi: int) -> List[int]:
    return [ell for ell in range(max(1, lo), hi + 1) if ell % p != 0]


def _labelled_arcs(
    p: int, ells: Sequence[int], spec: SAlphaSpec
) -> Tuple[npt.NDArray[np.float64], npt.NDArray[np.float64], npt.NDArray[np.int64]]:
    starts: List[npt.NDArray[np.float64]] = []
    ends: List[npt.NDArray[np.float64]] = []
    labels: List[npt.NDArray[np.int64]] = []
    for ell in ells:
        arcs = jpl_arcs(p, ell, spec)
        starts.append(arcs.starts)
        ends.append(arcs.ends)
        labels.append(np.full(len(arcs), ell, dtype=np.int64))
    if not starts:
        empty = np.zeros(0)
        return empty, empty, np.zeros(0, dtype=np.int64)
    return np.concatenate(starts), np.concatenate(ends), np.concatenate(labels)


def window_violations(p: int, lo: int, hi: int, spec: SAlphaSpec) -> List[Tuple[int, int]]:
    """
    Every pair ell1 < ell2 of admissible moduli in [lo, hi] whose sets
    Jcal[p, ell] overlap by more than DISJOINT_TOL, found in one sweep.
    """
    s, e, label = _labelled_arcs(p, admissible_ells(p, lo, hi), spec)
    if s.size == 0:
        return []
    order = np.argsort(s, kind="mergesort")
    s, e, label = s[order], e[order], label[order]
    reach = np.searchsorted(s, e - DISJOINT_TOL, side="left")
    counts = np.maximum(reach - np.arange(s.size) - 1, 0)
    first = np.repeat(np.arange(s.size), counts)
    offsets = np.arange(counts.sum()) - np.repeat(np.cumsum(counts) - counts, counts)
    second = first + 1 + offsets
    overlap = np.minimum(e[first], e[second]) - s[second]
    bad = (label[first] != label[second]) & (overlap > DISJOINT_TOL)
    pairs = {
        (int(min(a, b)), int(max(a, b)))
        for a, b in zip(label[first][bad], label[second][bad])
    }
    if pairs:
        log.debug("p=%s window [%s, %s]: %d overlapping pairs", p, lo, hi, len(pairs))
    return sorted(pairs)


def ladder_window(p: int, eta: float, eta_next: float) -> Tuple[int, int]:
    return int(math.ceil(p**eta - 1e-9)), int(math.floor(p**eta_next))


def overlap_depth(p: int, ells: Sequence[int], spec: SAlphaSpec) -> int:
    """Largest number of the sets Jcal[p, ell], ell in ells, sharing a point."""
    s, e, _ = _labelled_arcs(p, ells, spec)
    return coverage_depth(s, e)


def overlap_counts(p: int, ells: Sequence[int], spec: SAlphaSpec, taus: npt.ArrayLike) -> npt.NDArray[np.int64]:
    t = np.asarray(taus, dtype=np.float64)
    counts = np.zeros(t.shape, dtype=np.int64)
    for ell in ells:
        counts += contains_many(jpl_arcs(p, ell, spec), t)
    return counts


def residue_permutation(p: int, ell: int) -> Tuple[int, ...]:
    if ell < 1:
        raise InvalidInputError("ell must be positive, got %s" % ell)
    if math.gcd(p, ell) != 1:
        raise InvalidInputError("gcd(%s, %s) > 1" % (p, ell))
    return tuple(int(v) for v in (p * np.arange(ell, dtype=np.int64)) % ell)


def dilated_component_arcs(p: int, ell: int, spec: SAlphaSpec) -> ArcSet:
    """Union over j of 2 pi sigma(j)/ell + p I_ell."""
    sigma = np.asarray(residue_permutation(p, ell), dtype=np.float64)
    centers = TWO_PI * sigma / ell
    half = jpl_half_width(p, ell, spec)
    return normalize_arrays(centers - half, centers + half)


def covering_multiplicity(p: int, ell: int, spec: SAlphaSpec) -> int:
    if ell < 1:
        raise InvalidInputError("ell must be positive, got %s" % ell)
    centers = TWO_PI * np.arange(ell, dtype=np.float64) / ell
    half = jpl_half_width(p, ell, spec)
    return coverage_depth(centers - half, centers + half)


def covering_bound(p: int, ell: int, spec: SAlphaSpec) -> int:
    return int(math.floor(2 * p * spec.delta(ell))) + 2
