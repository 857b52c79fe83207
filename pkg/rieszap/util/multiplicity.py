from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import numpy.typing as npt

from rieszap.util.circle_set import TWO_PI, ArcSet, normalize_arrays
from rieszap.util.errors import InvalidInputError
from rieszap.util.riesz_bounds import FrequencySet, extremal_eigs, gram, progression, rayleigh_min
from rieszap.util.trig_poly import IndicatorSpectrum, TrigPoly, dilate, dirichlet, energy

log = logging.getLogger(__name__)

PROFILE_TOL = 1e-12


@dataclass(frozen=True)
class StepProfile:
    """
    The multiplicity function nu(t) = #{j : t + 2 pi j/ell in S} on one
    period [0, 2 pi/ell), as pieces [breakpoints[k], breakpoints[k+1]).
    """

    ell: int
    breakpoints: npt.NDArray[np.float64]
    values: npt.NDArray[np.int64]

    @property
    def period(self) -> float:
        return TWO_PI / self.ell

    @property
    def widths(self) -> npt.NDArray[np.float64]:
        return np.diff(np.append(self.breakpoints, self.period))

    def integral(self) -> float:
        return math.fsum((self.widths * self.values).tolist())

    def value_at(self, t: float) -> int:
        s = math.fmod(t, self.period)
        if s < 0:
            s += self.period
        i = int(np.searchsorted(self.breakpoints, s, side="right")) - 1
        return int(self.values[max(i, 0)])

    def measure_where(self, mask: npt.NDArray[np.bool_]) -> float:
        return math.fsum(self.widths[mask].tolist())

    def to_json_dict(self) -> Dict[str, Any]:
        return {
            "ell": self.ell,
            "breakpoints": [float(b) for b in self.breakpoints],
            "values": [int(v) for v in self.values],
        }

    @classmethod
    def from_json_dict(cls, data: Dict[str, Any]) -> StepProfile:
        return cls(
            int(data["ell"]),
            np.asarray(data["breakpoints"], dtype=np.float64),
            np.asarray(data["values"], dtype=np.int64),
        )


def nu_profile(S: ArcSet, ell: int) -> StepProfile:
    if ell < 1:
        raise InvalidInputError("ell must be positive, got %s" % ell)
    period = TWO_PI / ell
    lengths = S.ends - S.starts
    turns = np.floor(lengths / period)
    rest = lengths - turns * period
    # absorb rounding at whole numbers of periods
    up = rest >= period - PROFILE_TOL
    turns[up] += 1
    rest[up] = 0.0
    rest[rest <= PROFILE_TOL] = 0.0
    baseline = int(turns.sum())

    keep = rest > 0
    fold = np.mod(S.starts[keep], period)
    fold[fold >= period] = 0.0
    stop = fold + rest[keep]
    over = stop > period
    piece_s = np.concatenate((fold, np.zeros(int(over.sum()))))
    piece_e = np.concatenate((np.minimum(stop, period), stop[over] - period))

    pos = np.concatenate(([0.0], piece_s, piece_e))
    step = np.concatenate(([0], np.ones(piece_s.size, dtype=np.int64), -np.ones(piece_e.size, dtype=np.int64)))
    order = np.argsort(pos, kind="mergesort")
    pos, step = pos[order], step[order]
    # cluster breakpoints closer than PROFILE_TOL
    new_cluster = np.concatenate(([True], np.diff(pos) > PROFILE_TOL))
    cluster = np.cumsum(new_cluster) - 1
    cluster_pos = pos[new_cluster]
    cluster_step = np.bincount(cluster, weights=step).astype(np.int64)
    depth = np.cumsum(cluster_step)

    inside = cluster_pos < period - PROFILE_TOL
    cluster_pos, depth = cluster_pos[inside], depth[inside]
    cluster_pos[0] = 0.0
    values = baseline + depth
    change = np.concatenate(([True], np.diff(values) != 0))
    return StepProfile(ell, cluster_pos[change], values[change].astype(np.int64))


def sublevel_measure(S: ArcSet, ell: int, delta: float, profile: Optional[StepProfile] = None) -> float:
    """Measure in radians of {t in T : nu(t/ell) < delta ell}."""
    if not 0 < delta <= 1:
        raise InvalidInputError("delta must lie in (0, 1], got %s" % delta)
    if profile is None:
        profile = nu_profile(S, ell)
    return ell * profile.measure_where(profile.values < delta * ell)


def zero_set_measure(profile: StepProfile) -> float:
    return profile.ell * profile.measure_where(profile.values == 0)


def profile_energy(Q: TrigPoly, profile: StepProfile) -> float:
    """Integral over T of |Q(tau)|^2 nu(tau/ell)/ell under the normalized measure."""
    ell = profile.ell
    edges = np.append(profile.breakpoints, profile.period) * ell
    total: List[float] = []
    for k, value in enumerate(profile.values):
        if value == 0:
            continue
        piece = normalize_arrays([edges[k]], [min(edges[k + 1], TWO_PI)])
        total.append(float(value) / ell * energy(Q, piece))
    return math.fsum(total)


@dataclass(frozen=True)
class Theorem4Row:
    ell: int
    sublevel: float
    threshold: float
    applicable: bool
    N: Optional[int] = None
    lower: Optional[float] = None
    bound: Optional[float] = None
    conclusion_bound: Optional[float] = None
    oracle_min: Optional[float] = None
    identity_residual: Optional[float] = None

    @property
    def passed(self) -> Optional[bool]:
        if not self.applicable or self.lower is None or self.bound is None:
            return None
        return self.lower >= self.bound - 1e-9

    def to_json_dict(self) -> Dict[str, Any]:
        return {
            "ell": self.ell,
            "sublevel": self.sublevel,
            "threshold": self.threshold,
            "applicable": self.applicable,
            "N": self.N,
            "A": self.lower,
            "bound": self.bound,
            "conclusion_bound": self.conclusion_bound,
            "oracle_min": self.oracle_min,
            "identity_residual": self.identity_residual,
            "passed": self.passed,
        }


def theorem4_check(
    S: ArcSet,
    alpha: float,
    c: float,
    delta: float,
    ells: Sequence[int],
    gram_cap: int = 4096,
    samples: int = 0,
    seed: int = 0,
) -> List[Theorem4Row]:
    """
    For each ell where |{nu(t/ell) < delta ell}| < c/ell^(1/alpha), verify
    A({ell, ..., N ell}, S) >= delta (1 - N |bad|/2pi) with N = floor(ell^(1/alpha)).
    """
    if not 0 < alpha <= 1:
        raise InvalidInputError("alpha must lie in (0, 1], got %s" % alpha)
    if not 0 < c < 1:
        raise InvalidInputError("c must lie in (0, 1), got %s" % c)
    if not 0 < delta <= 1:
        raise InvalidInputError("delta must lie in (0, 1], got %s" % delta)
    spectrum = IndicatorSpectrum(S)
    rows: List[Theorem4Row] = []
    for ell in ells:
        profile = nu_profile(S, ell)
        sub = sublevel_measure(S, ell, delta, profile)
        threshold = c / float(ell) ** (1.0 / alpha)
        if not sub < threshold:
            rows.append(Theorem4Row(ell, sub, threshold, False))
            continue
        N = int(math.floor(float(ell) ** (1.0 / alpha) + 1e-9))
        freqs = progression(0, ell, N)
        G = gram(freqs, S, gram_cap, spectrum)
        lower, _ = extremal_eigs(G)
        oracle = rayleigh_min(G, samples, seed) if samples > 0 else None
        Q = dirichlet(N)
        direct = energy(dilate(Q, ell), S, spectrum)
        residual = abs(direct - profile_energy(Q, profile))
        rows.append(
            Theorem4Row(
                ell,
                sub,
                threshold,
                True,
                N,
                lower,
                delta * (1.0 - N * sub / TWO_PI),
                delta * (1.0 - c),
                oracle,
                residual,
            )
        )
        log.debug("theorem4 ell=%s sublevel=%.3e A=%.6f", ell, sub, lower)
    return rows


def comb_with_notch(ell: int, alpha: float, c: float, notch_fraction: float = 0.1) -> ArcSet:
    """
    Union over j of [2 pi j/ell + g, 2 pi (j+1)/ell) with g = notch_fraction * c / ell^(1/alpha + 1),
    minus a notch of width g in the middle of the first cell.
    """
    g = notch_fraction * c / float(ell) ** (1.0 / alpha + 1.0)
    period = TWO_PI / ell
    j = np.arange(ell, dtype=np.float64)
    starts = j * period + g
    ends = (j + 1) * period
    notch = period / 2.0
    starts = np.concatenate((starts[:1], [notch + g], starts[1:]))
    ends = np.concatenate(([notch], ends[:1], ends[1:]))
    return normalize_arrays(starts, ends, tag="comb[%d]" % ell)


@dataclass(frozen=True)
class LatticeCheck:
    ell: int
    K: int
    criterion: bool
    lower: float
    zero_set: float

    def to_json_dict(self) -> Dict[str, Any]:
        return {
            "ell": self.ell,
            "K": self.K,
            "criterion": self.criterion,
            "A": self.lower,
            "zero_set": self.zero_set,
        }


def lattice_frequencies(ell: int, K: int) -> FrequencySet:
    return FrequencySet(ell * np.arange(-K, K + 1, dtype=np.int64))


def lattice_riesz_check(
    S: ArcSet,
    ell: int,
    K: int,
    gram_cap: int = 4096,
    spectrum: Optional[IndicatorSpectrum] = None,
) -> LatticeCheck:
    """
    E(ell Z) is a Riesz sequence on S exactly when nu vanishes only on a
    null set; the lower bound is measured on {-K ell, ..., K ell}.
    """
    if K < 1:
        raise InvalidInputError("K must be positive, got %s" % K)
    zero = zero_set_measure(nu_profile(S, ell))
    G = gram(lattice_frequencies(ell, K), S, gram_cap, spectrum)
    lower, _ = extremal_eigs(G)
    return LatticeCheck(ell, K, zero <= PROFILE_TOL, lower, zero)
