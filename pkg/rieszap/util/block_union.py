from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from rieszap.util.circle_set import ArcSet
from rieszap.util.errors import InvalidInputError, ResourceLimitError, SearchExhaustedError
from rieszap.util.riesz_bounds import FrequencySet, gram, lowest_eig, riesz_bounds
from rieszap.util.trig_poly import FREQ_CAP, ComplexArray, IndicatorSpectrum

log = logging.getLogger(__name__)

SEARCH_MODES = ("linear", "coarse")


@dataclass(frozen=True)
class BlockSchedule:
    blocks: List[FrequencySet]
    gamma: float
    lowers: List[float]

    @classmethod
    def create(
        cls,
        blocks: List[FrequencySet],
        S: ArcSet,
        gram_cap: int = 4096,
        spectrum: Optional[IndicatorSpectrum] = None,
    ) -> BlockSchedule:
        if not blocks:
            raise InvalidInputError("A block schedule needs at least one block")
        if spectrum is None:
            spectrum = IndicatorSpectrum(S)
        lowers = [riesz_bounds(b, S, gram_cap, spectrum).lower for b in blocks]
        gamma = min(lowers)
        if gamma <= 0:
            raise InvalidInputError("Blocks need a positive common lower bound, got %s" % gamma)
        return cls(list(blocks), gamma, lowers)

    @property
    def targets(self) -> List[float]:
        return [self.gamma / 2.0 * (1.0 + 1.0 / k) for k in range(1, len(self.blocks) + 1)]


class TranslationSearch:
    """
    Lower Riesz bound of A1 u (M + A2) as a function of M, reusing the two
    diagonal Gram blocks and the table of frequency differences.
    """

    def __init__(
        self,
        A1: FrequencySet,
        A2: FrequencySet,
        S: ArcSet,
        gram_cap: int = 4096,
        spectrum: Optional[IndicatorSpectrum] = None,
    ) -> None:
        if len(A1) + len(A2) > gram_cap:
            raise ResourceLimitError("Gram dimension", gram_cap, len(A1) + len(A2))
        self.spectrum = spectrum if spectrum is not None else IndicatorSpectrum(S)
        self.A1 = A1
        self.A2 = A2
        self.G11 = gram(A1, S, gram_cap, self.spectrum).entries
        self.G22 = gram(A2, S, gram_cap, self.spectrum).entries
        self.diffs = np.subtract.outer(A1.values, A2.values)
        self.collisions = {int(d) for d in self.diffs.ravel()}
        self.top = int(np.abs(A1.values).max())
        self.reach = int(np.abs(A2.values).max())

    def matrix(self, M: int) -> ComplexArray:
        cross = self.spectrum(self.diffs - M)
        return np.block([[self.G11, cross], [cross.conj().T, self.G22]])

    def lower(self, M: int) -> Optional[float]:
        """None when M + A2 meets A1."""
        if M in self.collisions:
            return None
        if max(self.top, self.reach + abs(M)) > FREQ_CAP:
            raise ResourceLimitError("frequency magnitude", FREQ_CAP, self.reach + abs(M))
        return lowest_eig(self.matrix(M))

    def qualifies(self, M: int, gamma_prime: float) -> bool:
        value = self.lower(M)
        log.debug("translation M=%s lower=%s", M, value)
        return value is not None and value >= gamma_prime


def find_translation(
    A1: FrequencySet,
    A2: FrequencySet,
    S: ArcSet,
    gamma_prime: float,
    m_max: int,
    gram_cap: int = 4096,
    spectrum: Optional[IndicatorSpectrum] = None,
    mode: str = "linear",
) -> int:
    """
    A translation M >= 1 with A1 and M + A2 disjoint and
    A(A1 u (M + A2), S) >= gamma_prime.

    The linear mode returns the smallest such M. The coarse mode walks in
    strides of max|A2| and bisects back towards the last failing candidate;
    it returns a verified M that need not be the smallest.
    """
    if mode not in SEARCH_MODES:
        raise InvalidInputError("Unknown search mode: %s" % mode)
    if m_max < 1:
        raise InvalidInputError("m_max must be positive, got %s" % m_max)
    search = TranslationSearch(A1, A2, S, gram_cap, spectrum)
    ceiling = min(
        riesz_bounds(A1, S, gram_cap, search.spectrum).lower,
        riesz_bounds(A2, S, gram_cap, search.spectrum).lower,
    )
    if not 0 < gamma_prime < ceiling:
        raise InvalidInputError(
            "gamma' must lie in (0, %s), the smaller block bound; got %s" % (ceiling, gamma_prime)
        )

    if mode == "linear":
        for M in range(1, m_max + 1):
            if search.qualifies(M, gamma_prime):
                return M
        raise SearchExhaustedError(m_max)

    stride = max(1, search.reach)
    lo, hi = 0, None
    M = stride
    while M <= m_max:
        if search.qualifies(M, gamma_prime):
            hi = M
            break
        lo = M
        M += stride
    if hi is None:
        # the strides skip the candidates after the last multiple
        for M in range(lo + 1, m_max + 1):
            if search.qualifies(M, gamma_prime):
                return M
        raise SearchExhaustedError(m_max)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if search.qualifies(mid, gamma_prime):
            hi = mid
        else:
            lo = mid
    return hi


@dataclass(frozen=True)
class AssemblyReport:
    frequencies: FrequencySet
    blocks: List[FrequencySet]
    translations: List[int]
    bound: float
    upper: float
    target: float
    gamma: float
    mode: str
    step_bounds: List[float] = field(default_factory=list)

    @property
    def verified(self) -> bool:
        return self.bound >= self.target - 1e-9

    def to_json_dict(self) -> Dict[str, Any]:
        return {
            "blocks": [b.to_list() for b in self.blocks],
            "translations": list(self.translations),
            "bound": self.bound,
            "upper": self.upper,
            "target": self.target,
            "gamma": self.gamma,
            "mode": self.mode,
            "step_bounds": list(self.step_bounds),
            "size": len(self.frequencies),
        }


def assemble_lambda(
    schedule: BlockSchedule,
    S: ArcSet,
    m_max: int,
    gram_cap: int = 4096,
    spectrum: Optional[IndicatorSpectrum] = None,
    mode: str = "linear",
) -> AssemblyReport:
    """
    Place the blocks one after another: the first stays put and block K+1 is
    translated so that the union so far keeps the bound gamma/2 (1 + 1/(K+1)).
    The final bound is measured again on the assembled set.
    """
    if spectrum is None:
        spectrum = IndicatorSpectrum(S)
    current = schedule.blocks[0]
    translations = [0]
    step_bounds = [schedule.lowers[0]]
    for K, blk in enumerate(schedule.blocks[1:], start=1):
        target = schedule.gamma / 2.0 * (1.0 + 1.0 / (K + 1))
        try:
            M = find_translation(current, blk, S, target, m_max, gram_cap, spectrum, mode)
        except SearchExhaustedError as e:
            raise SearchExhaustedError(m_max, step=K + 1) from e
        current = current.union(blk.translate(M))
        translations.append(M)
        step_bounds.append(target)
        log.info("Placed block %d at M=%d, %d frequencies", K + 1, M, len(current))

    bounds = riesz_bounds(current, S, gram_cap, spectrum)
    target = schedule.gamma / 2.0 * (1.0 + 1.0 / len(schedule.blocks))
    return AssemblyReport(
        frequencies=current,
        blocks=list(schedule.blocks),
        translations=translations,
        bound=bounds.lower,
        upper=bounds.upper,
        target=target,
        gamma=schedule.gamma,
        mode=mode,
        step_bounds=step_bounds,
    )
