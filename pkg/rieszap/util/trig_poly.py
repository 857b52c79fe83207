from __future__ import annotations

import logging
import math
from typing import Any, Dict, List, Mapping, Optional, Tuple

import numpy as np
import numpy.typing as npt

from rieszap.util.circle_set import ArcSet
from rieszap.util.errors import InvalidInputError, ResourceLimitError

log = logging.getLogger(__name__)

FREQ_CAP = 2**46
# lags below this are cached densely; larger ones are computed on demand
DENSE_LAG_LIMIT = 1 << 22
CHUNK_ELEMENTS = 1 << 21
DENSE_SPAN_LIMIT = 1 << 14
PAIRWISE_LIMIT = 4096

IntArray = npt.NDArray[np.int64]
ComplexArray = npt.NDArray[np.complex128]


class TrigPoly:
    """A trigonometric polynomial sum_k a_k e^{ikt} with finitely many integer frequencies."""

    def __init__(self, frequencies: npt.ArrayLike, coefficients: npt.ArrayLike) -> None:
        freqs = np.asarray(frequencies, dtype=np.int64).ravel()
        coeffs = np.asarray(coefficients, dtype=np.complex128).ravel()
        if freqs.shape != coeffs.shape:
            raise InvalidInputError("Got %s frequencies but %s coefficients" % (freqs.size, coeffs.size))
        if np.unique(freqs).size != freqs.size:
            raise InvalidInputError("Frequencies must be distinct")
        check_frequency_cap(freqs)
        order = np.argsort(freqs, kind="mergesort")
        freqs, coeffs = freqs[order], coeffs[order]
        keep = coeffs != 0
        self.frequencies: IntArray = freqs[keep]
        self.coefficients: ComplexArray = coeffs[keep]

    @classmethod
    def from_dict(cls, terms: Mapping[int, complex]) -> TrigPoly:
        return cls(list(terms.keys()), list(terms.values()))

    def to_dict(self) -> Dict[int, complex]:
        return {int(k): complex(a) for k, a in zip(self.frequencies, self.coefficients)}

    def __len__(self) -> int:
        return int(self.frequencies.size)

    def __call__(self, t: npt.ArrayLike) -> ComplexArray:
        return evaluate(self, t)

    def __repr__(self) -> str:
        return "TrigPoly(%d terms)" % len(self)

    @property
    def norm_sq(self) -> float:
        return math.fsum((np.abs(self.coefficients) ** 2).tolist())

    @property
    def abs_sum(self) -> float:
        return math.fsum(np.abs(self.coefficients).tolist())

    def to_json_dict(self) -> Dict[str, Any]:
        return {
            "terms": [
                [int(k), float(a.real), float(a.imag)]
                for k, a in zip(self.frequencies, self.coefficients)
            ]
        }

    @classmethod
    def from_json_dict(cls, data: Dict[str, Any]) -> TrigPoly:
        terms: List[Tuple[int, float, float]] = data["terms"]
        return cls([int(k) for k, _, _ in terms], [complex(re, im) for _, re, im in terms])


def check_frequency_cap(freqs: npt.ArrayLike) -> None:
    values = np.asarray(freqs)
    if values.size and int(np.abs(values).max()) > FREQ_CAP:
        raise ResourceLimitError("frequency magnitude", FREQ_CAP, int(np.abs(values).max()))


def dirichlet(N: int) -> TrigPoly:
    if N < 1:
        raise InvalidInputError("Dirichlet polynomial needs N >= 1, got %s" % N)
    return TrigPoly(np.arange(1, N + 1), np.full(N, 1.0 / math.sqrt(N)))


def dilate(Q: TrigPoly, p: int) -> TrigPoly:
    if p < 1:
        raise InvalidInputError("Dilation factor must be a positive integer, got %s" % p)
    return TrigPoly(Q.frequencies * p, Q.coefficients)


def random_unit(frequencies: npt.ArrayLike, rng: np.random.Generator) -> TrigPoly:
    freqs = np.asarray(frequencies, dtype=np.int64)
    coeffs = rng.standard_normal(freqs.size) + 1j * rng.standard_normal(freqs.size)
    coeffs /= np.sqrt(np.sum(np.abs(coeffs) ** 2))
    return TrigPoly(freqs, coeffs)


def evaluate(Q: TrigPoly, t: npt.ArrayLike) -> ComplexArray:
    ts = np.asarray(t, dtype=np.float64)
    phases = np.exp(1j * np.multiply.outer(ts, Q.frequencies.astype(np.float64)))
    return np.asarray(phases @ Q.coefficients)


def _arc_coefficients(mid: npt.NDArray[np.float64], half: npt.NDArray[np.float64], ns: IntArray) -> ComplexArray:
    # per arc: e^{-inm} sin(nh) / (pi n), written through sinc so n = 0 needs no branch
    out = np.zeros(ns.size, dtype=np.complex128)
    if mid.size == 0 or ns.size == 0:
        return out
    rows = max(1, CHUNK_ELEMENTS // mid.size)
    scale = half / math.pi
    for lo in range(0, ns.size, rows):
        n = ns[lo : lo + rows].astype(np.float64)
        phase = np.exp(-1j * np.multiply.outer(n, mid))
        weight = scale * np.sinc(np.multiply.outer(n, half) / math.pi)
        out[lo : lo + rows] = (phase * weight).sum(axis=1)
    return out


class IndicatorSpectrum:
    """
    Fourier coefficients of the indicator of an arc set under the
    normalized measure, memoized per nonnegative lag.
    """

    def __init__(self, arc_set: ArcSet) -> None:
        self.arc_set = arc_set
        self.mu = arc_set.mu
        self._mid = (arc_set.starts + arc_set.ends) / 2.0
        self._half = (arc_set.ends - arc_set.starts) / 2.0
        self._values = np.zeros(0, dtype=np.complex128)
        self._known = np.zeros(0, dtype=bool)

    def _grow(self, size: int) -> None:
        if size <= self._values.size:
            return
        size = max(size, 2 * self._values.size)
        values = np.zeros(size, dtype=np.complex128)
        known = np.zeros(size, dtype=bool)
        values[: self._values.size] = self._values
        known[: self._known.size] = self._known
        self._values, self._known = values, known

    def _positive(self, lags: IntArray) -> ComplexArray:
        if lags.size == 0:
            return np.zeros(0, dtype=np.complex128)
        top = int(lags.max())
        if top >= DENSE_LAG_LIMIT:
            return _arc_coefficients(self._mid, self._half, lags)
        self._grow(top + 1)
        missing = np.unique(lags[~self._known[lags]])
        if missing.size:
            self._values[missing] = _arc_coefficients(self._mid, self._half, missing)
            self._known[missing] = True
            if missing[0] == 0:
                self._values[0] = self.mu
            log.debug("Computed %d new indicator coefficients", missing.size)
        return np.asarray(self._values[lags])

    def __call__(self, n: npt.ArrayLike) -> ComplexArray:
        lags = np.asarray(n, dtype=np.int64)
        flat = lags.ravel()
        values = self._positive(np.abs(flat))
        values = np.where(flat < 0, np.conj(values), values)
        return values.reshape(lags.shape)

    def coefficient(self, n: int) -> complex:
        return complex(self(np.array([n]))[0])


def fourier_coeff_indicator(a: ArcSet, n: int) -> complex:
    if n == 0:
        return complex(a.mu)
    mid = (a.starts + a.ends) / 2.0
    half = (a.ends - a.starts) / 2.0
    return complex(_arc_coefficients(mid, half, np.array([n], dtype=np.int64))[0])


def energy(Q: TrigPoly, a: ArcSet, spectrum: Optional[IndicatorSpectrum] = None) -> float:
    """
    Integral of |Q|^2 over the arc set under the normalized measure,
    summed exactly from the indicator's Fourier coefficients.
    """
    if len(Q) == 0:
        raise InvalidInputError("energy needs a nonzero polynomial")
    if spectrum is None:
        spectrum = IndicatorSpectrum(a)
    freqs, coeffs = Q.frequencies, Q.coefficients
    offset = freqs - freqs[0]
    step = int(np.gcd.reduce(offset)) if freqs.size > 1 else 1
    span = int(offset[-1] // step) + 1 if step else 1
    if span <= DENSE_SPAN_LIMIT:
        dense = np.zeros(span, dtype=np.complex128)
        dense[offset // step] = coeffs
        # corr[m] = sum_k a_{k+m} conj(a_k) for lag m * step
        corr = np.correlate(dense, dense, mode="full")[span - 1 :]
        fhat = spectrum(np.arange(span, dtype=np.int64) * step)
        value = fhat[0].real * corr[0].real + 2.0 * np.sum((np.conj(fhat[1:]) * corr[1:]).real)
        return float(value)
    if freqs.size > PAIRWISE_LIMIT:
        raise ResourceLimitError("energy term count", PAIRWISE_LIMIT, int(freqs.size))
    diffs = np.subtract.outer(freqs, freqs)
    fhat = spectrum(diffs)
    return float(np.real(np.conj(coeffs) @ fhat @ coeffs))


def energy_bound_cs(Q: TrigPoly, a: ArcSet) -> Tuple[float, float]:
    """The two Cauchy-Schwarz bounds mu(A)(sum|a_k|)^2 and mu(A) N sum|a_k|^2."""
    m = a.mu
    return m * Q.abs_sum**2, m * len(Q) * Q.norm_sq
