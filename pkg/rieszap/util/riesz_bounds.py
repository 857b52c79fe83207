from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, Iterable, Iterator, List, NamedTuple, Optional, Tuple, Union

import numpy as np
import numpy.typing as npt
import scipy.linalg

from rieszap.util.circle_set import ArcSet, SAlphaSpec, build_component, build_S_alpha, complement
from rieszap.util.errors import InvalidInputError, ResourceLimitError
from rieszap.util.trig_poly import (
    ComplexArray,
    IndicatorSpectrum,
    IntArray,
    check_frequency_cap,
    dilate,
    dirichlet,
    energy,
)

log = logging.getLogger(__name__)

HERMITIAN_TOL = 1e-10
# |P_N|^2 <= 1/(N sin^2(t/2)) integrated off (-delta, delta) gives (4/pi)/(delta N)
LEMMA1_CONSTANT = 4.0 / math.pi


class FrequencySet:
    def __init__(self, frequencies: Iterable[int]) -> None:
        values = np.array(list(frequencies), dtype=np.int64).ravel()
        if values.size == 0:
            raise InvalidInputError("A frequency set needs at least one frequency")
        if np.any(np.diff(values) <= 0):
            raise InvalidInputError("Frequencies must be strictly increasing")
        check_frequency_cap(values)
        values.flags.writeable = False
        self.values: IntArray = values

    @classmethod
    def from_unsorted(cls, frequencies: Iterable[int]) -> FrequencySet:
        return cls(np.unique(np.fromiter(frequencies, dtype=np.int64)))

    def __len__(self) -> int:
        return int(self.values.size)

    def __iter__(self) -> Iterator[int]:
        return iter(int(v) for v in self.values)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FrequencySet) and np.array_equal(self.values, other.values)

    def __hash__(self) -> int:
        return hash(self.values.tobytes())

    def __repr__(self) -> str:
        return "FrequencySet(%d frequencies in [%d, %d])" % (len(self), self.values[0], self.values[-1])

    def translate(self, M: int) -> FrequencySet:
        return FrequencySet(self.values + M)

    def isdisjoint(self, other: FrequencySet) -> bool:
        return np.intersect1d(self.values, other.values).size == 0

    def union(self, other: FrequencySet) -> FrequencySet:
        return FrequencySet(np.union1d(self.values, other.values))

    def to_list(self) -> List[int]:
        return [int(v) for v in self.values]


def progression(M: int, ell: int, N: int) -> FrequencySet:
    if ell < 1 or N < 1:
        raise InvalidInputError("progression needs ell >= 1 and N >= 1, got ell=%s N=%s" % (ell, N))
    return FrequencySet(M + ell * np.arange(1, N + 1, dtype=np.int64))


def block_length(p: int, alpha: float) -> int:
    # guard floor() against p ** (1/alpha) landing just under an integer
    return int(math.floor(p ** (1.0 / alpha) + 1e-9))


def block(p: int, alpha: float) -> FrequencySet:
    return progression(0, p, block_length(p, alpha))


@dataclass(frozen=True)
class GramMatrix:
    entries: ComplexArray
    frequencies: Optional[FrequencySet] = None
    mu: Optional[float] = None
    source: Optional[str] = None

    @property
    def dim(self) -> int:
        return int(self.entries.shape[0])

    @classmethod
    def from_array(cls, entries: npt.ArrayLike) -> GramMatrix:
        matrix = np.atleast_2d(np.asarray(entries, dtype=np.complex128))
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise InvalidInputError("A Gram matrix must be square, got shape %s" % (matrix.shape,))
        return cls(matrix)

    def to_json_dict(self) -> Dict[str, Any]:
        return {
            "dim": self.dim,
            "mu_S": self.mu,
            "source": self.source,
            "frequencies": None if self.frequencies is None else self.frequencies.to_list(),
            "entries": [[[float(z.real), float(z.imag)] for z in row] for row in self.entries],
        }

    @classmethod
    def from_json_dict(cls, data: Dict[str, Any]) -> GramMatrix:
        entries = np.array([[complex(re, im) for re, im in row] for row in data["entries"]], dtype=np.complex128)
        freqs = data.get("frequencies")
        return cls(
            np.atleast_2d(entries),
            None if freqs is None else FrequencySet(freqs),
            data.get("mu_S"),
            data.get("source"),
        )


GramLike = Union[GramMatrix, npt.ArrayLike]


def _entries(G: GramLike) -> ComplexArray:
    if isinstance(G, GramMatrix):
        return G.entries
    return GramMatrix.from_array(G).entries


def gram(
    freqs: FrequencySet,
    S: ArcSet,
    gram_cap: int = 4096,
    spectrum: Optional[IndicatorSpectrum] = None,
) -> GramMatrix:
    """
    G[j, k] = <e^{i lam_k t}, e^{i lam_j t}> over S, so that a^H G a is the
    energy of sum_k a_k e^{i lam_k t} on S.
    """
    if len(freqs) > gram_cap:
        raise ResourceLimitError("Gram dimension", gram_cap, len(freqs))
    if spectrum is None:
        spectrum = IndicatorSpectrum(S)
    lam = freqs.values
    entries = spectrum(np.subtract.outer(lam, lam))
    np.fill_diagonal(entries, spectrum.mu)
    return GramMatrix(entries, freqs, spectrum.mu, S.tag)


def check_hermitian(G: GramLike) -> ComplexArray:
    m = _entries(G)
    if m.size and float(np.abs(m - m.conj().T).max()) > HERMITIAN_TOL:
        raise InvalidInputError("Matrix is not Hermitian within %s" % HERMITIAN_TOL)
    return m


def extremal_eigs(G: GramLike) -> Tuple[float, float]:
    m = check_hermitian(G)
    w = scipy.linalg.eigh(m, eigvals_only=True)
    return float(w[0]), float(w[-1])


def lowest_eig(G: GramLike) -> float:
    m = _entries(G)
    return float(scipy.linalg.eigh(m, eigvals_only=True, subset_by_index=[0, 0])[0])


def lowest_eigvec(G: GramLike) -> ComplexArray:
    m = check_hermitian(G)
    _, v = scipy.linalg.eigh(m, subset_by_index=[0, 0])
    return np.asarray(v[:, 0])


class RieszBounds(NamedTuple):
    lower: float
    upper: float

    def to_json_dict(self) -> Dict[str, Any]:
        return {"A": self.lower, "B": self.upper}


def riesz_bounds(
    freqs: FrequencySet,
    S: ArcSet,
    gram_cap: int = 4096,
    spectrum: Optional[IndicatorSpectrum] = None,
) -> RieszBounds:
    if S.mu <= 0:
        raise InvalidInputError("Riesz bounds need a set of positive measure")
    return RieszBounds(*extremal_eigs(gram(freqs, S, gram_cap, spectrum)))


def rayleigh(G: GramLike, a: npt.ArrayLike) -> float:
    m = _entries(G)
    vec = np.asarray(a, dtype=np.complex128).ravel()
    norm = float(np.real(np.vdot(vec, vec)))
    if norm == 0:
        raise InvalidInputError("Rayleigh quotient of the zero vector")
    return float(np.real(np.vdot(vec, m @ vec)) / norm)


def rayleigh_min(G: GramLike, samples: int = 1000, seed: int = 0) -> float:
    """Smallest Rayleigh quotient over seeded random complex Gaussian vectors."""
    m = _entries(G)
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((samples, m.shape[0])) + 1j * rng.standard_normal((samples, m.shape[0]))
    quad = np.einsum("si,ij,sj->s", x.conj(), m, x).real
    norms = np.einsum("si,si->s", x.conj(), x).real
    return float((quad / norms).min())


class Lemma1Witness(NamedTuple):
    N: int
    ell: int
    energy: float
    energy_outside: float
    bound: float
    rigorous_bound: float


def witness_step(N: int, beta: float) -> int:
    return max(1, int(math.ceil(N**beta - 1e-9)))


def lemma1_witness_energy(
    spec: SAlphaSpec,
    beta: float,
    N: int,
    S: Optional[ArcSet] = None,
    gram_cap: int = 4096,
    arc_cap: int = 5_000_000,
) -> Lemma1Witness:
    """
    Energy of the dilated Dirichlet polynomial P_N(ell t), ell = ceil(N^beta),
    over the truncated S_alpha and over the circle minus I[ell].
    """
    if not 0 <= beta < spec.alpha:
        raise InvalidInputError("beta must lie in [0, alpha), got %s" % beta)
    if N < 1:
        raise InvalidInputError("N must be positive, got %s" % N)
    if N > gram_cap:
        raise ResourceLimitError("Gram dimension", gram_cap, N)
    if S is None:
        S = build_S_alpha(spec, arc_cap)
    ell = witness_step(N, beta)
    Q = dilate(dirichlet(N), ell)
    on_set = energy(Q, S)
    outside = energy(Q, complement(build_component(spec, ell)))
    delta = spec.delta(ell)
    bound = LEMMA1_CONSTANT / (delta * N)
    rigorous = 2.0 / (math.pi * N * math.tan(delta / 2.0))
    log.debug("lemma1 N=%s ell=%s energy=%.6g outside=%.6g", N, ell, on_set, outside)
    return Lemma1Witness(N, ell, on_set, outside, bound, rigorous)


def loglog_slope(xs: npt.ArrayLike, ys: npt.ArrayLike) -> float:
    lx = np.log(np.asarray(xs, dtype=np.float64))
    ly = np.log(np.asarray(ys, dtype=np.float64))
    slope, _ = np.polyfit(lx, ly, 1)
    return float(slope)
