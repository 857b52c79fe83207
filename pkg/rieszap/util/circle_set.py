from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np
import numpy.typing as npt
from scipy.special import zeta

from rieszap.util.errors import InvalidInputError, ResourceLimitError

log = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
MERGE_TOL = 1e-12

FloatArray = npt.NDArray[np.float64]


@dataclass(frozen=True)
class Arc:
    start: float
    end: float

    @property
    def length(self) -> float:
        return self.end - self.start


class ArcSet:
    """
    A normalized finite union of half-open arcs [start, end) on [0, 2pi).

    Arcs are disjoint, sorted by start and separated by gaps larger than
    MERGE_TOL. Instances are immutable; build them with normalize().
    """

    def __init__(self, starts: FloatArray, ends: FloatArray, tag: Optional[str] = None) -> None:
        self.starts = np.array(starts, dtype=np.float64)
        self.ends = np.array(ends, dtype=np.float64)
        self.starts.flags.writeable = False
        self.ends.flags.writeable = False
        self.tag = tag

    @classmethod
    def empty(cls, tag: Optional[str] = None) -> ArcSet:
        return cls(np.zeros(0), np.zeros(0), tag)

    @classmethod
    def full(cls, tag: Optional[str] = None) -> ArcSet:
        return cls(np.array([0.0]), np.array([TWO_PI]), tag)

    @property
    def arcs(self) -> List[Arc]:
        return [Arc(float(s), float(e)) for s, e in zip(self.starts, self.ends)]

    @property
    def measure(self) -> float:
        return math.fsum((self.ends - self.starts).tolist())

    @property
    def mu(self) -> float:
        return self.measure / TWO_PI

    def is_empty(self) -> bool:
        return self.starts.size == 0

    def __len__(self) -> int:
        return int(self.starts.size)

    def __iter__(self) -> Iterator[Arc]:
        return iter(self.arcs)

    def __repr__(self) -> str:
        return "ArcSet(%d arcs, measure=%.15g, tag=%r)" % (len(self), self.measure, self.tag)

    def with_tag(self, tag: Optional[str]) -> ArcSet:
        return ArcSet(self.starts, self.ends, tag)

    def to_json_dict(self) -> Dict[str, Any]:
        return {"arcs": [[float(s), float(e)] for s, e in zip(self.starts, self.ends)]}

    @classmethod
    def from_json_dict(cls, data: Dict[str, Any]) -> ArcSet:
        arcs = data["arcs"]
        return normalize([(float(s), float(e)) for s, e in arcs], tag=data.get("tag"))


def normalize(raw: Iterable[Tuple[float, float]], tag: Optional[str] = None) -> ArcSet:
    pairs = np.array(list(raw), dtype=np.float64).reshape(-1, 2)
    return normalize_arrays(pairs[:, 0], pairs[:, 1], tag)


def normalize_arrays(starts: npt.ArrayLike, ends: npt.ArrayLike, tag: Optional[str] = None) -> ArcSet:
    """
    Normalize raw (start, end) pairs into an ArcSet.

    An end below its start wraps counter-clockwise through 2pi. Any pair
    spanning at least a full turn yields the full circle.
    """
    s = np.asarray(starts, dtype=np.float64).ravel()
    e = np.asarray(ends, dtype=np.float64).ravel()
    if s.shape != e.shape:
        raise InvalidInputError("Got %s starts but %s ends" % (s.size, e.size))
    if s.size == 0:
        return ArcSet.empty(tag)
    if not (np.all(np.isfinite(s)) and np.all(np.isfinite(e))):
        raise InvalidInputError("Arc endpoints must be finite")

    lengths = e - s
    wrapped = lengths <= 0
    lengths[wrapped] = np.mod(lengths[wrapped], TWO_PI)
    if np.any(lengths <= 0):
        raise InvalidInputError("Degenerate arc: end equals start modulo 2pi")
    if np.any(lengths >= TWO_PI):
        return ArcSet.full(tag)

    s0 = np.mod(s, TWO_PI)
    s0[s0 >= TWO_PI] = 0.0
    # keep ends bit-exact when nothing moved
    e0 = np.where((s0 == s) & ~wrapped, e, s0 + lengths)
    over = e0 > TWO_PI + MERGE_TOL
    all_s = np.concatenate((s0, np.zeros(int(over.sum()))))
    all_e = np.concatenate((np.minimum(e0, TWO_PI), e0[over] - TWO_PI))
    return _merge(all_s, all_e, tag)


def _merge(starts: FloatArray, ends: FloatArray, tag: Optional[str]) -> ArcSet:
    keep = ends > starts
    starts, ends = starts[keep], ends[keep]
    if starts.size == 0:
        return ArcSet.empty(tag)
    order = np.argsort(starts, kind="mergesort")
    starts, ends = starts[order], ends[order]
    reach = np.maximum.accumulate(ends)
    breaks = np.flatnonzero(starts[1:] > reach[:-1] + MERGE_TOL) + 1
    first = np.concatenate(([0], breaks))
    last = np.concatenate((breaks - 1, [starts.size - 1]))
    return ArcSet(starts[first], reach[last], tag)


def complement(a: ArcSet) -> ArcSet:
    if a.is_empty():
        return ArcSet.full()
    starts = np.concatenate(([0.0], a.ends))
    ends = np.concatenate((a.starts, [TWO_PI]))
    keep = ends > starts
    return ArcSet(starts[keep], ends[keep])


def _sweep(sets: Sequence[ArcSet], depth_needed: int) -> ArcSet:
    starts = np.concatenate([x.starts for x in sets])
    ends = np.concatenate([x.ends for x in sets])
    if starts.size == 0:
        return ArcSet.empty()
    pos = np.concatenate((starts, ends))
    step = np.concatenate((np.ones(starts.size, dtype=np.int64), -np.ones(ends.size, dtype=np.int64)))
    # ends sort before starts at equal positions
    order = np.lexsort((step, pos))
    pos, step = pos[order], step[order]
    depth = np.cumsum(step)
    before = np.concatenate(([0], depth[:-1]))
    opens = pos[(depth >= depth_needed) & (before < depth_needed)]
    closes = pos[(depth < depth_needed) & (before >= depth_needed)]
    return _merge(opens, closes, None)


def union(a: ArcSet, b: ArcSet) -> ArcSet:
    return _sweep([a, b], 1)


def union_all(sets: Sequence[ArcSet]) -> ArcSet:
    return _sweep(list(sets), 1)


def intersect(a: ArcSet, b: ArcSet) -> ArcSet:
    return _sweep([a, b], 2)


def difference(a: ArcSet, b: ArcSet) -> ArcSet:
    return intersect(a, complement(b))


def boolean(op: str, a: ArcSet, b: Optional[ArcSet] = None) -> ArcSet:
    if op == "complement":
        if b is not None:
            raise InvalidInputError("complement takes a single arc set")
        return complement(a)
    if b is None:
        raise InvalidInputError("%s needs two arc sets" % op)
    if op == "union":
        return union(a, b)
    if op == "intersect":
        return intersect(a, b)
    if op == "difference":
        return difference(a, b)
    raise InvalidInputError("Unknown set operation: %s" % op)


def symmetric_difference_measure(a: ArcSet, b: ArcSet) -> float:
    return difference(a, b).measure + difference(b, a).measure


def measure(a: ArcSet) -> float:
    return a.measure


def mu(a: ArcSet) -> float:
    return a.mu


def contains(a: ArcSet, t: float) -> bool:
    t = math.fmod(t, TWO_PI)
    if t < 0:
        t += TWO_PI
    i = int(np.searchsorted(a.starts, t, side="right")) - 1
    return i >= 0 and t < a.ends[i]


def contains_many(a: ArcSet, ts: npt.ArrayLike) -> npt.NDArray[np.bool_]:
    t = np.mod(np.asarray(ts, dtype=np.float64), TWO_PI)
    i = np.searchsorted(a.starts, t, side="right") - 1
    inside = i >= 0
    inside[inside] = t[inside] < a.ends[i[inside]]
    return inside


def coverage_depth(starts: npt.ArrayLike, ends: npt.ArrayLike) -> int:
    """Largest number of the given half-open arcs (which may overlap or wrap) covering one point."""
    s = np.asarray(starts, dtype=np.float64).ravel()
    lengths = np.asarray(ends, dtype=np.float64).ravel() - s
    if s.size == 0:
        return 0
    turns = np.floor(lengths / TWO_PI)
    base = int(turns.sum())
    rest = lengths - turns * TWO_PI
    keep = rest > 0
    s0 = np.mod(s[keep], TWO_PI)
    e0 = s0 + rest[keep]
    over = e0 > TWO_PI
    piece_s = np.concatenate((s0, np.zeros(int(over.sum()))))
    piece_e = np.concatenate((np.minimum(e0, TWO_PI), e0[over] - TWO_PI))
    if piece_s.size == 0:
        return base
    pos = np.concatenate((piece_s, piece_e))
    step = np.concatenate((np.ones(piece_s.size, dtype=np.int64), -np.ones(piece_e.size, dtype=np.int64)))
    order = np.lexsort((step, pos))
    return base + int(np.cumsum(step[order]).max())


@dataclass(frozen=True)
class SAlphaSpec:
    alpha: float
    eps: float
    c0: float
    L: int

    def __post_init__(self) -> None:
        if not 0 < self.alpha < 1:
            raise InvalidInputError("alpha must lie in (0, 1), got %s" % self.alpha)
        if not 0 < self.eps < 0.25:
            raise InvalidInputError("eps must lie in (0, 1/4), got %s" % self.eps)
        if not 0 < self.c0 < self.eps:
            raise InvalidInputError("c0 must lie in (0, eps), got %s" % self.c0)
        if self.L < 0:
            raise InvalidInputError("Truncation level must be nonnegative, got %s" % self.L)
        if self.budget() >= self.eps:
            raise InvalidInputError(
                "2*c0*zeta(1/alpha) = %s is not below eps = %s" % (self.budget(), self.eps)
            )

    @classmethod
    def create(cls, alpha: float, eps: float, L: int, c0: Optional[float] = None) -> SAlphaSpec:
        if c0 is None:
            c0 = auto_c0(alpha, eps)
        return cls(alpha=float(alpha), eps=float(eps), c0=float(c0), L=int(L))

    def delta(self, ell: int) -> float:
        return self.c0 / float(ell) ** (1.0 / self.alpha)

    def deltas(self, ells: npt.ArrayLike) -> FloatArray:
        return self.c0 / np.asarray(ells, dtype=np.float64) ** (1.0 / self.alpha)

    def budget(self) -> float:
        return 2.0 * self.c0 * float(zeta(1.0 / self.alpha))

    def tail_bound(self) -> float:
        """Total length, in radians, of the components beyond the truncation level."""
        return 2.0 * self.c0 * float(zeta(1.0 / self.alpha, self.L + 1))

    def truncated(self, L: int) -> SAlphaSpec:
        return SAlphaSpec(self.alpha, self.eps, self.c0, L)

    def to_json_dict(self) -> Dict[str, Any]:
        return {
            "alpha": self.alpha,
            "eps": self.eps,
            "c0": self.c0,
            "L": self.L,
            "tail_bound": self.tail_bound(),
        }

    @classmethod
    def from_json_dict(cls, data: Dict[str, Any]) -> SAlphaSpec:
        return cls(float(data["alpha"]), float(data["eps"]), float(data["c0"]), int(data["L"]))


def auto_c0(alpha: float, eps: float) -> float:
    if not 0 < alpha < 1:
        raise InvalidInputError("alpha must lie in (0, 1), got %s" % alpha)
    c0 = 0.99 * eps / (2.0 * float(zeta(1.0 / alpha)))
    return min(c0, 0.99 * eps)


def _coprime_mask(js: npt.NDArray[np.int64], ells: npt.NDArray[np.int64]) -> npt.NDArray[np.bool_]:
    # J[1] keeps the arc at 0
    return (np.gcd(js, ells) == 1) | (ells == 1)


def build_component(spec: SAlphaSpec, ell: int, variant: str = "full") -> ArcSet:
    if ell < 1:
        raise InvalidInputError("ell must be a positive integer, got %s" % ell)
    js = np.arange(ell, dtype=np.int64)
    if variant == "coprime":
        js = js[_coprime_mask(js, np.full(ell, ell, dtype=np.int64))]
    elif variant != "full":
        raise InvalidInputError("Unknown component variant: %s" % variant)
    centers = TWO_PI * js / ell
    half = spec.delta(ell) / ell
    name = "I" if variant == "full" else "J"
    return normalize_arrays(centers - half, centers + half, tag="%s[%d]" % (name, ell))


def removed_union(spec: SAlphaSpec, arc_cap: int = 5_000_000, variant: str = "full") -> ArcSet:
    L = spec.L
    if L == 0:
        return ArcSet.empty()
    count = L * (L + 1) // 2
    if count > arc_cap:
        raise ResourceLimitError("arc count", arc_cap, count)
    sizes = np.arange(1, L + 1, dtype=np.int64)
    ells = np.repeat(sizes, sizes)
    js = np.arange(count, dtype=np.int64) - np.repeat(np.cumsum(sizes) - sizes, sizes)
    if variant == "coprime":
        keep = _coprime_mask(js, ells)
        js, ells = js[keep], ells[keep]
    elif variant != "full":
        raise InvalidInputError("Unknown component variant: %s" % variant)
    centers = TWO_PI * js / ells
    half = spec.deltas(ells) / ells
    return normalize_arrays(centers - half, centers + half)


def build_S_alpha(spec: SAlphaSpec, arc_cap: int = 5_000_000, variant: str = "full") -> ArcSet:
    removed = removed_union(spec, arc_cap, variant)
    result = complement(removed).with_tag("S_alpha(alpha=%g, L=%d)" % (spec.alpha, spec.L))
    log.info(
        "Built S_alpha alpha=%s L=%s: %s arcs, measure %.12f, tail bound %.3e",
        spec.alpha,
        spec.L,
        len(result),
        result.measure,
        spec.tail_bound(),
    )
    return result


def dilate_mod(a: ArcSet, p: int) -> ArcSet:
    if p < 1:
        raise InvalidInputError("Dilation factor must be a positive integer, got %s" % p)
    if a.is_empty():
        return ArcSet.empty()
    return normalize_arrays(p * a.starts, p * a.ends)
