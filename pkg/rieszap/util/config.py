from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional, Set, Tuple, Union

import yaml

from rieszap.util.errors import InvalidInputError


@dataclass(frozen=True)
class Settings:
    alpha: float = 0.5
    eps: float = 0.2
    beta: float = 0.25
    c0: Optional[float] = None
    primes: Tuple[int, ...] = (5, 7, 11, 13)
    trunc_L: int = 200
    seed: int = 0
    gram_cap: int = 4096
    arc_cap: int = 5_000_000
    m_max: int = 10_000
    search_mode: str = "linear"
    samples: int = 1000
    lemma1_sizes: Tuple[int, ...] = (16, 64, 256, 1024)
    lemma1_guard: float = 0.2
    lemma5_primes: Tuple[int, ...] = (37, 53)
    lemma5_random: int = 5
    lemma6_alpha: float = 0.4
    lemma6_prime_count: int = 5
    lemma7_rho: float = 0.5
    lemma7_sizes: Tuple[int, ...] = (100, 200, 400, 800)
    lemma7_grid: int = 512
    lemma7_farey: int = 32
    lemma7_overlap_alpha: float = 0.6
    lemma8_primes: Tuple[int, ...] = (3, 5)
    lemma8_vectors: int = 20
    lemma8_ell_max: int = 400
    theorem4_ells: Tuple[int, ...] = tuple(range(4, 14))
    theorem4_c: float = 0.5
    theorem4_delta: float = 0.5
    lemma9_ks: Tuple[int, ...] = (4, 8, 16, 32)
    uniting_primes: Tuple[int, ...] = (5, 7, 11)

    def with_overrides(self, **values: Any) -> Settings:
        changes = {k: v for k, v in values.items() if v is not None}
        unknown = set(changes) - _field_names()
        if unknown:
            raise InvalidInputError("Unknown settings: %s" % ", ".join(sorted(unknown)))
        for name, value in list(changes.items()):
            if isinstance(value, list):
                changes[name] = tuple(value)
        if "primes" in changes and len(changes["primes"]) == 0:
            del changes["primes"]
        return dataclasses.replace(self, **changes)

    def to_json_dict(self) -> Dict[str, Any]:
        out = dataclasses.asdict(self)
        for name, value in out.items():
            if isinstance(value, tuple):
                out[name] = list(value)
        return out


def _field_names() -> Set[str]:
    return {f.name for f in dataclasses.fields(Settings)}


def load_config(path: Optional[Union[str, Path]] = None) -> Settings:
    settings = Settings()
    if path is None:
        return settings
    with open(path, "rt", encoding="UTF-8") as f:
        try:
            document = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise InvalidInputError("Config file %s is not valid YAML: %s" % (path, e)) from e
    if document is None:
        return settings
    if not isinstance(document, dict):
        raise InvalidInputError("Config file %s must hold a mapping" % path)
    return settings.with_overrides(**document)
