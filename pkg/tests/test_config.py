from __future__ import annotations

import pytest

from rieszap.util.config import Settings, load_config
from rieszap.util.errors import InvalidInputError


def test_defaults() -> None:
    settings = load_config()
    assert settings == Settings()
    assert settings.alpha == 0.5
    assert settings.primes == (5, 7, 11, 13)
    assert settings.c0 is None
    assert settings.search_mode == "linear"
    assert settings.lemma1_guard == 0.2


def test_yaml_overrides(tmp_path) -> None:
    path = tmp_path / "settings.yaml"
    path.write_text("alpha: 0.4\nprimes: [3, 5]\nlemma1_sizes: [16, 32]\nseed: 9\n")
    settings = load_config(path)
    assert settings.alpha == 0.4
    assert settings.primes == (3, 5)
    assert settings.lemma1_sizes == (16, 32)
    assert settings.seed == 9
    assert settings.eps == Settings().eps


def test_empty_file_gives_defaults(tmp_path) -> None:
    path = tmp_path / "empty.yaml"
    path.write_text("")
    assert load_config(path) == Settings()


@pytest.mark.parametrize("text", ["- 1\n- 2\n", "just a string\n"])
def test_non_mapping_rejected(tmp_path, text: str) -> None:
    path = tmp_path / "bad.yaml"
    path.write_text(text)
    with pytest.raises(InvalidInputError):
        load_config(path)


def test_unknown_key_rejected() -> None:
    with pytest.raises(InvalidInputError):
        Settings().with_overrides(gamma=0.3)


def test_none_and_empty_primes_are_ignored() -> None:
    settings = Settings().with_overrides(alpha=None, primes=[], seed=3)
    assert settings.alpha == 0.5
    assert settings.primes == Settings().primes
    assert settings.seed == 3


def test_to_json_dict_uses_lists() -> None:
    data = Settings().with_overrides(uniting_primes=[5, 7]).to_json_dict()
    assert data["uniting_primes"] == [5, 7]
    assert data["theorem4_ells"] == list(range(4, 14))
    assert data["c0"] is None


def test_malformed_yaml_rejected(tmp_path) -> None:
    path = tmp_path / "broken.yaml"
    path.write_text("alpha: [0.5\nprimes: {\n")
    with pytest.raises(InvalidInputError):
        load_config(path)
