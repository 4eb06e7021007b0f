import json
from datetime import date

import pytest
from hypothesis import given
from hypothesis import strategies as st

from snipforge.config import AppConfig, ENV_VAR, KEYS, dump_config, from_mapping, load_config
from snipforge.errors import ConfigError


def test_defaults_without_file(monkeypatch):
    monkeypatch.delenv(ENV_VAR, raising=False)
    cfg = load_config(None)
    assert (cfg.mu, cfg.budget_chars, cfg.top_segments) == (10, 100, 3)
    assert (cfg.match_window_chars, cfg.min_split_chars, cfg.merge_below_chars) == (40, 200, 40)
    assert cfg.judge_provenance_share == 0.6


def test_budget_bound_named(tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"budget_chars": 5}))
    with pytest.raises(ConfigError) as err:
        load_config(path)
    assert "budget_chars" in str(err.value) and "20" in str(err.value)


def test_unknown_key_named():
    with pytest.raises(ConfigError) as err:
        from_mapping({"mu": 3, "colour": "red"})
    assert err.value.field == "colour"


@pytest.mark.parametrize("data, field", [
    ({"mu": 0}, "mu"),
    ({"top_segments": 1.5}, "top_segments"),
    ({"scorer.wF": -1}, "scorer.wF"),
    ({"scorer.reference_date": "yesterday"}, "scorer.reference_date"),
    ({"stemming": "yes"}, "stemming"),
    ({"judge.provenance_share": 1.5}, "judge.provenance_share"),
    ({k: 0 for k in ["scorer.wF", "scorer.wE", "scorer.wL", "scorer.wV", "scorer.wR", "scorer.wM"]}, "multipliers"),
])
def test_invariant_violations(data, field):
    with pytest.raises(ConfigError) as err:
        from_mapping(data)
    assert err.value.field == field


def test_env_var_selects_file(tmp_path, monkeypatch):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"mu": 4}))
    monkeypatch.setenv(ENV_VAR, str(path))
    assert load_config().mu == 4


config_files = st.fixed_dictionaries({}, optional={
    "mu": st.integers(1, 50),
    "budget_chars": st.integers(20, 400),
    "top_segments": st.integers(1, 10),
    "segmenter.min_split_chars": st.integers(1, 1000),
    "scorer.wE": st.floats(0.5, 3.0),
    "scorer.reference_date": st.dates().map(date.isoformat),
    "scorer.profile_terms": st.sets(st.sampled_from(["rust", "kayak", "search"])).map(sorted),
    "stemming": st.booleans(),
    "judge.provenance_share": st.floats(0.0, 1.0),
})


@given(config_files)
def test_dump_load_round_trip(data):
    dumped = dump_config(from_mapping(data))
    normalized = {**dump_config(AppConfig()), **{k: float(v) if isinstance(v, float) else v for k, v in data.items()}}
    assert dumped == normalized
    assert set(dumped) == set(KEYS)
    assert from_mapping(dumped) == from_mapping(data)


def test_profile_terms_are_tokenized():
    cfg = from_mapping({"scorer.profile_terms": ["Rust", "Search Engines"]})
    assert cfg.scorer().profile_terms == {"rust", "search", "engines"}
