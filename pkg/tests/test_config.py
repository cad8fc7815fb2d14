import math

import pytest

from lexrel.config import PipelineConfig, apply_setting, load_config, parse_config_text
from lexrel.errors import ConfigError
from lexrel.preprocess import EntitySource


def test_defaults_match_chosen_configuration():
    config = PipelineConfig()
    assert config.extraction.max_n == 4
    assert config.extraction.min_term_freq == 30
    assert config.scoring.epsilon == 0.01
    assert config.scoring.penalty_exponent == 10.0
    assert config.scoring.df_weight == 0.75
    assert config.scoring.hard_filter is False
    assert config.architecture.hidden_sizes == (512, 256, 128, 64)
    assert config.threshold == 0.4
    assert config.train.max_iterations == 500
    assert config.preprocess.stem_and_lemmatize is False


def test_parse_full_file():
    text = """
    # comment
    preprocess.stem_and_lemmatize = true
    preprocess.entity_source = sidecar
    extraction.max_n = 5
    scoring.penalty_exponent = inf
    scoring.df_weight = 0.5
    features.mode = raw_count
    model.architecture = A3
    model.threshold = 0.5
    train.seed = 99
    paths.train_corpus = data/train.jsonl
    """
    config = parse_config_text(text)
    assert config.preprocess.stem_and_lemmatize is True
    assert config.preprocess.entity_source is EntitySource.SIDECAR
    assert config.extraction.max_n == 5
    assert math.isinf(config.scoring.penalty_exponent)
    assert config.scoring.df_weight == 0.5
    assert config.features.mode.value == "raw_count"
    assert config.architecture.hidden_sizes == (2048, 256, 64)
    assert config.threshold == 0.5
    assert config.train.seed == 99
    assert config.paths["train_corpus"] == "data/train.jsonl"


def test_custom_architecture_widths():
    config = apply_setting(PipelineConfig(), "model.architecture", "16,8")
    assert config.architecture.hidden_sizes == (16, 8)


def test_unknown_key_rejected():
    with pytest.raises(ConfigError, match="unknown config key"):
        parse_config_text("scoring.pennalty_exponent = 10")


def test_bad_value_rejected():
    with pytest.raises(ConfigError):
        parse_config_text("extraction.max_n = soon")
    with pytest.raises(ConfigError):
        parse_config_text("scoring.epsilon = -1")
    with pytest.raises(ConfigError):
        parse_config_text("preprocess.filter_citations = maybe")


def test_malformed_line_rejected():
    with pytest.raises(ConfigError, match="key = value"):
        parse_config_text("just words")


def test_load_config_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "nope.cfg")


def test_settings_do_not_mutate_base():
    base = PipelineConfig()
    changed = apply_setting(base, "extraction.max_n", "2")
    assert base.extraction.max_n == 4
    assert changed.extraction.max_n == 2
