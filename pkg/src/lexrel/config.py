"""Pipeline configuration: every knob in one flat dotted-key namespace.

Config files are plain text, one ``key = value`` per line, ``#`` comments.
Unknown keys are errors so typos in sweep configs fail fast.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Union

from .classifier import ARCHITECTURE_PRESETS, MlpArchitecture, TrainConfig
from .errors import ConfigError
from .features import FeatureMode, VectorMode
from .ngrams import ExtractionConfig
from .preprocess import EntitySource, PreprocessConfig
from .scoring import ScoringConfig


@dataclass(frozen=True)
class PipelineConfig:
    preprocess: PreprocessConfig = PreprocessConfig()
    extraction: ExtractionConfig = ExtractionConfig()
    scoring: ScoringConfig = ScoringConfig()
    features: FeatureMode = FeatureMode()
    architecture: MlpArchitecture = MlpArchitecture()
    train: TrainConfig = TrainConfig()
    threshold: float = 0.4
    paths: dict = field(default_factory=dict)


def _parse_bool(value: str) -> bool:
    lowered = value.lower()
    if lowered in ("true", "1", "yes", "on"):
        return True
    if lowered in ("false", "0", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {value!r}")


def _parse_exponent(value: str) -> float:
    if value.lower() in ("inf", "infinite", "infinity"):
        return math.inf
    return float(value)


def parse_architecture(value: str) -> MlpArchitecture:
    name = value.strip()
    if name in ARCHITECTURE_PRESETS:
        return MlpArchitecture.from_preset(name)
    try:
        sizes = tuple(int(part) for part in name.split(",") if part.strip())
        return MlpArchitecture(hidden_sizes=sizes)
    except ValueError:
        raise ValueError(
            f"architecture must be one of {sorted(ARCHITECTURE_PRESETS)} "
            f"or a comma-separated width list, got {value!r}"
        ) from None


def _parse_entity_source(value: str) -> EntitySource:
    try:
        return EntitySource(value.strip().lower())
    except ValueError:
        raise ValueError(
            f"entity_source must be one of "
            f"{[e.value for e in EntitySource]}, got {value!r}"
        ) from None


def _parse_vector_mode(value: str) -> VectorMode:
    try:
        return VectorMode(value.strip().lower())
    except ValueError:
        raise ValueError(
            f"features.mode must be one of "
            f"{[m.value for m in VectorMode]}, got {value!r}"
        ) from None


# key -> (section attribute, field name, parser)
_KEY_TABLE = {
    "preprocess.filter_person_names": ("preprocess", "filter_person_names", _parse_bool),
    "preprocess.filter_citations": ("preprocess", "filter_citations", _parse_bool),
    "preprocess.stem_and_lemmatize": ("preprocess", "stem_and_lemmatize", _parse_bool),
    "preprocess.entity_source": ("preprocess", "entity_source", _parse_entity_source),
    "extraction.max_n": ("extraction", "max_n", int),
    "extraction.min_term_freq": ("extraction", "min_term_freq", int),
    "scoring.epsilon": ("scoring", "epsilon", float),
    "scoring.penalty_exponent": ("scoring", "penalty_exponent", _parse_exponent),
    "scoring.df_weight": ("scoring", "df_weight", float),
    "scoring.hard_filter": ("scoring", "hard_filter", _parse_bool),
    "scoring.score_min": ("scoring", "score_min", float),
    "features.mode": ("features", "mode", _parse_vector_mode),
    "features.l2_normalize": ("features", "l2_normalize", _parse_bool),
    "model.architecture": (None, "architecture", parse_architecture),
    "model.threshold": (None, "threshold", float),
    "train.max_iterations": ("train", "max_iterations", int),
    "train.initial_lr": ("train", "initial_lr", float),
    "train.batch_size": ("train", "batch_size", int),
    "train.val_fraction": ("train", "val_fraction", float),
    "train.early_stop_patience": ("train", "early_stop_patience", int),
    "train.lr_adapt_divisor": ("train", "lr_adapt_divisor", float),
    "train.lr_adapt_patience": ("train", "lr_adapt_patience", int),
    "train.min_delta": ("train", "min_delta", float),
    "train.seed": ("train", "seed", int),
}

_PATH_KEYS = {
    "paths.train_corpus", "paths.val_corpus", "paths.test_corpus",
    "paths.keywords", "paths.model",
}

KNOWN_KEYS = tuple(sorted(_KEY_TABLE)) + tuple(sorted(_PATH_KEYS))


def apply_setting(config: PipelineConfig, key: str, raw_value: str) -> PipelineConfig:
    """Return a copy of ``config`` with one dotted key set from its string form."""
    if key in _PATH_KEYS:
        paths = dict(config.paths)
        paths[key.split(".", 1)[1]] = raw_value
        return replace(config, paths=paths)
    if key not in _KEY_TABLE:
        raise ConfigError(f"unknown config key {key!r}")
    section, field_name, parser = _KEY_TABLE[key]
    try:
        value = parser(raw_value)
    except ValueError as exc:
        raise ConfigError(f"bad value for {key}: {exc}") from exc
    try:
        if section is None:
            return replace(config, **{field_name: value})
        return replace(config, **{section: replace(getattr(config, section), **{field_name: value})})
    except ValueError as exc:
        raise ConfigError(f"invalid {key}: {exc}") from exc


def parse_config_text(text: str, base: PipelineConfig | None = None) -> PipelineConfig:
    config = base or PipelineConfig()
    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {line_no}: expected 'key = value', got {stripped!r}")
        key, _, raw_value = stripped.partition("=")
        config = apply_setting(config, key.strip(), raw_value.strip())
    return config


def load_config(path: Union[str, Path], base: PipelineConfig | None = None) -> PipelineConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    return parse_config_text(text, base)
