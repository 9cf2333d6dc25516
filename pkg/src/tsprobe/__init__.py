"""tsprobe: decomposition-based time series generation and
forecasting-robustness workbench.

Library layout mirrors the processing pipeline: series containers and
synthesis (series), STL decomposition (decomposition), the four-feature
representation (features), interval-scoped transformations (transforms),
the 2-d PCA instance space (instance_space), forecasting models
(forecasting), error metrics (metrics), the level-jump retraining
experiment (augmentation), report figures (plotting), an HTTP workbench
API (service), and the tsprobe CLI (cli).
"""

from .decomposition import Decomposition, StlConfig, loess_smooth, stl_decompose
from .exceptions import (
    ConfigError,
    ParameterError,
    ParseError,
    TsprobeError,
    ValidationError,
)
from .features import FeatureVector, TrendFit, compute_features, fit_trend_line
from .forecasting import (
    DenseModel,
    DenseNetConfig,
    SeasonalNaive,
    load_model,
    save_model,
    seasonal_naive,
    train_dense,
)
from .instance_space import InstanceSpace, fit_pca, histogram, project
from .metrics import ErrorSummary, HorizonErrors, compute_errors, mae, mase, smape, summarize
from .series import (
    Dataset,
    SynthConfig,
    TimeSeries,
    load_jsonl,
    save_jsonl,
    synthesize_dataset,
)
from .transforms import (
    Interval,
    TransformStep,
    TransformedSeries,
    add_noise,
    apply_pipeline,
    parse_pipeline,
    transform_seasonal,
    transform_trend,
    translate_level,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "Dataset",
    "Decomposition",
    "DenseModel",
    "DenseNetConfig",
    "ErrorSummary",
    "FeatureVector",
    "HorizonErrors",
    "InstanceSpace",
    "Interval",
    "ParameterError",
    "ParseError",
    "SeasonalNaive",
    "StlConfig",
    "SynthConfig",
    "TimeSeries",
    "TransformStep",
    "TransformedSeries",
    "TrendFit",
    "TsprobeError",
    "ValidationError",
    "add_noise",
    "apply_pipeline",
    "compute_errors",
    "compute_features",
    "fit_pca",
    "fit_trend_line",
    "histogram",
    "load_jsonl",
    "load_model",
    "loess_smooth",
    "mae",
    "mase",
    "parse_pipeline",
    "project",
    "save_jsonl",
    "save_model",
    "seasonal_naive",
    "smape",
    "stl_decompose",
    "summarize",
    "synthesize_dataset",
    "train_dense",
    "transform_seasonal",
    "transform_trend",
    "translate_level",
]
