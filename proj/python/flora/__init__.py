"""Cost-optimized cluster configuration selection from a shared profiling trace."""

from ._flora import (
    CloudConfig,
    ConfigCatalog,
    FloraError,
    JobClass,
    JobSpec,
    ParseError,
    PriceModel,
    ProfilingTrace,
    SynthJobParams,
    ValidationError,
    evaluate,
    filter_test_jobs,
    generate_trace,
    load_configs,
    load_prices,
    load_replay,
    load_trace,
    log_grid,
    misclassification_study,
    price_ratio_sweep,
    rank_configurations,
    select,
    synth_runtime,
    trace_statistics,
)

__all__ = [
    "CloudConfig",
    "ConfigCatalog",
    "FloraError",
    "JobClass",
    "JobSpec",
    "ParseError",
    "PriceModel",
    "ProfilingTrace",
    "SynthJobParams",
    "ValidationError",
    "evaluate",
    "filter_test_jobs",
    "generate_trace",
    "load_configs",
    "load_prices",
    "load_replay",
    "load_trace",
    "log_grid",
    "misclassification_study",
    "price_ratio_sweep",
    "rank_configurations",
    "select",
    "synth_runtime",
    "trace_statistics",
]
