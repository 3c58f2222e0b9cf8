"""Python access to the crossdock order-picking simulator."""

from ._core import (
    ConfigError,
    __version__,
    compare_means,
    compare_variances,
    default_config_yaml,
    expected_replications,
    half_width,
    read_archive,
    run_experiment,
    run_replication,
    student_t_quantile,
    fisher_f_quantile,
    trace_replication,
    validate,
)

__all__ = [
    "ConfigError",
    "__version__",
    "compare_means",
    "compare_variances",
    "default_config_yaml",
    "expected_replications",
    "half_width",
    "read_archive",
    "run_experiment",
    "run_replication",
    "student_t_quantile",
    "fisher_f_quantile",
    "trace_replication",
    "validate",
]
