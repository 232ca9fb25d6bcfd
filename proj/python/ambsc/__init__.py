"""Outage analysis and simulation for ambient backscatter links sharing a legacy channel."""

from ._ambsc import (
    ConfigError,
    Scenario,
    ValidationError,
    __version__,
    bessel_k0,
    bessel_k1,
    expint_ei,
    fig2,
    fig4,
    load_config,
    outage,
    parse_config,
    product_cdf,
    product_laplace,
    reference_scenario,
    simulate,
    sweep,
    validate,
)

__all__ = [
    "ConfigError",
    "Scenario",
    "ValidationError",
    "__version__",
    "bessel_k0",
    "bessel_k1",
    "expint_ei",
    "fig2",
    "fig4",
    "load_config",
    "outage",
    "parse_config",
    "product_cdf",
    "product_laplace",
    "reference_scenario",
    "simulate",
    "sweep",
    "validate",
]
