"""Offline monitoring of spatio-temporal logic over graphs."""

import json

from ._sstl import (
    BoolResult,
    Error,
    EvaluationError,
    Formula,
    FormatError,
    HorizonError,
    IntegrationError,
    ParseError,
    QuantResult,
    SchemaError,
    SignalError,
    Space,
    SpaceError,
    Trace,
    monitor_bool,
    monitor_quant,
    parse_formula,
    parse_grid,
    parse_script,
    pearson,
    quant_surround,
    read_graph,
    read_trace,
    regular_grid,
    simulate_turing,
    split_seed,
    wilson_interval,
    write_trace,
)
from ._sstl import smc_estimate as _smc_estimate


def smc_estimate(formula, location="", runs=100, alpha=0.05, seed=0, jobs=0, **model):
    """Estimate on the reaction-diffusion model; returns the JSON report as a dict."""
    return json.loads(_smc_estimate(formula, location, runs, alpha, seed, jobs, **model))


__all__ = [name for name in dir() if not name.startswith("_") and name != "json"]
