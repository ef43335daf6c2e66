"""Stein operators, Stein-factor bounds, and computable distance bounds."""

from .distributions import (
    Beta,
    Binomial,
    Distribution,
    DomainError,
    Exponential,
    Frechet,
    Gamma,
    Hypergeometric,
    NegBinomial,
    Normal,
    ParameterError,
    Poisson,
    Rayleigh,
    RayleighApproxN,
    ScaledParetoMax,
    StdBinomial,
    StudentT,
    Support,
    TailError,
    UnsupportedError,
    catalog_names,
    parse_distribution,
)
from .stein_core import SteinContext, SteinSolution, TestFunction, solve

__version__ = "0.1.0"

__all__ = [
    "Beta", "Binomial", "Distribution", "DomainError", "Exponential", "Frechet",
    "Gamma", "Hypergeometric", "NegBinomial", "Normal", "ParameterError",
    "Poisson", "Rayleigh", "RayleighApproxN", "ScaledParetoMax", "StdBinomial",
    "StudentT", "Support", "TailError", "UnsupportedError", "catalog_names",
    "parse_distribution", "SteinContext", "SteinSolution", "TestFunction", "solve",
]
