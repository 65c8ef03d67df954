"""Stochastic Newton Sampler: Metropolis-Hastings with locally fitted Gaussian proposals."""

from ._core import (
    BaseOverflowError,
    CallableTarget,
    ChainOutput,
    ContractError,
    GaussianFit,
    LineSearchFailure,
    MvGaussianTarget,
    NotNegativeDefinite,
    SamplerError,
    Target,
    check_partition,
    ess,
    fit_gaussian,
    log_pdf,
    make_partition,
    poisson_base,
    poisson_target,
    predict,
    predict_poisson,
    run,
    sample_fit,
    sample_p_value,
    simulate_poisson,
    summarize,
)

__all__ = [name for name in dir() if not name.startswith("_")]
