"""Fit-method abstraction.

This module provides a registry pattern for the clustering methods the
``fit`` command can run, allowing runtime selection by name.
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, replace
from typing import ClassVar

from .baselines import BaselineResult, fit_global_dpm, fit_lpp_timing_surrogate, fit_pca_kmeans
from .model import CoefficientPartition, FunctionalDataset, Hyperparameters, Trace
from .sampler import ChainConfig, run_chain
from .wavelet import WaveletFamily

logger = logging.getLogger(__name__)

__all__ = ["FitMethod", "FitOutcome", "MethodRegistry"]


@dataclass
class FitOutcome:
    """What one fit produced: a posterior trace, a point clustering, or both."""

    method: str
    trace: Trace | None = None
    baseline: BaselineResult | None = None


class FitMethod(ABC):
    """Abstract base class for clustering methods.

    Sampler-based methods run one chain per call; the caller fans chains out
    with distinct seeds.
    Level-specific methods record one membership column per resolution level.
    """

    name: ClassVar[str]
    sampler_based: ClassVar[bool] = True
    level_specific: ClassVar[bool] = False

    @abstractmethod
    def fit(
        self,
        data: FunctionalDataset,
        hyper: Hyperparameters,
        config: ChainConfig,
        family: WaveletFamily = WaveletFamily.HAAR,
    ) -> FitOutcome:
        """Fit the method to a dataset.

        Args:
            data: Dyadic, centered dataset
            hyper: Prior hyperparameters
            config: Chain settings; only the seed is used by non-sampler methods
            family: Wavelet family of the coefficient domain

        Returns:
            FitOutcome with the method's outputs
        """
        pass


class FpdpmMethod(FitMethod):
    name = "fpdpm"
    level_specific = True

    def fit(
        self,
        data: FunctionalDataset,
        hyper: Hyperparameters,
        config: ChainConfig,
        family: WaveletFamily = WaveletFamily.HAAR,
    ) -> FitOutcome:
        trace = run_chain(
            data,
            hyper,
            config,
            partition=CoefficientPartition.by_resolution(data.grid),
            family=family,
            method=self.name,
        )
        return FitOutcome(self.name, trace=trace)


class FpdpmIndependentMethod(FpdpmMethod):
    """fPDPM with loadings fixed at zero."""

    name = "fpdpm-independent"

    def fit(
        self,
        data: FunctionalDataset,
        hyper: Hyperparameters,
        config: ChainConfig,
        family: WaveletFamily = WaveletFamily.HAAR,
    ) -> FitOutcome:
        return super().fit(data, replace(hyper, independent_errors=True), config, family)


class DpmMethod(FitMethod):
    name = "dpm"

    def fit(
        self,
        data: FunctionalDataset,
        hyper: Hyperparameters,
        config: ChainConfig,
        family: WaveletFamily = WaveletFamily.HAAR,
    ) -> FitOutcome:
        result, trace = fit_global_dpm(data, hyper, config, family)
        return FitOutcome(self.name, trace=trace, baseline=result)


class LppTimingMethod(FitMethod):
    name = "lpp-timing"

    def fit(
        self,
        data: FunctionalDataset,
        hyper: Hyperparameters,
        config: ChainConfig,
        family: WaveletFamily = WaveletFamily.HAAR,
    ) -> FitOutcome:
        result, trace = fit_lpp_timing_surrogate(data, hyper, config, family)
        return FitOutcome(self.name, trace=trace, baseline=result)


class PcaKmeansMethod(FitMethod):
    name = "pca-km"
    sampler_based = False

    def fit(
        self,
        data: FunctionalDataset,
        hyper: Hyperparameters,
        config: ChainConfig,
        family: WaveletFamily = WaveletFamily.HAAR,
    ) -> FitOutcome:
        return FitOutcome(self.name, baseline=fit_pca_kmeans(data, seed=config.seed))


class MethodRegistry:
    """Registry of available fit methods, keyed by name."""

    _methods: ClassVar[dict[str, type[FitMethod]]] = {}

    @classmethod
    def register(cls, method_class: type[FitMethod]) -> None:
        """Register a method under its ``name``."""
        cls._methods[method_class.name] = method_class

    @classmethod
    def get(cls, name: str) -> type[FitMethod]:
        """Get a method class by name.

        Raises:
            KeyError: If the method name is not registered
        """
        if name not in cls._methods:
            available = ", ".join(cls._methods) if cls._methods else "none"
            raise KeyError(f"Method '{name}' not found. Available methods: {available}")
        return cls._methods[name]

    @classmethod
    def names(cls) -> list[str]:
        return list(cls._methods)

    @classmethod
    def create(cls, name: str) -> FitMethod:
        return cls.get(name)()


# Register methods
for _method in (FpdpmMethod, FpdpmIndependentMethod, DpmMethod, PcaKmeansMethod, LppTimingMethod):
    MethodRegistry.register(_method)
