"""Draws from the coefficient and covariance base measures."""

from typing import Literal

import numpy as np

from .models import CoefficientAtom, CovarianceAtom, Hyperparameters


def draw_coefficient_atom(
    hyper: Hyperparameters, level: int, size: int, rng: np.random.Generator
) -> CoefficientAtom:
    """tau2_k ~ Exp(omega2) (rate), then beta_k ~ N(0, tau2_k)."""
    tau2 = rng.exponential(scale=1.0 / hyper.omega2, size=size)
    value = rng.normal(0.0, np.sqrt(tau2))
    return CoefficientAtom(level=level, value=value, tau2=tau2)


def draw_mgp_increments(
    hyper: Hyperparameters, K: int, rng: np.random.Generator, first: bool = True  # noqa: N803
) -> np.ndarray:
    """delta_1 ~ Ga(a1, 1), delta_m ~ Ga(a2, 1) for m >= 2.

    With ``first=False`` every increment uses a2 (used when appending columns).
    """
    shapes = np.full(K, hyper.mgp.a2)
    if first and K > 0:
        shapes[0] = hyper.mgp.a1
    return rng.gamma(shapes, 1.0)


def draw_loading_column(
    precision_scale: float, L: int, rng: np.random.Generator  # noqa: N803
) -> tuple[np.ndarray, np.ndarray]:
    """One MGP column: phi_l ~ Ga(3/2, 3/2), lambda_l ~ N(0, 1/(phi_l * scale)).

    Args:
        precision_scale: xi_r * e for the column
        L: Column length
        rng: Random generator

    Returns:
        Tuple of (loadings, phi)
    """
    phi = rng.gamma(1.5, 1.0 / 1.5, size=L)
    loadings = rng.normal(0.0, 1.0 / np.sqrt(phi * precision_scale))
    return loadings, phi


def draw_covariance_atom(
    hyper: Hyperparameters, L: int, rng: np.random.Generator  # noqa: N803
) -> CovarianceAtom:
    """sigma^-2 ~ Ga(a_s, b_s); delta, e, phi and Lambda from the MGP prior."""
    sigma2 = 1.0 / rng.gamma(hyper.inv_gamma.a_s, 1.0 / hyper.inv_gamma.b_s)
    if hyper.independent_errors:
        return CovarianceAtom(
            Lambda=np.zeros((L, 0)), sigma2=sigma2, phi=np.zeros((L, 0)), delta=np.zeros(0)
        )

    K = min(hyper.k_init, hyper.factor_cap(L))  # noqa: N806
    delta = draw_mgp_increments(hyper, K, rng)
    e = float(rng.gamma(hyper.mgp.a_e, 1.0 / hyper.mgp.b_e))
    xi = np.cumprod(delta)
    phi = rng.gamma(1.5, 1.0 / 1.5, size=(L, K))
    Lambda = rng.normal(0.0, 1.0 / np.sqrt(phi * xi[None, :] * e))  # noqa: N806
    return CovarianceAtom(Lambda=Lambda, sigma2=sigma2, phi=phi, delta=delta, e=e)


def draw_from_base_measures(
    hyper: Hyperparameters,
    target: int | Literal["covariance"],
    size: int,
    rng: np.random.Generator,
) -> CoefficientAtom | CovarianceAtom:
    """Draw a fresh atom for a coefficient block or for the covariance family.

    Args:
        hyper: Model hyperparameters
        target: Block index, or "covariance"
        size: Block size m_j, or L for covariance atoms
        rng: Random generator
    """
    if target == "covariance":
        return draw_covariance_atom(hyper, size, rng)
    return draw_coefficient_atom(hyper, int(target), size, rng)
