"""Gaussian densities and mean composition for the fPDPM model."""

import logging

import numpy as np
from scipy import linalg

from ..errors import NumericError
from ..wavelet import synthesize
from .models import VARIANCE_FLOOR, CovarianceAtom, MixtureState

logger = logging.getLogger(__name__)

_LOG_2PI = float(np.log(2.0 * np.pi))


class LowRankGaussian:
    """Zero-mean Gaussian with covariance Lambda Lambda^T + sigma2 I.

    Factorizes once and evaluates log densities for batches of residuals.
    Uses the Woodbury identity and the matrix-determinant lemma, so each
    evaluation costs O(K^2 L); when K >= L/2 a dense Cholesky factor of the
    full covariance is used instead.

    Args:
        loadings: L x K loading matrix (K may be 0)
        sigma2: Idiosyncratic variance

    Raises:
        NumericError: If the parameters are not finite
    """

    def __init__(self, loadings: np.ndarray, sigma2: float) -> None:
        loadings = np.asarray(loadings, dtype=float)
        if not (np.all(np.isfinite(loadings)) and np.isfinite(sigma2)):
            raise NumericError(
                "Non-finite covariance parameters",
                diagnostic={"sigma2": float(sigma2)},
            )
        self.loadings = loadings
        self.sigma2 = max(float(sigma2), VARIANCE_FLOOR)
        self.L, self.K = loadings.shape
        self.dense = self.K > 0 and self.K >= self.L / 2

        if self.dense:
            cov = loadings @ loadings.T + self.sigma2 * np.eye(self.L)
            self._chol = linalg.cholesky(cov, lower=True)
            self.logdet = 2.0 * float(np.sum(np.log(np.diag(self._chol))))
        elif self.K > 0:
            inner = np.eye(self.K) + loadings.T @ loadings / self.sigma2
            self._chol = linalg.cholesky(inner, lower=True)
            self.logdet = self.L * np.log(self.sigma2) + 2.0 * float(
                np.sum(np.log(np.diag(self._chol)))
            )
        else:
            self.logdet = self.L * np.log(self.sigma2)

    @classmethod
    def from_atom(cls, atom: CovarianceAtom) -> "LowRankGaussian":
        return cls(atom.Lambda, atom.sigma2)

    def logpdf(self, residuals: np.ndarray) -> np.ndarray:
        """Log density of residuals with shape (..., L).

        Raises:
            NumericError: If any residual entry is not finite
        """
        r = np.asarray(residuals, dtype=float)
        if not np.all(np.isfinite(r)):
            raise NumericError("Non-finite residual passed to Gaussian density")
        batch = r.shape[:-1]
        flat = r.reshape(-1, self.L)

        if self.dense:
            z = linalg.solve_triangular(self._chol, flat.T, lower=True)
            quad = np.sum(z * z, axis=0)
        else:
            quad = np.sum(flat * flat, axis=1) / self.sigma2
            if self.K > 0:
                projected = flat @ self.loadings
                z = linalg.solve_triangular(self._chol, projected.T, lower=True)
                quad = quad - np.sum(z * z, axis=0) / self.sigma2**2

        out = -0.5 * (self.L * _LOG_2PI + self.logdet + quad)
        return out.reshape(batch)


def lowrank_gaussian_logdensity(residual: np.ndarray, atom: CovarianceAtom) -> float:
    """Log N(residual; 0, Lambda Lambda^T + sigma2 I) for a single residual vector.

    Raises:
        NumericError: On non-finite input
    """
    return float(LowRankGaussian.from_atom(atom).logpdf(np.asarray(residual, dtype=float)))


def mean_coefficients(state: MixtureState) -> np.ndarray:
    """Coefficient-domain means of all units, shape (n, L).

    Raises:
        StateCorruptionError: If any membership points at a missing atom
    """
    out = np.zeros((state.n, state.grid.L))
    for mixture, idx in zip(state.blocks, state.partition.indices, strict=True):
        mixture.check_labels()
        values = np.stack([atom.value for atom in mixture.atoms])
        out[:, idx] = values[mixture.labels]
    return out


def compose_mean(state: MixtureState, i: int) -> np.ndarray:
    """theta_i = sum_j Psi_j beta_{h_ij j} as a flattened row-major image.

    Raises:
        StateCorruptionError: If a membership of unit i points at a missing atom
    """
    coefficients = np.zeros(state.grid.L)
    for mixture, idx in zip(state.blocks, state.partition.indices, strict=True):
        mixture.check_labels()
        coefficients[idx] = mixture.atoms[int(mixture.labels[i])].value
    return synthesize(coefficients, state.grid, state.family).reshape(-1)


def compose_means(state: MixtureState) -> np.ndarray:
    """compose_mean for all units at once, shape (n, L)."""
    images = synthesize(mean_coefficients(state), state.grid, state.family)
    return images.reshape(state.n, -1)


def log_complete_likelihood(y_i: np.ndarray, state: MixtureState, i: int) -> float:
    """Complete-data log likelihood of unit i including slice indicators.

    Returns -inf when any current membership lies outside its slice set.
    """
    for mixture in (*state.blocks, state.covariance):
        mixture.check_labels()
        if not mixture.weights[int(mixture.labels[i])] > mixture.slices[i]:
            return float("-inf")
    residual = np.asarray(y_i, dtype=float).reshape(-1) - compose_mean(state, i)
    return lowrank_gaussian_logdensity(residual, state.unit_atom(i))
