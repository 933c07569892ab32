"""Closed-form output spectra of cloner blocks and the Unruh block weights.

The weight-``k`` block of the Unruh channel, normalized, is a 1->k universal
cloner; its output spectrum for any pure input is ``{b/M_k : b = 1..k}`` with
multiplicities ``m_b``.  For the cyclic trade-off ensembles the receiver and
environment spectra are linear statistics ``alpha(b)/M_k`` over occupation
vectors.  Atoms are kept unmerged, ordered exactly as
:func:`unruhcap.combinat.compositions`, so spectra compare bit-for-bit
against the matrix oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .combinat import block_dimension, block_normalizer, composition_matrix, eigen_multiplicity

__all__ = [
    "MASS_TOL",
    "Spectrum",
    "EnsembleParams",
    "UnruhConfig",
    "ConvergenceError",
    "cloner_spectrum",
    "ensemble_spectrum_B",
    "ensemble_spectrum_E",
    "unruh_weight",
    "unruh_weights",
    "truncation_horizon",
]

MASS_TOL = 1e-12


class ConvergenceError(RuntimeError):
    """Raised when a series truncation cannot meet its target within the hard cap."""


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Spectrum:
    """Finite probability distribution as (value, multiplicity) atoms."""

    values: np.ndarray
    multiplicities: np.ndarray

    def __post_init__(self):
        values = _readonly(np.array(self.values, dtype=np.float64))
        mults = _readonly(np.array(self.multiplicities, dtype=np.int64))
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "multiplicities", mults)
        if values.ndim != 1 or values.shape != mults.shape:
            raise ValueError("values and multiplicities must be 1-D and aligned")
        if values.size == 0:
            raise ValueError("spectrum needs at least one atom")
        if np.any(values < 0.0):
            raise ValueError("spectrum probabilities must be nonnegative")
        if np.any(mults < 1):
            raise ValueError("multiplicities must be positive integers")
        if abs(self.mass - 1.0) > MASS_TOL:
            raise ValueError(f"spectrum mass {self.mass!r} deviates from 1 beyond {MASS_TOL}")

    @classmethod
    def from_atoms(cls, atoms) -> "Spectrum":
        vals, mults = zip(*atoms)
        return cls(np.asarray(vals, dtype=np.float64), np.asarray(mults, dtype=np.int64))

    @property
    def mass(self) -> float:
        return float(np.dot(self.values, self.multiplicities))

    @property
    def atoms(self) -> list[tuple[float, int]]:
        return [(float(v), int(m)) for v, m in zip(self.values, self.multiplicities)]

    def eigenvalues(self, pad_to: int | None = None) -> np.ndarray:
        """Atoms expanded by multiplicity, ascending, optionally zero-padded."""
        expanded = np.repeat(self.values, self.multiplicities)
        if pad_to is not None:
            if pad_to < expanded.size:
                raise ValueError("pad_to smaller than the expanded spectrum")
            expanded = np.concatenate([np.zeros(pad_to - expanded.size), expanded])
        return np.sort(expanded)


@dataclass(frozen=True)
class EnsembleParams:
    """Point on the probability simplex: the cyclic-ensemble weights."""

    mu: tuple[float, ...]

    def __post_init__(self):
        mu = tuple(float(x) for x in self.mu)
        object.__setattr__(self, "mu", mu)
        if len(mu) < 2:
            raise ValueError("ensemble needs at least 2 weights")
        if any(x < 0.0 for x in mu):
            raise ValueError("ensemble weights must be nonnegative")
        if abs(math.fsum(mu) - 1.0) > MASS_TOL:
            raise ValueError("ensemble weights must sum to 1")

    @classmethod
    def uniform(cls, d: int) -> "EnsembleParams":
        return cls(tuple([1.0 / d] * d))

    @classmethod
    def vertex(cls, d: int, j: int = 0) -> "EnsembleParams":
        if not 0 <= j < d:
            raise ValueError("vertex index out of range")
        mu = [0.0] * d
        mu[j] = 1.0
        return cls(tuple(mu))

    @property
    def dimension(self) -> int:
        return len(self.mu)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.mu, dtype=np.float64)


def _as_ensemble(mu, d: int) -> EnsembleParams:
    params = mu if isinstance(mu, EnsembleParams) else EnsembleParams(tuple(mu))
    if params.dimension != d:
        raise ValueError(f"ensemble has {params.dimension} weights, expected {d}")
    return params


@dataclass(frozen=True)
class UnruhConfig:
    """Channel dimension, acceleration parameter z = tanh^2 r, and numerics."""

    d: int
    z: float
    truncation_eps: float = 1e-8
    log_base: float | None = None
    hard_cap: int = 10_000

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d < 2:
            raise ValueError("dimension must be an integer >= 2")
        if not 0.0 <= self.z < 1.0:
            raise ValueError("acceleration parameter must satisfy 0 <= z < 1")
        if not self.truncation_eps > 0.0:
            raise ValueError("truncation_eps must be positive")
        if self.log_base is not None and not self.log_base > 1.0:
            raise ValueError("log base must exceed 1")
        if self.hard_cap < 1:
            raise ValueError("hard cap must be >= 1")

    @property
    def base(self) -> float:
        return float(self.d) if self.log_base is None else float(self.log_base)


def cloner_spectrum(d: int, k: int) -> Spectrum:
    """Output spectrum {(b/M_k, m_b)} of a 1->k cloner for any pure input."""
    m_k = block_normalizer(d, k)
    values = np.array([b / m_k for b in range(1, k + 1)], dtype=np.float64)
    mults = np.array([eigen_multiplicity(d, k, b) for b in range(1, k + 1)], dtype=np.int64)
    return Spectrum(values, mults)


def ensemble_spectrum_B(d: int, k: int, mu) -> Spectrum:
    """Receiver spectrum of the cyclic ensemble: one atom alpha(b)/M_k per
    weight-``k`` occupation vector, in composition order, unmerged."""
    params = _as_ensemble(mu, d)
    if k < 1:
        raise ValueError("block index must be >= 1")
    comps = composition_matrix(d, k)
    alpha = comps @ params.as_array()
    values = alpha / block_normalizer(d, k)
    return Spectrum(values, np.ones(values.size, dtype=np.int64))


def ensemble_spectrum_E(d: int, k: int, mu) -> Spectrum:
    """Environment spectrum of the cyclic ensemble: (1 + alpha(b))/M_k per
    weight-``k-1`` occupation vector."""
    params = _as_ensemble(mu, d)
    if k < 1:
        raise ValueError("block index must be >= 1")
    comps = composition_matrix(d, k - 1)
    gamma = comps @ params.as_array() + 1.0
    values = gamma / block_normalizer(d, k)
    return Spectrum(values, np.ones(values.size, dtype=np.int64))


def unruh_weight(d: int, z: float, k: int) -> float:
    """Block weight p_k(z) = (1-z)^(d+1) z^(k-1) C(k+d-1, d)."""
    if not isinstance(d, int) or d < 2:
        raise ValueError("dimension must be an integer >= 2")
    if not 0.0 <= z < 1.0:
        raise ValueError("acceleration parameter must satisfy 0 <= z < 1")
    if not isinstance(k, int) or k < 1:
        raise ValueError("block index must be an integer >= 1")
    if z == 0.0:
        return 1.0 if k == 1 else 0.0
    # Log space: the binomial outgrows float range long before p_k does.
    log_p = (
        (d + 1) * math.log1p(-z)
        + (k - 1) * math.log(z)
        + math.log(block_normalizer(d, k))
    )
    return math.exp(log_p)


def _tail_term(d: int, z: float, k: int, base: float) -> float:
    """Majorant weight p_k * (1 + log_base dim_k) for the truncation bound."""
    return unruh_weight(d, z, k) * (1.0 + math.log(block_dimension(d, k)) / math.log(base))


def truncation_horizon(cfg: UnruhConfig) -> int:
    """Smallest K whose entropy-weighted tail is certified below truncation_eps.

    Each discarded block can contribute at most p_k * (1 + log_base dim_k) to
    any region quantity.  Those terms eventually decay faster than sqrt(z)^k;
    once that geometric dominance is reached the tail beyond K is bounded by
    t_{K+1} / (1 - sqrt(z)), and the first K certified below the target is
    returned.  Raises :class:`ConvergenceError` past the hard cap.
    """
    if cfg.z == 0.0:
        return 1
    base = cfg.base
    sqrt_z = math.sqrt(cfg.z)
    slack = cfg.truncation_eps * (1.0 - sqrt_z)
    t_prev = _tail_term(cfg.d, cfg.z, 1, base)
    for k in range(1, cfg.hard_cap + 1):
        t_next = _tail_term(cfg.d, cfg.z, k + 1, base)
        if t_next <= sqrt_z * t_prev and t_next <= slack:
            return k
        t_prev = t_next
    raise ConvergenceError(
        f"truncation horizon for d={cfg.d}, z={cfg.z} exceeds hard cap {cfg.hard_cap}"
    )


def unruh_weights(cfg: UnruhConfig) -> np.ndarray:
    """Block weights p_1..p_K at the config's own truncation horizon."""
    horizon = truncation_horizon(cfg)
    return np.array([unruh_weight(cfg.d, cfg.z, k) for k in range(1, horizon + 1)])
