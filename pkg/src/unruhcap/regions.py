"""Trade-off capacity regions for cloner blocks and the Unruh channel.

Computes the classical/quantum (CQ) and classical/entanglement (CE) boundary
curves, the full CQE dynamic-region bounds, and the public/private/secret-key
(RPS) bounds, for either a single 1->k cloner block or the geometric mixture
of blocks that is the Unruh channel.  Sweeps run over the cyclic-ensemble
simplex (which suffices for all Pareto-optimal points), are hulled with a
monotone chain, and the weighted dynamic capacity objective is maximized by
a deterministic lattice search plus bounded polytope refinement.

All rates are in dits of the configured log base (default: the dimension d).
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernels
from .combinat import block_dimension, composition_matrix
from .engine import TradeoffEvaluator
from .entropy import EntropyValue, ensemble_conditional_entropy_A, mixture_entropy, shannon_entropy
from .spectra import (
    EnsembleParams,
    UnruhConfig,
    cloner_spectrum,
    ensemble_spectrum_B,
    ensemble_spectrum_E,
    unruh_weights,
)

__all__ = [
    "HULL_TOL",
    "PROTOCOL_RAYS",
    "EntropyTriple",
    "RegionSample",
    "CapacityWeights",
    "ChannelSpec",
    "UnruhAggregate",
    "SearchSettings",
    "DynamicCapacityProblem",
    "DynamicCapacityResult",
    "CurveResult",
    "SurfaceResult",
    "cloner_entropy_triple",
    "cq_point",
    "ce_point",
    "unruh_entropy_triple",
    "cqe_bounds",
    "cqe_corner",
    "dynamic_objective",
    "dynamic_capacity",
    "rps_bounds",
    "pareto_hull_indices",
    "pareto_hull_2d",
    "simplex_grid",
    "default_resolution",
    "cq_curve",
    "ce_curve",
    "region_surface_cqe",
    "rps_region",
]

HULL_TOL = 1e-9

# Unit resource vectors (C, Q, E) of the reference protocols: teleportation,
# super-dense coding, entanglement distribution.  Adding any nonnegative
# combination keeps a rate triple inside the region.
PROTOCOL_RAYS = {
    "TP": (-2.0, 1.0, -1.0),
    "SD": (2.0, -1.0, -1.0),
    "ED": (0.0, -1.0, 1.0),
}


@dataclass(frozen=True)
class EntropyTriple:
    """The four entropies every region bound is built from (one log base)."""

    h_b: EntropyValue
    h_b_given_x: EntropyValue
    h_e_given_x: EntropyValue
    h_a_given_x: EntropyValue

    def __post_init__(self):
        bases = {v.base for v in (self.h_b, self.h_b_given_x, self.h_e_given_x, self.h_a_given_x)}
        if len(bases) != 1:
            raise ValueError("entropy triple mixes log bases")

    @property
    def base(self) -> float:
        return self.h_b.base


@dataclass(frozen=True)
class RegionSample:
    """One rate tuple with the parameters that generated it."""

    rates: tuple[float, ...]
    ensemble: EnsembleParams
    channel: tuple

    def __post_init__(self):
        if not all(math.isfinite(r) for r in self.rates):
            raise ValueError("rates must be finite")


@dataclass(frozen=True)
class CapacityWeights:
    """Nonnegative weights of the dynamic capacity objective."""

    lambda_w: float = 0.0
    mu_w: float = 0.0

    def __post_init__(self):
        if self.lambda_w < 0.0 or self.mu_w < 0.0:
            raise ValueError("capacity weights must be nonnegative")


@dataclass(frozen=True)
class ChannelSpec:
    """Either a single 1->k cloner block (``k``) or the Unruh channel (``z``)."""

    d: int
    k: int | None = None
    z: float | None = None
    truncation_eps: float = 1e-8
    log_base: float | None = None

    def __post_init__(self):
        if (self.k is None) == (self.z is None):
            raise ValueError("exactly one of k (cloner) or z (Unruh) must be set")
        if self.k is not None and (not isinstance(self.k, int) or self.k < 1):
            raise ValueError("cloner index k must be an integer >= 1")
        if self.z is not None:
            # Full range validation is delegated to UnruhConfig.
            self.unruh_config()
        elif not isinstance(self.d, int) or self.d < 2:
            raise ValueError("dimension must be an integer >= 2")

    @classmethod
    def from_unruh(cls, cfg: UnruhConfig) -> "ChannelSpec":
        return cls(d=cfg.d, z=cfg.z, truncation_eps=cfg.truncation_eps, log_base=cfg.log_base)

    @property
    def is_cloner(self) -> bool:
        return self.k is not None

    @property
    def base(self) -> float:
        return float(self.d) if self.log_base is None else float(self.log_base)

    def unruh_config(self) -> UnruhConfig:
        if self.z is None:
            raise ValueError("not an Unruh-mode channel spec")
        return UnruhConfig(
            d=self.d, z=self.z, truncation_eps=self.truncation_eps, log_base=self.log_base
        )

    def block_weights(self) -> np.ndarray:
        if self.is_cloner:
            weights = np.zeros(self.k)
            weights[self.k - 1] = 1.0
            return weights
        return unruh_weights(self.unruh_config())

    def evaluator(self) -> TradeoffEvaluator:
        return TradeoffEvaluator(self.d, self.block_weights(), self.base)

    def channel_tag(self, horizon: int) -> tuple:
        if self.is_cloner:
            return ("cloner", self.d, self.k)
        return ("unruh", self.d, self.z, horizon)


@dataclass(frozen=True, eq=False)
class UnruhAggregate:
    """Per-block entropies plus the raw truncated mixture entropies.

    The mixture entropies include the -p log p mixing terms; those cancel in
    every region bound, so the bounds are recomputed from the per-block
    arrays (``log_dims``, ``h_bx_blocks``, ``h_ex_blocks``) instead.
    """

    mixture: EntropyTriple
    weights: np.ndarray
    log_dims: np.ndarray
    h_bx_blocks: np.ndarray
    h_ex_blocks: np.ndarray
    h_a: float
    horizon: int
    base: float
    ensemble: EnsembleParams
    channel: tuple

    @property
    def blocks(self) -> list[EntropyTriple]:
        h_a = EntropyValue(self.h_a, self.base)
        return [
            EntropyTriple(
                EntropyValue(self.log_dims[i], self.base),
                EntropyValue(self.h_bx_blocks[i], self.base),
                EntropyValue(self.h_ex_blocks[i], self.base),
                h_a,
            )
            for i in range(self.horizon)
        ]


@dataclass(frozen=True)
class SearchSettings:
    """Lattice resolution plus bounded derivative-free refinement."""

    resolution: int | None = None
    refine_iters: int = 200
    refine_tol: float = 1e-9


@dataclass(frozen=True)
class DynamicCapacityResult:
    value: float
    argmax: EnsembleParams
    weights: CapacityWeights
    grid_best: float
    resolution: int
    horizon: int


@dataclass(frozen=True, eq=False)
class CurveResult:
    """Sweep samples plus the indices of the Pareto boundary polyline."""

    samples: tuple
    hull_indices: tuple
    spec: ChannelSpec

    @property
    def boundary(self) -> list[RegionSample]:
        return [self.samples[i] for i in self.hull_indices]


@dataclass(frozen=True, eq=False)
class SurfaceResult:
    """CQE bound triples per ensemble plus the protocol rays."""

    samples: tuple
    rays: dict
    spec: ChannelSpec


def _as_ensemble(mu, d: int) -> EnsembleParams:
    params = mu if isinstance(mu, EnsembleParams) else EnsembleParams(tuple(mu))
    if params.dimension != d:
        raise ValueError(f"ensemble has {params.dimension} weights, expected {d}")
    return params


def default_resolution(d: int) -> int:
    return 64 if d <= 3 else 16


def _worker_count() -> int:
    raw = os.environ.get("UNRUH_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _map_ensembles(fn, items):
    workers = _worker_count()
    if workers == 1 or len(items) < 4:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _h_simplex(mu_arr: np.ndarray, base: float) -> float:
    return kernels.spectrum_entropy_terms(
        np.ascontiguousarray(mu_arr, dtype=np.float64),
        np.ones(mu_arr.size),
        1.0 / math.log(base),
    )


# ---------------------------------------------------------------------------
# Single-block (cloner) entropies and CQ/CE points
# ---------------------------------------------------------------------------

def cloner_entropy_triple(d: int, k: int, mu, base: float | None = None) -> EntropyTriple:
    """Entropies of the cyclic ensemble through a single 1->k cloner block."""
    params = _as_ensemble(mu, d)
    b = float(d) if base is None else float(base)
    h_b = EntropyValue(math.log(block_dimension(d, k)) / math.log(b), b)
    return EntropyTriple(
        h_b=h_b,
        h_b_given_x=shannon_entropy(ensemble_spectrum_B(d, k, params), b),
        h_e_given_x=shannon_entropy(ensemble_spectrum_E(d, k, params), b),
        h_a_given_x=ensemble_conditional_entropy_A(params, b),
    )


def cq_point(triple: EntropyTriple) -> tuple[float, float]:
    """(classical rate, quantum rate) = (Holevo, coherent information)."""
    c = triple.h_b.value - triple.h_b_given_x.value
    q = triple.h_b_given_x.value - triple.h_e_given_x.value
    return (c, q)


def ce_point(triple: EntropyTriple) -> tuple[float, float]:
    """(classical rate, entanglement consumption rate)."""
    c = triple.h_b.value + triple.h_a_given_x.value - triple.h_e_given_x.value
    e = triple.h_a_given_x.value
    return (c, e)


# ---------------------------------------------------------------------------
# Unruh aggregates and CQE / RPS bounds
# ---------------------------------------------------------------------------

def unruh_entropy_triple(cfg: UnruhConfig, mu) -> UnruhAggregate:
    """Blockwise entropies of the truncated Unruh channel at ensemble ``mu``.

    The mixture triple holds the raw truncated entropies (mixing terms
    included); region bounds use the attached per-block arrays, where the
    mixing terms cancel exactly.
    """
    params = _as_ensemble(mu, cfg.d)
    spec = ChannelSpec.from_unruh(cfg)
    evaluator = spec.evaluator()
    h_bx, h_ex = evaluator.block_entropies(params.as_array())
    base = evaluator.base
    h_a = ensemble_conditional_entropy_A(params, base)
    weights = evaluator.weights
    mixture = EntropyTriple(
        h_b=mixture_entropy(weights, [EntropyValue(v, base) for v in evaluator.log_dims], base),
        h_b_given_x=mixture_entropy(weights, [EntropyValue(v, base) for v in h_bx], base),
        h_e_given_x=mixture_entropy(weights, [EntropyValue(v, base) for v in h_ex], base),
        h_a_given_x=h_a,
    )
    return UnruhAggregate(
        mixture=mixture,
        weights=weights,
        log_dims=evaluator.log_dims,
        h_bx_blocks=h_bx,
        h_ex_blocks=h_ex,
        h_a=h_a.value,
        horizon=evaluator.horizon,
        base=base,
        ensemble=params,
        channel=spec.channel_tag(evaluator.horizon),
    )


def cqe_bounds(aggregate: UnruhAggregate) -> tuple[float, float, float]:
    """(C+2Q, Q+E, C+Q+E) bounds; the first exceeds the third by H(A|X)."""
    w = aggregate.weights
    b3 = float(np.dot(w, aggregate.log_dims - aggregate.h_ex_blocks))
    b2 = float(np.dot(w, aggregate.h_bx_blocks - aggregate.h_ex_blocks))
    b1 = aggregate.h_a + b3
    return (b1, b2, b3)


def cqe_corner(bounds: tuple[float, float, float]) -> tuple[float, float, float]:
    """Rate triple where all three CQE halfspaces are tight."""
    b1, b2, b3 = bounds
    q = (b1 + b2 - b3) / 2.0
    return (b3 - b2, q, b2 - q)


def rps_bounds(cfg: UnruhConfig, nu) -> tuple[float, float, float]:
    """(R+P, P+S, R+P+S) bounds of the private dynamic region at ensemble nu.

    Per block, R+P is H(B) minus the entropy H(B|XY) of the pure-input output
    (the cloner spectrum), which does not depend on nu; the other two bounds
    reuse the CQE coherent-information sums.
    """
    aggregate = unruh_entropy_triple(cfg, nu)
    base = aggregate.base
    h_xy = np.array(
        [shannon_entropy(cloner_spectrum(cfg.d, k), base).value
         for k in range(1, aggregate.horizon + 1)]
    )
    rp = float(np.dot(aggregate.weights, aggregate.log_dims - h_xy))
    _, ps, rps = cqe_bounds(aggregate)
    return (rp, ps, rps)


# ---------------------------------------------------------------------------
# Dynamic capacity optimization
# ---------------------------------------------------------------------------

def dynamic_objective(evaluator: TradeoffEvaluator, weights: CapacityWeights, mu) -> float:
    """Weighted objective H(A|X) + (mu+1)H(B) + lam*H(B|X) - (lam+mu+1)H(E|X).

    Mixing terms cancel (their coefficients sum to zero), so the per-block
    weighted sums are used directly.
    """
    mu_arr = mu.as_array() if isinstance(mu, EnsembleParams) else np.asarray(mu, dtype=np.float64)
    lam, muw = weights.lambda_w, weights.mu_w
    s_bx, s_ex = evaluator.sums(mu_arr)
    h_a = _h_simplex(mu_arr, evaluator.base)
    return h_a + (muw + 1.0) * evaluator.s_b + lam * s_bx - (lam + muw + 1.0) * s_ex


def _project_simplex(v: np.ndarray) -> np.ndarray:
    """Euclidean projection onto the probability simplex."""
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - 1.0
    idx = np.arange(1, v.size + 1)
    rho = np.nonzero(u * idx > css)[0][-1]
    theta = css[rho] / (rho + 1.0)
    return np.maximum(v - theta, 0.0)


def _refine_polytope(fn, start: np.ndarray, step: float, iters: int, tol: float):
    """Maximize fn over the simplex by Nelder-Mead reflection/contraction.

    Operates on the first d-1 coordinates (last weight implied); every trial
    point is projected back onto the simplex.  Returns the best (value, mu)
    seen anywhere, so the result can never fall below the starting value.
    """
    d = start.size
    best = {"value": -math.inf, "mu": start.copy()}

    def embed(y: np.ndarray) -> np.ndarray:
        full = np.append(y, 1.0 - y.sum())
        return _project_simplex(full)

    def evaluate(y: np.ndarray) -> float:
        mu = embed(y)
        value = fn(mu)
        if value > best["value"]:
            best["value"] = value
            best["mu"] = mu
        return -value

    pts = [start[:-1].astype(float)]
    for i in range(d - 1):
        shifted = pts[0].copy()
        shifted[i] += step
        pts.append(shifted)
    vals = [evaluate(p) for p in pts]
    for _ in range(iters):
        order = np.argsort(vals, kind="stable")
        pts = [pts[i] for i in order]
        vals = [vals[i] for i in order]
        if vals[-1] - vals[0] <= tol:
            break
        centroid = np.mean(pts[:-1], axis=0)
        reflected = centroid + (centroid - pts[-1])
        f_r = evaluate(reflected)
        if f_r < vals[0]:
            expanded = centroid + 2.0 * (centroid - pts[-1])
            f_e = evaluate(expanded)
            if f_e < f_r:
                pts[-1], vals[-1] = expanded, f_e
            else:
                pts[-1], vals[-1] = reflected, f_r
        elif f_r < vals[-2]:
            pts[-1], vals[-1] = reflected, f_r
        else:
            contracted = centroid + 0.5 * (pts[-1] - centroid)
            f_c = evaluate(contracted)
            if f_c < vals[-1]:
                pts[-1], vals[-1] = contracted, f_c
            else:
                pts = [pts[0]] + [pts[0] + 0.5 * (p - pts[0]) for p in pts[1:]]
                vals = [vals[0]] + [evaluate(p) for p in pts[1:]]
    return best["value"], best["mu"]


class DynamicCapacityProblem:
    """Shares the weight-independent grid sweep across many weight pairs.

    The per-ensemble sums (H(A|X), sum p_k H(B|X)_k, sum p_k H(E|X)_k) do not
    depend on the objective weights, so one lattice sweep serves every
    (lambda, mu) pair; only the local refinement is re-run per pair.
    """

    def __init__(self, cfg: UnruhConfig, resolution: int | None = None):
        self.cfg = cfg
        self.resolution = resolution or default_resolution(cfg.d)
        self.evaluator = ChannelSpec.from_unruh(cfg).evaluator()
        self.grid = simplex_grid(cfg.d, self.resolution)

        def stats(params: EnsembleParams) -> tuple[float, float, float]:
            arr = params.as_array()
            s_bx, s_ex = self.evaluator.sums(arr)
            return (_h_simplex(arr, self.evaluator.base), s_bx, s_ex)

        rows = _map_ensembles(stats, self.grid)
        self._h_a = np.array([r[0] for r in rows])
        self._s_bx = np.array([r[1] for r in rows])
        self._s_ex = np.array([r[2] for r in rows])

    def grid_objectives(self, weights: CapacityWeights) -> np.ndarray:
        lam, muw = weights.lambda_w, weights.mu_w
        return (
            self._h_a
            + (muw + 1.0) * self.evaluator.s_b
            + lam * self._s_bx
            - (lam + muw + 1.0) * self._s_ex
        )

    def solve(self, weights: CapacityWeights, settings: SearchSettings | None = None) -> DynamicCapacityResult:
        settings = settings or SearchSettings()
        values = self.grid_objectives(weights)
        best_idx = int(np.argmax(values))
        grid_best = float(values[best_idx])
        refined, mu_arr = _refine_polytope(
            lambda mu: dynamic_objective(self.evaluator, weights, mu),
            self.grid[best_idx].as_array(),
            step=1.0 / self.resolution,
            iters=settings.refine_iters,
            tol=settings.refine_tol,
        )
        value = max(refined, grid_best)
        argmax = self.grid[best_idx] if grid_best >= refined else EnsembleParams(tuple(mu_arr))
        return DynamicCapacityResult(
            value=value,
            argmax=argmax,
            weights=weights,
            grid_best=grid_best,
            resolution=self.resolution,
            horizon=self.evaluator.horizon,
        )


def dynamic_capacity(
    cfg: UnruhConfig,
    weights: CapacityWeights,
    settings: SearchSettings | None = None,
) -> DynamicCapacityResult:
    """Maximize the dynamic capacity objective over the ensemble simplex.

    Deterministic: a simplex lattice sweep picks the best starting point,
    then a bounded polytope refinement improves it; the reported value is the
    best objective seen anywhere (hence never below any lattice value).
    """
    settings = settings or SearchSettings()
    return DynamicCapacityProblem(cfg, settings.resolution).solve(weights, settings)


# ---------------------------------------------------------------------------
# Pareto hull
# ---------------------------------------------------------------------------

def pareto_hull_indices(points) -> list[int]:
    """Indices of the upper-right Pareto boundary of the convex hull.

    Monotone-chain upper hull (collinearity threshold ``HULL_TOL``), trimmed
    to start at the highest point (ties: largest abscissa); dominated and
    interior points drop out, endpoints survive.
    """
    pts = [(float(x), float(y)) for x, y in points]
    if not pts:
        raise ValueError("need at least one sample")
    order = sorted(range(len(pts)), key=lambda i: pts[i])

    def cross(o, a, b):
        return (pts[a][0] - pts[o][0]) * (pts[b][1] - pts[o][1]) - (
            pts[a][1] - pts[o][1]
        ) * (pts[b][0] - pts[o][0])

    upper: list[int] = []
    for i in order:
        while len(upper) >= 2 and cross(upper[-2], upper[-1], i) >= -HULL_TOL:
            upper.pop()
        upper.append(i)
    top = max(pts[i][1] for i in upper)
    start = max(pos for pos, i in enumerate(upper) if pts[i][1] == top)
    return upper[start:]


def pareto_hull_2d(samples) -> list[RegionSample]:
    """Boundary polyline (subset of ``samples``) of the upper-right Pareto hull."""
    samples = list(samples)
    if any(len(s.rates) != 2 for s in samples):
        raise ValueError("pareto_hull_2d needs 2-D rate samples")
    return [samples[i] for i in pareto_hull_indices([s.rates for s in samples])]


# ---------------------------------------------------------------------------
# Sweeps
# ---------------------------------------------------------------------------

def simplex_grid(d: int, resolution: int) -> list[EnsembleParams]:
    """Deterministic ensemble lattice: compositions of ``resolution`` over d
    slots, divided through; the uniform point is added when the resolution is
    not a multiple of d.  Sorted lexicographically descending."""
    if resolution < 1:
        raise ValueError("resolution must be >= 1")
    lattice = composition_matrix(d, resolution)
    mus = {tuple(float(c) / resolution for c in row) for row in lattice}
    if resolution % d:
        mus.add(tuple([1.0 / d] * d))
    return [EnsembleParams(m) for m in sorted(mus, reverse=True)]


def _sweep(spec: ChannelSpec, resolution: int | None, rate_fn):
    evaluator = spec.evaluator()
    grid = simplex_grid(spec.d, resolution or default_resolution(spec.d))
    tag = spec.channel_tag(evaluator.horizon)

    def one(params: EnsembleParams) -> RegionSample:
        return RegionSample(rate_fn(evaluator, params), params, tag)

    return _map_ensembles(one, grid)


def cq_curve(spec: ChannelSpec, resolution: int | None = None) -> CurveResult:
    """Sweep of (C, Q) points with their Pareto boundary."""

    def rate_fn(ev: TradeoffEvaluator, params: EnsembleParams):
        s_bx, s_ex = ev.sums(params.as_array())
        return (ev.s_b - s_bx, s_bx - s_ex)

    samples = _sweep(spec, resolution, rate_fn)
    hull = pareto_hull_indices([s.rates for s in samples])
    return CurveResult(tuple(samples), tuple(hull), spec)


def ce_curve(spec: ChannelSpec, resolution: int | None = None) -> CurveResult:
    """Sweep of (C, E) points; entanglement is a cost, so the Pareto boundary
    is hulled on (C, -E)."""

    def rate_fn(ev: TradeoffEvaluator, params: EnsembleParams):
        s_bx, s_ex = ev.sums(params.as_array())
        h_a = _h_simplex(params.as_array(), ev.base)
        return (ev.s_b + h_a - s_ex, h_a)

    samples = _sweep(spec, resolution, rate_fn)
    hull = pareto_hull_indices([(s.rates[0], -s.rates[1]) for s in samples])
    return CurveResult(tuple(samples), tuple(hull), spec)


def region_surface_cqe(cfg: UnruhConfig, resolution: int | None = None) -> SurfaceResult:
    """CQE bound triples (b1, b2, b3) per grid ensemble, plus protocol rays.

    Each sample's corner (all three halfspaces tight) is ``cqe_corner``; the
    full region is the hull of the corners swept along the PROTOCOL_RAYS.
    """
    spec = ChannelSpec.from_unruh(cfg)

    def rate_fn(ev: TradeoffEvaluator, params: EnsembleParams):
        s_bx, s_ex = ev.sums(params.as_array())
        h_a = _h_simplex(params.as_array(), ev.base)
        b3 = ev.s_b - s_ex
        return (h_a + b3, s_bx - s_ex, b3)

    samples = _sweep(spec, resolution, rate_fn)
    return SurfaceResult(tuple(samples), dict(PROTOCOL_RAYS), spec)


def rps_region(cfg: UnruhConfig, resolution: int | None = None) -> list[RegionSample]:
    """(R+P, P+S, R+P+S) bound triples per grid ensemble."""
    spec = ChannelSpec.from_unruh(cfg)
    evaluator = spec.evaluator()
    h_xy = np.array(
        [shannon_entropy(cloner_spectrum(cfg.d, k), evaluator.base).value
         for k in range(1, evaluator.horizon + 1)]
    )
    rp = float(np.dot(evaluator.weights, evaluator.log_dims - h_xy))

    def rate_fn(ev: TradeoffEvaluator, params: EnsembleParams):
        s_bx, s_ex = ev.sums(params.as_array())
        return (rp, s_bx - s_ex, ev.s_b - s_ex)

    grid = simplex_grid(spec.d, resolution or default_resolution(spec.d))
    tag = spec.channel_tag(evaluator.horizon)

    def one(params: EnsembleParams) -> RegionSample:
        return RegionSample(rate_fn(evaluator, params), params, tag)

    return _map_ensembles(one, grid)
