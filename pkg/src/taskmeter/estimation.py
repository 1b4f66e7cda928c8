"""From capability-score observations to a scalar difficulty measure.

The pipeline fits an ordinary least-squares line score = slope*capability +
intercept over a trained population, inverts it to "capability needed to
reach score V", clamps negative needs at zero, and integrates over the
observed score range (intersected with the positives). A wider integral
means more capability is needed across the score range, i.e. a harder
domain. A 95% band is derived from the fit's mean squared error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .errors import DegenerateFit, DegenerateInput, InvalidArgument

CONFIDENCE_Z = 1.96


@dataclass
class LinearFit:
    """Least-squares line with its mean squared residual and sample count."""

    slope: float
    intercept: float
    mse: float
    n: int


@dataclass
class ComplexityResult:
    """Difficulty of one domain plus everything needed to reproduce it."""

    domain_name: str
    raw_auc: float
    ci_halfwidth: float
    v_min: float
    v_max: float
    fit: LinearFit
    normalized: float | None = None
    provenance: dict | None = None

    def to_json_dict(self) -> dict:
        return {
            "domain": self.domain_name,
            "raw_auc": self.raw_auc,
            "normalized": self.normalized,
            "ci_halfwidth": self.ci_halfwidth,
            "v_min": self.v_min,
            "v_max": self.v_max,
            "slope": self.fit.slope,
            "intercept": self.fit.intercept,
            "mse": self.fit.mse,
            "n": self.fit.n,
        }


def fit_linear(pairs: Sequence[tuple[float, float]]) -> LinearFit:
    """Ordinary least squares y = slope*x + intercept over (x, y) pairs."""
    data = np.asarray(pairs, dtype=np.float64)
    if data.ndim != 2 or data.shape[1] != 2:
        raise InvalidArgument(f"expected (x, y) pairs, got shape {data.shape}")
    n = data.shape[0]
    if n < 2:
        raise DegenerateInput(f"need at least 2 pairs, got {n}")
    x, y = data[:, 0], data[:, 1]
    x_dev = x - x.mean()
    sxx = float(x_dev @ x_dev)
    if sxx == 0.0:
        raise DegenerateInput("all x values identical; no line is determined")
    slope = float(x_dev @ y) / sxx
    intercept = float(y.mean() - slope * x.mean())
    residuals = y - (slope * x + intercept)
    return LinearFit(slope, intercept, float(residuals @ residuals) / n, n)


def confidence_halfwidth(fit: LinearFit) -> float:
    """Half-width of the 95% band: 1.96 * sqrt(mse / n)."""
    return CONFIDENCE_Z * math.sqrt(fit.mse / fit.n)


def raw_complexity(fit: LinearFit, v_min: float, v_max: float) -> float:
    """Integral of the inverted fit over [max(0, v_min), v_max].

    The inverted line c(V) = (V - intercept) / slope is clamped at zero from
    below (a zero-size policy suffices under the intercept), so the closed
    form is ((hi - b)^2 - (lo' - b)^2) / (2m) with lo' = max(lo, b).
    """
    if v_min > v_max:
        raise InvalidArgument(f"v_min {v_min} exceeds v_max {v_max}")
    if fit.slope <= 0:
        raise DegenerateFit(
            f"slope {fit.slope} is not positive; score does not grow with capability"
        )
    lo = max(0.0, v_min)
    if v_max <= lo:
        return 0.0
    start = max(lo, fit.intercept)
    if v_max <= start:
        return 0.0
    hi_dev = v_max - fit.intercept
    lo_dev = start - fit.intercept
    return (hi_dev * hi_dev - lo_dev * lo_dev) / (2.0 * fit.slope)


def sum_normalize(values: Sequence[float]) -> np.ndarray:
    """Divide non-negative values by their total so they sum to one."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.size == 0:
        raise DegenerateInput("nothing to normalize")
    if np.any(arr < 0):
        raise InvalidArgument("sum normalization needs non-negative values")
    total = arr.sum()
    if total == 0.0:
        raise DegenerateInput("all values are zero; sum normalization undefined")
    return arr / total


def range_normalize(raw: float, v_min: float, v_max: float) -> float:
    """Divide by the width of the observed score range (the cross-subset
    variant used when score ranges are comparable by construction)."""
    if v_max <= v_min:
        raise DegenerateInput(f"score range [{v_min}, {v_max}] has no width")
    return raw / (v_max - v_min)


def complexity_from_pairs(
    capabilities: Sequence[float],
    scores: Sequence[float],
    domain_name: str,
    provenance: dict | None = None,
) -> ComplexityResult:
    """Fit + integrate one population's capability-score observations."""
    caps = np.asarray(capabilities, dtype=np.float64)
    scores = np.asarray(scores, dtype=np.float64)
    if caps.shape != scores.shape:
        raise InvalidArgument(
            f"{caps.shape[0]} capabilities but {scores.shape[0]} scores"
        )
    fit = fit_linear(np.column_stack([caps, scores]))
    v_min = float(scores.min())
    v_max = float(scores.max())
    return ComplexityResult(
        domain_name=domain_name,
        raw_auc=raw_complexity(fit, v_min, v_max),
        ci_halfwidth=confidence_halfwidth(fit),
        v_min=v_min,
        v_max=v_max,
        fit=fit,
        provenance=provenance,
    )


def normalize_results(results: Sequence[ComplexityResult]) -> list[ComplexityResult]:
    """Copies of ``results`` with ``normalized`` set by sum-norming raw_auc."""
    shares = sum_normalize([r.raw_auc for r in results])
    return [replace(r, normalized=float(s)) for r, s in zip(results, shares)]


def measure_complexity(
    domain,
    pop_config,
    capability_measure: str = "params",
    jobs: int = 1,
) -> ComplexityResult:
    """Sample a population, train it on ``domain``, and measure difficulty.

    The result is unnormalized (``normalized`` is None); compare domains by
    passing several results through :func:`normalize_results`.
    """
    from .population import run_population, sample_population

    pop = sample_population(pop_config)
    observations = run_population(
        pop, domain, pop_config.protocol, capability_measure, jobs=jobs
    )
    provenance = {
        "domain": domain.name,
        "capability_measure": capability_measure,
        "population_size": pop_config.population_size,
        "hidden_layers_range": list(pop_config.hidden_layers_range),
        "nodes_per_layer_range": list(pop_config.nodes_per_layer_range),
        "master_seed": pop_config.master_seed,
        "epochs": pop_config.protocol.epochs,
        "learning_rate": pop_config.protocol.learning_rate,
        "batch_size": pop_config.protocol.batch_size,
        "shuffle_seed": pop_config.protocol.shuffle_seed,
    }
    return complexity_from_pairs(
        [o.capability for o in observations],
        [o.score for o in observations],
        domain.name,
        provenance,
    )
