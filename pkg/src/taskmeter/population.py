"""Random populations of capacity-varied agents under one training protocol."""

from __future__ import annotations

import csv
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np

from .errors import AgentTrainingError, FormatError, InvalidArgument
from .nn import TrainingProtocol, evaluate, init_network, param_count, train

CAPABILITY_MEASURES = ("params", "nodes_layers")

SCORES_CSV_HEADER = [
    "domain",
    "agent_index",
    "hidden_sizes",
    "capability_params",
    "capability_nl",
    "score",
]


@dataclass
class PopulationConfig:
    """How to sample agent topologies and how long to train each of them."""

    population_size: int = 30
    hidden_layers_range: tuple[int, int] = (0, 3)
    nodes_per_layer_range: tuple[int, int] = (2, 64)
    protocol: TrainingProtocol | None = None
    master_seed: int = 0

    def __post_init__(self):
        if self.protocol is None:
            self.protocol = TrainingProtocol(epochs=30, learning_rate=0.1, batch_size=32)
        if self.population_size < 1:
            raise InvalidArgument(f"population_size must be >= 1, got {self.population_size}")
        lo, hi = self.hidden_layers_range
        if lo < 0 or lo > hi:
            raise InvalidArgument(f"bad hidden_layers_range {self.hidden_layers_range}")
        lo, hi = self.nodes_per_layer_range
        if lo < 1 or lo > hi:
            raise InvalidArgument(f"bad nodes_per_layer_range {self.nodes_per_layer_range}")


@dataclass
class AgentSpec:
    """One sampled topology. ``capability_params`` depends on the domain's
    input/output sizes and is filled in when the agent is realized."""

    hidden_sizes: tuple[int, ...]
    init_seed: int
    capability_nl: int = None
    capability_params: int | None = None

    def __post_init__(self):
        if self.capability_nl is None:
            self.capability_nl = nodes_layers_capability(self.hidden_sizes)

    def realized_params(self, input_dim: int, class_count: int) -> int:
        sizes = (input_dim, *self.hidden_sizes, class_count)
        return sum((a + 1) * b for a, b in zip(sizes[:-1], sizes[1:]))


@dataclass
class CapabilityScore:
    """One observation: an agent's capability and the score it achieved."""

    agent: AgentSpec
    capability: float
    score: float
    domain_name: str


def nodes_layers_capability(hidden_sizes: Sequence[int]) -> int:
    """Total hidden nodes times number of hidden layers; 1 when there are none."""
    if not hidden_sizes:
        return 1
    return sum(hidden_sizes) * len(hidden_sizes)


def sample_population(config: PopulationConfig) -> list[AgentSpec]:
    """Sample ``population_size`` topologies, uniform in layer count and widths.

    Each agent draws from its own seed stream keyed by (master_seed, index),
    so growing the population never changes earlier agents.
    """
    specs = []
    for index in range(config.population_size):
        rng = np.random.default_rng(
            np.random.SeedSequence(config.master_seed, spawn_key=(index,))
        )
        n_layers = int(
            rng.integers(config.hidden_layers_range[0], config.hidden_layers_range[1] + 1)
        )
        widths = tuple(
            int(w)
            for w in rng.integers(
                config.nodes_per_layer_range[0],
                config.nodes_per_layer_range[1] + 1,
                size=n_layers,
            )
        )
        init_seed = int(rng.integers(0, 2**63, dtype=np.uint64))
        specs.append(AgentSpec(hidden_sizes=widths, init_seed=init_seed))
    return specs


def run_population(
    pop: Sequence[AgentSpec],
    domain,
    protocol: TrainingProtocol,
    capability_measure: str = "params",
    jobs: int = 1,
    epoch_hook: Callable[[int], None] | None = None,
) -> list[CapabilityScore]:
    """Train every agent on the domain's train split and score the test split.

    Results are ordered by agent index regardless of execution schedule;
    ``jobs`` only controls parallelism. A failure in any agent is re-raised
    as :class:`AgentTrainingError` carrying that agent's index.
    """
    if capability_measure not in CAPABILITY_MEASURES:
        raise InvalidArgument(
            f"capability_measure must be one of {CAPABILITY_MEASURES}, got "
            f"{capability_measure!r}"
        )

    def run_one(index: int, spec: AgentSpec) -> CapabilityScore:
        try:
            topology = (domain.feature_dim, *spec.hidden_sizes, domain.class_count)
            net = init_network(topology, spec.init_seed)
            trained = train(net, domain, protocol, epoch_hook)
            score = evaluate(trained, domain)
            realized = replace(spec, capability_params=param_count(net))
            capability = (
                realized.capability_params
                if capability_measure == "params"
                else realized.capability_nl
            )
            return CapabilityScore(realized, float(capability), score, domain.name)
        except AgentTrainingError:
            raise
        except Exception as exc:
            raise AgentTrainingError(index, str(exc)) from exc

    if jobs <= 1:
        return [run_one(i, spec) for i, spec in enumerate(pop)]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(run_one, i, spec) for i, spec in enumerate(pop)]
        return [f.result() for f in futures]


def save_scores_csv(scores: Sequence[CapabilityScore], path) -> None:
    """Persist observations so estimators can be re-fit without retraining."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SCORES_CSV_HEADER)
        for index, obs in enumerate(scores):
            writer.writerow(
                [
                    obs.domain_name,
                    index,
                    "-".join(str(w) for w in obs.agent.hidden_sizes),
                    obs.agent.capability_params,
                    obs.agent.capability_nl,
                    repr(obs.score),
                ]
            )


def load_scores_csv(path) -> list[CapabilityScore]:
    """Read observations written by :func:`save_scores_csv`."""
    try:
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            rows = list(reader)
    except OSError as exc:
        raise FormatError(f"cannot read scores csv {path}: {exc}") from exc
    if header != SCORES_CSV_HEADER:
        raise FormatError(f"{path}: unexpected header {header}")
    scores = []
    try:
        for row in rows:
            domain, _index, hidden, params, nl, score = row
            hidden_sizes = tuple(int(w) for w in hidden.split("-")) if hidden else ()
            spec = AgentSpec(
                hidden_sizes=hidden_sizes,
                init_seed=0,
                capability_nl=int(nl),
                capability_params=int(params),
            )
            scores.append(CapabilityScore(spec, float(params), float(score), domain))
    except ValueError as exc:
        raise FormatError(f"{path}: unparsable row ({exc})") from exc
    return scores
