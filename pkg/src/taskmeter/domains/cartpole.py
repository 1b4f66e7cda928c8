"""Cart-pole balancing recast as a labeled classification task.

A deterministic balance controller plays seeded episodes of the classic
cart-pole dynamics; every visited state vector is recorded together with the
controller's push direction, giving a two-class dataset over (normalized)
observation vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import GenerationError, InvalidArgument
from .base import TaskDataset, from_arrays

TWELVE_DEGREES = 12.0 * math.pi / 180.0


@dataclass
class CartpoleState:
    x: float
    x_dot: float
    theta: float
    theta_dot: float

    def __post_init__(self):
        values = (self.x, self.x_dot, self.theta, self.theta_dot)
        if not all(math.isfinite(v) for v in values):
            raise InvalidArgument(f"state components must be finite, got {values}")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.x, self.x_dot, self.theta, self.theta_dot)


@dataclass
class CartpoleConfig:
    force_mag: float = 10.0
    gravity: float = 9.8
    cart_mass: float = 1.0
    pole_mass: float = 0.1
    pole_half_length: float = 0.5
    dt: float = 0.02
    angle_limit: float = TWELVE_DEGREES
    position_limit: float = 2.4
    max_steps: int = 500
    episodes: int = 20
    seed: int = 0

    def __post_init__(self):
        positive = {
            "force_mag": self.force_mag,
            "gravity": self.gravity,
            "cart_mass": self.cart_mass,
            "pole_mass": self.pole_mass,
            "pole_half_length": self.pole_half_length,
            "dt": self.dt,
            "angle_limit": self.angle_limit,
            "position_limit": self.position_limit,
        }
        for field_name, value in positive.items():
            if value <= 0:
                raise InvalidArgument(f"{field_name} must be > 0, got {value}")
        if self.max_steps < 1 or self.episodes < 1:
            raise InvalidArgument("max_steps and episodes must be >= 1")


def cartpole_step(state: CartpoleState, force: float, config: CartpoleConfig) -> CartpoleState:
    """One Euler step of the classic cart-pole equations of motion."""
    sin_t = math.sin(state.theta)
    cos_t = math.cos(state.theta)
    total_mass = config.cart_mass + config.pole_mass
    pole_ml = config.pole_mass * config.pole_half_length

    temp = (force + pole_ml * state.theta_dot**2 * sin_t) / total_mass
    theta_acc = (config.gravity * sin_t - cos_t * temp) / (
        config.pole_half_length
        * (4.0 / 3.0 - config.pole_mass * cos_t**2 / total_mass)
    )
    x_acc = temp - pole_ml * theta_acc * cos_t / total_mass

    return CartpoleState(
        x=state.x + config.dt * state.x_dot,
        x_dot=state.x_dot + config.dt * x_acc,
        theta=state.theta + config.dt * state.theta_dot,
        theta_dot=state.theta_dot + config.dt * theta_acc,
    )


def balance_action(state: CartpoleState) -> int:
    """Labeling controller: 1 (push right) iff theta + 0.5*theta_dot +
    0.05*x_dot > 0, else 0 (push left)."""
    return 1 if state.theta + 0.5 * state.theta_dot + 0.05 * state.x_dot > 0 else 0


def _out_of_bounds(state: CartpoleState, config: CartpoleConfig) -> bool:
    return abs(state.theta) > config.angle_limit or abs(state.x) > config.position_limit


def cartpole_dataset(
    config: CartpoleConfig,
    name: str | None = None,
    test_fraction: float = 0.25,
) -> TaskDataset:
    """Collect (state, controller action) pairs over seeded episodes.

    Initial states draw each component uniformly from +/-0.05. Episodes end
    when the pole or cart leaves its limit or after ``max_steps``. Features
    are the four state components min-max normalized per component over the
    collected set (a constant component maps to 0); labels are the
    controller's actions.
    """
    rng = np.random.default_rng(config.seed)
    states = []
    actions = []
    for _ in range(config.episodes):
        state = CartpoleState(*rng.uniform(-0.05, 0.05, size=4))
        for _ in range(config.max_steps):
            if _out_of_bounds(state, config):
                break
            action = balance_action(state)
            states.append(state.as_tuple())
            actions.append(action)
            force = config.force_mag if action == 1 else -config.force_mag
            state = cartpole_step(state, force, config)

    if not states:
        raise GenerationError("no in-bounds samples were collected")

    raw = np.asarray(states)
    low = raw.min(axis=0)
    span = raw.max(axis=0) - low
    span[span == 0.0] = 1.0
    features = (raw - low) / span
    return from_arrays(
        name or f"cartpole_force{config.force_mag:g}",
        features,
        np.asarray(actions, np.int64),
        class_count=2,
        test_fraction=test_fraction,
        split_seed=config.seed,
    )
