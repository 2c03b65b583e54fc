"""Collective choice among k options by certainty-weighted preference mixing.

Every device keeps a preference distribution, exhibits its argmax together
with a certainty (one minus normalized entropy), and each round mixes its
distribution toward the certainty-and-weight-weighted vote mass of the
aligned neighbourhood (self included).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..constructs import VM, foldhood, mid, nbr, rep

_NORMALIZATION_TOL = 1e-9
_CERTAINTY_FLOOR = 1e-12  # float fuzz on exactly-uniform vectors is not mass


@dataclass(frozen=True)
class PreferenceState:
    """Probability vector over k >= 2 options."""

    values: tuple

    def __post_init__(self):
        validate_preferences(self.values)

    @property
    def k(self) -> int:
        return len(self.values)

    def certainty(self) -> float:
        return certainty(self.values)

    def choice(self) -> int:
        return argmax(self.values)


def validate_preferences(values) -> None:
    if len(values) < 2:
        raise ValueError("need at least two options")
    if any(v < 0.0 for v in values):
        raise ValueError("preferences must be non-negative")
    if abs(sum(values) - 1.0) > _NORMALIZATION_TOL:
        raise ValueError("preferences must sum to 1")


def normalize(values) -> tuple:
    total = sum(values)
    if total <= 0.0:
        raise ValueError("cannot normalize a zero mass vector")
    return tuple(v / total for v in values)


def argmax(values) -> int:
    """Index of the largest entry, lowest index on ties."""
    best, best_value = 0, values[0]
    for i, v in enumerate(values):
        if v > best_value:
            best, best_value = i, v
    return best


def certainty(values) -> float:
    """1 - H(p)/ln(k): 1 on a one-hot vector, 0 on the uniform one."""
    k = len(values)
    entropy = -sum(v * math.log(v) for v in values if v > 0.0)
    c = 1.0 - entropy / math.log(k)
    if c < _CERTAINTY_FLOOR:
        return 0.0
    return min(c, 1.0)


def consensus(vm: VM, preferences, neighbourhood_weight=None, mixing: float = 0.2) -> int:
    """Converge on one of k options; returns the current choice index.

    preferences seed the rep-held distribution.  neighbourhood_weight maps a
    device id to a non-negative vote weight (default: 1 for everyone).  When
    the whole aligned neighbourhood carries zero mass the distribution stays
    put for the round.
    """
    if isinstance(preferences, PreferenceState):
        preferences = preferences.values
    preferences = tuple(float(v) for v in preferences)
    validate_preferences(preferences)
    k = len(preferences)
    if neighbourhood_weight is None:
        neighbourhood_weight = lambda dev: 1.0
    if not 0.0 < mixing <= 1.0:
        raise ValueError("mixing must be in (0, 1]")

    def update(p):
        my_choice = argmax(p)
        my_certainty = certainty(p)

        def vote():
            choice, conviction = nbr(vm, lambda: (my_choice, my_certainty))
            weight = float(neighbourhood_weight(nbr(vm, lambda: mid(vm))))
            return (max(weight, 0.0) * conviction, choice)

        def add(acc, ballot):
            mass, choice = ballot
            if mass <= 0.0:
                return acc
            total, per_option = acc
            per_option = (
                per_option[:choice] + (per_option[choice] + mass,) + per_option[choice + 1 :]
            )
            return (total + mass, per_option)

        total, per_option = foldhood(vm, (0.0, (0.0,) * k), add, vote)
        if total <= 0.0:
            return p
        mixed = tuple(
            (1.0 - mixing) * p_i + mixing * (m_i / total)
            for p_i, m_i in zip(p, per_option)
        )
        return normalize(mixed)

    p = rep(vm, preferences, update)
    return argmax(p)
