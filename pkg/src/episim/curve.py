"""Baseline prevalence curve derived from the basic reproduction number.

The curve is the discrete-time (one-day step) susceptible/infectious/recovered
recursion on a normalized population of 1.0:

    beta  = r0 / shedding_period        (transmission rate per day)
    gamma = 1 / shedding_period         (removal rate per day)

    incidence[t] = beta * S(t) * I(t)
    S(t+1) = S(t) - incidence[t]
    I(t+1) = I(t) + incidence[t] - gamma * I(t)

``incidence[t]`` is the fraction of the initial population newly infected on
day ``t`` of a local outbreak; a county multiplies its current susceptibles
by this value (times group and intervention multipliers) to get daily new
sicknesses.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .params import DiseaseParams

DEFAULT_INITIAL_INFECTIOUS_FRACTION = 1e-4


@dataclass(frozen=True)
class PrevalenceCurve:
    """Per-day infection probability for a susceptible person.

    Index t is days since the local outbreak started. Values are in [0, 1]
    and their running sum never exceeds 1 - i0 (one cannot infect more than
    the initially susceptible population).
    """

    daily_incidence: np.ndarray

    def __len__(self):
        return len(self.daily_incidence)

    def __getitem__(self, t):
        return float(self.daily_incidence[t])

    @property
    def attack_rate(self):
        """Total fraction of the population infected over the whole curve."""
        return float(self.daily_incidence.sum())


def build_prevalence_curve(params: DiseaseParams,
                           initial_infectious_fraction: float =
                           DEFAULT_INITIAL_INFECTIOUS_FRACTION) -> PrevalenceCurve:
    """Integrate the daily SIR recursion for ``params.horizon`` days.

    Raises ValidationError for a zero-length horizon or non-finite rates.
    With r0 = 0 the curve is identically zero.
    """
    if params.horizon == 0:
        raise ValidationError([("horizon", "cannot build an empty curve")])
    i0 = initial_infectious_fraction
    if not (0.0 < i0 < 1.0):
        raise ValidationError([("initial_infectious_fraction", "must be in (0, 1)")])
    beta = params.r0 / params.shedding_period
    gamma = 1.0 / params.shedding_period
    if not (math.isfinite(beta) and math.isfinite(gamma)):
        raise ValidationError([("r0", "beta/gamma are not finite")])

    out = np.zeros(params.horizon, dtype=np.float64)
    s = 1.0 - i0
    i = i0
    for t in range(params.horizon):
        incidence = beta * s * i
        # Clamp: the running sum of incidence may never exceed 1 - i0,
        # i.e. a step may not remove more than the remaining susceptibles.
        if incidence > s:
            incidence = s
        out[t] = incidence
        s -= incidence
        i += incidence - gamma * i
    return PrevalenceCurve(out)
