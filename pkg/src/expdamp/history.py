"""Initialization force psi(t) produced by the pre-initial motion.

For the exponential kernel the whole history collapses into one scalar

    W = mu * integral_{-a}^{0} exp(mu*tau) v(tau) dtau,

and the internal force is psi(t) = W * exp(-mu*t).  W has a closed form
for the analytic history shapes and a trapezoid value for sampled ones.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import (
    Constant,
    ExponentialKernel,
    HistoryProfile,
    Polynomial,
    Samples,
    Sine,
)

__all__ = ["HistoryWeight", "history_weight", "psi"]


@dataclass(frozen=True)
class HistoryWeight:
    """Kernel-weighted history integral W; psi(t) = W * exp(-mu*t)."""

    value: float
    mu: float

    def psi(self, t):
        t = np.asarray(t, dtype=float)
        out = self.value * np.exp(-self.mu * t)
        return out if out.ndim else float(out)


def _weight_constant(v: float, mu: float, a: float) -> float:
    return v * -math.expm1(-mu * a)


def _weight_sine(shape: Sine, mu: float, a: float) -> float:
    # Antiderivative of exp(mu*tau)*sin(omega*tau + phase), evaluated on [-a, 0].
    w, phi = shape.omega, shape.phase
    denom = mu * mu + w * w
    upper = mu * math.sin(phi) - w * math.cos(phi)
    lower = math.exp(-mu * a) * (mu * math.sin(phi - w * a) - w * math.cos(phi - w * a))
    return shape.amplitude * mu * (upper - lower) / denom


def _weight_polynomial(shape: Polynomial, mu: float, a: float) -> float:
    # I_n = integral tau^n exp(mu*tau) on [-a, 0], by the parts recurrence.
    decay = math.exp(-mu * a)
    i_n = -math.expm1(-mu * a) / mu
    total = shape.coeffs[0] * i_n
    for n in range(1, len(shape.coeffs)):
        i_n = -((-a) ** n * decay + n * i_n) / mu
        total += shape.coeffs[n] * i_n
    return mu * total


def history_weight(kernel: ExponentialKernel, profile: HistoryProfile) -> HistoryWeight:
    """W for the given kernel and history; closed form for analytic
    shapes, trapezoid quadrature for sampled ones."""
    mu, a = kernel.mu, profile.a
    shape = profile.shape
    if isinstance(shape, Constant):
        value = _weight_constant(shape.value, mu, a)
    elif isinstance(shape, Sine):
        value = _weight_sine(shape, mu, a)
    elif isinstance(shape, Polynomial):
        value = _weight_polynomial(shape, mu, a)
    else:
        assert isinstance(shape, Samples)
        grid = profile.grid()
        value = mu * float(np.trapezoid(np.exp(mu * grid) * shape.values, grid))
    return HistoryWeight(float(value), mu)


def psi(kernel: ExponentialKernel, profile: HistoryProfile, t):
    """Initialization force psi(t) = W * exp(-mu*t) for t >= 0."""
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValueError("psi is defined for t >= 0")
    return history_weight(kernel, profile).psi(t)
