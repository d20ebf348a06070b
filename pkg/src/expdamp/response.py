"""Initialization and forced response in closed form.

With psi(t) = W*exp(-mu*t), the response to initial conditions and
history is an exponential sum over the three characteristic roots:

    x(t) = m*x0*hdot(t) + m*v0*h(t)
           + c*(mu*x0 - W) * integral_0^t h(t-tau) exp(-mu*tau) dtau,

where the first and third terms of the four-part split share one
convolution shape because the history term -c*(h*psi) is W times the
same integral.  Forcing adds a trapezoid convolution h*f on the grid.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ResonantKernel
from .eigen import (
    EigenSolution,
    impulse_response,
    impulse_response_derivative,
    solve_eigen,
    _real_part,
)
from .history import history_weight
from .model import HistoryProfile, InitialState, OscillatorParams

__all__ = [
    "Trajectory",
    "ResponseTerms",
    "exp_convolution",
    "initialization_response",
    "response_terms",
    "forced_response",
    "time_grid",
]


@dataclass(frozen=True)
class Trajectory:
    """Uniformly sampled (x, xdot, psi) records starting at t0 = 0.

    The optional y column carries the internal damping variable when the
    trajectory comes from the time-domain integrator; closed-form
    trajectories leave it None.
    """

    t0: float
    dt: float
    x: np.ndarray
    xdot: np.ndarray
    psi: np.ndarray
    y: np.ndarray | None = None

    def __post_init__(self):
        if self.dt <= 0:
            raise ValueError(f"dt must be > 0, got {self.dt}")
        columns = {"x": self.x, "xdot": self.xdot, "psi": self.psi}
        if self.y is not None:
            columns["y"] = self.y
        arrays = {n: np.asarray(c, dtype=float) for n, c in columns.items()}
        shapes = {a.shape for a in arrays.values()}
        if len(shapes) != 1 or arrays["x"].ndim != 1:
            raise ValueError("trajectory columns must be 1-d arrays of equal length")
        if len(arrays["x"]) < 2:
            raise ValueError("a trajectory needs at least 2 samples")
        for name, col in arrays.items():
            if not np.all(np.isfinite(col)):
                raise ValueError(f"non-finite values in trajectory column {name}")
            col.flags.writeable = False
            object.__setattr__(self, name, col)

    @property
    def t(self) -> np.ndarray:
        return self.t0 + np.arange(len(self.x)) * self.dt

    def __len__(self) -> int:
        return len(self.x)


@dataclass(frozen=True)
class ResponseTerms:
    """The four-part split of the initialization response."""

    term_history: float
    term_displacement: float
    term_kernel: float
    term_velocity: float

    @property
    def total(self):
        return (
            self.term_history
            + self.term_displacement
            + self.term_kernel
            + self.term_velocity
        )


def time_grid(t_end: float, dt: float) -> np.ndarray:
    """Uniform grid of n+1 points from 0 to exactly t_end, n = round(t_end/dt).

    The endpoint is honored exactly; the step is nudged to t_end/n, which
    differs from the requested dt by at most half a step over the whole span.
    """
    if dt <= 0:
        raise ValueError(f"dt must be > 0, got {dt}")
    if t_end <= 0:
        raise ValueError(f"t_end must be > 0, got {t_end}")
    n = max(1, int(round(t_end / dt)))
    return np.arange(n + 1) * (t_end / n)


def _check_resonance(eig: EigenSolution, rate: float):
    # A mode whose residue is exactly zero (the kernel mode at c = 0)
    # contributes nothing, so a pole collision there never materializes.
    for r, s in zip(eig.residues, eig.roots):
        if r != 0 and abs(s + rate) < 1e-8 * max(abs(s), rate):
            raise ResonantKernel(
                f"characteristic root {s:.6g} coincides with -rate = {-rate:.6g}; "
                "the exponential-convolution closed form has a double pole there"
            )


def exp_convolution(eig: EigenSolution, rate: float, t):
    """Closed form of integral_0^t h(t-tau) exp(-rate*tau) dtau.

    Equals sum_j R_j (exp(s_j t) - exp(-rate t)) / (s_j + rate); requires
    every contributing root to stay clear of -rate (raises ResonantKernel
    otherwise).
    """
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValueError("convolution is defined for t >= 0")
    _check_resonance(eig, rate)
    down = np.exp(-rate * t)
    acc = sum(
        r * (np.exp(s * t) - down) / (s + rate)
        for r, s in zip(eig.residues, eig.roots)
        if r != 0
    )
    return _real_part(acc + 0j * down)


def _exp_convolution_derivative(eig, rate, t):
    # d/dt of exp_convolution; shares its resonance precondition.
    down = np.exp(-rate * t)
    acc = sum(
        r * (s * np.exp(s * t) + rate * down) / (s + rate)
        for r, s in zip(eig.residues, eig.roots)
        if r != 0
    )
    return _real_part(acc + 0j * down)


def _weight_value(params: OscillatorParams, history: HistoryProfile | None) -> float:
    if history is None:
        return 0.0
    return history_weight(params.kernel, history).value


def _assemble(params, eig, state, w, t):
    x = params.m * state.x0 * impulse_response_derivative(eig, t)
    x = x + params.m * state.v0 * impulse_response(eig, t)
    coeff = params.c * (params.mu * state.x0 - w)
    if coeff != 0.0:
        x = x + coeff * exp_convolution(eig, params.mu, t)
    return x


def _assemble_derivative(params, eig, state, w, t):
    hddot = sum(
        r * s * s * np.exp(s * t) for r, s in zip(eig.residues, eig.roots)
    )
    v = params.m * state.x0 * _real_part(hddot)
    v = v + params.m * state.v0 * impulse_response_derivative(eig, t)
    coeff = params.c * (params.mu * state.x0 - w)
    if coeff != 0.0:
        v = v + coeff * _exp_convolution_derivative(eig, params.mu, t)
    return v


def initialization_response(
    params: OscillatorParams,
    state: InitialState,
    history: HistoryProfile | None,
    t,
):
    """Response x(t) to initial state and history, no external force."""
    eig = solve_eigen(params)
    w = _weight_value(params, history)
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValueError("response is defined for t >= 0")
    return _assemble(params, eig, state, w, t)


def response_terms(
    params: OscillatorParams,
    state: InitialState,
    history: HistoryProfile | None,
    t,
) -> ResponseTerms:
    """The four parts of the initialization response, separately.

    Their sum reproduces initialization_response; with c = 0 the history
    and kernel terms are exactly zero.
    """
    eig = solve_eigen(params)
    w = _weight_value(params, history)
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValueError("response is defined for t >= 0")
    if params.c != 0.0 and (w != 0.0 or state.x0 != 0.0):
        conv = exp_convolution(eig, params.mu, t)
    else:
        conv = 0.0 if t.ndim == 0 else np.zeros_like(t)
    zero = 0.0 if t.ndim == 0 else np.zeros_like(t)
    return ResponseTerms(
        term_history=-params.c * w * conv if params.c != 0.0 else zero,
        term_displacement=params.m * state.x0 * impulse_response_derivative(eig, t),
        term_kernel=params.c * params.mu * state.x0 * conv if params.c != 0.0 else zero,
        term_velocity=params.m * state.v0 * impulse_response(eig, t),
    )


def _forcing_on_grid(forcing, t: np.ndarray) -> np.ndarray:
    if callable(forcing):
        values = np.asarray([float(forcing(ti)) for ti in t], dtype=float)
    else:
        values = np.asarray(forcing, dtype=float)
        if values.shape != t.shape:
            raise ValueError(
                f"sampled forcing has {values.shape[0] if values.ndim else 0} values, "
                f"grid has {len(t)}"
            )
    if not np.all(np.isfinite(values)):
        raise ValueError("forcing must be finite on the whole grid")
    return values


def _forced_convolution(eig: EigenSolution, f: np.ndarray, dt: float):
    """Trapezoid convolutions (h*f, hdot*f) on the uniform grid.

    Per-mode recursion C <- exp(s*dt)*(C + dt/2*f_n) + dt/2*f_{n+1}
    reproduces the trapezoid sum of exp(s*(t-tau))*f(tau) exactly while
    staying O(n) and overflow-free.
    """
    n = len(f)
    roots = eig.roots
    residues = eig.residues
    decay = [np.exp(s * dt) for s in roots]
    half = 0.5 * dt
    c = [0j, 0j, 0j]
    conv_x = np.zeros(n, dtype=complex)
    conv_v = np.zeros(n, dtype=complex)
    for i in range(1, n):
        f_prev = f[i - 1]
        f_here = f[i]
        zx = 0j
        zv = 0j
        for j in range(3):
            cj = decay[j] * (c[j] + half * f_prev) + half * f_here
            c[j] = cj
            zx += residues[j] * cj
            zv += residues[j] * roots[j] * cj
        conv_x[i] = zx
        conv_v[i] = zv
    return _real_part(conv_x), _real_part(conv_v)


def forced_response(
    params: OscillatorParams,
    state: InitialState,
    history: HistoryProfile | None,
    forcing,
    t_end: float,
    dt: float,
) -> Trajectory:
    """Trajectory on [0, t_end]: initialization response plus h*f.

    forcing may be None (pure initialization response, closed form per
    point), a callable f(t), or an array of samples on the grid.
    """
    eig = solve_eigen(params)
    w = _weight_value(params, history)
    t = time_grid(t_end, dt)
    step = float(t[1])
    x = np.asarray(_assemble(params, eig, state, w, t), dtype=float)
    xdot = np.asarray(_assemble_derivative(params, eig, state, w, t), dtype=float)
    if forcing is not None:
        f = _forcing_on_grid(forcing, t)
        conv_x, conv_v = _forced_convolution(eig, f, step)
        x = x + conv_x
        xdot = xdot + conv_v
    psi_col = w * np.exp(-params.mu * t)
    scale = max(1.0, abs(state.x0), abs(state.v0))
    assert abs(x[0] - state.x0) <= 1e-9 * scale
    assert abs(xdot[0] - state.v0) <= 1e-9 * scale
    return Trajectory(t0=0.0, dt=step, x=x, xdot=xdot, psi=psi_col)
