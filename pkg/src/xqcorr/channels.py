"""Decoherence channels in operator-sum form and their action on c.

Five single-qubit channels (bit flip, bit-phase flip, phase flip,
depolarizing, generalized amplitude damping at infinite temperature),
applied to both qubits independently.  Two routes exist on purpose:
the generic Kraus application on the 4x4 matrix, and the closed-form
component rules on the c-vector; tests hold them against each other.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .states import IDENTITY2, SIGMA, CVector, assert_physical, validate_density_matrix


class ChannelKind(str, enum.Enum):
    """Channel selector; values double as the CLI spellings."""

    BF = "bf"
    BPF = "bpf"
    PF = "pf"
    DP = "dp"
    GAD = "gad"


@dataclass(frozen=True)
class ChannelSpec:
    """A channel kind plus its strength (p for the flips/DP, gamma for GAD)."""

    kind: ChannelKind
    parameter: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", ChannelKind(self.kind))
        p = float(self.parameter)
        object.__setattr__(self, "parameter", p)
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"channel parameter {p!r} outside [0, 1]")


def kraus_set(spec: ChannelSpec) -> list[np.ndarray]:
    """The 2x2 Kraus operators of one channel acting on one qubit.

    Flip channels: {sqrt(1 - p/2) I, sqrt(p/2) sigma_k} with k the flip
    axis.  Depolarizing: {sqrt(1 - 3p/4) I, sqrt(p/4) sigma_i}.  GAD is
    the four half-weighted damping operators with parameter gamma.
    Completeness sum(E^dag E) = I holds for every parameter.
    """
    p = spec.parameter
    if spec.kind is ChannelKind.BF:
        return _flip_pair(p, SIGMA[0])
    if spec.kind is ChannelKind.BPF:
        return _flip_pair(p, SIGMA[1])
    if spec.kind is ChannelKind.PF:
        return _flip_pair(p, SIGMA[2])
    if spec.kind is ChannelKind.DP:
        ops = [math.sqrt(1.0 - 3.0 * p / 4.0) * IDENTITY2]
        ops.extend(math.sqrt(p / 4.0) * s for s in SIGMA)
        return ops
    # GAD: damping toward both poles with equal weight
    root_keep = math.sqrt(1.0 - p)
    root_drop = math.sqrt(p)
    half = math.sqrt(0.5)
    return [
        half * np.array([[1.0, 0.0], [0.0, root_keep]], dtype=complex),
        half * np.array([[0.0, root_drop], [0.0, 0.0]], dtype=complex),
        half * np.array([[root_keep, 0.0], [0.0, 1.0]], dtype=complex),
        half * np.array([[0.0, 0.0], [root_drop, 0.0]], dtype=complex),
    ]


def _flip_pair(p: float, sigma: np.ndarray) -> list[np.ndarray]:
    return [math.sqrt(1.0 - p / 2.0) * IDENTITY2, math.sqrt(p / 2.0) * sigma]


def kraus_completeness_defect(ops: list[np.ndarray]) -> float:
    """Largest entry of |sum(E^dag E) - I|; zero for a trace-preserving set."""
    acc = np.zeros((2, 2), dtype=complex)
    for e in ops:
        acc += e.conj().T @ e
    return float(np.abs(acc - IDENTITY2).max())


def apply_channel_matrix(rho: np.ndarray, spec: ChannelSpec) -> np.ndarray:
    """Both-qubit channel action sum_ij (E_i o E_j) rho (E_i o E_j)^dag.

    The generic route: works for any state, X-shaped or not.  Trace is
    preserved and positivity maintained up to rounding.
    """
    rho = validate_density_matrix(rho)
    ops = kraus_set(spec)
    out = np.zeros_like(rho)
    for ei in ops:
        for ej in ops:
            k = np.kron(ei, ej)
            out += k @ rho @ k.conj().T
    return out


def evolve_c(c: CVector, spec: ChannelSpec) -> CVector:
    """Closed-form channel action on the correlation vector.

    Component rules (f = (1-p)^2, g = gamma): BF scales (c2, c3) by f;
    BPF scales (c1, c3); PF scales (c1, c2); DP scales all three; GAD
    maps to (c1 (1-g), c2 (1-g), c3 (1-g)^2).
    """
    assert_physical(c)
    return CVector(*_evolve3(c.c1, c.c2, c.c3, spec.kind, spec.parameter))


def _evolve3(
    c1: float, c2: float, c3: float, kind: ChannelKind, p: float
) -> tuple[float, float, float]:
    if kind is ChannelKind.GAD:
        k = 1.0 - p
        return c1 * k, c2 * k, c3 * k * k
    f = (1.0 - p) ** 2
    if kind is ChannelKind.BF:
        return c1, c2 * f, c3 * f
    if kind is ChannelKind.BPF:
        return c1 * f, c2, c3 * f
    if kind is ChannelKind.PF:
        return c1 * f, c2 * f, c3
    return c1 * f, c2 * f, c3 * f  # DP


def decoherence_schedule(t: float) -> float:
    """Channel strength at dimensionless time t: p(t) = 1 - exp(-t/2).

    The decay-rate convention is absorbed into t, so this one schedule
    serves every channel (gamma(t) is the same expression).
    """
    if t < 0.0:
        raise ValueError(f"time must be nonnegative, got {t!r}")
    return 1.0 - math.exp(-t / 2.0)


def channel_at_time(kind: ChannelKind, t: float) -> ChannelSpec:
    """Convenience: the channel of the given kind at schedule time t."""
    return ChannelSpec(kind, decoherence_schedule(t))
