"""Sudden-death times of the measures under the decoherence schedule.

A measure "dies" when its value reaches exactly 0 (the closed forms clamp
rounding noise, so the predicate is clean).  Death times come from a
generic grid-then-bisect root finder valid for any channel, and, on the
phase-flip family c = (u, u, v), from closed expressions; the chronology
of deaths is the ordering these times must respect.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping

import numpy as np

from .channels import ChannelKind, _evolve3, decoherence_schedule
from .measures import (
    SQRT2,
    _bell3,
    _check_q,
    _concurrence3,
    _h,
    _inv_h,
    _q_discord3,
    _s2e3,
    _s2v3,
    _s3e3,
    _s3v3,
)
from .states import CVector, assert_physical, fmt17, is_physical

MEASURE_IDS = ("Dq", "E", "N", "S2e", "S3e", "S2v", "S3v")

# The variance steering pair is reported but kept out of the chronology
# assertions; no pointwise hierarchy backs an ordering for it.
CHRONOLOGY_IDS = ("Dq", "E", "N", "S2e", "S3e")

CHRONOLOGY_SLACK = 1e-8

_KERNELS: dict[str, Callable[[float, float, float, float], float]] = {
    "Dq": _q_discord3,
    "E": lambda c1, c2, c3, q: _concurrence3(c1, c2, c3),
    "N": lambda c1, c2, c3, q: _bell3(c1, c2, c3),
    "S2e": lambda c1, c2, c3, q: _s2e3(c1, c2, c3),
    "S3e": lambda c1, c2, c3, q: _s3e3(c1, c2, c3),
    "S2v": lambda c1, c2, c3, q: _s2v3(c1, c2, c3),
    "S3v": lambda c1, c2, c3, q: _s3v3(c1, c2, c3),
}

# Scan grid for the root finder: geometric between the shortest death
# times worth resolving and a horizon where every channel is far past
# any death (p(50) differs from 1 by ~1e-11).
_TIME_GRID = (0.0,) + tuple(float(t) for t in np.geomspace(1e-6, 50.0, 511))
_BISECT_TOL = 1e-9


@dataclass(frozen=True)
class DeathTime:
    """When a measure reaches zero: a finite time, NEVER, or BORN_DEAD."""

    kind: str
    time: float | None = None

    def __post_init__(self) -> None:
        if self.kind == "finite":
            if self.time is None or not self.time >= 0.0:
                raise ValueError(f"finite death needs a time >= 0, got {self.time!r}")
        elif self.kind in ("never", "born_dead"):
            if self.time is not None:
                raise ValueError(f"{self.kind} death carries no time")
        else:
            raise ValueError(f"unknown death kind {self.kind!r}")

    @classmethod
    def at(cls, t: float) -> "DeathTime":
        return cls("finite", float(t))

    @property
    def is_finite(self) -> bool:
        return self.kind == "finite"

    @property
    def rank(self) -> int:
        """Coarse ordering: born dead < any finite time < never."""
        return {"born_dead": 0, "finite": 1, "never": 2}[self.kind]

    def csv_cell(self) -> str:
        if self.kind == "never":
            return "never"
        if self.kind == "born_dead":
            return "0"
        return fmt17(self.time)

    def born_dead_flag(self) -> str:
        return "1" if self.kind == "born_dead" else "0"


NEVER = DeathTime("never")
BORN_DEAD = DeathTime("born_dead")


def at_or_after(a: DeathTime, b: DeathTime, slack: float = CHRONOLOGY_SLACK) -> bool:
    """Whether death a happens no earlier than death b (a >= b - slack)."""
    if a.rank != b.rank:
        return a.rank > b.rank
    if not a.is_finite:
        return True
    return a.time >= b.time - slack


def _dq_alive(c1: float, c2: float, c3: float) -> bool:
    # Dq > 0 iff at least two components are nonzero: the optimal pinch
    # keeps exactly one axis, so it moves the spectrum iff another axis
    # carries weight.  Value-based testing would misreport here: the
    # closed form underflows to 0 late in a trajectory while the true
    # value stays positive for every finite t.
    return (c1 != 0.0) + (c2 != 0.0) + (c3 != 0.0) >= 2


def sudden_death_time(
    c: CVector, kind: ChannelKind | str, measure: str, q: float = 1.0
) -> DeathTime:
    """First time the measure reaches 0 along the channel trajectory.

    Scans a 512-point geometric grid on [0, 50] for the first failure of
    the alive predicate (value > 0), then bisects the bracketing interval
    to 1e-9 width.  BORN_DEAD if the measure is zero at t = 0; NEVER if
    it is still positive at the horizon (every Table channel has already
    driven its decaying components to ~1e-11 of their start by then, so
    a measure alive at 50 only reaches zero in the t -> infinity limit).
    """
    assert_physical(c)
    _check_q(q)
    kind = ChannelKind(kind)
    try:
        kern = _KERNELS[measure]
    except KeyError:
        raise ValueError(f"unknown measure id {measure!r}") from None

    c1, c2, c3 = c.c1, c.c2, c.c3
    if measure == "Dq":
        # Channel factors stay strictly positive for p < 1, so the
        # nonzero pattern of c(t), and with it this predicate, is
        # t-invariant: the answer is decided at t = 0.
        return NEVER if _dq_alive(c1, c2, c3) else BORN_DEAD

    def value(t: float) -> float:
        e1, e2, e3 = _evolve3(c1, c2, c3, kind, decoherence_schedule(t))
        return kern(e1, e2, e3, q)

    if not value(0.0) > 0.0:
        return BORN_DEAD
    prev = 0.0
    for t in _TIME_GRID[1:]:
        if not value(t) > 0.0:
            lo, hi = prev, t
            while hi - lo > _BISECT_TOL:
                mid = 0.5 * (lo + hi)
                if value(mid) > 0.0:
                    lo = mid
                else:
                    hi = mid
            return DeathTime.at(0.5 * (lo + hi))
        prev = t
    return NEVER


@dataclass(frozen=True)
class PfFamilyState:
    """A state c = (u, u, v) of the phase-flip sudden-death family.

    The physicality tetrahedron cuts this plane down to
    (v-1)/2 <= u <= (1-v)/2 with v in (-1, 1).
    """

    u: float
    v: float

    def __post_init__(self) -> None:
        u = float(self.u)
        v = float(self.v)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)
        if not -1.0 < v < 1.0:
            raise ValueError(f"v={v!r} outside (-1, 1)")
        if not (v - 1.0) / 2.0 <= u <= (1.0 - v) / 2.0:
            raise ValueError(f"u={u!r} outside [(v-1)/2, (1-v)/2] for v={v!r}")

    def c(self) -> CVector:
        return CVector(self.u, self.u, self.v)


def sudden_death_closed_pf(s: PfFamilyState, measure: str) -> DeathTime:
    """Closed-form death time of E, N, S2e or S3e under the phase flip.

    On this family the transverse components decay as |u| e^{-t} while v
    stays fixed, so each measure dies when |u| e^{-t} crosses a threshold
    x*: t = ln(|u| / x*).  Thresholds: E -> (1+v)/2; N -> min(1/sqrt(2),
    sqrt(1-v^2)); S2e -> inv_h(max(1/2, 1-h(v))); S3e -> inv_h(1-h(v)/2).
    |u| <= x* means the measure is already zero at t = 0: BORN_DEAD.
    """
    u = abs(s.u)
    if measure == "E":
        x = 0.5 * (1.0 + s.v)
    elif measure == "N":
        x = min(1.0 / SQRT2, math.sqrt(1.0 - s.v * s.v))
    elif measure == "S2e":
        x = _inv_h(max(0.5, 1.0 - _h(s.v)))
    elif measure == "S3e":
        x = _inv_h(1.0 - 0.5 * _h(s.v))
    else:
        raise ValueError(f"no closed-form death time for measure {measure!r}")
    if u <= x:
        return BORN_DEAD
    return DeathTime.at(math.log(u / x))


_CHRONOLOGY_PAIRS = (
    ("Dq", "E"),
    ("E", "N"),
    ("N", "S2e"),
    ("S3e", "S2e"),
    ("E", "S3e"),
)


def chronology_failures(
    times: Mapping[str, DeathTime], slack: float = CHRONOLOGY_SLACK
) -> list[str]:
    """Violated orderings among t_Dq >= t_E >= t_N >= t_S2e <= t_S3e <= t_E."""
    fails = []
    for later, earlier in _CHRONOLOGY_PAIRS:
        if not at_or_after(times[later], times[earlier], slack):
            fails.append(f"t{later}>=t{earlier}")
    return fails


@dataclass(frozen=True)
class ChronologyReport:
    """All seven death times of one state plus the ordering verdict."""

    c: CVector
    channel: ChannelKind
    q: float
    times: dict[str, DeathTime]
    failures: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.failures


def chronology_check(
    c: CVector, kind: ChannelKind | str, q: float = 1.0
) -> ChronologyReport:
    """Compute every death time and verify the sudden-death chronology.

    Violations are reported in the result, never raised.
    """
    kind = ChannelKind(kind)
    times = {m: sudden_death_time(c, kind, m, q) for m in MEASURE_IDS}
    fails = tuple(chronology_failures(times))
    return ChronologyReport(c=c, channel=kind, q=q, times=times, failures=fails)


DEATHS_CSV_HEADER = (
    "c1,c2,c3,channel,q,tDq,tE,tN,tS2e,tS3e,tS2v,tS3v,pass,"
    "bdDq,bdE,bdN,bdS2e,bdS3e,bdS2v,bdS3v"
)


def deaths_csv_row(report: ChronologyReport) -> str:
    """One deaths-table row: times with the `never` sentinel, born-dead flags."""
    if not is_physical(report.c):
        raise ValueError("refusing to serialize a nonphysical state")
    ordered = [report.times[m] for m in MEASURE_IDS]
    cells = [
        fmt17(report.c.c1),
        fmt17(report.c.c2),
        fmt17(report.c.c3),
        report.channel.value,
        fmt17(report.q),
    ]
    cells.extend(d.csv_cell() for d in ordered)
    cells.append("1" if report.passed else "0")
    cells.extend(d.born_dead_flag() for d in ordered)
    return ",".join(cells)
