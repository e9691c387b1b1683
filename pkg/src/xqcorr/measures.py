"""Closed-form correlation measures on the c-vector.

Seven quantities, all scalar arithmetic in (c1, c2, c3): the Tsallis
q-discord, Wootters concurrence, variance- and entropy-criterion steering
for two and three measurement axes, and the CHSH nonlocality excess.
The auxiliary binary entropy h and the bound transfer function f_q come
with bisection inverses, since the hierarchy between the measures is
phrased through them.

Public functions validate their state once and then delegate to private
float kernels; the kernels are what sweep and root-finding loops call.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import ClassVar

from .states import PHYSICALITY_TOL, CVector, assert_physical, fmt17

LN2 = math.log(2.0)
SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)

# |q - 1| below this switches the Tsallis forms to their entropic limit;
# closer than ~1e-9 the (q-1) denominators lose every significant digit.
Q_ONE_TOL = 1e-9

# Results this far below zero are rounding noise and clamp to exactly 0,
# which is what makes "the measure died" (value == 0) a clean predicate.
NEG_CLAMP = 1e-12


def binary_entropy(x: float) -> float:
    """h(x): Shannon entropy, in bits, of a coin with bias (1 + x)/2.

    Even in x, h(0) = 1, h(+/-1) = 0.
    """
    if not -1.0 <= x <= 1.0:
        raise ValueError(f"binary_entropy argument {x!r} outside [-1, 1]")
    return _h(x)


def _h(x: float) -> float:
    p = 0.5 * (1.0 + x)
    m = 0.5 * (1.0 - x)
    acc = 0.0
    if p > 0.0:
        acc -= p * math.log2(p)
    if m > 0.0:
        acc -= m * math.log2(m)
    return acc


def inv_binary_entropy(y: float) -> float:
    """The x in [0, 1] with h(x) = y, on the decreasing branch.

    Plain bisection; the residual |h(x) - y| stays below 1e-12.
    """
    if not 0.0 <= y <= 1.0:
        raise ValueError(f"inv_binary_entropy argument {y!r} outside [0, 1]")
    return _inv_h(y)


def _inv_h(y: float) -> float:
    if y == 0.0:
        return 1.0
    if y == 1.0:
        return 0.0
    lo, hi = 0.0, 1.0  # h(lo) = 1 >= y >= 0 = h(hi)
    for _ in range(64):
        mid = 0.5 * (lo + hi)
        if _h(mid) > y:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def f_q(x: float, q: float) -> float:
    """Transfer function pairing the q-discord with the concurrence.

    f_q(x) = ((1-x)^q + (1+x)^q - 2) / (2^q (q-1) ln 2) for q != 1, and
    the q -> 1 limit is 1 - h(x).  Increasing and convex on [0, 1] with
    f_q(0) = 0.  It dominates its leading Taylor term q x^2 / (2^q ln 2)
    only for q outside (2, 3): inside that window every higher even
    binomial coefficient of (1-x)^q + (1+x)^q is negative, so the
    quadratic overshoots f_q on all of (0, 1].
    """
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"f_q argument {x!r} outside [0, 1]")
    _check_q(q)
    return _f_q(x, q)


def _f_q(x: float, q: float) -> float:
    if abs(q - 1.0) < Q_ONE_TOL:
        return 1.0 - _h(x)
    return ((1.0 - x) ** q + (1.0 + x) ** q - 2.0) / (2.0**q * (q - 1.0) * LN2)


def _check_q(q: float) -> None:
    if not q > 0.0:
        raise ValueError(f"q must be positive, got {q!r}")


def inv_f_q(y: float, q: float) -> float:
    """The x in [0, 1] with f_q(x) = y, bisected on the increasing branch.

    Requires q >= 1.  y may exceed f_q(1, q) by up to 1e-9 (last-ulp noise
    from discord values at the ceiling feeding back in) and then maps to 1;
    anything further raises.
    """
    if not q >= 1.0:
        raise ValueError(f"inv_f_q requires q >= 1, got {q!r}")
    top = _f_q(1.0, q)
    if not 0.0 <= y <= top + 1e-9:
        raise ValueError(f"inv_f_q argument {y!r} outside [0, f_q(1)={top:.17g}]")
    if y >= top:
        return 1.0
    lo, hi = 0.0, 1.0
    for _ in range(64):
        mid = 0.5 * (lo + hi)
        if _f_q(mid, q) < y:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def q_discord(c: CVector, q: float = 1.0) -> float:
    """Tsallis q-discord of rho(c), in bits-like base-2 units.

    The minimizing projective measurement on B is along the axis of the
    largest |c_i|, leaving a pinched state with eigenvalues (1 +/- c_m)/4
    twice each.  q = 1 recovers the entropic discord.
    """
    _check_q(q)
    assert_physical(c)
    return _q_discord3(c.c1, c.c2, c.c3, q)


def _q_discord3(c1: float, c2: float, c3: float, q: float) -> float:
    cm = max(abs(c1), abs(c2), abs(c3))
    lam = (
        (1.0 + c3 + (c1 - c2)) / 4.0,
        (1.0 + c3 - (c1 - c2)) / 4.0,
        (1.0 - c3 + (c1 + c2)) / 4.0,
        (1.0 - c3 - (c1 + c2)) / 4.0,
    )
    if abs(q - 1.0) < Q_ONE_TOL:
        acc = 0.0
        for lm in lam:
            # eigenvalues within the physicality tolerance of 0 are
            # boundary noise; their x ln x would dwarf the negative clamp
            if lm > PHYSICALITY_TOL:
                acc += lm * math.log(lm)
        mu_p = (1.0 + cm) / 4.0
        mu_m = (1.0 - cm) / 4.0
        if mu_p > 0.0:
            acc -= 2.0 * mu_p * math.log(mu_p)
        if mu_m > 0.0:
            acc -= 2.0 * mu_m * math.log(mu_m)
        value = acc / LN2
    else:
        acc = 0.0
        for lm in lam:
            if lm > 0.0:  # rounding can leave boundary eigenvalues at -1e-17
                acc += lm**q
        pinched = ((1.0 + cm) ** q + (1.0 - cm) ** q) / 2.0 ** (2.0 * q - 1.0)
        value = (acc - pinched) / ((q - 1.0) * LN2)
    return _clamp_nonneg(value)


def _clamp_nonneg(value: float) -> float:
    if value >= 0.0:
        return value
    if value >= -NEG_CLAMP:
        return 0.0
    raise ArithmeticError(
        f"measure evaluated to {value!r}, more negative than rounding can explain"
    )


def concurrence(c: CVector) -> float:
    """Wootters concurrence of rho(c).

    max{0, (|c1-c2| - |1-c3|)/2, (|c1+c2| - |1+c3|)/2}: one branch per
    anti-diagonal block of the X matrix.
    """
    assert_physical(c)
    return _concurrence3(c.c1, c.c2, c.c3)


def _concurrence3(c1: float, c2: float, c3: float) -> float:
    return max(
        0.0,
        0.5 * (abs(c1 - c2) - abs(1.0 - c3)),
        0.5 * (abs(c1 + c2) - abs(1.0 + c3)),
    )


def steering_variance(c: CVector, n: int) -> float:
    """Variance-criterion steering with n = 2 or 3 Pauli settings.

    The correlation strength F (best pair sum |c_i + c_j| for n = 2, the
    full |c1 + c2 + c3| for n = 3) witnesses steering when it exceeds
    sqrt(n); the excess is normalized by (n - sqrt(n)) so the measure
    lives in [0, 1].
    """
    assert_physical(c)
    if n == 2:
        return _s2v3(c.c1, c.c2, c.c3)
    if n == 3:
        return _s3v3(c.c1, c.c2, c.c3)
    raise ValueError(f"n must be 2 or 3, got {n!r}")


def _s2v3(c1: float, c2: float, c3: float) -> float:
    f = max(abs(c1 + c2), abs(c1 + c3), abs(c2 + c3))
    return max(0.0, (f - SQRT2) / (2.0 - SQRT2))


def _s3v3(c1: float, c2: float, c3: float) -> float:
    f = abs(c1 + c2 + c3)
    return max(0.0, (f - SQRT3) / (3.0 - SQRT3))


def steering_entropic(c: CVector, n: int) -> float:
    """Entropy-criterion steering with n = 2 or 3 Pauli settings.

    Positive when the conditional-entropy sum beats the entropic
    uncertainty bound: the best pair for n = 2 (equivalently the two
    largest |c_i|, since h falls with |x|), all three axes for n = 3.
    """
    assert_physical(c)
    if n == 2:
        return _s2e3(c.c1, c.c2, c.c3)
    if n == 3:
        return _s3e3(c.c1, c.c2, c.c3)
    raise ValueError(f"n must be 2 or 3, got {n!r}")


def _s2e3(c1: float, c2: float, c3: float) -> float:
    h1, h2, h3 = _h(c1), _h(c2), _h(c3)
    return max(0.0, 1.0 - h1 - h2, 1.0 - h1 - h3, 1.0 - h2 - h3)


def _s3e3(c1: float, c2: float, c3: float) -> float:
    return max(0.0, 1.0 - 0.5 * (_h(c1) + _h(c2) + _h(c3)))


def bell_nonlocality(c: CVector) -> float:
    """CHSH excess sqrt(max{0, B_max^2 / 4 - 1}) of rho(c).

    Zero exactly on the CHSH-satisfying set, 1 on a Bell state.
    """
    assert_physical(c)
    return _bell3(c.c1, c.c2, c.c3)


def _bell3(c1: float, c2: float, c3: float) -> float:
    s1, s2, s3 = c1 * c1, c2 * c2, c3 * c3
    return math.sqrt(
        max(0.0, s1 + s2 - 1.0, s3 + 0.5 * (s1 + s2 + abs(s1 - s2)) - 1.0)
    )


def _bell3_sorted(c1: float, c2: float, c3: float) -> float:
    # same quantity via "two largest squared components minus 1"
    a, b, _ = sorted((c1 * c1, c2 * c2, c3 * c3), reverse=True)
    return math.sqrt(max(0.0, a + b - 1.0))


@dataclass(frozen=True)
class MeasureRecord:
    """Every measure of one state, in the emitted column order."""

    c: CVector
    q: float
    d_q: float
    e: float
    s2v: float
    s3v: float
    s2e: float
    s3e: float
    n_bell: float

    CSV_HEADER: ClassVar[str] = "c1,c2,c3,q,Dq,E,S2v,S3v,S2e,S3e,N"

    def values(self) -> tuple[float, ...]:
        return (
            self.c.c1, self.c.c2, self.c.c3, self.q,
            self.d_q, self.e, self.s2v, self.s3v, self.s2e, self.s3e, self.n_bell,
        )

    def csv_row(self) -> str:
        return ",".join(fmt17(v) for v in self.values())


def all_measures(c: CVector, q: float = 1.0) -> MeasureRecord:
    """All seven measures in one pass; the state is validated once."""
    _check_q(q)
    assert_physical(c)
    return MeasureRecord(
        c=c,
        q=q,
        d_q=_q_discord3(c.c1, c.c2, c.c3, q),
        e=_concurrence3(c.c1, c.c2, c.c3),
        s2v=_s2v3(c.c1, c.c2, c.c3),
        s3v=_s3v3(c.c1, c.c2, c.c3),
        s2e=_s2e3(c.c1, c.c2, c.c3),
        s3e=_s3e3(c.c1, c.c2, c.c3),
        n_bell=_bell3(c.c1, c.c2, c.c3),
    )
