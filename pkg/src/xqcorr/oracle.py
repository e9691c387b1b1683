"""Brute-force measure evaluation on explicit 4x4 density matrices.

Nothing here consults the c-vector closed forms.  Discord minimizes over
measurement directions numerically, concurrence goes through the
spin-flip spectrum, CHSH through the correlation matrix (plus a direct
search over settings as a consistency probe), and the steering
functionals through measured joint distributions.  These are the
independent references the closed forms are validated against, so they
accept arbitrary two-qubit states, not just X-shaped ones.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .states import IDENTITY2, SIGMA, validate_density_matrix

LN2 = math.log(2.0)

_SY_SY = np.kron(SIGMA[1], SIGMA[1])


@dataclass(frozen=True)
class ProjectivePair:
    """Orthogonal rank-1 projector pair along the Bloch direction (theta, phi)."""

    theta: float
    phi: float

    def ket(self) -> np.ndarray:
        half = self.theta / 2.0
        return np.array(
            [math.cos(half), math.sin(half) * np.exp(1.0j * self.phi)], dtype=complex
        )

    def projectors(self) -> tuple[np.ndarray, np.ndarray]:
        v = self.ket()
        p = np.outer(v, v.conj())
        return p, IDENTITY2 - p


def pinched_state(rho: np.ndarray, pair: ProjectivePair) -> np.ndarray:
    """Average post-measurement state sum_b (I o P_b) rho (I o P_b)."""
    rho = validate_density_matrix(rho)
    out = np.zeros_like(rho)
    for p in pair.projectors():
        k = np.kron(IDENTITY2, p)
        out += k @ rho @ k
    return out


def q_discord_oracle(rho: np.ndarray, q: float = 1.0, *, grid: int = 64) -> float:
    """Discord by explicit minimization over projective measurements on B.

    Minimizes S_q(pinched) - S_q(rho), base-2 units, over the Bloch
    sphere: a (grid x grid) sweep in (theta, phi) seeds a Nelder-Mead
    polish to parameter resolution 1e-6.  Good to ~1e-6 in value.
    """
    rho = validate_density_matrix(rho)
    if not q > 0.0:
        raise ValueError(f"q must be positive, got {q!r}")
    lam = np.clip(np.linalg.eigvalsh(rho), 0.0, None)
    s_rho = float(_entropy_q_rows(lam[None, :], q)[0])

    rho4 = rho.reshape(2, 2, 2, 2)
    reduced_a = np.einsum("abcb->ac", rho4)

    thetas = np.linspace(0.0, math.pi, grid)
    phis = np.linspace(0.0, 2.0 * math.pi, grid, endpoint=False)
    tt, pp = np.meshgrid(thetas, phis, indexing="ij")
    values = _entropy_q_rows(
        _pinched_spectra(rho4, reduced_a, tt.ravel(), pp.ravel()), q
    )
    best = int(np.argmin(values))

    def objective(x: np.ndarray) -> float:
        sp = _pinched_spectra(rho4, reduced_a, x[:1], x[1:2])
        return float(_entropy_q_rows(sp, q)[0])

    res = minimize(
        objective,
        np.array([tt.ravel()[best], pp.ravel()[best]]),
        method="Nelder-Mead",
        options={"xatol": 1e-6, "fatol": 1e-13, "maxiter": 400},
    )
    s_min = min(float(values[best]), float(res.fun))
    return max(0.0, s_min - s_rho)


def _pinched_spectra(
    rho4: np.ndarray, reduced_a: np.ndarray, thetas: np.ndarray, phis: np.ndarray
) -> np.ndarray:
    """Eigenvalues (G, 4) of the B-pinched state for G Bloch directions.

    The pinched state is block-diagonal in the measured basis; each 2x2
    block spectrum follows from its trace and determinant, and the block
    for the opposite outcome is Tr_B(rho) minus the first.
    """
    kets = np.empty((thetas.size, 2), dtype=complex)
    kets[:, 0] = np.cos(thetas / 2.0)
    kets[:, 1] = np.sin(thetas / 2.0) * np.exp(1.0j * phis)
    block = np.einsum("gb,abcd,gd->gac", kets.conj(), rho4, kets)
    out = np.empty((thetas.size, 4))
    out[:, 0:2] = _herm2_eigs(block)
    out[:, 2:4] = _herm2_eigs(reduced_a[None, :, :] - block)
    return out


def _herm2_eigs(m: np.ndarray) -> np.ndarray:
    half_tr = 0.5 * (m[:, 0, 0] + m[:, 1, 1]).real
    det = (m[:, 0, 0] * m[:, 1, 1] - m[:, 0, 1] * m[:, 1, 0]).real
    disc = np.sqrt(np.maximum(half_tr * half_tr - det, 0.0))
    return np.stack([half_tr + disc, half_tr - disc], axis=1)


def _entropy_q_rows(spectra: np.ndarray, q: float) -> np.ndarray:
    """S_q in base-2 units for each row of eigenvalues."""
    s = np.clip(spectra, 0.0, None)
    if abs(q - 1.0) < 1e-9:
        safe = np.where(s > 0.0, s, 1.0)
        return -(s * np.log2(safe)).sum(axis=1)
    return (1.0 - (s**q).sum(axis=1)) / ((q - 1.0) * LN2)


def concurrence_oracle(rho: np.ndarray) -> float:
    """Wootters concurrence from the spin-flipped product spectrum."""
    rho = validate_density_matrix(rho)
    flipped = _SY_SY @ rho.conj() @ _SY_SY
    w = np.sort(np.linalg.eigvals(rho @ flipped).real)
    if w[0] < -1e-10:
        raise ArithmeticError(f"rho rho~ produced eigenvalue {w[0]:.3g} < -1e-10")
    r = np.sqrt(np.clip(w[::-1], 0.0, None))
    return max(0.0, float(r[0] - r[1] - r[2] - r[3]))


def correlation_matrix(rho: np.ndarray) -> np.ndarray:
    """The 3x3 matrix T_ij = Tr[rho (sigma_i o sigma_j)]."""
    rho = validate_density_matrix(rho)
    t = np.empty((3, 3))
    for i in range(3):
        for j in range(3):
            t[i, j] = np.trace(rho @ np.kron(SIGMA[i], SIGMA[j])).real
    return t


def chsh_max_oracle(rho: np.ndarray) -> float:
    """Largest CHSH value 2 sqrt(t1 + t2).

    t1, t2 are the two largest eigenvalues of T^T T; this matrix rule is
    the authoritative value (the direct search below is a probe).
    """
    t = correlation_matrix(rho)
    u = np.linalg.eigvalsh(t.T @ t)
    return 2.0 * math.sqrt(max(0.0, float(u[-1] + u[-2])))


@dataclass(frozen=True)
class ChshSettings:
    """Four measurement directions (a, a', b, b') as unit Bloch vectors."""

    a: tuple[float, float, float]
    a_prime: tuple[float, float, float]
    b: tuple[float, float, float]
    b_prime: tuple[float, float, float]

    def __post_init__(self) -> None:
        for name in ("a", "a_prime", "b", "b_prime"):
            vec = tuple(float(x) for x in getattr(self, name))
            object.__setattr__(self, name, vec)
            norm = math.sqrt(sum(x * x for x in vec))
            if abs(norm - 1.0) > 1e-12:
                raise ValueError(f"{name} has norm {norm!r}, expected a unit vector")


def chsh_value(rho: np.ndarray, settings: ChshSettings) -> float:
    """CHSH correlator a.T(b+b') + a'.T(b-b') at fixed settings."""
    t = correlation_matrix(rho)
    a = np.array(settings.a)
    ap = np.array(settings.a_prime)
    b = np.array(settings.b)
    bp = np.array(settings.b_prime)
    return float(a @ t @ (b + bp) + ap @ t @ (b - bp))


def chsh_direct_search(
    rho: np.ndarray, *, restarts: int = 32, seed: int = 0
) -> tuple[float, ChshSettings]:
    """Maximize the CHSH correlator over all four settings directly.

    Settings are parametrized by spherical angles (8 parameters); each
    random restart is polished with Nelder-Mead.  Lands within ~1e-4 of
    chsh_max_oracle.
    """
    t = correlation_matrix(rho)
    rng = np.random.default_rng(seed)

    def negvalue(x: np.ndarray) -> float:
        a, ap, b, bp = (_sph(x[0], x[1]), _sph(x[2], x[3]), _sph(x[4], x[5]), _sph(x[6], x[7]))
        return -(a @ t @ (b + bp) + ap @ t @ (b - bp))

    best_val = -np.inf
    best_x = None
    for _ in range(restarts):
        x0 = rng.uniform(0.0, 2.0 * math.pi, size=8)
        res = minimize(
            negvalue,
            x0,
            method="Nelder-Mead",
            options={"xatol": 1e-7, "fatol": 1e-12, "maxiter": 4000, "maxfev": 4000},
        )
        if -res.fun > best_val:
            best_val = -res.fun
            best_x = res.x
    a, ap, b, bp = (
        _sph(best_x[0], best_x[1]),
        _sph(best_x[2], best_x[3]),
        _sph(best_x[4], best_x[5]),
        _sph(best_x[6], best_x[7]),
    )
    settings = ChshSettings(tuple(a), tuple(ap), tuple(b), tuple(bp))
    return float(best_val), settings


def _sph(theta: float, phi: float) -> np.ndarray:
    st = math.sin(theta)
    return np.array([st * math.cos(phi), st * math.sin(phi), math.cos(theta)])


def _check_alpha(alpha) -> tuple[int, ...]:
    axes = tuple(sorted(alpha))
    if len(axes) not in (2, 3) or len(set(axes)) != len(axes) or any(
        i not in (1, 2, 3) for i in axes
    ):
        raise ValueError(f"alpha must be a 2- or 3-subset of {{1,2,3}}, got {alpha!r}")
    return axes


def steering_F_oracle(rho: np.ndarray, alpha) -> float:
    """Correlation-sum functional |sum_{i in alpha} Tr[rho sigma_i o sigma_i]|.

    alpha picks two or three Pauli axes; on X states this is the
    subsidiary F of the variance steering criterion.
    """
    rho = validate_density_matrix(rho)
    axes = _check_alpha(alpha)
    acc = 0.0
    for i in axes:
        acc += float(np.trace(rho @ np.kron(SIGMA[i - 1], SIGMA[i - 1])).real)
    return abs(acc)


def steering_G_oracle(rho: np.ndarray, alpha) -> float:
    """Conditional-entropy functional sum_{i in alpha} H(sigma_i^B | sigma_i^A).

    Each term comes from the joint outcome distribution
    p(eA, eB) = Tr[(P_i^A o P_i^B) rho] with P the sigma_i eigenprojectors,
    via H(B|A) = H(joint) - H(A).  Bits.
    """
    rho = validate_density_matrix(rho)
    axes = _check_alpha(alpha)
    total = 0.0
    for i in axes:
        projs = _pauli_projectors(i)
        joint = np.empty((2, 2))
        for a in (0, 1):
            for b in (0, 1):
                joint[a, b] = float(
                    np.trace(np.kron(projs[a], projs[b]) @ rho).real
                )
        total += _shannon(joint.ravel()) - _shannon(joint.sum(axis=1))
    return total


def _pauli_projectors(i: int) -> tuple[np.ndarray, np.ndarray]:
    plus = 0.5 * (IDENTITY2 + SIGMA[i - 1])
    return plus, IDENTITY2 - plus


def _shannon(p: np.ndarray) -> float:
    p = np.clip(np.asarray(p, dtype=float), 0.0, None)
    safe = np.where(p > 0.0, p, 1.0)
    return float(-(p * np.log2(safe)).sum())


def haar_unitary(rng: np.random.Generator, dim: int = 2) -> np.ndarray:
    """A Haar-random unitary, via QR of a complex Gaussian matrix."""
    z = rng.normal(size=(dim, dim)) + 1.0j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))
