"""Two-qubit X states parametrized by their correlation vector.

Everything in this package works on the three-parameter family

    rho(c) = (1/4) [ I + sum_i c_i (sigma_i o sigma_i) ],

whose matrix is X-shaped with maximally mixed marginals.  The vector
c = (c1, c2, c3) determines the state completely, so states are carried
around as ``CVector`` values and expanded to 4x4 matrices only when a
computation genuinely needs one (the oracle and channel-consistency
paths).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Eigenvalues of a physical state may undershoot zero by rounding noise;
# anything below this is treated as genuinely nonphysical.
PHYSICALITY_TOL = 1e-12

# Sampling granularity: block b of a run seeded with s draws from
# default_rng(s + b), so prefixes are reproducible and parallel sweeps
# can hand whole blocks to workers without changing a single draw.
SAMPLE_BLOCK = 4096

SIGMA = (
    np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
)
IDENTITY2 = np.eye(2, dtype=complex)


def fmt17(x: float) -> str:
    """Decimal with 17 significant digits; round-trips to the same double."""
    return f"{x:.17g}"


class NonphysicalStateError(ValueError):
    """Correlation vector whose induced matrix has a negative eigenvalue."""


@dataclass(frozen=True)
class CVector:
    """Correlation coefficients (c1, c2, c3) of an X state.

    Each component is Tr[rho (sigma_i o sigma_i)] and must lie in [-1, 1].
    That box constraint is enforced here; physicality of the full vector
    (a tetrahedron inside the box) is the stricter condition checked by
    :func:`is_physical` / :func:`assert_physical`.
    """

    c1: float
    c2: float
    c3: float

    def __post_init__(self) -> None:
        for name in ("c1", "c2", "c3"):
            value = float(getattr(self, name))
            object.__setattr__(self, name, value)
            if not -1.0 <= value <= 1.0:  # also rejects NaN
                raise ValueError(f"{name}={value!r} lies outside [-1, 1]")

    def __iter__(self):
        return iter((self.c1, self.c2, self.c3))

    def as_array(self) -> np.ndarray:
        return np.array([self.c1, self.c2, self.c3])

    def csv(self) -> str:
        """Serialize as the triple ``c1,c2,c3`` with 17 significant digits."""
        return ",".join(fmt17(v) for v in self)

    @classmethod
    def from_csv(cls, text: str) -> "CVector":
        parts = text.split(",")
        if len(parts) != 3:
            raise ValueError(
                f"expected 3 comma-separated components, got {len(parts)}: {text!r}"
            )
        return cls(*(float(p) for p in parts))


def density_matrix(c: CVector) -> np.ndarray:
    """The 4x4 complex matrix of rho(c).

    Diagonal entries are (1 +/- c3)/4 and the anti-diagonal carries
    (c1 -/+ c2)/4; every entry is real for this family.  Physicality is
    not checked here (see :func:`assert_physical`).
    """
    rho = np.eye(4, dtype=complex)
    for ci, sigma in zip(c, SIGMA):
        rho += ci * np.kron(sigma, sigma)
    return rho / 4.0


def spectrum(c: CVector) -> tuple[float, float, float, float]:
    """Eigenvalues of rho(c), descending.

    Closed form {(1 + c3 +/- (c1 - c2))/4, (1 - c3 +/- (c1 + c2))/4}.
    Values are returned exactly as computed; a physical state keeps all
    four above -PHYSICALITY_TOL.
    """
    lam = (
        (1.0 + c.c3 + (c.c1 - c.c2)) / 4.0,
        (1.0 + c.c3 - (c.c1 - c.c2)) / 4.0,
        (1.0 - c.c3 + (c.c1 + c.c2)) / 4.0,
        (1.0 - c.c3 - (c.c1 + c.c2)) / 4.0,
    )
    return tuple(sorted(lam, reverse=True))


def is_physical(c: CVector) -> bool:
    """Whether rho(c) is positive semidefinite (to PHYSICALITY_TOL)."""
    return spectrum(c)[3] >= -PHYSICALITY_TOL


def assert_physical(c: CVector) -> None:
    """Raise :class:`NonphysicalStateError` naming the offending eigenvalue."""
    lam_min = spectrum(c)[3]
    if lam_min < -PHYSICALITY_TOL:
        raise NonphysicalStateError(
            f"c=({c.c1:g}, {c.c2:g}, {c.c3:g}) induces a negative eigenvalue "
            f"{lam_min:.6g}; the vector lies outside the physical tetrahedron"
        )


def block_rng(seed: int, block: int) -> np.random.Generator:
    """The RNG stream used for sample block ``block`` of a run seeded ``seed``."""
    return np.random.default_rng(seed + block)


def block_sizes(n: int) -> list[int]:
    """Sizes of the successive sample blocks covering n states."""
    if n < 0:
        raise ValueError(f"sample count must be nonnegative, got {n}")
    full, rem = divmod(n, SAMPLE_BLOCK)
    return [SAMPLE_BLOCK] * full + ([rem] if rem else [])


def rejection_sample(rng: np.random.Generator, count: int) -> np.ndarray:
    """Draw ``count`` physical c-vectors uniformly, as a (count, 3) array.

    Uniform on the cube [-1, 1]^3 with rejection of the nonphysical part
    (about 2/3 of the volume).  Returns raw rows rather than CVectors so
    bulk callers can stay vectorized.
    """
    out = np.empty((count, 3))
    have = 0
    while have < count:
        want = count - have
        batch = rng.uniform(-1.0, 1.0, size=(2 * want + 8, 3))
        keep = batch[_physical_mask(batch)][:want]
        out[have : have + keep.shape[0]] = keep
        have += keep.shape[0]
    return out


def _physical_mask(cs: np.ndarray) -> np.ndarray:
    c1, c2, c3 = cs[:, 0], cs[:, 1], cs[:, 2]
    return (1.0 + c3 >= np.abs(c1 - c2)) & (1.0 - c3 >= np.abs(c1 + c2))


def sample_states(n: int, seed: int) -> list[CVector]:
    """n physical states, reproducible for a given seed.

    States are drawn in SAMPLE_BLOCK-sized blocks with one RNG stream per
    block (see :func:`block_rng`), which is what makes multi-worker sweeps
    produce the same sequence as serial ones.
    """
    if n < 1:
        raise ValueError(f"sample count must be >= 1, got {n}")
    out: list[CVector] = []
    for b, count in enumerate(block_sizes(n)):
        rows = rejection_sample(block_rng(seed, b), count)
        out.extend(CVector(*row) for row in rows)
    return out


_ROTATION_SIGNS = {
    1: (1.0, -1.0, -1.0),
    2: (-1.0, 1.0, -1.0),
    3: (-1.0, -1.0, 1.0),
}


def local_rotation(c: CVector, k: int) -> CVector:
    """Image of c under the local rotation exp(i pi sigma_k / 2) on qubit A.

    The two components orthogonal to axis k flip sign; component k is
    untouched.  Equivalent to conjugating rho(c) by U o I and reading the
    correlation vector back off.
    """
    try:
        s1, s2, s3 = _ROTATION_SIGNS[k]
    except KeyError:
        raise ValueError(f"rotation axis must be 1, 2 or 3, got {k!r}") from None
    return CVector(s1 * c.c1, s2 * c.c2, s3 * c.c3)


def rotation_unitary(k: int) -> np.ndarray:
    """The 2x2 matrix exp(i pi sigma_k / 2) = i sigma_k."""
    if k not in (1, 2, 3):
        raise ValueError(f"rotation axis must be 1, 2 or 3, got {k!r}")
    return 1.0j * SIGMA[k - 1]


def extract_c(rho: np.ndarray) -> CVector:
    """Read (c1, c2, c3) back off a 4x4 density matrix.

    c_i = Tr[rho (sigma_i o sigma_i)].  Sub-tolerance excursions past
    +/-1 are rounding noise and get clipped; anything further raises.
    """
    rho = np.asarray(rho, dtype=complex)
    values = []
    for sigma in SIGMA:
        v = float(np.trace(rho @ np.kron(sigma, sigma)).real)
        if abs(v) > 1.0 + 1e-9:
            raise ValueError(f"correlation {v!r} is too far outside [-1, 1] to be noise")
        values.append(min(1.0, max(-1.0, v)))
    return CVector(*values)


def validate_density_matrix(rho: np.ndarray) -> np.ndarray:
    """Check shape, hermiticity, unit trace and positivity; return as complex.

    Tolerances: hermiticity and trace to 1e-12, eigenvalues >= -1e-10.
    Raises ValueError on any failure.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got shape {rho.shape}")
    if not np.allclose(rho, rho.conj().T, atol=1e-12, rtol=0.0):
        raise ValueError("matrix is not hermitian to 1e-12")
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > 1e-12:
        raise ValueError(f"trace is {tr}, expected 1 to 1e-12")
    lam_min = float(np.linalg.eigvalsh(rho)[0])
    if lam_min < -1e-10:
        raise ValueError(f"negative eigenvalue {lam_min:.6g}")
    return rho


def density_matrix_csv(rho: np.ndarray) -> str:
    """Row-major serialization as 16 ``re+imi`` cells, 17 significant digits."""
    cells = []
    for v in np.asarray(rho, dtype=complex).ravel():
        cells.append(f"{v.real:.17g}{v.imag:+.17g}i")
    return ",".join(cells)
