"""Brute-force references: sanity on known states, internal consistency.

Agreement between these oracles and the closed forms is exercised across
the whole suite (and at scale in test_acceptance); here each oracle is
checked against states whose values are known exactly, and against its
own alternate computation path.
"""

import math

import numpy as np
import pytest

from xqcorr.oracle import (
    ChshSettings,
    ProjectivePair,
    chsh_direct_search,
    chsh_max_oracle,
    chsh_value,
    concurrence_oracle,
    correlation_matrix,
    haar_unitary,
    pinched_state,
    q_discord_oracle,
    steering_F_oracle,
    steering_G_oracle,
)
from xqcorr.states import CVector, density_matrix

MAX_MIX = np.eye(4) / 4.0
BELL_RHO = density_matrix(CVector(1.0, 1.0, -1.0))


def test_maximally_mixed_state():
    assert q_discord_oracle(MAX_MIX) < 1e-8
    assert q_discord_oracle(MAX_MIX, 2.0) < 1e-8
    assert concurrence_oracle(MAX_MIX) == 0.0
    assert chsh_max_oracle(MAX_MIX) < 1e-12
    assert abs(steering_G_oracle(MAX_MIX, (1, 2)) - 2.0) < 1e-12
    assert abs(steering_G_oracle(MAX_MIX, (1, 2, 3)) - 3.0) < 1e-12
    assert steering_F_oracle(MAX_MIX, (1, 3)) < 1e-12


def test_bell_state():
    assert abs(q_discord_oracle(BELL_RHO) - 1.0) < 1e-6
    assert abs(concurrence_oracle(BELL_RHO) - 1.0) < 1e-12
    assert abs(chsh_max_oracle(BELL_RHO) - 2.0 * math.sqrt(2.0)) < 1e-12
    assert abs(steering_F_oracle(BELL_RHO, (1, 2, 3)) - 1.0) < 1e-12
    assert steering_G_oracle(BELL_RHO, (1, 2, 3)) < 1e-12


def test_projective_pair_identities():
    for theta, phi in ((0.0, 0.0), (1.1, 2.3), (math.pi, 0.4), (2.0, 5.9)):
        p, q = ProjectivePair(theta, phi).projectors()
        assert np.allclose(p @ p, p, atol=1e-14)
        assert np.allclose(q @ q, q, atol=1e-14)
        assert np.allclose(p @ q, 0.0, atol=1e-14)
        assert np.allclose(p + q, np.eye(2), atol=1e-14)
        assert abs(np.trace(p) - 1.0) < 1e-14


def test_pinched_state_properties(random_states):
    pair = ProjectivePair(0.8, 1.9)
    for c in random_states[:10]:
        rho = density_matrix(c)
        pin = pinched_state(rho, pair)
        assert abs(np.trace(pin) - 1.0) < 1e-12
        assert np.allclose(pin, pin.conj().T, atol=1e-12)
        assert np.linalg.eigvalsh(pin).min() > -1e-12
        # pinching is idempotent
        assert np.allclose(pinched_state(pin, pair), pin, atol=1e-12)


def test_pinch_along_z_of_x_state():
    # measuring B along z kills c1, c2 and keeps c3
    c = CVector(0.6, -0.4, 0.2)
    pin = pinched_state(density_matrix(c), ProjectivePair(0.0, 0.0))
    assert np.allclose(pin, density_matrix(CVector(0.0, 0.0, 0.2)), atol=1e-14)


def test_chsh_settings_validation():
    unit = (0.0, 0.0, 1.0)
    ChshSettings(unit, unit, unit, unit)
    with pytest.raises(ValueError):
        ChshSettings(unit, unit, unit, (0.0, 0.0, 1.1))


def test_chsh_direct_search_matches_matrix_rule(random_states):
    for c in random_states[:12]:
        rho = density_matrix(c)
        val, settings = chsh_direct_search(rho, restarts=8, seed=1)
        ref = chsh_max_oracle(rho)
        assert abs(val - ref) < 1e-6
        # returned settings reproduce the returned value and never beat the bound
        assert abs(chsh_value(rho, settings) - val) < 1e-9
        assert chsh_value(rho, settings) <= ref + 1e-9


def test_correlation_matrix_of_x_state(random_states):
    for c in random_states[:20]:
        t = correlation_matrix(density_matrix(c))
        assert np.allclose(t, np.diag([c.c1, c.c2, c.c3]), atol=1e-12)


def test_local_unitary_invariance(rng):
    # discord, concurrence and CHSH are invariant under U_A (x) U_B;
    # the steering functionals are axis-tied and deliberately are not
    c = CVector(0.55, -0.35, 0.25)
    rho = density_matrix(c)
    for _ in range(3):
        u = np.kron(haar_unitary(rng), haar_unitary(rng))
        rot = u @ rho @ u.conj().T
        assert abs(q_discord_oracle(rot) - q_discord_oracle(rho)) < 1e-6
        assert abs(q_discord_oracle(rot, 2.0) - q_discord_oracle(rho, 2.0)) < 1e-6
        assert abs(concurrence_oracle(rot) - concurrence_oracle(rho)) < 1e-8
        assert abs(chsh_max_oracle(rot) - chsh_max_oracle(rho)) < 1e-8


def test_steering_F_oracle_sums(random_states):
    for c in random_states[:20]:
        rho = density_matrix(c)
        cs = {1: c.c1, 2: c.c2, 3: c.c3}
        for alpha in ((1, 2), (1, 3), (2, 3), (1, 2, 3)):
            expected = abs(sum(cs[i] for i in alpha))
            assert abs(steering_F_oracle(rho, alpha) - expected) < 1e-12


def test_steering_G_oracle_entropies(random_states):
    # on X states the conditional entropy along axis i is h(c_i)
    from xqcorr.measures import binary_entropy

    for c in random_states[:20]:
        rho = density_matrix(c)
        cs = {1: c.c1, 2: c.c2, 3: c.c3}
        for alpha in ((1, 2), (2, 3), (1, 2, 3)):
            expected = sum(binary_entropy(cs[i]) for i in alpha)
            assert abs(steering_G_oracle(rho, alpha) - expected) < 1e-10


def test_alpha_validation():
    for bad in ((1,), (1, 1), (0, 2), (1, 2, 3, 3), (2, 4)):
        with pytest.raises(ValueError):
            steering_F_oracle(MAX_MIX, bad)
        with pytest.raises(ValueError):
            steering_G_oracle(MAX_MIX, bad)


def test_q_discord_oracle_rejects_bad_q():
    with pytest.raises(ValueError):
        q_discord_oracle(MAX_MIX, 0.0)


def test_oracles_reject_invalid_matrices():
    with pytest.raises(ValueError):
        concurrence_oracle(np.eye(2) / 2.0)
    with pytest.raises(ValueError):
        chsh_max_oracle(np.diag([0.7, 0.5, -0.1, -0.1]))


def test_haar_unitary_properties(rng):
    for dim in (2, 4):
        u = haar_unitary(rng, dim)
        assert u.shape == (dim, dim)
        assert np.allclose(u @ u.conj().T, np.eye(dim), atol=1e-12)
    a = haar_unitary(np.random.default_rng(77))
    b = haar_unitary(np.random.default_rng(77))
    assert np.array_equal(a, b)
    cdiff = haar_unitary(np.random.default_rng(78))
    assert not np.allclose(a, cdiff, atol=1e-3)
