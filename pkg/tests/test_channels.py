"""Channel pairs: generic Kraus route against the c-vector rules."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xqcorr.channels import (
    ChannelKind,
    ChannelSpec,
    apply_channel_matrix,
    channel_at_time,
    decoherence_schedule,
    evolve_c,
    kraus_completeness_defect,
    kraus_set,
)
from xqcorr.states import CVector, density_matrix, extract_c, is_physical

PARAMS = [0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0]


def physical_cvectors():
    box = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False)
    return st.tuples(box, box, box).map(lambda t: CVector(*t)).filter(is_physical)


def test_kraus_completeness_every_kind_and_parameter():
    for kind in ChannelKind:
        for p in PARAMS:
            defect = kraus_completeness_defect(kraus_set(ChannelSpec(kind, p)))
            assert defect <= 1e-14, (kind, p)


def test_zero_strength_is_identity(random_states):
    for kind in ChannelKind:
        spec = ChannelSpec(kind, 0.0)
        for c in random_states[:5]:
            assert evolve_c(c, spec) == c
            rho = density_matrix(c)
            assert np.allclose(apply_channel_matrix(rho, spec), rho, atol=1e-14)


def test_matrix_route_matches_component_rules(random_states):
    for kind in ChannelKind:
        for p in (0.15, 0.5, 0.85):
            spec = ChannelSpec(kind, p)
            for c in random_states[:15]:
                via_matrix = extract_c(apply_channel_matrix(density_matrix(c), spec))
                direct = evolve_c(c, spec)
                assert abs(via_matrix.c1 - direct.c1) < 1e-12
                assert abs(via_matrix.c2 - direct.c2) < 1e-12
                assert abs(via_matrix.c3 - direct.c3) < 1e-12


def test_trace_preserved(random_states):
    for kind in ChannelKind:
        spec = ChannelSpec(kind, 0.6)
        for c in random_states[:5]:
            out = apply_channel_matrix(density_matrix(c), spec)
            assert abs(np.trace(out).real - 1.0) < 1e-13


def test_maximally_mixed_is_fixed_point():
    rho = np.eye(4, dtype=complex) / 4.0
    for kind in ChannelKind:
        for p in (0.3, 1.0):
            out = apply_channel_matrix(rho, ChannelSpec(kind, p))
            assert np.allclose(out, rho, atol=1e-14), kind


def test_full_depolarizing_kills_correlations(random_states):
    spec = ChannelSpec(ChannelKind.DP, 1.0)
    for c in random_states[:5]:
        assert evolve_c(c, spec) == CVector(0.0, 0.0, 0.0)


def test_flip_channels_preserve_their_axis():
    c = CVector(0.5, 0.4, -0.3)
    for kind, kept in ((ChannelKind.BF, "c1"), (ChannelKind.BPF, "c2"), (ChannelKind.PF, "c3")):
        out = evolve_c(c, ChannelSpec(kind, 0.7))
        assert getattr(out, kept) == getattr(c, kept)


def test_pf_composition_is_multiplicative():
    # two PF applications compose like one with matched scale factor:
    # (1-p1)^2 (1-p2)^2 = (1-p12)^2
    c = CVector(0.6, -0.5, 0.2)
    p1, p2 = 0.3, 0.45
    twice = evolve_c(evolve_c(c, ChannelSpec("pf", p1)), ChannelSpec("pf", p2))
    p12 = 1.0 - (1.0 - p1) * (1.0 - p2)
    once = evolve_c(c, ChannelSpec("pf", p12))
    assert abs(twice.c1 - once.c1) < 1e-15
    assert abs(twice.c2 - once.c2) < 1e-15
    assert twice.c3 == once.c3


def test_components_never_grow(random_states):
    for kind in ChannelKind:
        for p in (0.2, 0.8):
            spec = ChannelSpec(kind, p)
            for c in random_states[:10]:
                out = evolve_c(c, spec)
                assert abs(out.c1) <= abs(c.c1) + 1e-15
                assert abs(out.c2) <= abs(c.c2) + 1e-15
                assert abs(out.c3) <= abs(c.c3) + 1e-15


@given(physical_cvectors(), st.sampled_from(list(ChannelKind)),
       st.floats(min_value=0.0, max_value=1.0, allow_nan=False))
@settings(max_examples=200, deadline=None)
def test_channels_preserve_physicality(c, kind, p):
    assert is_physical(evolve_c(c, ChannelSpec(kind, p)))


def test_schedule_values():
    assert decoherence_schedule(0.0) == 0.0
    assert decoherence_schedule(2.0 * math.log(2.0)) == 0.5
    assert abs(decoherence_schedule(2.0) - (1.0 - math.exp(-1.0))) < 1e-15
    assert decoherence_schedule(1e9) == 1.0
    with pytest.raises(ValueError):
        decoherence_schedule(-0.1)


def test_channel_at_time():
    spec = channel_at_time(ChannelKind.GAD, 2.0 * math.log(2.0))
    assert spec.kind is ChannelKind.GAD
    assert spec.parameter == 0.5


def test_spec_validation_and_string_coercion():
    spec = ChannelSpec("dp", 0.5)
    assert spec.kind is ChannelKind.DP
    with pytest.raises(ValueError):
        ChannelSpec("pf", 1.2)
    with pytest.raises(ValueError):
        ChannelSpec("pf", -0.01)
    with pytest.raises(ValueError):
        ChannelSpec("nope", 0.5)


def test_gad_rules_differ_from_flips():
    # GAD at gamma: linear damping on c1, c2 and quadratic on c3,
    # distinct from the flip-family (1-p)^2 pattern
    c = CVector(0.8, 0.6, -0.5)
    out = evolve_c(c, ChannelSpec("gad", 0.4))
    assert abs(out.c1 - 0.8 * 0.6) < 1e-15
    assert abs(out.c2 - 0.6 * 0.6) < 1e-15
    assert abs(out.c3 + 0.5 * 0.36) < 1e-15
