"""Death times: root finder vs closed forms, ordering of the deaths.

Frozen times below were derived by hand from the threshold relations
(t = ln(|u| / x*)) before being pinned.
"""

import math

import numpy as np
import pytest

from xqcorr.channels import ChannelKind, channel_at_time, evolve_c
from xqcorr.dynamics import (
    BORN_DEAD,
    CHRONOLOGY_IDS,
    MEASURE_IDS,
    NEVER,
    DEATHS_CSV_HEADER,
    ChronologyReport,
    DeathTime,
    PfFamilyState,
    at_or_after,
    chronology_check,
    deaths_csv_row,
    sudden_death_closed_pf,
    sudden_death_time,
)
from xqcorr.measures import all_measures
from xqcorr.states import CVector, sample_states

# ln(1.25) twice over: E on c = (0.5, 0.5, -0.2) crosses its threshold
# (1+v)/2 at t = ln(0.5/0.4), and N on c = (0.75, 0.75, -0.8) crosses
# sqrt(1 - v^2) at t = ln(0.75/0.6)
LN_5_OVER_4 = 0.22314355131420976


def test_death_time_validation():
    DeathTime("finite", 0.0)
    DeathTime("finite", 3.5)
    with pytest.raises(ValueError):
        DeathTime("finite")
    with pytest.raises(ValueError):
        DeathTime("finite", -1.0)
    with pytest.raises(ValueError):
        DeathTime("never", 1.0)
    with pytest.raises(ValueError):
        DeathTime("born_dead", 0.0)
    with pytest.raises(ValueError):
        DeathTime("sometime")


def test_death_time_ordering():
    early, late = DeathTime.at(1.0), DeathTime.at(2.0)
    assert at_or_after(late, early)
    assert not at_or_after(early, late)
    assert at_or_after(early, early)
    # slack forgives reversals inside rounding
    assert at_or_after(DeathTime.at(1.0 - 1e-9), DeathTime.at(1.0))
    for t in (early, late):
        assert at_or_after(NEVER, t)
        assert at_or_after(t, BORN_DEAD)
        assert not at_or_after(BORN_DEAD, t)
        assert not at_or_after(t, NEVER)
    assert at_or_after(NEVER, NEVER)
    assert at_or_after(BORN_DEAD, BORN_DEAD)


def test_death_time_cells():
    assert NEVER.csv_cell() == "never"
    assert BORN_DEAD.csv_cell() == "0"
    assert DeathTime.at(0.25).csv_cell() == "0.25"
    assert BORN_DEAD.born_dead_flag() == "1"
    assert DeathTime.at(0.0).born_dead_flag() == "0"


def test_zero_state_everything_born_dead():
    c = CVector(0.0, 0.0, 0.0)
    report = chronology_check(c, "pf")
    assert all(report.times[m] is BORN_DEAD for m in MEASURE_IDS)
    assert report.passed


def test_bell_family_concurrence_never_dies_under_pf():
    # v = -1: the E threshold (1+v)/2 is 0, never reached from above
    assert sudden_death_time(CVector(1.0, 1.0, -1.0), "pf", "E") is NEVER
    assert sudden_death_time(CVector(0.3, 0.3, -1.0), "pf", "E") is NEVER


def test_frozen_closed_form_times():
    t = sudden_death_closed_pf(PfFamilyState(0.5, -0.2), "E")
    assert t.is_finite and abs(t.time - LN_5_OVER_4) < 1e-15
    t = sudden_death_closed_pf(PfFamilyState(0.75, -0.8), "N")
    assert t.is_finite and abs(t.time - LN_5_OVER_4) < 1e-12
    root = sudden_death_time(CVector(0.5, 0.5, -0.2), "pf", "E")
    assert abs(root.time - LN_5_OVER_4) < 1e-9
    root = sudden_death_time(CVector(0.75, 0.75, -0.8), "pf", "N")
    assert abs(root.time - LN_5_OVER_4) < 1e-8


def test_closed_form_sign_symmetry():
    a = sudden_death_closed_pf(PfFamilyState(0.4, 0.1), "S3e")
    b = sudden_death_closed_pf(PfFamilyState(-0.4, 0.1), "S3e")
    assert a == b


def test_closed_vs_root_finder_on_family(rng):
    vs = rng.uniform(-0.999, 0.999, size=200)
    us = rng.uniform((vs - 1.0) / 2.0, (1.0 - vs) / 2.0)
    for u, v in zip(us, vs):
        s = PfFamilyState(float(u), float(v))
        for measure in ("E", "N", "S2e", "S3e"):
            closed = sudden_death_closed_pf(s, measure)
            root = sudden_death_time(s.c(), "pf", measure)
            assert closed.kind == root.kind, (u, v, measure)
            if closed.is_finite:
                assert abs(closed.time - root.time) < 1e-6, (u, v, measure)


def test_root_brackets_the_sign_change():
    s = PfFamilyState(0.5, -0.2)
    t = sudden_death_time(s.c(), "pf", "E").time
    before = evolve_c(s.c(), channel_at_time(ChannelKind.PF, t - 1e-6))
    after = evolve_c(s.c(), channel_at_time(ChannelKind.PF, t + 1e-6))
    assert all_measures(before).e > 0.0
    assert all_measures(after).e == 0.0


def test_discord_structural_predicate():
    assert sudden_death_time(CVector(0.5, 0.0, 0.0), "pf", "Dq") is BORN_DEAD
    assert sudden_death_time(CVector(0.5, 0.5, 0.0), "pf", "Dq") is NEVER
    assert sudden_death_time(CVector(0.0, 0.0, 0.4), "dp", "Dq") is BORN_DEAD
    assert sudden_death_time(CVector(0.2, 0.0, 0.4), "dp", "Dq") is NEVER


def test_chronology_across_channels_and_states():
    for offset, kind in enumerate(ChannelKind):
        for c in sample_states(60, 31_000 + offset):
            report = chronology_check(c, kind)
            assert report.passed, (kind, c, report.failures)


def test_chronology_report_shape():
    report = chronology_check(CVector(0.7, 0.7, -0.6), ChannelKind.PF, q=2.0)
    assert set(report.times) == set(MEASURE_IDS)
    assert set(CHRONOLOGY_IDS) <= set(MEASURE_IDS)
    assert report.q == 2.0
    assert report.channel is ChannelKind.PF


def test_deaths_csv_row_shape():
    report = chronology_check(CVector(0.75, 0.75, -0.8), "pf")
    row = deaths_csv_row(report)
    cells = row.split(",")
    assert len(cells) == len(DEATHS_CSV_HEADER.split(","))
    assert cells[3] == "pf"
    assert cells[5] == "never"  # Dq structurally alive on this state
    assert cells[12] == "1"
    assert abs(float(cells[7]) - LN_5_OVER_4) < 1e-8


def test_deaths_csv_rejects_nonphysical():
    bad = ChronologyReport(
        c=CVector(0.9, 0.9, 0.9),
        channel=ChannelKind.PF,
        q=1.0,
        times={m: BORN_DEAD for m in MEASURE_IDS},
        failures=(),
    )
    with pytest.raises(ValueError):
        deaths_csv_row(bad)


def test_input_validation():
    c = CVector(0.5, 0.5, -0.2)
    with pytest.raises(ValueError):
        sudden_death_time(c, "pf", "nope")
    with pytest.raises(ValueError):
        sudden_death_time(c, "pf", "E", q=0.0)
    with pytest.raises(ValueError):
        sudden_death_time(c, "brainflip", "E")
    with pytest.raises(ValueError):
        sudden_death_closed_pf(PfFamilyState(0.5, 0.0), "Dq")


def test_pf_family_validation():
    PfFamilyState(0.5, 0.0)
    PfFamilyState(-0.5, 0.0)
    with pytest.raises(ValueError):
        PfFamilyState(0.0, 1.0)
    with pytest.raises(ValueError):
        PfFamilyState(0.0, -1.0)
    with pytest.raises(ValueError):
        PfFamilyState(0.51, 0.0)
    with pytest.raises(ValueError):
        PfFamilyState(0.3, 0.5)  # u > (1-v)/2 = 0.25


def test_born_dead_at_threshold():
    # |u| exactly at the E threshold (1+v)/2 counts as already dead
    s = PfFamilyState(0.4, -0.2)
    assert sudden_death_closed_pf(s, "E") is BORN_DEAD
    s = PfFamilyState(0.4 + 1e-9, -0.2)
    t = sudden_death_closed_pf(s, "E")
    assert t.is_finite and t.time < 1e-8
