"""Seeded Monte-Carlo sweeps over random states.

Three drivers: the measure-hierarchy audit (scatter panels of one measure
against another), the local-rotation invariance scan, and the sudden-death
chronology sweep on the phase-flip family.  Each returns a SweepReport
(violation counts and worst margins per inequality) plus named CSV
datasets, one per figure panel.

Determinism contract: states and any per-state q draws come from fixed
4096-sample blocks, block b seeded with default_rng(seed + b).  Workers
are handed whole blocks and results are reassembled in block order, so
the emitted bytes are identical for every worker count.
"""

from __future__ import annotations

import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .channels import ChannelKind
from .dynamics import (
    MEASURE_IDS,
    ChronologyReport,
    chronology_failures,
    deaths_csv_row,
    sudden_death_closed_pf,
    sudden_death_time,
    DEATHS_CSV_HEADER,
    PfFamilyState,
)
from .measures import (
    MeasureRecord,
    _bell3,
    _concurrence3,
    _f_q,
    _inv_h,
    _q_discord3,
    _s2e3,
    _s2v3,
    _s3e3,
    _s3v3,
    inv_f_q,
)
from .states import (
    CVector,
    _physical_mask,
    block_rng,
    block_sizes,
    fmt17,
    rejection_sample,
)

LN2 = float(np.log(2.0))

# bound_curves families
LOWER_A = "lower"  # c = (u, u, -1): the hierarchy's tight lower edge
WERNER = "werner"  # c = (-u, -u, -u)

_ROTATIONS = ((1.0, -1.0, -1.0), (-1.0, 1.0, -1.0), (-1.0, -1.0, 1.0))
_INVARIANT_IDS = ("Dq", "E", "N", "S2e", "S3e")
INVARIANCE_SLACK = 1e-12

_HIERARCHY_SLACK = 1e-10
_HIERARCHY_KEYS = (
    "ah_sqrtDq_ge_E",
    "ah_E_ge_N",
    "ah_N_ge_S2e",
    "ah_S2e_le_S3e",
    "ah_S3e_le_E",
    "Dq_ge_fqE",
    "eh_invfq_Dq_ge_E",
    "eh_N_ge_invh",
    "eh_invh_le_E",
)

_CHRONOLOGY_KEYS = ("tDq>=tE", "tE>=tN", "tN>=tS2e", "tS3e>=tS2e", "tE>=tS3e")
_CLOSED_IDS = ("E", "N", "S2e", "S3e")
_CLOSED_VS_ROOT_TOL = 1e-6


@dataclass(frozen=True)
class SweepReport:
    """Violation bookkeeping for one sweep.

    ``violations`` counts samples breaking each inequality at its stated
    slack; ``max_violation`` keeps the worst margin deficit seen (negative
    values mean the inequality held with room to spare; None means no
    sample exercised it).  ``witness`` is only set by the invariance scan.
    """

    n: int
    seed: int
    q_mode: str
    violations: dict[str, int]
    max_violation: dict[str, float | None]
    elapsed_s: float | None
    witness: dict | None = None

    @property
    def total_violations(self) -> int:
        return sum(self.violations.values())

    def to_json(self, *, include_timing: bool = True) -> str:
        body: dict = {
            "n": self.n,
            "seed": self.seed,
            "q_mode": self.q_mode,
            "violations": self.violations,
            "max_violation": self.max_violation,
        }
        if include_timing and self.elapsed_s is not None:
            body["elapsed_s"] = self.elapsed_s
        if self.witness is not None:
            body["witness"] = self.witness
        return json.dumps(body, sort_keys=True, indent=2)


def _map_blocks(fn, args_list: list, workers: int) -> list:
    if workers <= 1 or len(args_list) <= 1:
        return [fn(a) for a in args_list]
    with ProcessPoolExecutor(max_workers=min(workers, len(args_list))) as pool:
        return list(pool.map(fn, args_list))


def _merge_counts(acc: dict, part: dict) -> None:
    for k, v in part.items():
        acc[k] = acc.get(k, 0) + v


def _merge_worst(acc: dict, part: dict) -> None:
    for k, v in part.items():
        if v is not None and (acc.get(k) is None or v > acc[k]):
            acc[k] = v


def _rows_csv(header: str, rows: np.ndarray) -> str:
    lines = [header]
    lines.extend(",".join(fmt17(x) for x in row) for row in rows)
    return "\n".join(lines) + "\n"


def _assert_rows_physical(rows: np.ndarray) -> None:
    # emitted points carry their state in the first three columns;
    # re-check before anything reaches disk
    if not _physical_mask(rows[:, 0:3]).all():
        raise RuntimeError("sweep produced a nonphysical state row")


# --------------------------------------------------------------------------
# hierarchy sweep


def _hierarchy_block(args: tuple) -> dict:
    seed, block, count, q_fixed = args
    rng = block_rng(seed, block)
    cs = rejection_sample(rng, count)
    qs = np.full(count, q_fixed) if q_fixed is not None else rng.uniform(1.0, 4.0, count)

    rows = np.empty((count, 11))
    viol = dict.fromkeys(_HIERARCHY_KEYS, 0)
    worst: dict[str, float | None] = dict.fromkeys(_HIERARCHY_KEYS)

    def track(key: str, deficit: float) -> None:
        if deficit > _HIERARCHY_SLACK:
            viol[key] += 1
        if worst[key] is None or deficit > worst[key]:
            worst[key] = deficit

    for i in range(count):
        c1, c2, c3 = cs[i]
        q = float(qs[i])
        dq = _q_discord3(c1, c2, c3, q)
        e = _concurrence3(c1, c2, c3)
        n_bell = _bell3(c1, c2, c3)
        s2v = _s2v3(c1, c2, c3)
        s3v = _s3v3(c1, c2, c3)
        s2e = _s2e3(c1, c2, c3)
        s3e = _s3e3(c1, c2, c3)
        rows[i] = (c1, c2, c3, q, dq, e, s2v, s3v, s2e, s3e, n_bell)

        track("ah_sqrtDq_ge_E", e - math.sqrt(2.0**q * LN2 * dq / q))
        track("ah_E_ge_N", n_bell - e)
        track("ah_N_ge_S2e", s2e - n_bell)
        track("ah_S2e_le_S3e", s2e - s3e)
        track("ah_S3e_le_E", s3e - e)
        track("Dq_ge_fqE", _f_q(e, q) - dq)
        track("eh_invfq_Dq_ge_E", e - inv_f_q(min(dq, _f_q(1.0, q)), q))
        if s2e > 0.0:
            track("eh_N_ge_invh", _inv_h(min(1.0, 1.0 - s2e)) - n_bell)
        if s3e > 0.0:
            track("eh_invh_le_E", _inv_h(1.0 - s3e) - e)

    return {"rows": rows, "violations": viol, "max_violation": worst}


# panel name -> (x column, y column) into the measures row layout
_FIG1_PANELS = {
    "fig1a": ("E", "Dq"),
    "fig1b": ("N", "E"),
    "fig1c": ("S2e", "N"),
    "fig1d": ("S2e", "S3e"),
    "fig1e": ("S3e", "E"),
    "fig1f": ("S3e", "N"),
}
_MEASURE_COLS = {name: i for i, name in enumerate(MeasureRecord.CSV_HEADER.split(","))}


def hierarchy_sweep(
    n: int, seed: int, q: float | None = None, workers: int = 1
) -> tuple[SweepReport, dict[str, str]]:
    """Audit both hierarchy chains on n random states.

    q=None draws q per state, uniform on [1, 4]; a float fixes it.
    Returns the report plus datasets: the full measures table and the six
    pairwise panels (x measure, y measure) named fig1a..fig1f.
    """
    if n < 1:
        raise ValueError(f"sample count must be >= 1, got {n}")
    if q is not None and q < 1.0:
        raise ValueError(f"the audited chains need q >= 1, got {q}")
    t0 = time.perf_counter()
    args = [(seed, b, cnt, q) for b, cnt in enumerate(block_sizes(n))]
    parts = _map_blocks(_hierarchy_block, args, workers)

    rows = np.vstack([p["rows"] for p in parts])
    violations: dict[str, int] = dict.fromkeys(_HIERARCHY_KEYS, 0)
    worst: dict[str, float | None] = dict.fromkeys(_HIERARCHY_KEYS)
    for p in parts:
        _merge_counts(violations, p["violations"])
        _merge_worst(worst, p["max_violation"])

    _assert_rows_physical(rows)
    datasets = {"measures": _rows_csv(MeasureRecord.CSV_HEADER, rows)}
    for name, (xm, ym) in _FIG1_PANELS.items():
        panel = rows[:, [_MEASURE_COLS[xm], _MEASURE_COLS[ym]]]
        datasets[name] = _rows_csv(f"{xm},{ym}", panel)

    report = SweepReport(
        n=n,
        seed=seed,
        q_mode="random[1,4]" if q is None else f"fixed:{fmt17(q)}",
        violations=violations,
        max_violation=worst,
        elapsed_s=time.perf_counter() - t0,
    )
    return report, datasets


def bound_curves(family: str, resolution: int, q: float = 1.0) -> dict[str, np.ndarray]:
    """Tabulate every measure along a one-parameter bounding family.

    LOWER_A is c = (u, u, -1) (the tight lower edge of the hierarchy
    panels); WERNER is c = (-u, -u, -u).  Returns columns keyed by
    measure name plus "u", each of length ``resolution`` over u in [0, 1].
    """
    if resolution < 2:
        raise ValueError(f"resolution must be >= 2, got {resolution}")
    us = np.linspace(0.0, 1.0, resolution)
    cols = {name: np.empty(resolution) for name in ("Dq", "E", "S2v", "S3v", "S2e", "S3e", "N")}
    for i, u in enumerate(us):
        if family == LOWER_A:
            c1, c2, c3 = u, u, -1.0
        elif family == WERNER:
            c1, c2, c3 = -u, -u, -u
        else:
            raise ValueError(f"unknown family {family!r}")
        cols["Dq"][i] = _q_discord3(c1, c2, c3, q)
        cols["E"][i] = _concurrence3(c1, c2, c3)
        cols["S2v"][i] = _s2v3(c1, c2, c3)
        cols["S3v"][i] = _s3v3(c1, c2, c3)
        cols["S2e"][i] = _s2e3(c1, c2, c3)
        cols["S3e"][i] = _s3e3(c1, c2, c3)
        cols["N"][i] = _bell3(c1, c2, c3)
    return {"u": us, **cols}


# --------------------------------------------------------------------------
# invariance scan


def _invariance_block(args: tuple) -> dict:
    seed, block, count, q = args
    rng = block_rng(seed, block)
    cs = rejection_sample(rng, count)

    panel_a = np.empty((count * 3 * len(_INVARIANT_IDS), 2))
    panel_b = np.empty((count * 3, 2))
    panel_c = np.empty((count * 3, 2))
    dev: dict[str, float | None] = dict.fromkeys(_INVARIANT_IDS + ("S2v", "S3v"))
    viol = dict.fromkeys([f"inv_{m}" for m in _INVARIANT_IDS] + ["s3v_exclusivity"], 0)
    worst_excl: float | None = None
    witness = None

    row_a = 0
    row_bc = 0
    for i in range(count):
        c1, c2, c3 = cs[i]
        base = _seven(c1, c2, c3, q)
        for k, (s1, s2, s3) in enumerate(_ROTATIONS, start=1):
            rot = _seven(s1 * c1, s2 * c2, s3 * c3, q)
            for j, m in enumerate(_INVARIANT_IDS):
                panel_a[row_a] = (base[j], rot[j])
                row_a += 1
                d = abs(rot[j] - base[j])
                if d > INVARIANCE_SLACK:
                    viol[f"inv_{m}"] += 1
                if dev[m] is None or d > dev[m]:
                    dev[m] = d
            s2v0, s3v0 = base[5], base[6]
            s2v1, s3v1 = rot[5], rot[6]
            panel_b[row_bc] = (s2v0, s2v1)
            panel_c[row_bc] = (s3v0, s3v1)
            row_bc += 1
            for name, d in (("S2v", abs(s2v1 - s2v0)), ("S3v", abs(s3v1 - s3v0))):
                if dev[name] is None or d > dev[name]:
                    dev[name] = d
            if s3v0 > 0.0 and s3v1 > 0.0:
                viol["s3v_exclusivity"] += 1
                overlap = min(s3v0, s3v1)
                if worst_excl is None or overlap > worst_excl:
                    worst_excl = overlap
            if witness is None and (s3v0 > 0.0) != (s3v1 > 0.0):
                witness = {
                    "c": [c1, c2, c3],
                    "k": k,
                    "s3v": s3v0,
                    "s3v_rotated": s3v1,
                }
    return {
        "panel_a": panel_a,
        "panel_b": panel_b,
        "panel_c": panel_c,
        "dev": dev,
        "violations": viol,
        "excl_overlap": worst_excl,
        "witness": witness,
    }


def _seven(c1: float, c2: float, c3: float, q: float) -> tuple[float, ...]:
    # order: the five invariant measures, then S2v, S3v
    return (
        _q_discord3(c1, c2, c3, q),
        _concurrence3(c1, c2, c3),
        _bell3(c1, c2, c3),
        _s2e3(c1, c2, c3),
        _s3e3(c1, c2, c3),
        _s2v3(c1, c2, c3),
        _s3v3(c1, c2, c3),
    )


def invariance_scan(
    n: int, seed: int, q: float = 1.0, workers: int = 1
) -> tuple[SweepReport, dict[str, str]]:
    """Compare every measure before and after each local rotation.

    Emits fig2a (the five invariant measures, pooled, with a label
    column), fig2b (S2v pairs) and fig2c (S3v pairs).  The report records
    per-measure max deviations, counts deviations beyond 1e-12 for the
    invariant five, counts S3v pairs that are positive on both sides
    (none should be), and carries the first witness pair whose S3v
    flips between zero and nonzero.
    """
    if n < 1:
        raise ValueError(f"sample count must be >= 1, got {n}")
    t0 = time.perf_counter()
    args = [(seed, b, cnt, q) for b, cnt in enumerate(block_sizes(n))]
    parts = _map_blocks(_invariance_block, args, workers)

    violations: dict[str, int] = {}
    worst: dict[str, float | None] = dict.fromkeys(
        [f"inv_{m}" for m in _INVARIANT_IDS] + ["dev_S2v", "dev_S3v", "s3v_exclusivity"]
    )
    witness = None
    for p in parts:
        _merge_counts(violations, p["violations"])
        _merge_worst(worst, {f"inv_{m}": v for m, v in p["dev"].items() if m in _INVARIANT_IDS})
        _merge_worst(worst, {f"dev_{m}": p["dev"][m] for m in ("S2v", "S3v")})
        _merge_worst(worst, {"s3v_exclusivity": p["excl_overlap"]})
        if witness is None:
            witness = p["witness"]

    labels = np.tile(np.array(_INVARIANT_IDS), 3)
    lines_a = ["measure,M,M_rot"]
    for p in parts:
        rows = p["panel_a"]
        n_rows = rows.shape[0]
        for r in range(n_rows):
            lines_a.append(f"{labels[r % labels.size]},{fmt17(rows[r, 0])},{fmt17(rows[r, 1])}")
    datasets = {
        "fig2a": "\n".join(lines_a) + "\n",
        "fig2b": _rows_csv("S2v,S2v_rot", np.vstack([p["panel_b"] for p in parts])),
        "fig2c": _rows_csv("S3v,S3v_rot", np.vstack([p["panel_c"] for p in parts])),
    }
    report = SweepReport(
        n=n,
        seed=seed,
        q_mode=f"fixed:{fmt17(q)}",
        violations=violations,
        max_violation=worst,
        elapsed_s=time.perf_counter() - t0,
        witness=witness,
    )
    return report, datasets


# --------------------------------------------------------------------------
# sudden-death sweep


def _sudden_death_block(args: tuple) -> dict:
    seed, block, count, kind_value, q = args
    kind = ChannelKind(kind_value)
    rng = block_rng(seed, block)
    vs = rng.uniform(-1.0, 1.0, count)
    us = rng.uniform((vs - 1.0) / 2.0, (1.0 - vs) / 2.0)

    rows: list[str] = []
    panels = {name: [] for name in _FIG3_PANELS}
    viol = dict.fromkeys(_CHRONOLOGY_KEYS, 0)
    viol["closed_vs_root"] = 0
    worst: dict[str, float | None] = dict.fromkeys(list(viol))

    for i in range(count):
        c = CVector(us[i], us[i], vs[i])
        times = {m: sudden_death_time(c, kind, m, q) for m in MEASURE_IDS}
        fails = chronology_failures(times)
        for key in fails:
            viol[key] += 1
        for later_key, (later, earlier) in _CHRONOLOGY_MARGINS.items():
            a, b = times[later], times[earlier]
            if a.is_finite and b.is_finite:
                margin = b.time - a.time
                if worst[later_key] is None or margin > worst[later_key]:
                    worst[later_key] = margin

        if kind is ChannelKind.PF:
            fam = PfFamilyState(us[i], vs[i])
            for m in _CLOSED_IDS:
                closed = sudden_death_closed_pf(fam, m)
                root = times[m]
                if closed.kind != root.kind:
                    viol["closed_vs_root"] += 1
                elif closed.is_finite:
                    delta = abs(closed.time - root.time)
                    if delta > _CLOSED_VS_ROOT_TOL:
                        viol["closed_vs_root"] += 1
                    if worst["closed_vs_root"] is None or delta > worst["closed_vs_root"]:
                        worst["closed_vs_root"] = delta

        report = ChronologyReport(
            c=c, channel=kind, q=q, times=times, failures=tuple(fails)
        )
        rows.append(deaths_csv_row(report))
        for name, (xm, ym) in _FIG3_PANELS.items():
            a, b = times[xm], times[ym]
            if a.is_finite and b.is_finite:
                panels[name].append((a.time, b.time))

    return {
        "rows": rows,
        "panels": {k: np.array(v).reshape(-1, 2) for k, v in panels.items()},
        "violations": viol,
        "max_violation": worst,
    }


_FIG3_PANELS = {
    "fig3a": ("N", "E"),
    "fig3b": ("S2e", "N"),
    "fig3c": ("S2e", "S3e"),
    "fig3d": ("S3e", "E"),
}
_CHRONOLOGY_MARGINS = {
    "tDq>=tE": ("Dq", "E"),
    "tE>=tN": ("E", "N"),
    "tN>=tS2e": ("N", "S2e"),
    "tS3e>=tS2e": ("S3e", "S2e"),
    "tE>=tS3e": ("E", "S3e"),
}


def sudden_death_sweep(
    n: int,
    seed: int,
    kind: ChannelKind | str = ChannelKind.PF,
    q: float = 1.0,
    workers: int = 1,
) -> tuple[SweepReport, dict[str, str]]:
    """Death times and chronology audit on n sampled (u, u, v) states.

    v is uniform on (-1, 1) and u uniform on the physical slice
    [(v-1)/2, (1-v)/2].  Emits the full deaths table plus four pairwise
    time panels (finite deaths only), fig3a..fig3d with axes (x, y) =
    (tN, tE), (tS2e, tN), (tS2e, tS3e), (tS3e, tE).  Under the phase
    flip, the closed-form times are checked against the root finder.
    """
    if n < 1:
        raise ValueError(f"sample count must be >= 1, got {n}")
    kind = ChannelKind(kind)
    t0 = time.perf_counter()
    args = [(seed, b, cnt, kind.value, q) for b, cnt in enumerate(block_sizes(n))]
    parts = _map_blocks(_sudden_death_block, args, workers)

    violations: dict[str, int] = {}
    worst: dict[str, float | None] = dict.fromkeys(
        list(_CHRONOLOGY_KEYS) + ["closed_vs_root"]
    )
    rows: list[str] = []
    for p in parts:
        _merge_counts(violations, p["violations"])
        _merge_worst(worst, p["max_violation"])
        rows.extend(p["rows"])

    datasets = {"deaths": "\n".join([DEATHS_CSV_HEADER] + rows) + "\n"}
    for name, (xm, ym) in _FIG3_PANELS.items():
        stacked = np.vstack([p["panels"][name] for p in parts])
        datasets[name] = _rows_csv(f"t{xm},t{ym}", stacked)

    report = SweepReport(
        n=n,
        seed=seed,
        q_mode=f"fixed:{fmt17(q)}",
        violations=violations,
        max_violation=worst,
        elapsed_s=time.perf_counter() - t0,
    )
    return report, datasets


# --------------------------------------------------------------------------
# output


def write_datasets(outdir: str, datasets: dict[str, str]) -> list[str]:
    """Write each dataset as <name>.csv under outdir; returns the paths."""
    os.makedirs(outdir, exist_ok=True)
    paths = []
    for name in sorted(datasets):
        path = os.path.join(outdir, f"{name}.csv")
        with open(path, "w", newline="") as fh:
            fh.write(datasets[name])
        paths.append(path)
    return paths
