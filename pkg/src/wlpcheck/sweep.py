"""Randomized sweeps over (n, d) cells comparing guaranteed and observed WLP ranges.

Config files are flat `key = value` lines (comments start with #).  Ranges
are written `lo..hi` (inclusive) or as comma lists.  Seeds are split
root -> (n, d, instance) -> generator and linear-form trials, so a cell's
results do not depend on which other cells are in the sweep.
"""

from __future__ import annotations

import configparser
import csv
import io
import time
from dataclasses import asdict, dataclass, field as dc_field, fields

from .bundle_bounds import range_bound2, range_main
from .exactfield import DEFAULT_PRIME, make_field
from .lefschetz import (
    CERTIFIED,
    CERTIFIED_FAILURE,
    DEFAULT_TRIALS,
    ESCALATION_LIMIT,
    SUSPECTED,
    QuotientAlgebra,
    certify_complete_intersection,
    middle_degrees,
    wlp_in_degree,
)
from .polyring import CiSpec
from .seeding import instance_seed

CSV_COLUMNS = (
    "n", "d", "instance", "instance_seed", "certified_ci", "socle_degree",
    "bound2_endpoint", "main_endpoint", "checked_through", "empirical_endpoint",
    "full_wlp", "verdicts", "status",
)
_STATUS_CODE = {CERTIFIED: "C", SUSPECTED: "S", CERTIFIED_FAILURE: "F"}


class ConfigError(ValueError):
    pass


def parse_int_list(text: str) -> list[int]:
    text = text.strip()
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
            if hi < lo:
                raise ConfigError(f"empty range {text!r}")
            return list(range(lo, hi + 1))
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"cannot read integer list {text!r}") from None


@dataclass
class ExperimentConfig:
    n_range: list = dc_field(default_factory=lambda: [3, 4])
    d_range: list = dc_field(default_factory=lambda: list(range(2, 7)))
    instances_per_cell: int = 10
    seed: int = 0
    trials: int = DEFAULT_TRIALS
    field: str = "prime"
    prime: int = DEFAULT_PRIME
    escalation_limit: int = ESCALATION_LIMIT
    output_path: str | None = None
    json_path: str | None = None
    timing: bool = False

    def validate(self):
        if not self.n_range or not self.d_range:
            raise ConfigError("n_range and d_range must be non-empty")
        if min(self.n_range) < 3:
            raise ConfigError("sweeps need n >= 3")
        if min(self.d_range) < 1:
            raise ConfigError("degrees must be positive")
        if self.instances_per_cell < 1 or self.trials < 1:
            raise ConfigError("instances_per_cell and trials must be positive")
        if self.seed < 0:
            raise ConfigError("seed must be non-negative")
        if self.field not in ("prime", "rational"):
            raise ConfigError(f"field must be 'prime' or 'rational', got {self.field!r}")
        try:
            make_field(self.field, self.prime)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        return self


_LIST_KEYS = {"n_range", "d_range"}
_INT_KEYS = {"instances_per_cell", "seed", "trials", "prime", "escalation_limit"}
_BOOL_KEYS = {"timing"}


def load_config(text: str, overrides: dict | None = None) -> ExperimentConfig:
    parser = configparser.ConfigParser(delimiters=("=",), comment_prefixes=("#",), inline_comment_prefixes=("#",))
    try:
        parser.read_string("[sweep]\n" + text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config: {exc}") from None
    known = {f.name for f in fields(ExperimentConfig)}
    values = {}
    for key, raw in parser["sweep"].items():
        if key not in known:
            raise ConfigError(f"unknown config key {key!r}")
        values[key] = raw
    if overrides:
        values.update({k: v for k, v in overrides.items() if v is not None})
    cfg = ExperimentConfig()
    for key, raw in values.items():
        if not isinstance(raw, str):
            setattr(cfg, key, raw)
            continue
        if key in _LIST_KEYS:
            setattr(cfg, key, parse_int_list(raw))
        elif key in _INT_KEYS:
            try:
                setattr(cfg, key, int(raw))
            except ValueError:
                raise ConfigError(f"{key} must be an integer, got {raw!r}") from None
        elif key in _BOOL_KEYS:
            setattr(cfg, key, raw.strip().lower() in ("1", "true", "yes", "on"))
        else:
            setattr(cfg, key, raw.strip())
    return cfg.validate()


@dataclass
class InstanceResult:
    n: int
    d: int
    instance: int
    instance_seed: int
    certified_ci: bool
    socle_degree: int | None
    bound2_endpoint: int
    main_endpoint: int | None
    checked_through: int
    empirical_endpoint: int
    full_wlp: bool
    verdicts: list
    status: str
    seconds: float = 0.0

    def csv_row(self):
        codes = ";".join(f"{v.degree}:{_STATUS_CODE[v.status]}" for v in self.verdicts)
        return [self.n, self.d, self.instance, self.instance_seed, int(self.certified_ci),
                "" if self.socle_degree is None else self.socle_degree,
                self.bound2_endpoint, "" if self.main_endpoint is None else self.main_endpoint,
                self.checked_through, self.empirical_endpoint, int(self.full_wlp), codes, self.status]


def run_instance(cfg: ExperimentConfig, n: int, d: int, k: int) -> InstanceResult:
    start = time.perf_counter()
    seed = instance_seed(cfg.seed, n, d, k)
    field = make_field(cfg.field, cfg.prime)
    spec = CiSpec.random(n + 1, [d] * (n + 1), seed, field)
    alg = QuotientAlgebra(spec)
    cert = certify_complete_intersection(spec, alg)
    b2 = range_bound2(n, d).last
    main = range_main(n, d).last
    if not cert.certified:
        return InstanceResult(n, d, k, seed, False, None, b2, main, 0, 0, False, [], "not-certified-ci",
                              time.perf_counter() - start)
    e = len(cert.linear_algebra) - 2
    middle = middle_degrees(e)
    top = min(max([b2] + middle), e + 1)
    verdicts = [wlp_in_degree(alg, t, cfg.trials, escalation_limit=cfg.escalation_limit)
                for t in range(1, top + 1)]
    empirical = 0
    for v in verdicts:
        if v.status != CERTIFIED:
            break
        empirical = v.degree
    full = all(v.status == CERTIFIED for v in verdicts if v.degree in middle)
    in_range = [v for v in verdicts if v.degree <= b2]
    if all(v.status == CERTIFIED for v in in_range):
        status = "agree"
    elif any(v.status == CERTIFIED_FAILURE for v in in_range):
        status = "counterexample"
    else:
        status = "suspected"
    return InstanceResult(n, d, k, seed, True, e, b2, main, top, empirical, full, verdicts, status,
                          time.perf_counter() - start)


@dataclass
class SweepResult:
    config: ExperimentConfig
    instances: list

    @property
    def red_flags(self):
        return [r for r in self.instances if r.status != "agree"]

    def csv_text(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in self.instances:
            w.writerow(r.csv_row())
        return buf.getvalue()

    def cells(self):
        out = {}
        for r in self.instances:
            out.setdefault((r.n, r.d), []).append(r)
        return out

    def to_dict(self):
        cfg = asdict(self.config)
        cells = []
        for (n, d), rows in self.cells().items():
            cell = {
                "n": n, "d": d, "instances": len(rows),
                "certified_ci": sum(r.certified_ci for r in rows),
                "agree": sum(r.status == "agree" for r in rows),
                "full_wlp": sum(r.full_wlp for r in rows),
                "bound2_endpoint": rows[0].bound2_endpoint,
                "min_empirical_endpoint": min(r.empirical_endpoint for r in rows),
            }
            if self.config.timing:
                cell["seconds"] = round(sum(r.seconds for r in rows), 3)
            cells.append(cell)
        flags = []
        for r in self.red_flags:
            bad = [v.to_dict() for v in r.verdicts if v.status != CERTIFIED]
            flags.append({"n": r.n, "d": r.d, "instance": r.instance, "instance_seed": r.instance_seed,
                          "status": r.status, "verdicts": bad})
        return {"kind": "sweep", "config": cfg, "cells": cells, "red_flags": flags,
                "all_agree": not flags}


def run_sweep(cfg: ExperimentConfig, progress=None) -> SweepResult:
    cfg.validate()
    rows = []
    for n in cfg.n_range:
        for d in cfg.d_range:
            for k in range(cfg.instances_per_cell):
                r = run_instance(cfg, n, d, k)
                rows.append(r)
                if progress:
                    progress(r)
    return SweepResult(cfg, rows)
