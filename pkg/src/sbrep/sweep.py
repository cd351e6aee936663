"""Parameter sweeps over catalog families with per-point verdicts and audits."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .arith import GaussianRational, as_gaussian, scalar_to_json
from .catalog import FAMILIES, build
from .errors import ConstraintViolation, RelationViolation, SBRepError, SingularMatrix
from .irreducibility import (
    DEFAULT_SAMPLE_POINTS,
    audit,
    burnside_verdict,
    predicates_for,
)

POOL = tuple(GaussianRational.parse(s) for s in
             ("0", "1", "-1", "2", "-2", "1/2", "-1/2", "i", "-i", "1+i", "1-i"))
INTEGER_POOLS = {"k": (-2, -1, 1, 2, 3)}
NON_GRID_PARAMS = {"base"}


@dataclass
class SweepConfig:
    family: str
    pool: Sequence = POOL
    grid: Mapping[str, Sequence] = field(default_factory=dict)
    fixed: Mapping[str, object] = field(default_factory=dict)
    strand_counts: Sequence[int] = ()
    sample_points: Sequence | None = None
    at: object = None
    limit: int | None = None
    samples: int | None = None
    seed: int | None = None
    witness: bool = True

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        info = FAMILIES[self.family]
        unknown = set(self.grid) - set(info.params)
        if unknown:
            raise ValueError(f"{self.family} has no parameters {sorted(unknown)}")
        if info.fixed_n is not None:
            self.strand_counts = (info.fixed_n,)
        elif not self.strand_counts:
            raise ValueError(f"{self.family} needs at least one strand count")

    def axes(self) -> list[tuple[str, list]]:
        info = FAMILIES[self.family]
        out = []
        for name in info.params:
            if name in self.fixed or name in NON_GRID_PARAMS:
                continue
            if name in self.grid:
                values = list(self.grid[name])
            elif name in INTEGER_POOLS:
                values = list(INTEGER_POOLS[name])
            else:
                values = list(self.pool)
            out.append((name, [v if isinstance(v, int) and name in INTEGER_POOLS else as_gaussian(v)
                               for v in values]))
        return out

    def points(self) -> tuple[list[dict], int]:
        """Grid points in lexicographic order, subsampled when requested.

        Without a seed the subsample takes evenly spaced indices with a step
        coprime to the grid size, so no axis is frozen; with a seed
        it draws a reproducible random subset, kept in grid order.
        """
        axes = self.axes()
        sizes = [len(v) for _, v in axes]
        total = 1
        for s in sizes:
            total *= s
        want = self.samples if self.samples is not None else self.limit
        if want is None or want >= total:
            idx = range(total)
        elif self.seed is None:
            step = max(1, total // want)
            while math.gcd(step, total) != 1:
                step -= 1
            idx = sorted(k * step for k in range(want))
        else:
            idx = sorted(random.Random(self.seed).sample(range(total), want))
        names = [n for n, _ in axes]
        pts = []
        for flat in idx:
            combo, rest = [], flat
            for s in reversed(sizes):
                combo.append(rest % s)
                rest //= s
            combo.reverse()
            p = dict(self.fixed)
            p.update({names[k]: axes[k][1][j] for k, j in enumerate(combo)})
            pts.append((flat, p))
        return pts, total


def _json_params(p: Mapping) -> dict:
    return {k: (v if isinstance(v, (int, str)) else scalar_to_json(as_gaussian(v)))
            for k, v in p.items()}


@dataclass
class Report:
    family: str
    records: list = field(default_factory=list)
    skipped: list = field(default_factory=list)
    grid_size: int = 0

    @property
    def discrepancies(self) -> list:
        return [d for r in self.records for d in r["discrepancies"]]

    @property
    def relation_failures(self) -> list:
        return [r for r in self.records if r["relations"] != "ok"]

    def summary(self) -> dict:
        verdicts = [r["verdicts"].get("burnside") for r in self.records]
        return {
            "grid_size": self.grid_size,
            "evaluated": len(self.records) + len(self.skipped),
            "valid": len(self.records),
            "skipped": len(self.skipped),
            "irreducible": verdicts.count("Irreducible"),
            "reducible": verdicts.count("Reducible"),
            "discrepant": sum(1 for r in self.records if r["discrepancies"]),
            "relation_failures": len(self.relation_failures),
        }

    def exit_code(self) -> int:
        if self.relation_failures:
            return 1
        if self.discrepancies:
            return 3
        return 0

    def to_json(self):
        return {
            "family": self.family,
            "summary": self.summary(),
            "records": self.records,
            "skipped": self.skipped,
        }


def run_sweep(config: SweepConfig) -> Report:
    """Build every grid point for every strand count and audit its verdict."""
    pts, total = config.points()
    report = Report(config.family, grid_size=total * len(config.strand_counts))
    sample_points = config.sample_points or DEFAULT_SAMPLE_POINTS
    for n in config.strand_counts:
        for index, params in pts:
            base = {"index": index, "n": n, "params": _json_params(params)}
            try:
                rep = build(config.family, None if FAMILIES[config.family].fixed_n else n, params)
            except RelationViolation as exc:
                report.records.append({**base, "relations": "violated",
                                       "violations": [v.to_json() for v in exc.violations],
                                       "verdicts": {}, "discrepancies": []})
                continue
            except (ConstraintViolation, SingularMatrix, ZeroDivisionError) as exc:
                constraint = getattr(exc, "constraint", None) or str(exc)
                report.skipped.append({**base, "constraint": constraint})
                continue
            try:
                oracle = burnside_verdict(rep, at=config.at, sample_points=sample_points,
                                          witness=config.witness)
            except SBRepError as exc:
                report.skipped.append({**base, "constraint": str(exc)})
                continue
            verdicts = {"burnside": oracle.status}
            records = audit(rep, at=config.at, oracle=oracle) if predicates_for(rep.family) else []
            if predicates_for(rep.family):
                disagreeing = {d.predicate_name for d in records}
                for name in predicates_for(rep.family):
                    verdicts[name] = (oracle.status if name not in disagreeing else
                                      next(d.predicate_verdict for d in records
                                           if d.predicate_name == name))
            report.records.append({
                **base,
                "relations": "ok",
                "verdicts": verdicts,
                "algebra_dim": oracle.algebra_dim,
                "witness": oracle.to_json()["witness"],
                "notes": oracle.notes,
                "discrepancies": [d.to_json() for d in records],
            })
    return report
