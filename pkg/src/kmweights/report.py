"""Verification sweeps and the JSON report they produce.

A sweep is a list of cells.  Each cell is keyed by (check id, parameters) and
is evaluated independently, so cells can be computed in any order; the report
sorts them by key before emitting.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable

from .affine import AffineWeight, minimal_weight_table
from .casimir import primitive_pair_audit
from .hwmodules import construct_mu0, enumerate_P
from .rootsys import build_root_system, coroot, types_up_to_rank
from .serialize import FORMAT_VERSION
from .superaffine import catalog, delta_lambda, delta_lambda_bound

CHECK_IDS = ("minimal-coroot-values", "mu0-membership", "casimir-pairs", "delta-finiteness")


@dataclass
class Cell:
    check: str
    params: dict
    passed: bool
    witnesses: int
    detail: str = ""
    wall_time: float | None = None

    def key(self) -> str:
        return self.check + json.dumps(self.params, sort_keys=True)

    def to_json(self, timings: bool = False) -> dict:
        out = {"check": self.check, "params": self.params, "pass": self.passed,
               "witnesses": self.witnesses}
        if self.detail:
            out["detail"] = self.detail
        if timings and self.wall_time is not None:
            out["wall_time"] = round(self.wall_time, 4)
        return out


@dataclass
class VerificationReport:
    command: str
    config: dict
    cells: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.cells)

    def summary(self) -> dict:
        out = {}
        for c in self.cells:
            s = out.setdefault(c.check, {"cases": 0, "failed": 0, "witnesses": 0})
            s["cases"] += 1
            s["failed"] += 0 if c.passed else 1
            s["witnesses"] += c.witnesses
        return out

    def to_json(self, timings: bool = False) -> dict:
        cells = sorted(self.cells, key=Cell.key)
        keys = [c.key() for c in cells]
        if len(set(keys)) != len(keys):
            raise AssertionError("a sweep cell appears twice")
        return {"format": FORMAT_VERSION, "command": self.command, "config": self.config,
                "ok": self.ok, "summary": self.summary(),
                "cells": [c.to_json(timings) for c in cells]}

    def dumps(self, timings: bool = False) -> str:
        return json.dumps(self.to_json(timings), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def table(self) -> str:
        lines = [f"{'check':<24}{'cases':>7}{'failed':>8}{'witnesses':>11}"]
        for k, s in sorted(self.summary().items()):
            lines.append(f"{k:<24}{s['cases']:>7}{s['failed']:>8}{s['witnesses']:>11}")
        lines.append("ALL PASS" if self.ok else "FAILURES PRESENT")
        return "\n".join(lines) + "\n"


def _timed(check: str, params: dict, fn: Callable[[], tuple]) -> Cell:
    t0 = time.perf_counter()
    passed, witnesses, detail = fn()
    return Cell(check, params, passed, witnesses, detail, time.perf_counter() - t0)


# -- individual sweeps ---------------------------------------------------------


def minimal_cells(max_rank: int) -> list[Cell]:
    cells = []
    for t in types_up_to_rank(max_rank):
        rs = build_root_system(t)

        def run(rs=rs):
            ok, rows = minimal_weight_table(rs)
            bad = [str(list(map(int, lam))) for _, lam, v in rows if v not in (0, 1)]
            return ok, len(rows), "; ".join(bad)
        cells.append(_timed("minimal-coroot-values", {"type": str(t)}, run))
    return cells


def dominant_highest_weights(rs, level: int, max_height: int) -> list[AffineWeight]:
    """Dominant integral lam with lam(d) = 0, the given level and Dynkin-label sum <= max_height."""
    bv = coroot(rs, rs.highest_root)
    out = []
    for labels in product(range(max_height + 1), repeat=rs.rank):
        if sum(labels) > max_height or bv(labels) > level:
            continue
        out.append(AffineWeight(labels, 0, level))
    return out


MU0_TYPES = ("A1", "A2", "B2", "C2")


def mu0_cells(max_rank: int, levels=(1, 2, 3), max_height: int = 4, gaps=(0, 1, 2)) -> list[Cell]:
    cells = []
    for name in MU0_TYPES:
        rs = build_root_system(name)
        if rs.rank > max_rank:
            continue
        for level in levels:
            def run(rs=rs, level=level):
                n, bad = 0, []
                for lam in dominant_highest_weights(rs, level, max_height):
                    for g in gaps:
                        n += 1
                        res = construct_mu0(rs, lam, lam.d - g)
                        if not res.member:
                            bad.append(f"{lam} s={res.s}")
                return not bad, n, "; ".join(bad)
            cells.append(_timed("mu0-membership", {"type": name, "level": level,
                                                   "max_height": max_height}, run))
    return cells


CASIMIR_CASES = (("A1", "L0"), ("A1", "L0 + w1"), ("A2", "L0"), ("A2", "L0 + w1"))


def casimir_cells(max_rank: int, depth: int) -> list[Cell]:
    from .serialize import parse_weight_expr
    cells = []
    for name, expr in CASIMIR_CASES:
        rs = build_root_system(name)
        if rs.rank > max_rank:
            continue
        lam = parse_weight_expr(expr, rs.rank)

        def run(rs=rs, lam=lam):
            audit = primitive_pair_audit(enumerate_P(rs, lam, depth, multiplicities=False), lam)
            bad = [f"{r.lam} > {r.mu}: {r.value}" for r in audit.rows if r.value <= 0]
            return not bad, len(audit.rows), "; ".join(bad)
        cells.append(_timed("casimir-pairs", {"type": name, "highest": expr, "depth": depth}, run))
    return cells


DELTA_SPECS = ("B(1,1)", "B(1,2)", "D(2,1;1/2)")


def delta_cells(labels=range(-5, 1), level: int = 1) -> list[Cell]:
    cells = []
    for name in DELTA_SPECS:
        spec = catalog(name)
        comps = spec.components()
        first, second = comps[0], comps[1]

        def run(spec=spec, first=first, second=second):
            n, bad = 0, []
            for lab in product(labels, repeat=second.rank):
                fin = [Fraction(0)] * spec.total_rank
                for i, x in enumerate(lab):
                    fin[second.offset + i] = Fraction(x)
                lam = AffineWeight(tuple(fin), 0, level)
                a, b = len(delta_lambda(spec, lam)), delta_lambda_bound(spec, lam)
                n += 1
                if a != b:
                    bad.append(f"{list(lab)}: {a} != {b}")
            return not bad, n, "; ".join(bad)
        cells.append(_timed("delta-finiteness", {"spec": spec.name, "level": level,
                                                 "labels": [min(labels), max(labels)]}, run))
    return cells


def verify_all(max_rank: int = 4, depth: int = 2) -> VerificationReport:
    if max_rank < 1:
        raise ValueError("max-rank must be >= 1")
    if depth < 0:
        raise ValueError("depth must be >= 0")
    rep = VerificationReport("verify-all", {"max_rank": max_rank, "depth": depth})
    rep.cells += minimal_cells(max_rank)
    rep.cells += mu0_cells(max_rank)
    rep.cells += casimir_cells(max_rank, depth)
    rep.cells += delta_cells()
    return rep
