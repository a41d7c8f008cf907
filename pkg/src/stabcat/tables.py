"""Named classification tables and their frozen golden files.

Each builder recomputes a table from scratch; verify_table diffs the result
against the committed golden JSON.  Tables quotiented by the tube
translation compare orbit-canonical forms on both sides, so the goldens can
stay verbatim transcriptions of the published rows.
"""

from __future__ import annotations

import json
from importlib import resources

from .ambients import parse_ambient
from .stability import StabilityData, enumerate_finest, is_finest, tau_translate, validate
from .torsion import (TorsionPair, enumerate_torsion_pairs, tau_pair_canonical,
                      validate_torsion_pair)

TABLE_AMBIENTS = {
    "a2-torsion": "an:2",
    "a3-torsion": "an:3",
    "a3-finest": "an:3",
    "t3-finest": "tube:3",
    "t3-torsion": "tube:3",
    "kron-torsion": "kronecker:window=6:points=3",
    "p1-torsion": "p1:window=-5..5:points=3",
    "x2-finest": "x2:window=-4..4:points=3",
    "x2-torsion": "x2:window=-4..4:points=3",
}


def _pair_rows(pairs):
    return [p.to_json() for p in pairs]


def _finest_rows(data):
    return [sd.relabeled().to_json() for sd in data]


def compute_table(name: str):
    amb = parse_ambient(TABLE_AMBIENTS[name])
    if name == "a2-torsion":
        return _pair_rows(enumerate_torsion_pairs(amb))
    if name == "a3-torsion":
        return _pair_rows(enumerate_torsion_pairs(amb))
    if name == "a3-finest":
        return _finest_rows(enumerate_finest(amb))
    if name == "t3-finest":
        return _finest_rows(enumerate_finest(amb, upto_tau=True))
    if name == "t3-torsion":
        return _pair_rows(enumerate_torsion_pairs(amb, upto_tau=True))
    if name == "kron-torsion":
        from .sheaves.kronecker import kron_torsion_family

        rows = []
        for row, kwargs in [(1, dict(points=())), (1, dict(points=("0",))),
                            (1, dict(points=("0", "1", "inf"))),
                            (2, dict(n=1)), (2, dict(n=2)),
                            (3, dict(n=1)), (3, dict(n=2)),
                            (4, dict())]:
            pair = kron_torsion_family(amb, row, **kwargs)
            if not validate_torsion_pair(amb, pair.t, pair.f).valid:
                raise AssertionError(f"kronecker family {row} {kwargs} failed validation")
            rows.append(pair.to_json())
        return rows
    if name == "p1-torsion":
        from .sheaves.p1 import torsion_family_degree, torsion_family_points

        rows = []
        for pts in [("0",), ("0", "1"), ("0", "1", "lam")]:
            pair = torsion_family_points(amb, pts)
            if not validate_torsion_pair(amb, pair.t, pair.f).valid:
                raise AssertionError(f"p1 point family {pts} failed validation")
            rows.append(pair.to_json())
        for n in (-1, 0, 1):
            pair = torsion_family_degree(amb, n)
            if not validate_torsion_pair(amb, pair.t, pair.f).valid:
                raise AssertionError(f"p1 degree family {n} failed validation")
            rows.append(pair.to_json())
        return rows
    if name == "x2-finest":
        from .sheaves.x2 import finest_x2

        rows = []
        for family, kwargs in [("full", {}), ("coset", {}),
                               ("lm", dict(m=-1)), ("lm", dict(m=0)), ("lm", dict(m=1))]:
            sd = finest_x2(amb, family, **kwargs)
            if not (validate(amb, sd).valid and is_finest(amb, sd)[0]):
                raise AssertionError(f"x2 finest family {family} {kwargs} failed validation")
            doc = sd.to_json()
            doc["family"] = family if family != "lm" else f"lm(m={kwargs['m']})"
            rows.append(doc)
        return rows
    if name == "x2-torsion":
        from .sheaves.x2 import x2_torsion_family

        rows = []
        for row, kwargs in [("I", dict(points=("0",))), ("I", dict(points=("inf",))),
                            ("I", dict(points=("0", "1", "lam", "inf"))),
                            ("II", dict(points=())), ("II", dict(points=("0",))),
                            ("III", dict(points=())), ("III", dict(points=("0", "1"))),
                            ("IV", dict()), ("V", dict()), ("VI", dict())]:
            pair = x2_torsion_family(amb, row, **kwargs)
            if not validate_torsion_pair(amb, pair.t, pair.f).valid:
                raise AssertionError(f"x2 family {row} {kwargs} failed validation")
            doc = pair.to_json()
            doc["family"] = row
            rows.append(doc)
        return rows
    raise KeyError(f"unknown table {name!r}; known: {sorted(TABLE_AMBIENTS)}")


def _canonical_rows(name: str, rows):
    """Comparison form: tables stated up to the tube translation are mapped
    to orbit-canonical representatives first."""
    amb = parse_ambient(TABLE_AMBIENTS[name])
    canon = []
    if name == "t3-torsion":
        for row in rows:
            pair = TorsionPair.from_json(row, amb)
            canon.append(tau_pair_canonical(amb, pair).to_json())
    elif name == "t3-finest":
        for row in rows:
            sd = StabilityData.from_json(row, amb)
            orbit = [tau_translate(amb, sd, k).relabeled().to_json() for k in range(amb.tau_order())]
            canon.append(min(orbit, key=json.dumps))
    else:
        canon = list(rows)
    return sorted(canon, key=json.dumps)


def golden_text(name: str) -> str:
    return resources.files("stabcat.goldens").joinpath(f"{name}.json").read_text("utf-8")


def verify_table(name: str):
    """Recompute a table and diff against its golden; returns (ok, diff lines)."""
    computed = _canonical_rows(name, compute_table(name))
    golden_doc = json.loads(golden_text(name))
    golden = _canonical_rows(name, golden_doc["rows"])
    diffs = []
    comp_set = {json.dumps(r, sort_keys=True) for r in computed}
    gold_set = {json.dumps(r, sort_keys=True) for r in golden}
    for missing in sorted(gold_set - comp_set):
        diffs.append(f"missing from computation: {missing}")
    for extra in sorted(comp_set - gold_set):
        diffs.append(f"not in golden: {extra}")
    if len(computed) != len(golden):
        diffs.append(f"row count {len(computed)} != golden {len(golden)}")
    return (not diffs), diffs
