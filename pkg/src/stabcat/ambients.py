"""Ambient registry: parse category spec strings into ambient models.

Formats: tube:3, an:3, p1:window=-5..5:points=3, x2:window=-4..4:points=3,
kronecker:window=6:points=3.
"""

from __future__ import annotations

import re

from .ambient import Ambient, AmbientError, IntervalAmbient, TubeAmbient
from .sheaves import KroneckerAmbient, P1Ambient, X2Ambient

_WINDOW_RE = re.compile(r"^(-?\d+)\.\.(-?\d+)$")


def _parse_options(parts):
    opts = {}
    for part in parts:
        if "=" not in part:
            raise AmbientError(f"malformed ambient option {part!r}")
        key, val = part.split("=", 1)
        opts[key] = val
    return opts


def parse_ambient(spec: str) -> Ambient:
    parts = spec.strip().split(":")
    kind = parts[0]
    if kind == "tube":
        if len(parts) != 2:
            raise AmbientError(f"tube ambient needs a rank: {spec!r}")
        return TubeAmbient(int(parts[1]))
    if kind == "an":
        if len(parts) != 2:
            raise AmbientError(f"an ambient needs a quiver size: {spec!r}")
        return IntervalAmbient(int(parts[1]))
    opts = _parse_options(parts[1:])
    points = int(opts.get("points", 3))
    if kind == "p1":
        m = _WINDOW_RE.match(opts.get("window", "-5..5"))
        if not m:
            raise AmbientError(f"malformed window in {spec!r}")
        return P1Ambient(int(m.group(1)), int(m.group(2)), points)
    if kind == "x2":
        m = _WINDOW_RE.match(opts.get("window", "-4..4"))
        if not m:
            raise AmbientError(f"malformed window in {spec!r}")
        return X2Ambient(int(m.group(1)), int(m.group(2)), points)
    if kind == "kronecker":
        return KroneckerAmbient(int(opts.get("window", 6)), points)
    raise AmbientError(f"unknown ambient kind {kind!r} in {spec!r}")
