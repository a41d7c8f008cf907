"""Windowed model of the Kronecker module category (two arrows 1 => 2).

Preprojectives P_k (dimension vector (k-1, k)), preinjectives I_k
((k, k-1)) and regular tubes R_x^(d) ((d, d)) at the sample points
{0, 1, inf}.  Hom rules are the standard component ones and are validated
against the matrix oracle; the subobject catalog is the canonical socle
sequence 0 -> S_2^b -> X -> S_1^a -> 0 plus the regular tube chains.
Extension middle terms are modeled inside the preprojective family, the
preinjective family, the tubes and the absorb chains P->R and R->I; mixed
preprojective-to-preinjective extensions are not modeled, so closure-based
enumeration is disabled for this ambient.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from ..ambient import Ambient, AmbientError, WindowError
from ..phases import ExplicitOrder, Phase
from ..stability import StabilityData
from ..torsion import TorsionPair

KRON_POINTS = ("0", "1", "inf")
TUBE_VALIDATION_LENGTH = 3


@dataclass(frozen=True, order=True)
class KronP:
    k: int

    def __str__(self):
        return f"P_{self.k}"


@dataclass(frozen=True, order=True)
class KronI:
    k: int

    def __str__(self):
        return f"I_{self.k}"


@dataclass(frozen=True, order=True)
class KronR:
    x: str
    d: int

    def __str__(self):
        return f"R[{self.x}]^({self.d})"


def dim_vector(d):
    if isinstance(d, KronP):
        return (d.k - 1, d.k)
    if isinstance(d, KronI):
        return (d.k, d.k - 1)
    return (d.d, d.d)


def oracle_descriptor(d):
    if isinstance(d, KronP):
        return ("P", d.k)
    if isinstance(d, KronI):
        return ("I", d.k)
    return ("R", d.x, d.d)


_P_RE = re.compile(r"^P_(\d+)$")
_I_RE = re.compile(r"^I_(\d+)$")
_R_RE = re.compile(r"^R\[([^\]]+)\]\^\((\d+)\)$")


class KroneckerAmbient(Ambient):
    supports_enumeration = False

    def __init__(self, window: int = 6, n_points: int = 3):
        if window < 2:
            raise AmbientError("kronecker window must be >= 2")
        if n_points > len(KRON_POINTS):
            raise AmbientError(f"at most {len(KRON_POINTS)} kronecker points supported")
        self.window = window
        self.points = KRON_POINTS[:n_points]
        self.name = f"kronecker:window={window}:points={n_points}"
        carrier = [KronP(k) for k in range(1, window + 1)]
        carrier += [KronI(k) for k in range(1, window + 1)]
        carrier += [KronR(x, d) for x in self.points for d in range(1, window + 1)]
        self._carrier = tuple(sorted(carrier, key=str))

    def spec_string(self) -> str:
        return self.name

    def carrier(self) -> tuple:
        return self._carrier

    def hom_nonzero(self, a, b) -> bool:
        if isinstance(a, KronP):
            if isinstance(b, KronP):
                return a.k <= b.k
            if isinstance(b, KronR):
                return True
            return a.k + b.k >= 3
        if isinstance(a, KronR):
            if isinstance(b, KronP):
                return False
            if isinstance(b, KronR):
                return a.x == b.x
            return True
        if isinstance(b, KronI):
            return a.k >= b.k
        return False

    def _in_window(self, d) -> bool:
        if isinstance(d, KronR):
            return d.d <= self.window
        return d.k <= self.window

    @lru_cache(maxsize=None)
    def middle_terms(self, a, b) -> frozenset:
        out = set()
        for ms in self._middles(a, b):
            if all(self._in_window(c) for c in ms):
                out.add(tuple(sorted(ms, key=str)))
        return frozenset(out)

    def _middles(self, a, b):
        out = []
        if isinstance(a, KronP) and isinstance(b, KronP):
            for c in range(a.k + 1, b.k):
                d = a.k + b.k - c
                if c <= d < b.k:
                    out.append((KronP(c), KronP(d)))
        elif isinstance(a, KronI) and isinstance(b, KronI):
            for c in range(b.k + 1, a.k):
                d = a.k + b.k - c
                if b.k < c <= d < a.k:
                    out.append((KronI(c), KronI(d)))
        elif isinstance(a, KronP) and isinstance(b, KronR):
            for s in range(1, b.d + 1):
                p = KronP(a.k + s)
                out.append((p,) if s == b.d else (p, KronR(b.x, b.d - s)))
        elif isinstance(a, KronR) and isinstance(b, KronI):
            for s in range(1, a.d + 1):
                i = KronI(b.k + s)
                out.append((i,) if s == a.d else (i, KronR(a.x, a.d - s)))
        elif isinstance(a, KronR) and isinstance(b, KronR) and a.x == b.x:
            out.append((KronR(a.x, a.d + b.d),))
            for s in range(max(1, a.d - b.d + 1), a.d):
                out.append((KronR(a.x, a.d + b.d - s), KronR(a.x, s)))
        return out

    def decompositions(self, d) -> tuple:
        out = []
        m, n = dim_vector(d)
        if m >= 1 and n >= 1:
            out.append((tuple([KronP(1)] * n), tuple([KronI(1)] * m)))
        if isinstance(d, KronR):
            for r in range(1, d.d):
                out.append(((KronR(d.x, r),), (KronR(d.x, d.d - r),)))
        return tuple(out)

    def hn_scope(self) -> tuple:
        return self._carrier

    def parse(self, s: str):
        s = s.strip()
        m = _P_RE.match(s)
        if m:
            if int(m.group(1)) > self.window:
                raise WindowError(f"{s} lies outside the window 1..{self.window}")
            return KronP(int(m.group(1)))
        m = _I_RE.match(s)
        if m:
            if int(m.group(1)) > self.window:
                raise WindowError(f"{s} lies outside the window 1..{self.window}")
            return KronI(int(m.group(1)))
        m = _R_RE.match(s)
        if m:
            x, dd = m.group(1), int(m.group(2))
            if x not in self.points:
                raise AmbientError(f"unknown kronecker point {x!r}")
            return KronR(x, dd)
        # accept the simple-module aliases from the A_2-style notation
        if s in ("S_1", "S1"):
            return KronI(1)
        if s in ("S_2", "S2"):
            return KronP(1)
        raise AmbientError(f"cannot parse kronecker descriptor {s!r}")

    def tube_members(self, x: str) -> frozenset:
        return frozenset(KronR(x, d) for d in range(1, self.window + 1))


def preprojective_phase(k: int) -> Phase:
    return Phase.parse(f"(0|{k})")


def preinjective_phase(k: int) -> Phase:
    return Phase.parse(f"(1|{k})")


def point_phase(x: str) -> Phase:
    return Phase.parse(f"(inf|{x})")


def finest_kron_directing(amb: KroneckerAmbient, point_order=None) -> StabilityData:
    """Finest class with every indecomposable semistable:
    (0,1) < (0,2) < ... < points ... < (1,2) < (1,1)."""
    points = list(point_order) if point_order is not None else list(amb.points)
    phases = [preprojective_phase(k) for k in range(1, amb.window + 1)]
    phases += [point_phase(x) for x in points]
    phases += [preinjective_phase(k) for k in range(amb.window, 0, -1)]
    pieces = {preprojective_phase(k): frozenset({KronP(k)}) for k in range(1, amb.window + 1)}
    pieces.update({preinjective_phase(k): frozenset({KronI(k)}) for k in range(1, amb.window + 1)})
    pieces.update({point_phase(x): amb.tube_members(x) for x in points})
    return StabilityData(ExplicitOrder(phases), pieces)


def finest_kron_two_phase(amb: KroneckerAmbient) -> StabilityData:
    """Finest class <S_1> < <S_2>: only the simples are semistable and the
    HN filtration of X with dimension vector (m, n) is S_2^n -> X -> S_1^m."""
    p1, p2 = Phase.integer(1), Phase.integer(2)
    return StabilityData(ExplicitOrder([p1, p2]),
                         {p1: frozenset({KronI(1)}), p2: frozenset({KronP(1)})})


def kron_torsion_family(amb: KroneckerAmbient, row: int, points=None, n: int = 1) -> TorsionPair:
    """The four torsion-pair families of the Kronecker classification."""
    carrier = frozenset(amb.carrier())
    if row == 1:
        pts = frozenset(points if points is not None else ())
        if not pts <= set(amb.points):
            raise AmbientError(f"unknown points {sorted(pts - set(amb.points))}")
        t = frozenset(d for d in carrier if isinstance(d, KronI))
        for x in pts:
            t |= amb.tube_members(x)
        return TorsionPair(t, carrier - t)
    if row == 2:
        if not 1 <= n < amb.window:
            raise WindowError(f"preinjective cutoff {n} outside window")
        t = frozenset(d for d in carrier if isinstance(d, KronI) and d.k <= n)
        return TorsionPair(t, carrier - t)
    if row == 3:
        if not 1 <= n < amb.window:
            raise WindowError(f"preprojective cutoff {n} outside window")
        f = frozenset(d for d in carrier if isinstance(d, KronP) and d.k <= n)
        return TorsionPair(carrier - f, f)
    if row == 4:
        return TorsionPair(frozenset({KronP(1)}), frozenset({KronI(1)}))
    raise AmbientError(f"no kronecker torsion family numbered {row}")
