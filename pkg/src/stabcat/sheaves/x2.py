"""Windowed model of coherent sheaves on the weighted projective line of
weight type (2).

Line bundles O(l c + e x1) are indexed by the rank-one string group, totally
ordered by the degree dd = 2l + e.  The torsion part has one rank-two
exceptional tube with simples S[1,0], S[1,1] and rank-one ordinary tubes at
the sample points.  The quotient of O(x) by a line subsheaf splits into at
most one torsion sheaf per point; at the exceptional point its top parity
equals dd(x) mod 2 (the multiplication-by-X1 chain), which is the only
subtlety the Hom and extension rules carry.

The internal carrier keeps one extra line-bundle column below the reported
window so that boundary HN factors exist; validation quantifies over the
reported window only.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .. import tube
from ..ambient import Ambient, AmbientError, WindowError
from ..phases import ExplicitOrder, Phase
from ..stability import StabilityData
from ..torsion import TorsionPair

X2_POINTS = ("0", "1", "lam")
EXC_VALIDATION_LENGTH = 6
ORD_VALIDATION_LENGTH = 3


@dataclass(frozen=True, order=True)
class X2Line:
    l: int
    e: int

    def __post_init__(self):
        if self.e not in (0, 1):
            raise AmbientError("line bundle x1-coefficient must be 0 or 1")

    @property
    def dd(self) -> int:
        return 2 * self.l + self.e

    def __str__(self):
        return f"O({self.l}c+{self.e}x1)"


@dataclass(frozen=True, order=True)
class X2Exc:
    j: int
    t: int

    def __str__(self):
        return f"S[1,{self.j}]^({self.t})"


@dataclass(frozen=True, order=True)
class X2Ord:
    x: str
    t: int

    def __str__(self):
        return f"S[{self.x}]^({self.t})"


def line_of_dd(dd: int) -> X2Line:
    return X2Line(dd // 2, dd % 2)


def _exc_tube(d: X2Exc) -> tube.TubeIndec:
    return tube.TubeIndec(2, d.j, d.t)


def _exc_back(t: tube.TubeIndec) -> X2Exc:
    return X2Exc(t.j, t.t)


_LINE_RE = re.compile(r"^O\((-?\d+)c(?:\+(\d)x1)?\)$")
_LINE_SHORT_RE = re.compile(r"^O\((-?\d+)\)$")
_EXC_RE = re.compile(r"^S\[1,([01])\]\^\((\d+)\)$")
_ORD_RE = re.compile(r"^S\[([^\],]+)\]\^\((\d+)\)$")


def exc_phase(which: str) -> Phase:
    return Phase.parse({"lo": "(inf|0)", "mid": "(inf|1/2)", "hi": "(inf|1)"}[which])


def point_phase(x: str) -> Phase:
    return Phase.parse(f"(inf|pt:{x})")


class X2Ambient(Ambient):
    def __init__(self, lo: int, hi: int, n_points: int = 3):
        if lo > hi:
            raise AmbientError("empty window")
        if n_points > len(X2_POINTS):
            raise AmbientError(f"at most {len(X2_POINTS)} ordinary points supported")
        self.lo, self.hi = lo, hi
        self.inner_lo = lo - 1  # margin column for boundary HN factors
        self.points = X2_POINTS[:n_points]
        self.name = f"x2:window={lo}..{hi}:points={n_points}"
        carrier = [X2Line(l, e) for l in range(self.inner_lo, hi + 1) for e in (0, 1)]
        carrier += [X2Exc(j, rt) for j in (0, 1) for rt in (1, 2, 3, 4)]
        carrier += [X2Ord(x, rt) for x in self.points for rt in (1, 2)]
        self._carrier = tuple(sorted(carrier, key=str))

    def spec_string(self) -> str:
        return self.name

    def carrier(self) -> tuple:
        return self._carrier

    def reported_members(self) -> tuple:
        return tuple(d for d in self._carrier
                     if not (isinstance(d, X2Line) and d.l < self.lo))

    def reported_lines(self) -> tuple:
        return tuple(X2Line(l, e) for l in range(self.lo, self.hi + 1) for e in (0, 1))

    def internal_lines(self) -> tuple:
        return tuple(X2Line(l, e) for l in range(self.inner_lo, self.hi + 1) for e in (0, 1))

    def embed(self, d):
        if isinstance(d, X2Exc) and d.t > 4:
            return X2Exc(d.j, tube.rho(d.t, 2))
        if isinstance(d, X2Ord) and d.t > 2:
            return X2Ord(d.x, 2)
        return d

    def _instances(self, d, count: int = 3):
        if isinstance(d, X2Exc) and d.t > 2:
            return [X2Exc(d.j, d.t + 2 * k) for k in range(count)]
        if isinstance(d, X2Ord) and d.t == 2:
            return [X2Ord(d.x, 2 + k) for k in range(count)]
        return [d]

    def hom_nonzero(self, a, b) -> bool:
        if isinstance(a, X2Line):
            if isinstance(b, X2Line):
                return a.dd <= b.dd
            if isinstance(b, X2Exc):
                # image of the torsionization of the line, top parity dd mod 2
                return b.t >= 2 or b.j == a.dd % 2
            return True
        if isinstance(b, X2Line):
            return False
        if isinstance(a, X2Exc) and isinstance(b, X2Exc):
            return tube.hom_nonzero(_exc_tube(a), _exc_tube(b))
        if isinstance(a, X2Ord) and isinstance(b, X2Ord):
            return a.x == b.x
        return False

    def _line_in_carrier(self, dd: int) -> bool:
        return 2 * self.inner_lo <= dd <= 2 * self.hi + 1

    @lru_cache(maxsize=None)
    def middle_terms(self, a, b) -> frozenset:
        out = set()
        for ai in self._instances(a):
            for bi in self._instances(b):
                for ms in self._middles_actual(ai, bi):
                    emb = tuple(sorted((self.embed(c) for c in ms), key=str))
                    if all(self._member_in_carrier(c) for c in emb):
                        out.add(emb)
        return frozenset(out)

    def _member_in_carrier(self, d) -> bool:
        if isinstance(d, X2Line):
            return self._line_in_carrier(d.dd)
        return True

    def _middles_actual(self, a, b):
        out = []
        if isinstance(a, X2Line) and isinstance(b, X2Line):
            # no coprime section pair exists when both degree gaps are odd
            for dz in range(a.dd + 1, b.dd):
                dw = a.dd + b.dd - dz
                if dz <= dw < b.dd and not ((dz - a.dd) % 2 == 1 and (dw - a.dd) % 2 == 1):
                    out.append((line_of_dd(dz), line_of_dd(dw)))
        elif isinstance(a, X2Line) and isinstance(b, X2Exc):
            for r in range(b.t):
                if (a.dd + b.t - b.j - r) % 2 != 0:
                    continue
                line = line_of_dd(a.dd + (b.t - r))
                if r == 0:
                    out.append((line,))
                else:
                    out.append((line, X2Exc((b.j - b.t + r) % 2, r)))
        elif isinstance(a, X2Line) and isinstance(b, X2Ord):
            for r in range(b.t):
                line = line_of_dd(a.dd + 2 * (b.t - r))
                if r == 0:
                    out.append((line,))
                else:
                    out.append((line, X2Ord(b.x, r)))
        elif isinstance(a, X2Exc) and isinstance(b, X2Exc):
            for ms in tube.middle_terms(_exc_tube(a), _exc_tube(b)):
                out.append(tuple(_exc_back(c) for c in ms))
        elif isinstance(a, X2Ord) and isinstance(b, X2Ord) and a.x == b.x:
            out.append((X2Ord(a.x, a.t + b.t),))
            for s in range(max(1, a.t - b.t + 1), a.t):
                out.append((X2Ord(a.x, a.t + b.t - s), X2Ord(a.x, s)))
        return out

    @lru_cache(maxsize=None)
    def decompositions(self, d) -> tuple:
        if isinstance(d, X2Exc):
            return tuple(((_exc_back(s),), (_exc_back(q),))
                         for s, q in tube.chain_splits(_exc_tube(d)))
        if isinstance(d, X2Ord):
            return tuple(((X2Ord(d.x, r),), (X2Ord(d.x, d.t - r),)) for r in range(1, d.t))
        out = []
        for sub in self.internal_lines():
            if sub.dd >= d.dd:
                continue
            gap = d.dd - sub.dd
            for quot in self._torsion_spreads(gap, d.dd % 2):
                out.append(((sub,), quot))
        return tuple(out)

    def _torsion_spreads(self, gap: int, exc_parity: int):
        spreads = []
        for m_exc in range(gap + 1):
            rest = gap - m_exc
            if rest % 2:
                continue
            for lens in product(range(rest // 2 + 1), repeat=len(self.points)):
                if 2 * sum(lens) != rest:
                    continue
                quot = []
                if m_exc:
                    quot.append(X2Exc(exc_parity, m_exc))
                quot.extend(X2Ord(x, k) for x, k in zip(self.points, lens) if k)
                if quot:
                    spreads.append(tuple(quot))
        return spreads

    def carrier_decompositions(self, d) -> tuple:
        seen = []
        count = 3
        for inst in self._instances(d, count):
            for subs, quots in self.decompositions(inst):
                pair = (tuple(self.embed(s) for s in subs), tuple(self.embed(q) for q in quots))
                if pair not in seen:
                    seen.append(pair)
        return tuple(seen)

    def hn_scope(self) -> tuple:
        out = list(self.reported_lines())
        out += [X2Exc(j, t) for j in (0, 1) for t in range(1, EXC_VALIDATION_LENGTH + 1)]
        out += [X2Ord(x, t) for x in self.points for t in range(1, ORD_VALIDATION_LENGTH + 1)]
        return tuple(out)

    def parse(self, s: str):
        s = s.strip()
        m = _LINE_RE.match(s)
        if m:
            line = X2Line(int(m.group(1)), int(m.group(2) or 0))
        else:
            m = _LINE_SHORT_RE.match(s)
            line = X2Line(int(m.group(1)), 0) if m else None
        if line is not None:
            if not self.inner_lo <= line.l <= self.hi:
                raise WindowError(f"{line} lies outside the window {self.lo}..{self.hi}")
            return line
        m = _EXC_RE.match(s)
        if m:
            return self.embed(X2Exc(int(m.group(1)), int(m.group(2))))
        m = _ORD_RE.match(s)
        if m:
            x, t = m.group(1), int(m.group(2))
            if x not in self.points:
                raise AmbientError(f"unknown ordinary point {x!r}")
            return self.embed(X2Ord(x, t))
        raise AmbientError(f"cannot parse sheaf descriptor {s!r}")

    def ord_tube_members(self, x: str) -> frozenset:
        return frozenset({X2Ord(x, 1), X2Ord(x, 2)})

    def exc_tube_members(self) -> frozenset:
        return frozenset(X2Exc(j, rt) for j in (0, 1) for rt in (1, 2, 3, 4))


FAMILIES = ("full", "coset", "lm")


def _exc_pieces(anchor: int):
    """Pieces at the three exceptional phases; `anchor` is the parity whose
    simple takes the lowest phase (anchor = 0 is the normalized choice)."""
    other = 1 - anchor
    return {
        "lo": frozenset({X2Exc(anchor, 1)}),
        "mid": frozenset({X2Exc(other, 2), X2Exc(other, 4)}),
        "hi": frozenset({X2Exc(other, 1)}),
    }


EXC_LO, EXC_MID, EXC_HI = "exc_lo", "exc_mid", "exc_hi"


def _xtilde_tokens(amb, xtilde_order, lo_among_lines: bool):
    """Normalize the ordering tokens of the torsion phase block: the three
    exceptional markers in their forced order, points anywhere.  When the
    low exceptional phase sits among the line-bundle phases it must come
    first and is peeled off."""
    default = [EXC_LO, EXC_MID, EXC_HI] + list(amb.points)
    tokens = list(xtilde_order) if xtilde_order is not None else default
    exc_positions = [tokens.index(t) for t in (EXC_LO, EXC_MID, EXC_HI)]
    if sorted(tokens) != sorted(default):
        raise AmbientError("xtilde order must contain each exceptional marker and point once")
    if exc_positions != sorted(exc_positions):
        raise AmbientError("exceptional phases must stay in the order lo < mid < hi")
    if lo_among_lines:
        if tokens[0] != EXC_LO:
            raise AmbientError("with the low exceptional phase among the line bundles, "
                               "it must come first in the xtilde order")
        tokens = tokens[1:]
    return tokens


def finest_x2(amb: X2Ambient, family: str, m: int | None = None,
              point_order=None, xtilde_order=None, anchor: int = 0) -> StabilityData:
    """The three finest families: all line bundles semistable ("full"), only
    the x1-coset semistable ("coset"), or the coset plus an initial segment
    of the c-coset ("lm", cut parameter m).

    `anchor` picks which exceptional simple carries the lowest torsion phase
    (the degree-shift normalization fixes anchor = 0); `xtilde_order`
    interleaves the point tubes with the exceptional phases.
    """
    if family not in FAMILIES:
        raise AmbientError(f"unknown finest family {family!r}; pick one of {FAMILIES}")
    if point_order is not None and xtilde_order is not None:
        raise AmbientError("give either point_order or xtilde_order, not both")
    if point_order is not None:
        if sorted(point_order) != sorted(amb.points):
            raise AmbientError("point order must permute the sample points")
        xtilde_order = [EXC_LO, EXC_MID, EXC_HI] + list(point_order)
    exc = _exc_pieces(anchor)
    other = 1 - anchor

    def line_semistable(line: X2Line) -> bool:
        if family == "full":
            return True
        if line.dd % 2 == other:
            return True
        if family == "lm":
            return line.dd <= 2 * (m - 1) + anchor
        return False

    if family == "lm":
        if m is None:
            raise AmbientError("the lm family needs its cut parameter m")
        if not (amb.lo <= m <= amb.hi + 1):
            raise WindowError(f"cut parameter {m} outside window {amb.lo}..{amb.hi}")

    tokens = _xtilde_tokens(amb, xtilde_order, lo_among_lines=family in ("coset", "lm"))
    lines = [ln for ln in amb.internal_lines() if line_semistable(ln)]
    lines.sort(key=lambda ln: ln.dd)
    phases = []
    pieces = {}
    lo_phase = exc_phase("lo")
    if family == "coset":
        phases.append(lo_phase)
        pieces[lo_phase] = exc["lo"]
    for ln in lines:
        ph = Phase.integer(ln.dd)
        phases.append(ph)
        pieces[ph] = frozenset({ln})
        if family == "lm" and ln.dd == 2 * (m - 1) + anchor:
            phases.append(lo_phase)
            pieces[lo_phase] = exc["lo"]
    for token in tokens:
        if token == EXC_LO:
            ph, piece = lo_phase, exc["lo"]
        elif token == EXC_MID:
            ph, piece = exc_phase("mid"), exc["mid"]
        elif token == EXC_HI:
            ph, piece = exc_phase("hi"), exc["hi"]
        else:
            ph, piece = point_phase(token), amb.ord_tube_members(token)
        phases.append(ph)
        pieces[ph] = piece
    if lo_phase not in pieces:
        raise AmbientError(f"lm insertion line for m={m} is outside the internal window")
    return StabilityData(ExplicitOrder(phases), pieces)


def slope_data_x2(amb: X2Ambient) -> StabilityData:
    phases = [Phase.integer(ln.dd) for ln in amb.internal_lines()]
    phases.sort(key=lambda p: p.value)
    pieces = {Phase.integer(ln.dd): frozenset({ln}) for ln in amb.internal_lines()}
    inf = Phase.infinity()
    phases.append(inf)
    pieces[inf] = frozenset(d for d in amb.carrier() if not isinstance(d, X2Line))
    return StabilityData(ExplicitOrder(phases), pieces)


def x2_torsion_family(amb: X2Ambient, row: str, points=None, shift: int = 0) -> TorsionPair:
    """The six torsion-pair families; `points` is P (row I, may contain "inf"
    for the exceptional tube) or Q (rows II, III); `shift` twists rows IV-VI
    by a degree shift within the window."""
    from ..subcat import left_perp, right_perp

    carrier = frozenset(amb.carrier())
    row = row.upper()
    if row == "I":
        pts = frozenset(points if points is not None else ())
        if not pts:
            raise AmbientError("family I needs a nonempty point set")
        if not pts <= set(amb.points) | {"inf"}:
            raise AmbientError(f"unknown points {sorted(pts - set(amb.points) - {'inf'})}")
        t = frozenset()
        for x in pts:
            t |= amb.exc_tube_members() if x == "inf" else amb.ord_tube_members(x)
        return TorsionPair(t, right_perp(amb, t))
    if row in ("II", "III"):
        pts = frozenset(points if points is not None else ())
        if not pts <= set(amb.points):
            raise AmbientError(f"unknown ordinary points {sorted(pts - set(amb.points))}")
        t = frozenset({X2Exc(1, 1)})
        if row == "III":
            t = frozenset(X2Exc(1, rt) for rt in (1, 2, 3, 4))
        for x in pts:
            t |= amb.ord_tube_members(x)
        return TorsionPair(t, right_perp(amb, t))
    if row == "IV":
        t = frozenset(d for d in carrier
                      if not isinstance(d, X2Line) or d.dd >= 2 * shift)
        return TorsionPair(t, right_perp(amb, t))
    if row == "V":
        t = frozenset(d for d in carrier
                      if isinstance(d, X2Ord)
                      or (isinstance(d, X2Exc) and d.j == 1)
                      or (isinstance(d, X2Line) and d.dd % 2 == 1 and d.dd >= 2 * shift + 1))
        return TorsionPair(t, right_perp(amb, t))
    if row == "VI":
        f = frozenset({X2Exc(0, 1)})
        return TorsionPair(left_perp(amb, f), f)
    raise AmbientError(f"no torsion family named {row!r}")
