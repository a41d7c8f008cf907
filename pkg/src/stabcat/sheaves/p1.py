"""Windowed model of coherent sheaves on the projective line.

Line bundles O(n) for n in a degree window, plus rank-one torsion tubes at a
finite point sample.  Hom rules: deg-monotone between line bundles, always
nonzero from a line bundle into torsion, never back, tubes at distinct
points orthogonal.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from ..ambient import Ambient, AmbientError, WindowError
from ..phases import ExplicitOrder, Phase
from ..stability import StabilityData
from ..torsion import TorsionPair

DEFAULT_POINTS = ("0", "1", "lam", "mu", "nu", "xi")
TUBE_VALIDATION_LENGTH = 3


@dataclass(frozen=True, order=True)
class P1Line:
    n: int

    def __str__(self):
        return f"O({self.n})"


@dataclass(frozen=True, order=True)
class P1Tor:
    x: str
    t: int

    def __str__(self):
        return f"S[{self.x}]^({self.t})"


_LINE_RE = re.compile(r"^O\((-?\d+)\)$")
_TOR_RE = re.compile(r"^S\[([^\]]+)\]\^\((\d+)\)$")


def point_phase(x: str) -> Phase:
    return Phase.parse(f"(inf|{x})")


class P1Ambient(Ambient):
    def __init__(self, lo: int, hi: int, n_points: int = 3):
        if lo > hi:
            raise AmbientError("empty degree window")
        if n_points > len(DEFAULT_POINTS):
            raise AmbientError(f"at most {len(DEFAULT_POINTS)} sample points supported")
        self.lo, self.hi = lo, hi
        self.points = DEFAULT_POINTS[:n_points]
        self.name = f"p1:window={lo}..{hi}:points={n_points}"
        carrier = [P1Line(n) for n in range(lo, hi + 1)]
        carrier += [P1Tor(x, t) for x in self.points for t in (1, 2)]
        self._carrier = tuple(sorted(carrier, key=str))

    def spec_string(self) -> str:
        return self.name

    def carrier(self) -> tuple:
        return self._carrier

    def embed(self, d):
        if isinstance(d, P1Tor) and d.t > 2:
            return P1Tor(d.x, 2)
        return d

    def _instances(self, d, count: int = 3):
        if isinstance(d, P1Tor) and d.t == 2:
            return [P1Tor(d.x, 2 + k) for k in range(count)]
        return [d]

    def hom_nonzero(self, a, b) -> bool:
        if isinstance(a, P1Line):
            if isinstance(b, P1Line):
                return a.n <= b.n
            return True
        if isinstance(b, P1Line):
            return False
        return a.x == b.x

    @lru_cache(maxsize=None)
    def middle_terms(self, a, b) -> frozenset:
        out = set()
        for ai in self._instances(a):
            for bi in self._instances(b):
                for ms in self._middles_actual(ai, bi):
                    emb = tuple(sorted((self.embed(c) for c in ms), key=str))
                    if all(self._in_carrier(c) for c in emb):
                        out.add(emb)
        return frozenset(out)

    def _in_carrier(self, d) -> bool:
        if isinstance(d, P1Line):
            return self.lo <= d.n <= self.hi
        return True

    def _middles_actual(self, a, b):
        out = []
        if isinstance(a, P1Line) and isinstance(b, P1Line):
            # 0 -> O(a) -> O(c) + O(d) -> O(b) -> 0 for a < c <= d < b
            for c in range(a.n + 1, b.n):
                d = a.n + b.n - c
                if c <= d < b.n:
                    out.append((P1Line(c), P1Line(d)))
        elif isinstance(a, P1Line) and isinstance(b, P1Tor):
            # the line absorbs the bottom length s of the torsion quotient
            for s in range(1, b.t + 1):
                line = P1Line(a.n + s)
                if s == b.t:
                    out.append((line,))
                else:
                    out.append((line, P1Tor(b.x, b.t - s)))
        elif isinstance(a, P1Tor) and isinstance(b, P1Tor) and a.x == b.x:
            out.append((P1Tor(a.x, a.t + b.t),))
            for s in range(max(1, a.t - b.t + 1), a.t):
                out.append((P1Tor(a.x, a.t + b.t - s), P1Tor(a.x, s)))
        return out

    def decompositions(self, d) -> tuple:
        if isinstance(d, P1Tor):
            return tuple(((P1Tor(d.x, r),), (P1Tor(d.x, d.t - r),)) for r in range(1, d.t))
        out = []
        for m in range(self.lo, d.n):
            gap = d.n - m
            for quot in self._torsion_spreads(gap):
                out.append(((P1Line(m),), quot))
        return tuple(out)

    def _torsion_spreads(self, gap: int):
        """All quotients of a degree-`gap` embedding: one torsion sheaf per
        point, lengths summing to gap."""
        spreads = []
        for lens in product(range(gap + 1), repeat=len(self.points)):
            if sum(lens) == gap:
                spreads.append(tuple(P1Tor(x, k) for x, k in zip(self.points, lens) if k))
        return [s for s in spreads if s]

    def carrier_decompositions(self, d) -> tuple:
        seen = []
        for inst in self._instances(d, TUBE_VALIDATION_LENGTH):
            for subs, quots in self.decompositions(inst):
                pair = (tuple(self.embed(s) for s in subs), tuple(self.embed(q) for q in quots))
                if pair not in seen:
                    seen.append(pair)
        return tuple(seen)

    def hn_scope(self) -> tuple:
        out = [P1Line(n) for n in range(self.lo, self.hi + 1)]
        out += [P1Tor(x, t) for x in self.points for t in range(1, TUBE_VALIDATION_LENGTH + 1)]
        return tuple(out)

    def parse(self, s: str):
        s = s.strip()
        m = _LINE_RE.match(s)
        if m:
            n = int(m.group(1))
            if not self.lo <= n <= self.hi:
                raise WindowError(f"O({n}) lies outside the window {self.lo}..{self.hi}")
            return P1Line(n)
        m = _TOR_RE.match(s)
        if m:
            x, t = m.group(1), int(m.group(2))
            if x not in self.points:
                raise AmbientError(f"unknown sample point {x!r}")
            return self.embed(P1Tor(x, t))
        raise AmbientError(f"cannot parse sheaf descriptor {s!r}")

    def tube_members(self, x: str) -> frozenset:
        return frozenset({P1Tor(x, 1), P1Tor(x, 2)})


def finest_p1(amb: P1Ambient, point_order=None) -> StabilityData:
    """The finest datum: one phase per line bundle in degree order, then one
    phase per point tube in the requested order."""
    points = list(point_order) if point_order is not None else list(amb.points)
    if sorted(points) != sorted(amb.points):
        raise AmbientError("point order must permute the sample points")
    phases = [Phase.integer(n) for n in range(amb.lo, amb.hi + 1)]
    pieces = {Phase.integer(n): frozenset({P1Line(n)}) for n in range(amb.lo, amb.hi + 1)}
    for x in points:
        ph = point_phase(x)
        phases.append(ph)
        pieces[ph] = amb.tube_members(x)
    return StabilityData(ExplicitOrder(phases), pieces)


def slope_data_p1(amb: P1Ambient) -> StabilityData:
    """Slope stability data restricted to the window: integer slopes for line
    bundles, a single infinite phase holding every torsion sheaf."""
    phases = [Phase.integer(n) for n in range(amb.lo, amb.hi + 1)] + [Phase.infinity()]
    pieces = {Phase.integer(n): frozenset({P1Line(n)}) for n in range(amb.lo, amb.hi + 1)}
    pieces[Phase.infinity()] = frozenset(d for d in amb.carrier() if isinstance(d, P1Tor))
    return StabilityData(ExplicitOrder(phases), pieces)


def torsion_family_points(amb: P1Ambient, points) -> TorsionPair:
    """(<S_x : x in P>, <O(m), S_x : x not in P>) for nonempty P."""
    points = frozenset(points)
    if not points:
        raise AmbientError("the point family needs a nonempty point set")
    if not points <= set(amb.points):
        raise AmbientError(f"unknown points {sorted(points - set(amb.points))}")
    t = frozenset().union(*[amb.tube_members(x) for x in points])
    f = frozenset(amb.carrier()) - t
    return TorsionPair(t, f)


def torsion_family_degree(amb: P1Ambient, n: int) -> TorsionPair:
    """(<O(m) : m > n; all torsion>, <O(m) : m <= n>)."""
    if not (amb.lo <= n - 1 and n + 1 <= amb.hi):
        raise WindowError(f"window {amb.lo}..{amb.hi} too small for the degree-{n} family")
    t = frozenset(d for d in amb.carrier()
                  if isinstance(d, P1Tor) or d.n > n)
    f = frozenset(d for d in amb.carrier() if isinstance(d, P1Line) and d.n <= n)
    return TorsionPair(t, f)


def torsion_families_p1(amb: P1Ambient, points, n: int) -> list:
    """Both classification rows instantiated in the window."""
    return [torsion_family_points(amb, points), torsion_family_degree(amb, n)]
