"""Combinatorics of the rank-n tube.

Indecomposables are cyclic segments S_j^(t): top simple index j in Z/nZ and
length t, with composition factor sequence (S_{j-t+1}, ..., S_j) read bottom
up.  Hom-nonvanishing, the fundamental non-split extensions and the
length-truncation representative map are all expressed on these segments;
the matrix oracle pins their correctness on small instances.
"""

from __future__ import annotations

import re
from dataclasses import dataclass


class TubeError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class TubeIndec:
    """The segment S_j^(t) in the rank-n tube (0 <= j < n, t >= 1)."""

    n: int
    j: int
    t: int

    def __post_init__(self):
        if self.n < 1 or not (0 <= self.j < self.n) or self.t < 1:
            raise TubeError(f"bad tube descriptor (n={self.n}, j={self.j}, t={self.t})")

    def __str__(self) -> str:
        return f"S{self.j}^({self.t})@{self.n}"


_TUBE_RE = re.compile(r"^S(\d+)\^\((\d+)\)(?:@(\d+))?$")


def parse_tube(s: str, n: int | None = None) -> TubeIndec:
    m = _TUBE_RE.match(s.strip())
    if not m:
        raise TubeError(f"cannot parse tube descriptor {s!r}")
    j, t, nn = int(m.group(1)), int(m.group(2)), m.group(3)
    if nn is None and n is None:
        raise TubeError(f"descriptor {s!r} carries no rank and none was supplied")
    rank = int(nn) if nn is not None else n
    if n is not None and rank != n:
        raise TubeError(f"descriptor {s!r} has rank {rank}, expected {n}")
    return TubeIndec(rank, j, t)


def _check_same_rank(x: TubeIndec, y: TubeIndec):
    if x.n != y.n:
        raise TubeError(f"rank mismatch: {x} vs {y}")


def soc(x: TubeIndec) -> int:
    return (x.j - x.t + 1) % x.n


def top(x: TubeIndec) -> int:
    return x.j


def comp_factor_set(x: TubeIndec) -> frozenset:
    if x.t >= x.n:
        return frozenset(range(x.n))
    return frozenset((x.j - k) % x.n for k in range(x.t))


def tau(x: TubeIndec, k: int = 1) -> TubeIndec:
    return TubeIndec(x.n, (x.j - k) % x.n, x.t)


def subobject_chain(x: TubeIndec) -> list:
    """The chain 0 ⊂ S_{j-t+1}^(1) ⊂ ... ⊂ S_j^(t) of all subobjects."""
    return [TubeIndec(x.n, (x.j - x.t + r) % x.n, r) for r in range(1, x.t + 1)]


def chain_splits(x: TubeIndec) -> list:
    """Proper (subobject, quotient) pairs along the subobject chain."""
    out = []
    for r in range(1, x.t):
        sub = TubeIndec(x.n, (x.j - x.t + r) % x.n, r)
        quot = TubeIndec(x.n, x.j, x.t - r)
        out.append((sub, quot))
    return out


def hom_nonzero(x: TubeIndec, y: TubeIndec) -> bool:
    """Hom(X, Y) != 0 iff top(X) is a factor of Y and soc(Y) a factor of X."""
    _check_same_rank(x, y)
    return top(x) in comp_factor_set(y) and soc(y) in comp_factor_set(x)


def middle_terms(a: TubeIndec, b: TubeIndec) -> frozenset:
    """Isomorphism types of middle terms of non-split 0 -> A -> E -> B -> 0.

    Lift A to the integer segment [0, tA-1]; admissible positions for B are
    p ≡ (socpos(B) - socpos(A)) mod n.  p = tA stacks B on top of A, giving
    one indecomposable; 1 <= p <= tA-1 with B reaching above A's top gives
    the union/intersection pair.  Completeness is pinned by the matrix
    oracle, not argued here.
    """
    _check_same_rank(a, b)
    n = a.n
    delta = ((b.j - b.t) - (a.j - a.t)) % n
    out = set()
    if (a.t - delta) % n == 0:
        out.add((TubeIndec(n, b.j, a.t + b.t),))
    p = delta if delta != 0 else n
    while p <= a.t - 1:
        if p + b.t - 1 > a.t - 1:
            s = a.t - p
            pair = (TubeIndec(n, b.j, a.t + b.t - s), TubeIndec(n, a.j, s))
            out.add(tuple(sorted(pair, key=str)))
        p += n
    return frozenset(out)


def rho(t: int, n: int) -> int:
    """Representative length: identity below n, n + ((t-1) mod n) + 1 above."""
    if t <= n:
        return t
    return n + ((t - 1) % n) + 1


@dataclass(frozen=True, order=True)
class SegmentRep:
    """Canonical representative (j, rho(t)); lengths above n encode the
    periodic family {S_j^(rn+l) : r >= 1}."""

    n: int
    j: int
    rt: int

    def __post_init__(self):
        if not (1 <= self.rt <= 2 * self.n) or not (0 <= self.j < self.n):
            raise TubeError(f"bad segment representative (n={self.n}, j={self.j}, rt={self.rt})")

    def __str__(self) -> str:
        return f"S{self.j}^({self.rt})@{self.n}"

    def is_family(self) -> bool:
        return self.rt > self.n

    def instances(self, count: int = 1) -> list:
        """Actual segments represented: one for exact lengths, `count` many
        (stepping by n) for a family representative."""
        if not self.is_family():
            return [TubeIndec(self.n, self.j, self.rt)]
        return [TubeIndec(self.n, self.j, self.rt + k * self.n) for k in range(count)]


def truncate_rep(x: TubeIndec) -> SegmentRep:
    return SegmentRep(x.n, x.j, rho(x.t, x.n))


def tau_rep(x: SegmentRep, k: int = 1) -> SegmentRep:
    return SegmentRep(x.n, (x.j - k) % x.n, x.rt)
