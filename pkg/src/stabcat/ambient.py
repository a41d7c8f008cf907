"""Finite ambient models: the carrier of indecomposables together with the
hom / extension / subobject data every engine consumes.

Tube carriers use segment representatives (lengths capped at 2n); validation
additionally walks actual segments of length up to 3n, membership being
decided through truncation.  Sheaf-window ambients live in stabcat.sheaves.
"""

from __future__ import annotations

from functools import lru_cache

from . import tube
from .intervals import (all_intervals, chain_splits_interval, hom_nonzero_interval,
                        middle_terms_interval, parse_interval)
from .tube import SegmentRep, TubeIndec, parse_tube, truncate_rep

FAMILY_INSTANCES = 3


class AmbientError(ValueError):
    pass


class WindowError(AmbientError):
    """A requested construction does not fit the configured window."""


class Ambient:
    """Interface shared by all finite models."""

    name = "ambient"

    def carrier(self) -> tuple:
        raise NotImplementedError

    def reported_members(self) -> tuple:
        """Carrier members inside the reported window (everything, unless the
        model keeps internal margin objects for boundary subobjects)."""
        return self.carrier()

    def hom_nonzero(self, x, y) -> bool:
        raise NotImplementedError

    def middle_terms(self, a, b) -> frozenset:
        raise NotImplementedError

    def decompositions(self, x) -> tuple:
        """Proper (subobject multiset, quotient multiset) pairs of the
        extended-space object x; complete within the model."""
        raise NotImplementedError

    def hn_scope(self) -> tuple:
        """Extended-space objects whose HN filtration validation must find."""
        return self.carrier()

    def embed(self, x):
        """Extended-space object -> carrier member (identity by default)."""
        return x

    def carrier_decompositions(self, x) -> tuple:
        """(sub, quotient) pairs of a carrier member, in carrier space."""
        return tuple(
            (tuple(self.embed(s) for s in subs), tuple(self.embed(q) for q in quots))
            for subs, quots in self.decompositions(x)
        )

    def quotient_components(self, x) -> frozenset:
        return frozenset(q for _, quots in self.carrier_decompositions(x) for q in quots)

    def sub_components(self, x) -> frozenset:
        return frozenset(s for subs, _ in self.carrier_decompositions(x) for s in subs)

    def tau(self, x):
        return None

    def tau_order(self) -> int:
        return 1

    def parse(self, s: str):
        raise NotImplementedError

    def spec_string(self) -> str:
        raise NotImplementedError


class TubeAmbient(Ambient):
    """The rank-n tube on segment representatives."""

    def __init__(self, n: int):
        if n < 1:
            raise AmbientError("tube rank must be >= 1")
        self.n = n
        self.name = f"tube:{n}"
        self._carrier = tuple(sorted(
            (SegmentRep(n, j, rt) for j in range(n) for rt in range(1, 2 * n + 1)),
            key=str))

    def spec_string(self) -> str:
        return self.name

    def carrier(self) -> tuple:
        return self._carrier

    def _as_rep(self, x) -> SegmentRep:
        if isinstance(x, SegmentRep):
            return x
        if isinstance(x, TubeIndec):
            return truncate_rep(x)
        raise AmbientError(f"not a tube descriptor: {x!r}")

    def hom_nonzero(self, x, y) -> bool:
        # soc/top/factor set only depend on the representative
        a, b = self._as_rep(x), self._as_rep(y)
        return tube.hom_nonzero(TubeIndec(self.n, a.j, a.rt), TubeIndec(self.n, b.j, b.rt))

    @lru_cache(maxsize=None)
    def _middle_cached(self, a: SegmentRep, b: SegmentRep) -> frozenset:
        out = set()
        for ai in a.instances(FAMILY_INSTANCES):
            for bi in b.instances(FAMILY_INSTANCES):
                for multiset in tube.middle_terms(ai, bi):
                    out.add(tuple(sorted((truncate_rep(c) for c in multiset), key=str)))
        return frozenset(out)

    def middle_terms(self, a, b) -> frozenset:
        return self._middle_cached(self._as_rep(a), self._as_rep(b))

    def hn_scope(self) -> tuple:
        return tuple(TubeIndec(self.n, j, t)
                     for t in range(1, 3 * self.n + 1) for j in range(self.n))

    def embed(self, x):
        if isinstance(x, SegmentRep):
            return x
        return truncate_rep(x)

    def decompositions(self, x) -> tuple:
        if isinstance(x, SegmentRep):
            x = x.instances(1)[0]
        return tuple(((s,), (q,)) for s, q in tube.chain_splits(x))

    def carrier_decompositions(self, x) -> tuple:
        rep = self._as_rep(x)
        seen = []
        for inst in rep.instances(FAMILY_INSTANCES):
            for s, q in tube.chain_splits(inst):
                pair = ((truncate_rep(s),), (truncate_rep(q),))
                if pair not in seen:
                    seen.append(pair)
        return tuple(seen)

    def tau(self, x):
        if isinstance(x, SegmentRep):
            return tube.tau_rep(x)
        return tube.tau(x)

    def tau_order(self) -> int:
        return self.n

    def parse(self, s: str):
        t = parse_tube(s, self.n)
        if t.t <= 2 * self.n:
            return SegmentRep(self.n, t.j, t.t)
        return truncate_rep(t)


class IntervalAmbient(Ambient):
    """mod-A_n for the linear orientation, as interval modules."""

    def __init__(self, n: int):
        if n < 1:
            raise AmbientError("quiver size must be >= 1")
        self.n = n
        self.name = f"an:{n}"
        self._carrier = tuple(sorted(all_intervals(n), key=str))

    def spec_string(self) -> str:
        return self.name

    def carrier(self) -> tuple:
        return self._carrier

    def hom_nonzero(self, x, y) -> bool:
        return hom_nonzero_interval(x, y)

    def middle_terms(self, a, b) -> frozenset:
        return middle_terms_interval(a, b)

    def decompositions(self, x) -> tuple:
        return tuple(((s,), (q,)) for s, q in chain_splits_interval(x))

    def parse(self, s: str):
        return parse_interval(s, self.n)
