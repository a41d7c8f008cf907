"""Extension-and-summand-closed subcategories over a finite ambient model.

A subcategory is a frozenset of carrier descriptors; closure adds every
component of every middle term of every ordered pair of members (extensions
with indecomposable end terms; the matrix oracle guards this reduction).
Member sets are stored as bitmasks over the canonically indexed carrier
during enumeration.
"""

from __future__ import annotations


class SubcatError(ValueError):
    pass


class CarrierContext:
    """Cached hom/extension tables for one ambient, as bitmasks."""

    def __init__(self, ambient):
        self.ambient = ambient
        self.carrier = tuple(ambient.carrier())
        self.index = {d: i for i, d in enumerate(self.carrier)}
        n = len(self.carrier)
        self.full_mask = (1 << n) - 1
        self.hom_to = [0] * n
        self.hom_from = [0] * n
        for i, x in enumerate(self.carrier):
            for j, y in enumerate(self.carrier):
                if ambient.hom_nonzero(x, y):
                    self.hom_to[i] |= 1 << j
                    self.hom_from[j] |= 1 << i
        self.mid_mask = [[0] * n for _ in range(n)]
        for i, a in enumerate(self.carrier):
            for j, b in enumerate(self.carrier):
                m = 0
                for multiset in ambient.middle_terms(a, b):
                    for comp in multiset:
                        m |= 1 << self.index[comp]
                self.mid_mask[i][j] = m

    def bits(self, mask: int):
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def to_mask(self, members) -> int:
        mask = 0
        for m in members:
            if m not in self.index:
                raise SubcatError(f"descriptor {m} is not in the carrier")
            mask |= 1 << self.index[m]
        return mask

    def to_set(self, mask: int) -> frozenset:
        return frozenset(self.carrier[i] for i in self.bits(mask))

    def closure_mask(self, mask: int) -> int:
        while True:
            new = mask
            members = list(self.bits(mask))
            for i in members:
                row = self.mid_mask[i]
                for j in members:
                    new |= row[j]
            if new == mask:
                return mask
            mask = new

    def is_closed_mask(self, mask: int) -> bool:
        members = list(self.bits(mask))
        for i in members:
            row = self.mid_mask[i]
            for j in members:
                if row[j] & ~mask:
                    return False
        return True

    def right_perp_mask(self, mask: int) -> int:
        hit = 0
        for i in self.bits(mask):
            hit |= self.hom_to[i]
        return self.full_mask & ~hit

    def left_perp_mask(self, mask: int) -> int:
        hit = 0
        for j in self.bits(mask):
            hit |= self.hom_from[j]
        return self.full_mask & ~hit


_CTX_CACHE = {}


def ctx_for(ambient) -> CarrierContext:
    key = id(ambient)
    ctx = _CTX_CACHE.get(key)
    if ctx is None or ctx.ambient is not ambient:
        ctx = CarrierContext(ambient)
        _CTX_CACHE[key] = ctx
    return ctx


def canon_members(members) -> tuple:
    return tuple(sorted(members, key=str))


def closure(ambient, gens) -> frozenset:
    ctx = ctx_for(ambient)
    return ctx.to_set(ctx.closure_mask(ctx.to_mask(gens)))


def is_closed(ambient, members) -> bool:
    ctx = ctx_for(ambient)
    return ctx.is_closed_mask(ctx.to_mask(members))


def right_perp(ambient, members) -> frozenset:
    ctx = ctx_for(ambient)
    return ctx.to_set(ctx.right_perp_mask(ctx.to_mask(members)))


def left_perp(ambient, members) -> frozenset:
    ctx = ctx_for(ambient)
    return ctx.to_set(ctx.left_perp_mask(ctx.to_mask(members)))


def enumerate_ext_closed(ambient, bound: int = 64) -> list:
    """All extension-closed member sets, canonically sorted.

    Walks the closure system from the empty set: every closed set is reached
    by closing one-element enlargements of smaller closed sets.
    """
    if not getattr(ambient, "supports_enumeration", True):
        raise SubcatError(f"{ambient.spec_string()} models only part of its extension "
                          "structure; exhaustive enumeration is disabled")
    ctx = ctx_for(ambient)
    n = len(ctx.carrier)
    if n > bound:
        raise SubcatError(f"carrier size {n} exceeds enumeration bound {bound}")
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for mask in frontier:
            for i in range(n):
                if mask & (1 << i):
                    continue
                c = ctx.closure_mask(mask | (1 << i))
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    sets = [ctx.to_set(m) for m in seen]
    sets.sort(key=lambda s: (len(s), [str(x) for x in canon_members(s)]))
    return sets


def enumerate_ext_closed_by_filter(ambient, bound: int = 16) -> list:
    """Reference enumeration: test closedness of every subset (tiny carriers)."""
    ctx = ctx_for(ambient)
    n = len(ctx.carrier)
    if n > bound:
        raise SubcatError(f"carrier size {n} exceeds filter-enumeration bound {bound}")
    sets = [ctx.to_set(m) for m in range(1 << n) if ctx.is_closed_mask(m)]
    sets.sort(key=lambda s: (len(s), [str(x) for x in canon_members(s)]))
    return sets
