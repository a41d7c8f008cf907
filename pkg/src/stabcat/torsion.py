"""Torsion pairs: validation, brute-force enumeration, the ray/coray
classifier for tubes, and the cuts-of-finest-data construction."""

from __future__ import annotations

from dataclasses import dataclass, field

from .subcat import canon_members, closure, enumerate_ext_closed, left_perp, right_perp


class TorsionError(ValueError):
    pass


@dataclass(frozen=True)
class TorsionPair:
    t: frozenset
    f: frozenset

    def key(self):
        return (tuple(str(m) for m in canon_members(self.t)),
                tuple(str(m) for m in canon_members(self.f)))

    def is_trivial(self, ambient) -> bool:
        full = frozenset(ambient.carrier())
        return (self.t == full and not self.f) or (self.f == full and not self.t)

    def to_json(self) -> dict:
        return {"T": [str(m) for m in canon_members(self.t)],
                "F": [str(m) for m in canon_members(self.f)]}

    @staticmethod
    def from_json(doc: dict, ambient) -> "TorsionPair":
        return TorsionPair(frozenset(ambient.parse(m) for m in doc["T"]),
                           frozenset(ambient.parse(m) for m in doc["F"]))


@dataclass
class TorsionReport:
    valid: bool
    perp_failures: list = field(default_factory=list)
    decomposition_failures: list = field(default_factory=list)

    def summary(self) -> str:
        if self.valid:
            return "valid torsion pair"
        bits = []
        if self.perp_failures:
            bits.append(f"perpendicularity: {self.perp_failures[0]}")
        if self.decomposition_failures:
            bits.append(f"no T/F decomposition for {self.decomposition_failures[0]}")
        return "invalid: " + "; ".join(str(b) for b in bits)


def _decomposes(ambient, t, f, x) -> bool:
    """x itself in T or F, or some subobject in T with quotient in F.

    Checking indecomposables suffices: the torsion subobject of a direct sum
    is the direct sum of the torsion subobjects.
    """
    emb = ambient.embed(x)
    if emb in t or emb in f:
        return True
    for subs, quots in ambient.carrier_decompositions(emb):
        if all(s in t for s in subs) and all(q in f for q in quots):
            return True
    return False


def validate_torsion_pair(ambient, t, f) -> TorsionReport:
    t, f = frozenset(t), frozenset(f)
    report = TorsionReport(valid=True)
    scope = frozenset(ambient.reported_members())
    rp = right_perp(ambient, t) & scope
    lp = left_perp(ambient, f) & scope
    if t & scope != lp:
        diff = canon_members(lp.symmetric_difference(t & scope))
        report.perp_failures.append(f"T != perp(F), differs at {diff[0]}")
    if f & scope != rp:
        diff = canon_members(rp.symmetric_difference(f & scope))
        report.perp_failures.append(f"F != T^perp, differs at {diff[0]}")
    for x in ambient.hn_scope():
        if not _decomposes(ambient, t, f, x):
            report.decomposition_failures.append(x)
    report.valid = not (report.perp_failures or report.decomposition_failures)
    return report


def is_quotient_closed(ambient, members) -> bool:
    members = frozenset(members)
    return all(ambient.quotient_components(x) <= members for x in members)


def is_sub_closed(ambient, members) -> bool:
    members = frozenset(members)
    return all(ambient.sub_components(x) <= members for x in members)


def _canonical_sort(pairs) -> list:
    return sorted(pairs, key=lambda p: (len(p.t), p.key()))


def enumerate_torsion_pairs(ambient, upto_tau: bool = False, include_trivial: bool = False,
                            bound: int = 64) -> list:
    """Brute force over quotient-closed extension-closed torsion classes."""
    pairs = []
    for t in enumerate_ext_closed(ambient, bound=bound):
        if not is_quotient_closed(ambient, t):
            continue
        f = right_perp(ambient, t)
        if left_perp(ambient, f) != t:
            continue
        pair = TorsionPair(t, f)
        if validate_torsion_pair(ambient, t, f).valid:
            pairs.append(pair)
    if not include_trivial:
        pairs = [p for p in pairs if not p.is_trivial(ambient)]
    if upto_tau:
        pairs = dedupe_upto_tau(ambient, pairs)
    return _canonical_sort(pairs)


def tau_translate_pair(ambient, pair: TorsionPair, k: int = 1) -> TorsionPair:
    t, f = pair.t, pair.f
    for _ in range(k):
        t = frozenset(ambient.tau(x) for x in t)
        f = frozenset(ambient.tau(x) for x in f)
    return TorsionPair(t, f)


def tau_pair_orbit_size(ambient, pair: TorsionPair) -> int:
    for k in range(1, ambient.tau_order()):
        if tau_translate_pair(ambient, pair, k) == pair:
            return k
    return ambient.tau_order()


def tau_pair_canonical(ambient, pair: TorsionPair) -> TorsionPair:
    orbit = [tau_translate_pair(ambient, pair, k) for k in range(ambient.tau_order())]
    return min(orbit, key=lambda p: p.key())


def dedupe_upto_tau(ambient, pairs) -> list:
    seen = {}
    for p in pairs:
        canon = tau_pair_canonical(ambient, p)
        seen.setdefault(canon.key(), canon)
    return [seen[k] for k in sorted(seen)]


def classify_tube_torsion_pairs(n: int, upto_tau: bool = False, include_trivial: bool = False) -> list:
    """Structural classification: ray pairs from torsion classes of
    <S_1, ..., S_{n-1}>  (an A_{n-1} module category), coray pairs from
    torsionfree classes of <S_0, ..., S_{n-2}>."""
    from .ambient import IntervalAmbient, TubeAmbient
    from .intervals import embed_in_tube
    from .tube import tau_rep, truncate_rep

    tube_amb = TubeAmbient(n)
    pairs = {}

    def add(pair):
        pairs[pair.key()] = pair

    add(TorsionPair(frozenset(tube_amb.carrier()), frozenset()))
    add(TorsionPair(frozenset(), frozenset(tube_amb.carrier())))
    if n >= 2:
        small = IntervalAmbient(n - 1)
        small_pairs = enumerate_torsion_pairs(small, include_trivial=True)
        for sp in small_pairs:
            # ray type: image sits in <S_1, ..., S_{n-1}> after the embedding
            t_img = frozenset(truncate_rep(embed_in_tube(m)) for m in sp.t)
            t_closed = closure(tube_amb, t_img)
            ray = TorsionPair(t_closed, right_perp(tube_amb, t_closed))
            # coray type: shift the torsionfree class into <S_0, ..., S_{n-2}>
            f_img = frozenset(tau_rep(truncate_rep(embed_in_tube(m))) for m in sp.f)
            f_closed = closure(tube_amb, f_img)
            coray = TorsionPair(left_perp(tube_amb, f_closed), f_closed)
            for base in (ray, coray):
                for k in range(n):
                    add(tau_translate_pair(tube_amb, base, k))
    out = [p for p in pairs.values()
           if validate_torsion_pair(tube_amb, p.t, p.f).valid]
    if not include_trivial:
        out = [p for p in out if not p.is_trivial(tube_amb)]
    if upto_tau:
        out = dedupe_upto_tau(tube_amb, out)
    return _canonical_sort(out)


def torsion_pairs_from_finest(ambient, include_trivial: bool = False) -> list:
    """Union of all cuts of all finest data; must equal the brute force."""
    from .stability import all_cuts, cut_torsion_pair, enumerate_finest

    pairs = {}
    for sd in enumerate_finest(ambient):
        for cut in all_cuts(sd):
            pair = cut_torsion_pair(ambient, sd, cut)
            pairs[pair.key()] = pair
    out = list(pairs.values())
    if not include_trivial:
        out = [p for p in out if not p.is_trivial(ambient)]
    return _canonical_sort(out)


def pairs_to_markdown(pairs, title: str) -> str:
    """Markdown table in the layout of the published classification tables."""
    lines = [f"### {title}", "", "| T | F |", "|---|---|"]
    for p in pairs:
        t = ", ".join(str(m) for m in canon_members(p.t))
        f = ", ".join(str(m) for m in canon_members(p.f))
        lines.append(f"| {t} | {f} |")
    return "\n".join(lines) + "\n"
