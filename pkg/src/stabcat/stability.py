"""Stability data: validation, HN filtrations, finest-ness, refinement,
comparison, cuts and exhaustive enumeration of finest data.

A stability datum is a linearly ordered set of phases plus one extension
closed piece per phase.  Validity means Hom vanishes from higher to lower
phase and every object in the ambient's validation scope admits a filtration
with semistable factors of strictly decreasing phase; the filtration search
runs over the ambient's subobject decompositions and is exhaustive within
the model, so a failure is a genuine axiom violation for the windowed
category.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .phases import ExplicitOrder, Phase
from .subcat import canon_members, closure, ctx_for, is_closed

_HN_COMBO_CAP = 512


class StabilityError(ValueError):
    pass


class HNFailureError(StabilityError):
    """Raised when an object admits no decreasing-phase chain decomposition."""


class StabilityData:
    def __init__(self, order: ExplicitOrder, pieces: dict):
        self.order = order
        self.pieces = {ph: frozenset(m) for ph, m in pieces.items()}
        for ph in self.pieces:
            if not order.contains(ph):
                raise StabilityError(f"phase {ph} is not carried by the order")

    def phases(self) -> tuple:
        return tuple(ph for ph in self.order.elements() if ph in self.pieces)

    def piece_sequence(self) -> tuple:
        return tuple(self.pieces[ph] for ph in self.phases())

    def piece_of_map(self) -> dict:
        out = {}
        for ph in self.phases():
            for m in self.pieces[ph]:
                out.setdefault(m, ph)
        return out

    def canonicalized(self) -> "StabilityData":
        """Drop empty pieces; comparisons never see phantom phases."""
        kept = [ph for ph in self.order.elements() if self.pieces.get(ph)]
        return StabilityData(ExplicitOrder(kept), {ph: self.pieces[ph] for ph in kept})

    def relabeled(self) -> "StabilityData":
        """Same piece sequence with integer phases 1..k."""
        seq = self.canonicalized().piece_sequence()
        phases = [Phase.integer(i + 1) for i in range(len(seq))]
        return StabilityData(ExplicitOrder(phases), dict(zip(phases, seq)))

    def to_json(self, ambient=None) -> dict:
        return {
            "order": [ph.encode() for ph in self.phases()],
            "pieces": {ph.encode(): [str(m) for m in canon_members(self.pieces[ph])]
                       for ph in self.phases()},
        }

    @staticmethod
    def from_json(doc: dict, ambient) -> "StabilityData":
        phases = [Phase.parse(s) for s in doc["order"]]
        pieces = {Phase.parse(k): frozenset(ambient.parse(m) for m in v)
                  for k, v in doc["pieces"].items()}
        return StabilityData(ExplicitOrder(phases), pieces)

    def __repr__(self):
        parts = [f"{ph}:{{{','.join(str(m) for m in canon_members(self.pieces[ph]))}}}"
                 for ph in self.phases()]
        return "StabilityData(" + " < ".join(parts) + ")"


@dataclass
class HNFiltration:
    obj: object
    steps: tuple  # ((subobject or None, factor multiset, phase), ...), top phase first

    def factors(self) -> tuple:
        return tuple((ph, fac) for _, fac, ph in self.steps)


@dataclass
class ValidationReport:
    valid: bool
    hom_violations: list = field(default_factory=list)
    hn_failures: list = field(default_factory=list)
    piece_issues: list = field(default_factory=list)

    def summary(self) -> str:
        if self.valid:
            return "valid"
        bits = []
        if self.piece_issues:
            bits.append(f"{len(self.piece_issues)} piece issue(s): {self.piece_issues[0]}")
        if self.hom_violations:
            ph1, x, ph2, y = self.hom_violations[0]
            bits.append(f"{len(self.hom_violations)} Hom violation(s): "
                        f"Hom({x}@{ph1}, {y}@{ph2}) != 0 with {ph1} > {ph2}")
        if self.hn_failures:
            bits.append(f"{len(self.hn_failures)} HN failure(s): no filtration for {self.hn_failures[0]}")
        return "invalid: " + "; ".join(bits)


# -- HN machinery ---------------------------------------------------------

def _phase_index(sd: StabilityData) -> dict:
    return {ph: i for i, ph in enumerate(sd.order.elements())}


def _hn_chains(ambient, sd, x, memo, piece_of, pidx):
    if x in memo:
        return memo[x]
    memo[x] = ()
    results = set()
    emb = ambient.embed(x)
    ph = piece_of.get(emb)
    if ph is not None:
        results.add(((ph, (x,), (x,)),))
    for subs, quots in ambient.decompositions(x):
        qphases = {piece_of.get(ambient.embed(q)) for q in quots}
        if len(qphases) != 1 or None in qphases:
            continue
        qph = next(iter(qphases))
        quots_c = tuple(sorted(quots, key=str))
        for chain_s in _hn_chains_multiset(ambient, sd, subs, memo, piece_of, pidx):
            if pidx[chain_s[-1][0]] > pidx[qph]:
                results.add(chain_s + ((qph, quots_c, (x,)),))
    memo[x] = tuple(sorted(results, key=str))
    return memo[x]


def _hn_chains_multiset(ambient, sd, subs, memo, piece_of, pidx):
    if len(subs) == 1:
        return _hn_chains(ambient, sd, subs[0], memo, piece_of, pidx)
    per = [_hn_chains(ambient, sd, s, memo, piece_of, pidx) for s in subs]
    if any(not c for c in per):
        return ()
    combos = 1
    for c in per:
        combos *= len(c)
    if combos > _HN_COMBO_CAP:
        raise StabilityError(f"HN search explosion ({combos} combinations)")
    merged = set()
    for pick in itertools.product(*per):
        by_phase = {}
        for chain in pick:
            for ph, fac, _ in chain:
                by_phase.setdefault(ph, []).extend(fac)
        phases = sorted(by_phase, key=lambda p: -pidx[p])
        merged.add(tuple((ph, tuple(sorted(by_phase[ph], key=str)), None) for ph in phases))
    return tuple(sorted(merged, key=str))


def hn_chains(ambient, sd: StabilityData, x) -> tuple:
    """All decreasing-phase chain decompositions of x (unique iff sd valid)."""
    sd = sd.canonicalized()
    return _hn_chains(ambient, sd, x, {}, sd.piece_of_map(), _phase_index(sd))


def hn_filtration(ambient, sd: StabilityData, x) -> HNFiltration:
    chains = hn_chains(ambient, sd, x)
    if not chains:
        raise HNFailureError(f"{x} has no decreasing-phase chain decomposition")
    if len(chains) > 1:
        raise StabilityError(f"{x} has {len(chains)} chain decompositions; datum violates HN uniqueness")
    chain = chains[0]
    steps = tuple((upto[0] if (upto is not None and len(upto) == 1) else upto, fac, ph)
                  for ph, fac, upto in chain)
    return HNFiltration(obj=x, steps=steps)


# -- validation ------------------------------------------------------------

def validate(ambient, sd: StabilityData, check_hn: bool = True) -> ValidationReport:
    ctx = ctx_for(ambient)
    report = ValidationReport(valid=True)
    for ph, members in sd.pieces.items():
        for m in members:
            if m not in ctx.index:
                raise StabilityError(f"piece at phase {ph} contains {m}, not in the carrier")
    sd = sd.canonicalized()
    phases = sd.phases()
    for ph in phases:
        if not is_closed(ambient, sd.pieces[ph]):
            report.piece_issues.append(f"piece at phase {ph} is not extension-closed")
    seen = {}
    for ph in phases:
        for m in sd.pieces[ph]:
            if m in seen and seen[m] != ph:
                report.piece_issues.append(f"{m} lies in phases {seen[m]} and {ph}")
            seen[m] = ph
    for i, hi in enumerate(phases):
        for lo in phases[:i]:
            for x in canon_members(sd.pieces[hi]):
                for y in canon_members(sd.pieces[lo]):
                    if ambient.hom_nonzero(x, y):
                        report.hom_violations.append((hi, x, lo, y))
    if check_hn and not report.hom_violations and not report.piece_issues:
        memo, piece_of, pidx = {}, sd.piece_of_map(), _phase_index(sd)
        for x in ambient.hn_scope():
            if not _hn_chains(ambient, sd, x, memo, piece_of, pidx):
                report.hn_failures.append(x)
    report.valid = not (report.hom_violations or report.hn_failures or report.piece_issues)
    return report


# -- finest-ness and refinement ---------------------------------------------

def is_finest(ambient, sd: StabilityData):
    """Mutual Hom-nonvanishing within every phase; witness is a failing pair."""
    sd = sd.canonicalized()
    for ph in sd.phases():
        members = canon_members(sd.pieces[ph])
        for x in members:
            for y in members:
                if x != y and not ambient.hom_nonzero(x, y):
                    return False, (ph, x, y)
    return True, None


def split_phase(ambient, sd: StabilityData, phase, x) -> StabilityData:
    """Split Π_φ along x: Π_- = {Z : Hom(x, Z) = 0}, Π_+ its left-perp part."""
    sd = sd.canonicalized()
    piece = sd.pieces.get(phase)
    if piece is None:
        raise StabilityError(f"no piece at phase {phase}")
    if x not in piece:
        raise StabilityError(f"{x} is not in the piece at phase {phase}")
    minus = frozenset(z for z in piece if not ambient.hom_nonzero(x, z))
    if not minus:
        raise StabilityError(f"phase {phase} is already Hom-connected from {x}")
    plus = frozenset(w for w in piece if all(not ambient.hom_nonzero(w, z) for z in minus))
    lo = Phase.pair(phase, Phase.label("lo"))
    hi = Phase.pair(phase, Phase.label("hi"))
    new_phases = []
    for ph in sd.phases():
        if ph == phase:
            new_phases.extend([lo, hi])
        else:
            new_phases.append(ph)
    pieces = {ph: sd.pieces[ph] for ph in sd.phases() if ph != phase}
    pieces[lo] = minus
    pieces[hi] = plus
    return StabilityData(ExplicitOrder(new_phases), pieces)


def refine_to_finest(ambient, sd: StabilityData) -> StabilityData:
    """Split non-Hom-connected phases until finest; terminates because each
    split strictly increases the phase count, bounded by the carrier size."""
    current = sd.canonicalized()
    while True:
        finest, witness = is_finest(ambient, current)
        if finest:
            return current
        ph, x, _ = witness
        current = split_phase(ambient, current, ph, x).canonicalized()


def is_coarser(ambient, coarse: StabilityData, fine: StabilityData):
    """The surjection r: Φ_fine -> Φ_coarse of the finer/coarser order, if any."""
    coarse = coarse.canonicalized()
    fine = fine.canonicalized()
    r = {}
    for psi in fine.phases():
        members = fine.pieces[psi]
        targets = [phi for phi in coarse.phases() if members <= coarse.pieces[phi]]
        if len(targets) != 1:
            return None
        r[psi] = targets[0]
    if set(r.values()) != set(coarse.phases()):
        return None
    fidx = {ph: i for i, ph in enumerate(fine.phases())}
    cidx = {ph: i for i, ph in enumerate(coarse.phases())}
    psis = fine.phases()
    for i, p1 in enumerate(psis):
        for p2 in psis[:i]:
            if cidx[r[p2]] > cidx[r[p1]]:
                return None
    for phi in coarse.phases():
        union = frozenset().union(*[fine.pieces[psi] for psi in psis if r[psi] == phi])
        if closure(ambient, union) != coarse.pieces[phi]:
            return None
    return r


def equivalent(sd1: StabilityData, sd2: StabilityData, upto_tau: bool = False,
               ambient=None) -> bool:
    """Order-preserving bijection matching the pieces; with `upto_tau`, the
    comparison additionally quotients by the ambient's translation."""
    if not upto_tau:
        return sd1.canonicalized().piece_sequence() == sd2.canonicalized().piece_sequence()
    if ambient is None:
        raise StabilityError("tau-orbit comparison needs the ambient")
    return tau_canonical_key(ambient, sd1) == tau_canonical_key(ambient, sd2)


def cut_torsion_pair(ambient, sd: StabilityData, lower_phases):
    """Torsion pair from a down-closed cut: T from above, F from below."""
    from .torsion import TorsionPair

    sd = sd.canonicalized()
    lower = set(lower_phases)
    phases = sd.phases()
    for ph in lower:
        if ph not in phases:
            raise StabilityError(f"cut phase {ph} is not a phase of the datum")
    for i, ph in enumerate(phases):
        if ph in lower:
            for below in phases[:i]:
                if below not in lower:
                    raise StabilityError(f"cut is not down-closed: contains {ph} but not {below}")
    t_members = [sd.pieces[ph] for ph in phases if ph not in lower]
    f_members = [sd.pieces[ph] for ph in phases if ph in lower]
    t = closure(ambient, frozenset().union(*t_members) if t_members else frozenset())
    f = closure(ambient, frozenset().union(*f_members) if f_members else frozenset())
    return TorsionPair(t, f)


def all_cuts(sd: StabilityData):
    phases = sd.canonicalized().phases()
    return [set(phases[:k]) for k in range(len(phases) + 1)]


# -- coarsening and τ-action -------------------------------------------------

def merge_adjacent(ambient, sd: StabilityData, i: int) -> StabilityData:
    """Fuse phases i and i+1 into one piece (the closure of their union)."""
    sd = sd.canonicalized()
    phases = sd.phases()
    lo, hi = phases[i], phases[i + 1]
    merged = closure(ambient, sd.pieces[lo] | sd.pieces[hi])
    new_phases = [ph for ph in phases if ph != hi]
    pieces = {ph: sd.pieces[ph] for ph in new_phases}
    pieces[lo] = merged
    return StabilityData(ExplicitOrder(new_phases), pieces)


def tau_translate(ambient, sd: StabilityData, k: int = 1) -> StabilityData:
    sd = sd.canonicalized()
    pieces = {}
    for ph in sd.phases():
        pieces[ph] = frozenset(_tau_iter(ambient, m, k) for m in sd.pieces[ph])
    return StabilityData(sd.order, pieces)


def _tau_iter(ambient, x, k):
    for _ in range(k):
        y = ambient.tau(x)
        if y is None:
            raise StabilityError("ambient has no tau action")
        x = y
    return x


def _sequence_key(sd: StabilityData):
    return tuple(tuple(str(m) for m in canon_members(p)) for p in sd.piece_sequence())


def tau_canonical_key(ambient, sd: StabilityData):
    """Lexicographically minimal translate of the piece sequence."""
    keys = []
    for k in range(ambient.tau_order()):
        keys.append(_sequence_key(tau_translate(ambient, sd, k)))
    return min(keys)


def tau_orbit_size(ambient, sd: StabilityData) -> int:
    base = _sequence_key(sd)
    size = ambient.tau_order()
    for k in range(1, ambient.tau_order()):
        if _sequence_key(tau_translate(ambient, sd, k)) == base:
            size = k
            break
    return size


# -- enumeration --------------------------------------------------------------

def _connected(ambient, members) -> bool:
    ms = canon_members(members)
    for x in ms:
        for y in ms:
            if x != y and not ambient.hom_nonzero(x, y):
                return False
    return True


def candidate_pieces(ambient, pool=None) -> list:
    """Nonempty Hom-connected extension-closed subcats: the only sets that
    can serve as pieces of a finest datum (mutual Hom-nonvanishing)."""
    from .subcat import enumerate_ext_closed

    if pool is None:
        pool = enumerate_ext_closed(ambient)
    return [s for s in pool if s and _connected(ambient, s)]


def _tube_candidate_pieces(ambient) -> list:
    """Single-generated pieces <S_j^(s)>, s <= n: the only shapes a finest
    tube datum can use (unique length-n semistable, no lengths rn+s).  The
    restriction is verified against the no-restriction search on small ranks.
    """
    from .tube import SegmentRep

    n = ambient.n
    return [closure(ambient, {SegmentRep(n, j, s)}) for j in range(n) for s in range(1, n + 1)]


def _mandatory_objects(ambient) -> list:
    """Carrier members with no proper decomposition: semistable in any datum."""
    out = []
    for x in ambient.hn_scope():
        if not ambient.decompositions(x):
            emb = ambient.embed(x)
            if emb not in out:
                out.append(emb)
    return out


def _valid_data_over_pieces(ambient, pieces_pool, check_conflicts=True,
                            mandatory=None, max_pieces=None):
    """Yield every valid datum whose pieces are drawn from the pool."""
    ctx = ctx_for(ambient)
    pool = [frozenset(p) for p in pieces_pool]
    masks = [ctx.to_mask(p) for p in pool]
    npool = len(pool)
    hom = [[any(ambient.hom_nonzero(x, y) for x in pool[i] for y in pool[j])
            for j in range(npool)] for i in range(npool)]
    mandatory = list(mandatory or [])
    results = []

    def orders_of(chosen):
        edges = {i: set() for i in chosen}
        for i in chosen:
            for j in chosen:
                if i != j and hom[i][j]:
                    if hom[j][i]:
                        return
                    edges[i].add(j)
        seq = []

        def extend(remaining):
            if not remaining:
                yield tuple(seq)
                return
            for i in sorted(remaining):
                if all(i not in edges[j] for j in remaining if j != i):
                    seq.append(i)
                    yield from extend(remaining - {i})
                    seq.pop()

        yield from extend(frozenset(chosen))

    def rec(start, chosen, used_mask):
        if chosen and (max_pieces is None or len(chosen) <= max_pieces):
            covered = ctx.to_mask([m for m in mandatory]) & ~used_mask == 0
            if covered:
                for order in orders_of(chosen):
                    phases = [Phase.integer(i + 1) for i in range(len(order))]
                    sd = StabilityData(ExplicitOrder(phases),
                                       {phases[k]: pool[i] for k, i in enumerate(order)})
                    report = validate(ambient, sd)
                    if report.valid:
                        results.append(sd)
        for i in range(start, npool):
            if masks[i] & used_mask:
                continue
            rec(i + 1, chosen + [i], used_mask | masks[i])

    rec(0, [], 0)
    return results


def enumerate_valid(ambient) -> list:
    """Every valid stability datum up to equivalence (small carriers only)."""
    from .subcat import enumerate_ext_closed

    pool = [s for s in enumerate_ext_closed(ambient) if s]
    out = _valid_data_over_pieces(ambient, pool, mandatory=_mandatory_objects(ambient))
    out.sort(key=_sequence_key)
    return out


def enumerate_finest(ambient, upto_tau: bool = False, method: str = "auto",
                     bound: int = 64) -> list:
    """All finest valid data up to equivalence (optionally up to τ).

    `method` picks the candidate-piece pool: "auto" uses the tube-specific
    single-generator pool on tube ambients, "general" always uses the full
    Hom-connected closed pool (the verification path for the restriction).
    """
    from .ambient import TubeAmbient

    if len(ambient.carrier()) > bound:
        raise StabilityError(f"carrier size {len(ambient.carrier())} exceeds "
                             f"enumeration bound {bound}")
    if method == "auto" and isinstance(ambient, TubeAmbient):
        pool = _tube_candidate_pieces(ambient)
    else:
        pool = candidate_pieces(ambient)
    data = _valid_data_over_pieces(ambient, pool, mandatory=_mandatory_objects(ambient))
    finest = [sd for sd in data if is_finest(ambient, sd)[0]]
    finest.sort(key=lambda sd: (len(sd.phases()), _sequence_key(sd)))
    if not upto_tau:
        return finest
    by_key = {}
    for sd in finest:
        by_key.setdefault(tau_canonical_key(ambient, sd), []).append(sd)
    reps = []
    for key in sorted(by_key):
        orbit = by_key[key]
        rep = min(orbit, key=_sequence_key)
        reps.append(rep)
    reps.sort(key=lambda sd: (len(sd.phases()), _sequence_key(sd)))
    return reps
