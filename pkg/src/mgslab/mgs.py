"""Maximal green sequences as complete forward hom-orthogonal brick sequences.

The engine enumerates weakly FHO sequences over a brick pool by appending
at the right end, and certifies leaves complete *relative to the pool
bounds*: band modules never enter (they cannot lie on a maximal green
sequence) and string bricks supported on the square of a band are kept out
of the member pool (they cannot either), but both remain available as
refinement witnesses in the insertion pool, alongside band bricks
M(w, lambda, 1) probed at sampled lambda values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import AlgebraPresentation
from .concurrency import pmap
from .modules import (
    band_module,
    band_top_socle,
    enumerate_bricks,
    hom_dim,
    is_brick,
    string_module,
)
from .oracle import hom_dim_linalg, to_explicit
from .words import (
    BandPool,
    Walk,
    canonical_string,
    enumerate_bands,
)


class BudgetExhausted(Exception):
    """Search ran out of node budget; carries whatever was found."""

    def __init__(self, partial, nodes):
        super().__init__(f"node budget exhausted after {nodes} nodes")
        self.partial = partial
        self.nodes = nodes


class OracleDisagreement(Exception):
    """Band-brick Hom probes disagreed across lambda samples."""


class TheoremCounterexample(Exception):
    """A constructive step the theory guarantees failed on this input."""


@dataclass(frozen=True)
class BandBrick:
    walk: Walk  # canonical band rotation
    lambdas: tuple[Fraction, ...]


@dataclass(frozen=True)
class BrickPools:
    member: tuple[Walk, ...]
    insertion_strings: tuple[Walk, ...]
    insertion_bands: tuple[BandBrick, ...]
    excluded: tuple[tuple[Walk, Walk], ...]  # (brick, witnessing band)
    max_string_len: int
    band_bound: int
    lambdas: tuple[Fraction, ...]

    def descriptor(self) -> dict:
        return {
            "max_string_len": self.max_string_len,
            "band_bound": self.band_bound,
            "lambdas": [str(l) for l in self.lambdas],
        }


class HomTable:
    """Memoized Hom dimensions keyed by canonical walks; band-module Homs
    go through the oracle and are cached per lambda."""

    def __init__(self, alg: AlgebraPresentation):
        self.alg = alg
        self._string: dict = {}
        self._band: dict = {}
        self._reps: dict = {}

    def _rep(self, w: Walk):
        key = w.key()
        if key not in self._reps:
            self._reps[key] = to_explicit(string_module(self.alg, w))
        return self._reps[key]

    def _band_rep(self, w: Walk, lam: Fraction):
        key = (w.key(), lam)
        if key not in self._reps:
            self._reps[key] = to_explicit(band_module(self.alg, w, lam, 1))
        return self._reps[key]

    def hom(self, a: Walk, b: Walk) -> int:
        key = (a.key(), b.key())
        if key not in self._string:
            self._string[key] = hom_dim(self.alg, a, b)
        return self._string[key]

    def hom_string_band(self, a: Walk, band: Walk, lam: Fraction) -> int:
        key = (a.key(), band.key(), lam, "sb")
        if key not in self._band:
            self._band[key] = hom_dim_linalg(self._rep(a), self._band_rep(band, lam))
        return self._band[key]

    def hom_band_string(self, band: Walk, lam: Fraction, b: Walk) -> int:
        key = (band.key(), b.key(), lam, "bs")
        if key not in self._band:
            self._band[key] = hom_dim_linalg(self._band_rep(band, lam), self._rep(b))
        return self._band[key]


def is_weakly_fho(alg: AlgebraPresentation, entries, table: HomTable | None = None) -> bool:
    """Hom(M_i, M_j) = 0 for all i < j; raises on a non-brick entry."""
    table = table or HomTable(alg)
    for w in entries:
        if not is_brick(alg, w):
            raise ValueError(f"entry {w} is not a brick")
    n = len(entries)
    for i in range(n):
        for j in range(i + 1, n):
            if table.hom(entries[i], entries[j]) != 0:
                return False
    return True


def insertable(alg: AlgebraPresentation, entries, p: int, brick: Walk,
               table: HomTable | None = None) -> bool:
    """Whether inserting the brick after the first p entries keeps the
    sequence weakly FHO; an existing entry is never insertable again."""
    table = table or HomTable(alg)
    ckey = canonical_string(brick).key()
    if any(canonical_string(e).key() == ckey for e in entries):
        return False
    for i, e in enumerate(entries, start=1):
        if i <= p:
            if table.hom(e, brick) != 0:
                return False
        else:
            if table.hom(brick, e) != 0:
                return False
    return True


def _band_brick_lambdas(alg, w: Walk, lambdas) -> bool:
    """M(w, lambda, 1) is a brick; sampled lambdas must agree."""
    dims = []
    for lam in lambdas:
        rep = to_explicit(band_module(alg, w, lam, 1))
        dims.append(hom_dim_linalg(rep, rep))
    if len(set(dims)) > 1:
        raise OracleDisagreement(
            f"End M({w}, lambda, 1) differs across lambda samples: {dims}"
        )
    return dims[0] == 1


def build_brick_pools(alg: AlgebraPresentation, max_string_len: int,
                      lambdas=(Fraction(1), Fraction(2)),
                      band_bound: int | None = None) -> BrickPools:
    """Member pool: string bricks minus everything supported on the square
    of a band.  Insertion pool: all string bricks plus the band bricks
    M(w, lambda, 1) over the enumerated bands."""
    lambdas = tuple(Fraction(l) for l in lambdas)
    if band_bound is None:
        band_bound = max_string_len // 2
    infos = enumerate_bricks(alg, max_string_len)
    member, excluded = [], []
    for info in infos:
        if info.band_square_supports:
            excluded.append((info.walk, info.band_square_supports[0]))
        else:
            member.append(info.walk)
    records = enumerate_bands(alg, band_bound)
    brickhood = pmap(
        lambda rec: _band_brick_lambdas(alg, rec.canonical, lambdas), records
    )
    bands = [
        BandBrick(rec.canonical, lambdas)
        for rec, ok in zip(records, brickhood)
        if ok
    ]
    return BrickPools(
        member=tuple(member),
        insertion_strings=tuple(info.walk for info in infos),
        insertion_bands=tuple(bands),
        excluded=tuple(excluded),
        max_string_len=max_string_len,
        band_bound=band_bound,
        lambdas=lambdas,
    )


@dataclass(frozen=True)
class Verdict:
    kind: str  # "complete" | "refinable" | "refinable-or-bug"
    witness_brick: Walk | None = None
    witness_is_band: bool = False
    witness_position: int | None = None
    missing_simples: tuple[str, ...] = ()
    banned_entries: tuple[tuple[Walk, Walk], ...] = ()
    band_square_blockers: tuple[tuple[Walk, Walk, int], ...] = ()
    pool_descriptor: dict = field(default_factory=dict)

    @property
    def band_square_obstructed(self) -> bool:
        return bool(self.banned_entries) or bool(self.band_square_blockers)


@dataclass(frozen=True)
class FhoSequence:
    entries: tuple[Walk, ...]
    verdict: Verdict | None = None


def simple_walks(alg: AlgebraPresentation) -> tuple[Walk, ...]:
    return tuple(Walk((), (v,)) for v in alg.vertices)


def _band_insertable(alg, entries, p, bb: BandBrick, table: HomTable) -> bool:
    """Positional insertability of a band brick, demanding agreement of the
    decision across every sampled lambda."""
    decisions = []
    for lam in bb.lambdas:
        ok = True
        for i, e in enumerate(entries, start=1):
            if i <= p:
                if table.hom_string_band(e, bb.walk, lam) != 0:
                    ok = False
                    break
            else:
                if table.hom_band_string(bb.walk, lam, e) != 0:
                    ok = False
                    break
        decisions.append(ok)
    if len(set(decisions)) > 1:
        raise OracleDisagreement(
            f"insertability of band brick {bb.walk} at {p} differs across lambdas"
        )
    return decisions[0]


def is_complete_relative(alg: AlgebraPresentation, entries, pools: BrickPools,
                         table: HomTable | None = None) -> Verdict:
    """Scan the insertion pool for a refinement witness; if none exists the
    sequence is complete relative to the pool bounds.

    A complete verdict with a missing simple module is impossible for a true
    maximal green sequence, so that case is downgraded to refinable-or-bug.
    Entries or insertable bricks known to be supported on a band square are
    reported: such sequences cannot extend to a maximal green sequence.
    """
    table = table or HomTable(alg)
    entries = tuple(entries)
    excluded_map = {canonical_string(w).key(): band for w, band in pools.excluded}
    banned_entries = tuple(
        (e, excluded_map[canonical_string(e).key()])
        for e in entries
        if canonical_string(e).key() in excluded_map
    )
    blockers = []
    for w, band in pools.excluded:
        for p in range(len(entries) + 1):
            if insertable(alg, entries, p, w, table):
                blockers.append((w, band, p))
                break

    witness = None
    for w in pools.insertion_strings:
        for p in range(len(entries) + 1):
            if insertable(alg, entries, p, w, table):
                witness = (w, False, p)
                break
        if witness:
            break
    if witness is None:
        for bb in pools.insertion_bands:
            for p in range(len(entries) + 1):
                if _band_insertable(alg, entries, p, bb, table):
                    witness = (bb.walk, True, p)
                    break
            if witness:
                break

    present = {e.source for e in entries if e.length == 0}
    missing = tuple(v for v in alg.vertices if v not in present)

    if witness is not None:
        return Verdict(
            "refinable",
            witness_brick=witness[0],
            witness_is_band=witness[1],
            witness_position=witness[2],
            missing_simples=missing,
            banned_entries=banned_entries,
            band_square_blockers=tuple(blockers),
            pool_descriptor=pools.descriptor(),
        )
    kind = "complete" if not missing else "refinable-or-bug"
    return Verdict(
        kind,
        missing_simples=missing,
        banned_entries=banned_entries,
        band_square_blockers=tuple(blockers),
        pool_descriptor=pools.descriptor(),
    )


@dataclass
class MgsSearchResult:
    sequences: tuple[tuple[Walk, ...], ...]
    nodes: int
    diagnostics: tuple[str, ...] = ()


class _Searcher:
    """Append-only DFS over the member pool with hom data baked into
    bitmasks: appending a brick forbids every brick it maps onto, and a
    prefix dies as soon as a simple it still owes becomes forbidden."""

    def __init__(self, alg, pools: BrickPools, table: HomTable):
        self.alg = alg
        self.pools = pools
        self.table = table
        member = list(pools.member)
        self.member = member
        self.m = len(member)
        self.bit = {w.key(): 1 << i for i, w in enumerate(member)}
        self.index = {w.key(): i for i, w in enumerate(member)}
        # hom(w_i, w_j) != 0 puts j in forbid[i]
        self.forbid = []
        for a in member:
            mask = 0
            for j, b in enumerate(member):
                if table.hom(a, b) != 0:
                    mask |= 1 << j
            self.forbid.append(mask)
        self.simples_mask = 0
        self.simple_vertex = {}
        for i, w in enumerate(member):
            if w.length == 0:
                self.simples_mask |= 1 << i
                self.simple_vertex[i] = w.source
        # insertion-pool candidates as (walk, from_mask, to_mask): bits over
        # member ids e with hom(e, c) != 0, resp. hom(c, e) != 0
        self.string_cands = []
        for c in pools.insertion_strings:
            fmask = tmask = 0
            for i, e in enumerate(member):
                if table.hom(e, c) != 0:
                    fmask |= 1 << i
                if table.hom(c, e) != 0:
                    tmask |= 1 << i
            self.string_cands.append((c, fmask, tmask))
        self.band_cands = []
        for bb in pools.insertion_bands:
            per_lambda = []
            for lam in bb.lambdas:
                fmask = tmask = 0
                for i, e in enumerate(member):
                    if table.hom_string_band(e, bb.walk, lam) != 0:
                        fmask |= 1 << i
                    if table.hom_band_string(bb.walk, lam, e) != 0:
                        tmask |= 1 << i
                per_lambda.append((fmask, tmask))
            self.band_cands.append((bb, per_lambda))

    def _insertable_masks(self, seq_ids, fmask, tmask) -> bool:
        """Some gap admits the candidate: the last entry it must follow
        comes before the first entry that shuts it out."""
        first_block = len(seq_ids)
        for i, e in enumerate(seq_ids):
            if fmask >> e & 1:
                first_block = i
                break
        last_need = -1
        for i in range(len(seq_ids) - 1, -1, -1):
            if tmask >> seq_ids[i] & 1:
                last_need = i
                break
        return last_need < first_block

    def leaf_is_complete(self, seq_ids, used_mask) -> bool:
        for c, fmask, tmask in self.string_cands:
            key = c.key()
            if key in self.bit and self.bit[key] & used_mask:
                continue
            if self._insertable_masks(seq_ids, fmask, tmask):
                return False
        for bb, per_lambda in self.band_cands:
            decisions = [
                self._insertable_masks(seq_ids, fmask, tmask)
                for fmask, tmask in per_lambda
            ]
            if len(set(decisions)) > 1:
                raise OracleDisagreement(
                    f"insertability of band brick {bb.walk} differs across lambdas"
                )
            if decisions[0]:
                return False
        return True

    def run(self, *, max_len=None, budget=None, simple_order=None,
            require_subsequence=None, stop_at_first=False) -> MgsSearchResult:
        import sys

        if max_len is None:
            max_len = self.m
        order_ids = None
        if simple_order is not None:
            by_vertex = {v: i for i, v in self.simple_vertex.items()}
            order_ids = [by_vertex[v] for v in simple_order if v in by_vertex]
        required: list[int] | None = None
        required_mask = 0
        if require_subsequence is not None:
            required = []
            for w in require_subsequence:
                key = canonical_string(w).key()
                if key not in self.index:
                    raise ValueError(f"required entry {w} is not in the member pool")
                required.append(self.index[key])
            for i in required:
                required_mask |= 1 << i
        found: list[tuple[int, ...]] = []
        diagnostics: list[str] = []
        all_mask = (1 << self.m) - 1
        simples_mask = self.simples_mask
        forbid = self.forbid
        simple_bit = sum(1 << i for i in self.simple_vertex)
        state = {"nodes": 0}
        budget_cap = budget if budget is not None else float("inf")
        seq: list[int] = []

        class _Done(Exception):
            pass

        # leaf candidate data: (fmask, tmask, member_bit_or_0) per string
        # candidate; band candidates carry one (fmask, tmask) per lambda
        str_cands = [
            (fmask, tmask, self.bit.get(c.key(), 0))
            for c, fmask, tmask in self.string_cands
        ]
        band_cands = [per for _, per in self.band_cands]

        def leaf_complete(used: int) -> bool:
            n = len(seq)
            for fmask, tmask, mbit in str_cands:
                if mbit and (mbit & used):
                    continue
                if fmask & used == 0:
                    return False  # appendable at the right end
                first_block = n
                for i in range(n):
                    if fmask >> seq[i] & 1:
                        first_block = i
                        break
                last_need = -1
                for i in range(n - 1, -1, -1):
                    if tmask >> seq[i] & 1:
                        last_need = i
                        break
                if last_need < first_block:
                    return False
            for bb_idx, per_lambda in enumerate(band_cands):
                decisions = []
                for fmask, tmask in per_lambda:
                    if fmask & used == 0:
                        decisions.append(True)
                        continue
                    first_block = n
                    for i in range(n):
                        if fmask >> seq[i] & 1:
                            first_block = i
                            break
                    last_need = -1
                    for i in range(n - 1, -1, -1):
                        if tmask >> seq[i] & 1:
                            last_need = i
                            break
                    decisions.append(last_need < first_block)
                if len(set(decisions)) > 1:
                    raise OracleDisagreement(
                        "band-brick insertability differs across lambdas"
                    )
                if decisions[0]:
                    # no string brick refines this leaf but a band brick does;
                    # worth surfacing, the theory does not settle the case
                    diagnostics.append(
                        "band brick "
                        + str(self.band_cands[bb_idx][0].walk)
                        + " is the sole refinement witness for "
                        + str([str(self.member[i]) for i in seq])
                    )
                    return False
            return True

        def rec(used: int, forbidden: int, placed: int, need: int):
            state["nodes"] += 1
            if state["nodes"] > budget_cap:
                raise _Done
            if simples_mask & forbidden & ~used:
                return
            if required is not None and required_mask & forbidden & ~used:
                return  # a still-owed required entry can never be appended
            cands = all_mask & ~(used | forbidden) if len(seq) < max_len else 0
            appended = False
            rest = cands
            while rest:
                low = rest & -rest
                rest ^= low
                i = low.bit_length() - 1
                if order_ids is not None and low & simple_bit:
                    if placed >= len(order_ids) or order_ids[placed] != i:
                        continue
                next_need = need
                if required is not None and low & required_mask:
                    if need >= len(required) or required[need] != i:
                        continue
                    next_need = need + 1
                appended = True
                seq.append(i)
                rec(used | low, forbidden | forbid[i],
                    placed + (1 if low & simple_bit else 0), next_need)
                seq.pop()
                if stop_at_first and found:
                    return
            if not appended and seq:
                if required is not None and need < len(required):
                    return
                if (simples_mask & ~used) == 0:
                    if leaf_complete(used):
                        found.append(tuple(seq))
                        if stop_at_first:
                            raise _Done
                elif order_ids is None and required is None:
                    # cannot happen: an unforbidden missing simple is appendable
                    diagnostics.append(
                        "leaf missing simples despite no appendable brick: "
                        + str([str(self.member[i]) for i in seq])
                    )

        old_limit = sys.getrecursionlimit()
        sys.setrecursionlimit(max(old_limit, self.m * 50 + 1000))
        budget_hit = False
        try:
            rec(0, 0, 0, 0)
        except _Done:
            budget_hit = state["nodes"] > budget_cap
        finally:
            sys.setrecursionlimit(old_limit)

        sequences = tuple(
            sorted(
                {tuple(self.member[i] for i in ids) for ids in found},
                key=lambda s: tuple(w.key() for w in s),
            )
        )
        if budget_hit:
            raise BudgetExhausted(sequences, state["nodes"])
        return MgsSearchResult(sequences, state["nodes"], tuple(diagnostics))


def _search_mgs(alg, pools, table, *, max_len=None, budget=None,
                simple_order=None, require_subsequence=None, stop_at_first=False):
    searcher = _Searcher(alg, pools, table)
    return searcher.run(max_len=max_len, budget=budget,
                        simple_order=simple_order,
                        require_subsequence=require_subsequence,
                        stop_at_first=stop_at_first)


def enumerate_mgs(alg: AlgebraPresentation, pools: BrickPools, *,
                  max_len: int | None = None, budget: int | None = None,
                  require_subsequence=None,
                  table: HomTable | None = None) -> MgsSearchResult:
    """Maximal green sequences whose bricks lie in the member pool, each
    certified complete relative to the pools; deterministic order.

    Limits: maximum sequence length, a node budget (exceeding it raises
    BudgetExhausted carrying the partial output), and optionally a required
    subsequence, restricting the search to complete sequences containing the
    given entries in the given relative order.
    """
    table = table or HomTable(alg)
    result = _search_mgs(alg, pools, table, max_len=max_len, budget=budget,
                         require_subsequence=require_subsequence)
    for seq in result.sequences:
        present = {e.source for e in seq if e.length == 0}
        if set(alg.vertices) - present:
            raise AssertionError(
                f"emitted sequence {[str(w) for w in seq]} misses simples"
            )
    return result


def complete_from_prefix(alg: AlgebraPresentation, pools: BrickPools,
                         simple_order, *, budget: int | None = None,
                         table: HomTable | None = None):
    """First complete sequence whose simples respect the given relative
    order, or None when the bounded search exhausts without finding one."""
    table = table or HomTable(alg)
    result = _search_mgs(
        alg, pools, table, budget=budget,
        simple_order=tuple(simple_order), stop_at_first=True,
    )
    if result.sequences:
        return FhoSequence(result.sequences[0],
                           is_complete_relative(alg, result.sequences[0], pools, table))
    return None


@dataclass(frozen=True)
class SocleFirstResult:
    hypothesis_holds: bool
    witnesses: tuple[tuple[str, str, str], ...]  # (simple, band with it on top, band with it in socle)
    order: tuple[str, ...]


def simple_order_socle_first(alg: AlgebraPresentation, pool: BandPool) -> SocleFirstResult:
    """Check that no simple sits in the top of one band module and the socle
    of another, and order the simples socle-appearing first.

    Band modules at different lambda are distinct modules, so a simple lying
    in the top of some band and the socle of any band violates the
    hypothesis.
    """
    tops: dict[str, Walk] = {}
    socles: dict[str, Walk] = {}
    for w in pool.bands:
        t, s = band_top_socle(w)
        for v in t:
            tops.setdefault(v, w)
        for v in s:
            socles.setdefault(v, w)
    witnesses = tuple(
        (v, str(tops[v]), str(socles[v])) for v in alg.vertices
        if v in tops and v in socles
    )
    socle_simples = [v for v in alg.vertices if v in socles]
    rest = [v for v in alg.vertices if v not in socles]
    return SocleFirstResult(not witnesses, witnesses, tuple(socle_simples + rest))


def _band_positions(w: Walk):
    """Cyclic peak and valley positions (0-based) of a band."""
    d = w.length
    peaks, valleys = [], []
    for p in range(d):
        prev = w.letters[(p - 1) % d]
        cur = w.letters[p]
        if prev.sign == -1 and cur.sign == +1:
            peaks.append(p)
        if prev.sign == +1 and cur.sign == -1:
            valleys.append(p)
    return peaks, valleys


def _descents_from_peak(w: Walk, p: int):
    """The two directed paths from a peak down to its adjacent valleys,
    as (arrow list in composition order, valley vertex)."""
    d = w.length
    right, i = [], p
    while w.letters[i].sign == +1:
        right.append(w.letters[i].arrow)
        i = (i + 1) % d
    right_end = w.vertices[i]
    left, i = [], (p - 1) % d
    while w.letters[i].sign == -1:
        left.append(w.letters[i].arrow)
        i = (i - 1) % d
    left_end = w.vertices[(i + 1) % d]
    return [(tuple(right), right_end), (tuple(left), left_end)]


def _ascents_to_valley(w: Walk, q: int):
    """The two directed paths from the adjacent peaks down into a valley,
    as (arrow list in composition order, peak vertex)."""
    d = w.length
    left_arrows, i = [], (q - 1) % d
    while w.letters[i].sign == +1:
        left_arrows.append(w.letters[i].arrow)
        i = (i - 1) % d
    left_arrows.reverse()
    left_peak = w.vertices[(i + 1) % d]
    right_arrows, i = [], q
    while w.letters[i].sign == -1:
        right_arrows.append(w.letters[i].arrow)
        i = (i + 1) % d
    right_arrows.reverse()
    right_peak = w.vertices[i]
    return [(tuple(left_arrows), left_peak), (tuple(right_arrows), right_peak)]


@dataclass(frozen=True)
class GentleOrderResult:
    chunks: tuple[tuple[str, ...], ...]
    order: tuple[str, ...]


def domestic_gentle_order(alg: AlgebraPresentation, pool: BandPool) -> GentleOrderResult:
    """The constructive simple ordering for domestic gentle algebras.

    Starting from a simple in the top of a band module, repeatedly follow the
    unique relation-free composition down to the next socle simple; extend
    dually backwards; repeat over the remaining bands and concatenate.  The
    simples met along one chain are guaranteed distinct; a repeat is reported
    as a theorem-check counterexample.
    """
    from .algebra import validate_axioms

    report = validate_axioms(alg)
    if not report.is_gentle:
        raise ValueError("construction requires a gentle algebra")

    W = [w for w in pool.bands
         if not (set(band_top_socle(w)[0]) & set(band_top_socle(w)[1]))]

    def junction_alive(prev_arrow: str | None, path: tuple[str, ...]) -> bool:
        if prev_arrow is None or not path:
            return True
        return not alg.path_contains_relation((prev_arrow, path[0]))

    def pick_descent(band: Walk, vertex: str, incoming_arrow: str | None):
        peaks, _ = _band_positions(band)
        options = []
        for p in peaks:
            if band.vertices[p] != vertex:
                continue
            for path, end in _descents_from_peak(band, p):
                if junction_alive(incoming_arrow, path):
                    options.append((path, end))
        if not options:
            raise TheoremCounterexample(
                f"no relation-free descent from {vertex} in band {band}"
            )
        return sorted(options)[0]

    def pick_ascent(band: Walk, vertex: str, outgoing_arrow: str | None):
        _, valleys = _band_positions(band)
        options = []
        for q in valleys:
            if band.vertices[q] != vertex:
                continue
            for path, peak in _ascents_to_valley(band, q):
                ok = (outgoing_arrow is None or not path
                      or not alg.path_contains_relation((path[-1], outgoing_arrow)))
                if ok:
                    options.append((path, peak))
        if not options:
            raise TheoremCounterexample(
                f"no relation-free ascent into {vertex} in band {band}"
            )
        return sorted(options)[0]

    chunks: list[tuple[str, ...]] = []
    used_simples: set[str] = set()
    remaining = list(W)
    while remaining:
        w1 = remaining[0]
        tops = band_top_socle(w1)[0]
        a1 = min(tops, key=lambda v: alg.vertex_index[v])
        chain = [a1]
        # forward: follow relation-free descents toward successive socles.
        # Bands in W never repeat a simple in top and socle, so the band
        # just used is excluded automatically.
        path, nxt = pick_descent(w1, a1, None)
        onward_first = path[0] if path else None
        last_arrow = path[-1] if path else None
        while True:
            if nxt in chain:
                raise TheoremCounterexample(
                    f"simple {nxt} repeats along the chain {chain}"
                )
            chain.append(nxt)
            cands = [w for w in remaining if nxt in band_top_socle(w)[0]]
            if not cands:
                break
            path, nxt = pick_descent(cands[0], nxt, last_arrow)
            last_arrow = path[-1] if path else None
        # backward: while the chain's first simple sits in the socle of a
        # band, ascend to that band's top with a relation-free junction.
        entry = chain[0]
        while True:
            cands = [w for w in remaining if entry in band_top_socle(w)[1]]
            if not cands:
                break
            path, peak = pick_ascent(cands[0], entry, onward_first)
            if peak in chain:
                raise TheoremCounterexample(
                    f"simple {peak} repeats along the chain {chain}"
                )
            chain.insert(0, peak)
            entry = peak
            onward_first = path[0] if path else None
        ordered_chunk = tuple(reversed(chain))
        if set(ordered_chunk) & used_simples:
            raise TheoremCounterexample(
                f"chains overlap on {set(ordered_chunk) & used_simples}"
            )
        chunks.append(ordered_chunk)
        used_simples.update(ordered_chunk)
        touched = set()
        for w in remaining:
            t, s = band_top_socle(w)
            if (set(t) | set(s)) & used_simples:
                touched.add(w.key())
        remaining = [w for w in remaining if w.key() not in touched]

    rest = tuple(v for v in alg.vertices if v not in used_simples)
    order = tuple(v for chunk in chunks for v in chunk) + rest
    return GentleOrderResult(tuple(chunks), order)
