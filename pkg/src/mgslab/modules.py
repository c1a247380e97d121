"""String and band modules, tops and socles, and the substring Hom calculus.

The Hom dimension between two string modules is counted combinatorially:
located substring occurrences that are quotient-shaped in the source and
submodule-shaped in the target, matched up to inversion of the common word.
This count is validated wholesale against the linear-algebra oracle; any
discrepancy is a build failure, not a tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra import AlgebraPresentation
from .words import (
    Occurrence,
    Walk,
    all_occurrences,
    band_pool,
    canonical_string,
    enumerate_strings,
    is_band,
    is_string,
    supported_on,
)


class ModuleError(Exception):
    pass


@dataclass(frozen=True)
class StringModuleRep:
    """M(w): one basis vector per visited vertex position, arrows acting
    along the letters of the walk."""

    alg: AlgebraPresentation
    walk: Walk  # canonical representative
    dim_vector: tuple[tuple[str, int], ...]
    # per arrow: transitions (from_position, to_position), positions 1-based
    arrow_actions: tuple[tuple[str, tuple[tuple[int, int], ...]], ...]

    def dims(self) -> dict[str, int]:
        return dict(self.dim_vector)

    @property
    def total_dim(self) -> int:
        return sum(d for _, d in self.dim_vector)


@dataclass(frozen=True)
class BandModuleRep:
    """M(w, lambda, k): k copies of each visited position, identity blocks
    along the band and one Jordan block J_k(lambda^eps) on the last letter."""

    alg: AlgebraPresentation
    walk: Walk  # the band in the rotation it was given
    lam: Fraction
    k: int
    dim_vector: tuple[tuple[str, int], ...]

    def dims(self) -> dict[str, int]:
        return dict(self.dim_vector)


def string_module(alg: AlgebraPresentation, w: Walk) -> StringModuleRep:
    if not is_string(alg, w):
        raise ModuleError(f"walk {w} is not a string")
    w = canonical_string(w)
    dims = {v: 0 for v in alg.vertices}
    for v in w.vertices:
        dims[v] += 1
    actions: dict[str, list[tuple[int, int]]] = {}
    for i, letter in enumerate(w.letters, start=1):
        if letter.sign > 0:
            actions.setdefault(letter.arrow, []).append((i, i + 1))
        else:
            actions.setdefault(letter.arrow, []).append((i + 1, i))
    return StringModuleRep(
        alg,
        w,
        tuple((v, dims[v]) for v in alg.vertices),
        tuple(sorted((a, tuple(sorted(ts))) for a, ts in actions.items())),
    )


def band_module(alg: AlgebraPresentation, w: Walk, lam: Fraction, k: int) -> BandModuleRep:
    lam = Fraction(lam)
    if lam == 0:
        raise ModuleError("band module parameter lambda must be nonzero")
    if k < 1:
        raise ModuleError("band module parameter k must be >= 1")
    if not is_band(alg, w):
        raise ModuleError(f"walk {w} is not a band")
    visits = {v: 0 for v in alg.vertices}
    for v in w.vertices[:-1]:
        visits[v] += 1
    return BandModuleRep(
        alg, w, lam, k, tuple((v, k * visits[v]) for v in alg.vertices)
    )


def occurrences_with_flags(w: Walk) -> list[Occurrence]:
    """Every located substring occurrence of w with quotient/submodule flags
    (the flags are properties of the occurrence boundaries)."""
    return all_occurrences(w)


def top_socle(M: StringModuleRep) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """Simple tops sit at peaks of the diagram, socle simples at valleys."""
    w = M.walk
    d = w.length
    top, socle = [], []
    for p in range(1, d + 2):
        left = w.letters[p - 2] if p >= 2 else None
        right = w.letters[p - 1] if p <= d else None
        if (left is None or left.sign == -1) and (right is None or right.sign == +1):
            top.append(w.vertices[p - 1])
        if (left is None or left.sign == +1) and (right is None or right.sign == -1):
            socle.append(w.vertices[p - 1])
    return tuple(sorted(top)), tuple(sorted(socle))


def band_top_socle(w: Walk) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """Top and socle of M(w, lambda, 1), read from the band's cyclic peaks
    and valleys; independent of lambda."""
    d = w.length
    top, socle = [], []
    for p in range(d):
        prev = w.letters[(p - 1) % d]
        cur = w.letters[p]
        if prev.sign == -1 and cur.sign == +1:
            top.append(w.vertices[p])
        if prev.sign == +1 and cur.sign == -1:
            socle.append(w.vertices[p])
    return tuple(sorted(top)), tuple(sorted(socle))


@lru_cache(maxsize=None)
def _quotient_class_counts(w: Walk) -> dict:
    counts: dict = {}
    for occ in all_occurrences(w):
        if occ.is_quotient_occurrence:
            key = canonical_string(occ.word).key()
            counts[key] = counts.get(key, 0) + 1
    return counts


@lru_cache(maxsize=None)
def _submodule_class_counts(w: Walk) -> dict:
    counts: dict = {}
    for occ in all_occurrences(w):
        if occ.is_submodule_occurrence:
            key = canonical_string(occ.word).key()
            counts[key] = counts.get(key, 0) + 1
    return counts


@lru_cache(maxsize=None)
def hom_dim(alg: AlgebraPresentation, w: Walk, other: Walk) -> int:
    """dim Hom(M(w), M(other)) by the substring calculus.

    Counts pairs of a quotient occurrence in w and a submodule occurrence in
    other carrying the same word up to inversion; a length-0 word matches in
    a single orientation.
    """
    if not is_string(alg, w) or not is_string(alg, other):
        raise ModuleError("hom_dim requires strings")
    q = _quotient_class_counts(canonical_string(w))
    s = _submodule_class_counts(canonical_string(other))
    if len(s) < len(q):
        return sum(q.get(key, 0) * n for key, n in s.items())
    return sum(n * s.get(key, 0) for key, n in q.items())


def is_brick(alg: AlgebraPresentation, w: Walk) -> bool:
    """Over an algebraically closed field End is a division algebra iff it
    is one dimensional, so a string module is a brick iff hom_dim(w, w) = 1."""
    return hom_dim(alg, w, w) == 1


@dataclass(frozen=True)
class BrickInfo:
    walk: Walk
    band_square_supports: tuple[Walk, ...]  # bands w with the brick supported on w^2


@lru_cache(maxsize=None)
def enumerate_bricks(alg: AlgebraPresentation, max_len: int) -> tuple[BrickInfo, ...]:
    """All string bricks of length <= max_len in deterministic order, each
    annotated with the bands (of length <= max_len//2) whose square
    supports it."""
    from .concurrency import pmap

    pool = band_pool(alg, max_len // 2)
    strings = enumerate_strings(alg, max_len)
    brickhood = pmap(lambda w: is_brick(alg, w), strings)
    out = []
    for w, ok in zip(strings, brickhood):
        if not ok:
            continue
        squares = tuple(b for b in pool.bands if supported_on(w, b, 2))
        out.append(BrickInfo(w, squares))
    return tuple(out)
