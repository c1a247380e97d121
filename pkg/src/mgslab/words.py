"""Walks, strings, and bands over an algebra presentation.

A walk is a composable word in arrows and inverse arrows.  A string is a
walk with no immediate backtracking such that neither the walk nor its
inverse contains a relation as a directed subpath.  Bands are primitive
cyclic strings all of whose powers are strings; they are identified up to
rotation and inversion.  All functions here are pure and walks are
immutable, so results can be shared across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .algebra import AlgebraPresentation


class WalkError(Exception):
    """Malformed walk: unknown arrow, broken composability, or bad literal."""


@dataclass(frozen=True)
class Letter:
    arrow: str
    sign: int  # +1 direct, -1 inverse

    def inverse(self) -> "Letter":
        return Letter(self.arrow, -self.sign)

    @property
    def key(self) -> tuple[str, int]:
        # direct letters sort before inverse letters of the same arrow
        return (self.arrow, 0 if self.sign > 0 else 1)

    def __str__(self) -> str:
        return self.arrow + ("-" if self.sign < 0 else "")


@dataclass(frozen=True)
class Walk:
    """A composable word together with its visited vertices.

    ``vertices`` always has one more entry than ``letters``; a length-0 walk
    is the trivial path e_i at ``vertices[0]``.
    """

    letters: tuple[Letter, ...]
    vertices: tuple[str, ...]

    @property
    def length(self) -> int:
        return len(self.letters)

    @property
    def source(self) -> str:
        return self.vertices[0]

    @property
    def target(self) -> str:
        return self.vertices[-1]

    @property
    def is_cyclic(self) -> bool:
        return self.length >= 1 and self.source == self.target

    def inverse(self) -> "Walk":
        return Walk(
            tuple(l.inverse() for l in reversed(self.letters)),
            tuple(reversed(self.vertices)),
        )

    def sub(self, i: int, j: int) -> "Walk":
        """Letters i..j inclusive, 1-based; j = i-1 gives e at position i."""
        if j < i:
            return Walk((), (self.vertices[i - 1],))
        return Walk(self.letters[i - 1 : j], self.vertices[i - 1 : j + 1])

    def concat(self, other: "Walk") -> "Walk":
        if self.target != other.source:
            raise WalkError(f"cannot compose: ends at {self.target}, next starts at {other.source}")
        return Walk(self.letters + other.letters, self.vertices + other.vertices[1:])

    def power(self, k: int) -> "Walk":
        if k < 1:
            raise WalkError("power requires k >= 1")
        out = self
        for _ in range(k - 1):
            out = out.concat(self)
        return out

    def rotate(self, shift: int) -> "Walk":
        """Cyclic rotation starting at letter shift+1; only for cyclic walks."""
        if not self.is_cyclic:
            raise WalkError("rotation needs a cyclic walk")
        d = self.length
        shift %= d
        letters = self.letters[shift:] + self.letters[:shift]
        verts = self.vertices[shift:-1] + self.vertices[: shift + 1]
        return Walk(letters, verts)

    def key(self) -> tuple:
        if self.letters:
            return (self.length, tuple(l.key for l in self.letters))
        return (0, (self.vertices[0],))

    def __str__(self) -> str:
        if not self.letters:
            return f"e:{self.vertices[0]}"
        return " ".join(str(l) for l in self.letters)


def letter_endpoints(alg: AlgebraPresentation, letter: Letter) -> tuple[str, str]:
    a = alg.arrow_map.get(letter.arrow)
    if a is None:
        raise WalkError(f"unknown arrow {letter.arrow!r}")
    return (a.source, a.target) if letter.sign > 0 else (a.target, a.source)


def make_walk(alg: AlgebraPresentation, letters: Sequence[Letter], base_vertex: str | None = None) -> Walk:
    if not letters:
        if base_vertex is None:
            raise WalkError("length-0 walk needs a base vertex")
        if base_vertex not in alg.vertex_index:
            raise WalkError(f"unknown vertex {base_vertex!r}")
        return Walk((), (base_vertex,))
    verts = []
    prev_end: str | None = None
    for l in letters:
        s, t = letter_endpoints(alg, l)
        if prev_end is not None and s != prev_end:
            raise WalkError(f"letters do not compose at {l}")
        if prev_end is None:
            verts.append(s)
        verts.append(t)
        prev_end = t
    return Walk(tuple(letters), tuple(verts))


def parse_walk(alg: AlgebraPresentation, text: str) -> Walk:
    """Parse the walk literal syntax: ``g2 b2 a2- g2 b1-`` or ``e:<vertex>``."""
    text = text.strip()
    if not text:
        raise WalkError("empty walk literal")
    if text.startswith("e:"):
        return make_walk(alg, (), base_vertex=text[2:].strip())
    letters = []
    for tok in text.split():
        if tok.endswith("-"):
            letters.append(Letter(tok[:-1], -1))
        else:
            letters.append(Letter(tok, +1))
    return make_walk(alg, letters)


def _directed_runs(w: Walk) -> Iterator[tuple[int, list[str]]]:
    """Maximal same-sign runs as (sign, arrow path in arrow direction)."""
    i = 0
    while i < w.length:
        sign = w.letters[i].sign
        j = i
        while j + 1 < w.length and w.letters[j + 1].sign == sign:
            j += 1
        arrows = [l.arrow for l in w.letters[i : j + 1]]
        if sign < 0:
            arrows.reverse()
        yield sign, arrows
        i = j + 1


def is_string(alg: AlgebraPresentation, w: Walk) -> bool:
    """Conditions (1) and (2): no backtracking and no relation subpath in
    the walk or its inverse.  Length-0 walks are always strings."""
    for l in w.letters:
        if l.arrow not in alg.arrow_map:
            raise WalkError(f"unknown arrow {l.arrow!r}")
    if w.length == 0:
        return True
    for a, b in zip(w.letters, w.letters[1:]):
        if b == a.inverse():
            return False
    for _sign, arrows in _directed_runs(w):
        if alg.path_contains_relation(arrows):
            return False
    return True


def canonical_string(w: Walk) -> Walk:
    """Representative of the class {w, w^-1}: the smaller under the letter
    order keyed by (arrow name, sign) with direct before inverse."""
    inv = w.inverse()
    return w if w.key() <= inv.key() else inv


def _extensions(alg: AlgebraPresentation, w: Walk) -> Iterator[Letter]:
    """Letters that extend a string on the right to a longer string."""
    end = w.target
    last = w.letters[-1] if w.letters else None
    for a in alg.outgoing[end]:
        cand = Letter(a.name, +1)
        if last is not None and cand == last.inverse():
            continue
        yield cand
    for a in alg.incoming[end]:
        cand = Letter(a.name, -1)
        if last is not None and cand == last.inverse():
            continue
        yield cand


def _extended_is_string(alg: AlgebraPresentation, w: Walk, letter: Letter) -> Walk | None:
    """Append one letter, checking only the suffix runs for new relations."""
    new = Walk(w.letters + (letter,), w.vertices + (letter_endpoints(alg, letter)[1],))
    sign = letter.sign
    i = new.length - 1
    while i - 1 >= 0 and new.letters[i - 1].sign == sign:
        i -= 1
    arrows = [l.arrow for l in new.letters[i:]]
    if sign < 0:
        arrows.reverse()
        if alg.path_contains_relation(arrows):
            return None
    else:
        if alg.path_suffix_hits_relation(arrows):
            return None
    return new


@lru_cache(maxsize=None)
def _all_string_walks(alg: AlgebraPresentation, max_len: int) -> tuple[Walk, ...]:
    """Every string walk (both orientations) of length <= max_len."""
    out: list[Walk] = [Walk((), (v,)) for v in alg.vertices]
    frontier: list[Walk] = []
    for a in alg.arrows:
        for sign in (+1, -1):
            frontier.append(make_walk(alg, (Letter(a.name, sign),)))
    while frontier:
        out.extend(frontier)
        if frontier[0].length >= max_len:
            break
        nxt: list[Walk] = []
        for w in frontier:
            for letter in _extensions(alg, w):
                grown = _extended_is_string(alg, w, letter)
                if grown is not None:
                    nxt.append(grown)
        frontier = nxt
    return tuple(w for w in out if w.length <= max_len)


@lru_cache(maxsize=None)
def enumerate_strings(alg: AlgebraPresentation, max_len: int) -> tuple[Walk, ...]:
    """All strings of length <= max_len, one canonical representative per
    {w, w^-1} class, ordered by length then canonical word."""
    seen = {}
    for w in _all_string_walks(alg, max_len):
        c = canonical_string(w)
        seen[c.key()] = c
    return tuple(sorted(seen.values(), key=Walk.key))


def is_primitive(w: Walk) -> bool:
    d = w.length
    for p in range(1, d):
        if d % p == 0 and w.letters == w.letters[:p] * (d // p):
            return False
    return True


def is_band(alg: AlgebraPresentation, w: Walk) -> bool:
    """Cyclic, primitive, and w^K is a string for K large enough that any
    relation window of w^infinity fits inside K consecutive copies."""
    if w.length < 1 or not is_string(alg, w):
        return False
    if not w.is_cyclic:
        return False
    if not is_primitive(w):
        return False
    K = max(2, -(-alg.max_relation_length // w.length) + 1)
    return is_string(alg, w.power(K))


def rotations_and_inversions(w: Walk) -> list[Walk]:
    """All rotations of w and of w^-1, deduplicated, for a cyclic walk."""
    out = {}
    for base in (w, w.inverse()):
        for s in range(base.length):
            r = base.rotate(s)
            out[r.key()] = r
    return list(out.values())


def canonical_rotation(w: Walk) -> Walk:
    """Lexicographically minimal walk over all rotations of w and w^-1."""
    return min(rotations_and_inversions(w), key=Walk.key)


def band_equivalent(w: Walk, other: Walk) -> bool:
    """w ~ w': equal up to cyclic permutation and inversion."""
    if w.length != other.length:
        return False
    return canonical_rotation(w).key() == canonical_rotation(other).key()


@dataclass(frozen=True)
class BandPool:
    """Bands enumerated to a stated length bound."""

    bands: tuple[Walk, ...]
    max_length: int


@dataclass(frozen=True)
class BandRecord:
    walk: Walk
    canonical: Walk
    is_minimal: bool


def _occurs_in(haystack: tuple[Letter, ...], needle: tuple[Letter, ...]) -> bool:
    n, m = len(haystack), len(needle)
    if m > n:
        return False
    return any(haystack[i : i + m] == needle for i in range(n - m + 1))


def is_minimal_band(alg: AlgebraPresentation, w: Walk, pool: BandPool) -> bool:
    """No rotation/inversion of w contains v^k, k >= 2, for a shorter band v.

    The pool must cover all bands of length <= floor(len(w)/2); any power
    occurring in a rotation of w shows up in the doubled word w w.
    """
    needed = w.length // 2
    if pool.max_length < needed:
        raise ValueError(
            f"band pool bound {pool.max_length} is too small, need {needed}"
        )
    doubled = w.power(2).letters
    for v in pool.bands:
        lv = v.length
        if lv == 0 or lv > needed:
            continue
        if band_equivalent(v, w):
            continue
        for u in rotations_and_inversions(v):
            k = 2
            while k * lv <= w.length:
                if _occurs_in(doubled, u.power(k).letters):
                    return False
                k += 1
    return True


@lru_cache(maxsize=None)
def enumerate_bands(alg: AlgebraPresentation, max_len: int) -> tuple[BandRecord, ...]:
    """All bands of length <= max_len, one per rotation/inversion class,
    each with its minimality flag, in deterministic order."""
    classes: dict[tuple, Walk] = {}
    for w in _all_string_walks(alg, max_len):
        if w.length < 1 or not w.is_cyclic:
            continue
        if not is_band(alg, w):
            continue
        c = canonical_rotation(w)
        classes.setdefault(c.key(), c)
    ordered = sorted(classes.values(), key=Walk.key)
    records = []
    for w in ordered:
        pool = BandPool(
            tuple(b for b in ordered if b.length <= w.length // 2), w.length // 2
        )
        records.append(BandRecord(w, w, is_minimal_band(alg, w, pool)))
    return tuple(records)


def band_pool(alg: AlgebraPresentation, max_len: int) -> BandPool:
    return BandPool(tuple(r.canonical for r in enumerate_bands(alg, max_len)), max_len)


@dataclass(frozen=True)
class Occurrence:
    """A located substring of a host walk.

    Letters start..end (1-based, inclusive) with end = start-1 for a
    length-0 occurrence at basis position start.  The boundary letters are
    the host letters just outside the occurrence, when present; the quotient
    and submodule flags depend only on their signs.
    """

    host: Walk
    start: int
    end: int
    orientation: str  # "forward" | "reverse"

    @property
    def word(self) -> Walk:
        return self.host.sub(self.start, self.end)

    @property
    def left_letter(self) -> Letter | None:
        return self.host.letters[self.start - 2] if self.start >= 2 else None

    @property
    def right_letter(self) -> Letter | None:
        return self.host.letters[self.end] if self.end < self.host.length else None

    @property
    def is_quotient_occurrence(self) -> bool:
        left_ok = self.left_letter is None or self.left_letter.sign == -1
        right_ok = self.right_letter is None or self.right_letter.sign == +1
        return left_ok and right_ok

    @property
    def is_submodule_occurrence(self) -> bool:
        left_ok = self.left_letter is None or self.left_letter.sign == +1
        right_ok = self.right_letter is None or self.right_letter.sign == -1
        return left_ok and right_ok


def substring_occurrences(gamma: Walk, u: Walk) -> list[Occurrence]:
    """All located occurrences of u or u^-1 inside gamma; a length-0 u
    occurs once at each visited copy of its vertex."""
    out = []
    if u.length == 0:
        for p, v in enumerate(gamma.vertices, start=1):
            if v == u.source:
                out.append(Occurrence(gamma, p, p - 1, "forward"))
        return out
    target = u.letters
    rev = u.inverse().letters
    d = gamma.length
    for i in range(1, d - u.length + 2):
        window = gamma.letters[i - 1 : i - 1 + u.length]
        if window == target:
            out.append(Occurrence(gamma, i, i + u.length - 1, "forward"))
        elif window == rev:
            out.append(Occurrence(gamma, i, i + u.length - 1, "reverse"))
    return out


def all_occurrences(w: Walk) -> list[Occurrence]:
    """Every located substring occurrence of w, including all length-0
    positions, in position order."""
    out = []
    d = w.length
    for p in range(1, d + 2):
        out.append(Occurrence(w, p, p - 1, "forward"))
    for i in range(1, d + 1):
        for j in range(i, d + 1):
            out.append(Occurrence(w, i, j, "forward"))
    return out


def supported_on(gamma: Walk, w: Walk, k: int) -> bool:
    """True iff u^k is a contiguous substring of gamma for some u ~ w."""
    if k < 1:
        raise ValueError("support power must be >= 1")
    need = k * w.length
    if need > gamma.length:
        return False
    for u in rotations_and_inversions(w):
        if _occurs_in(gamma.letters, u.power(k).letters):
            return True
    return False


def _periodic_factor(word: tuple[Letter, ...], w: Walk) -> Walk | None:
    """If word is a factor of u^N for some rotation u of w or w^-1, return
    that rotation (phase aligned with the first letter of word)."""
    for u in rotations_and_inversions(w):
        period = u.letters
        n = len(period)
        if all(word[i] == period[i % n] for i in range(len(word))):
            return u
    return None


@dataclass(frozen=True)
class MaximalWSubstring:
    occurrence: Occurrence
    band: Walk  # the rotation u ~ w aligned with the occurrence
    power: int  # k in epsilon = u^k v
    remainder: Walk  # v, a proper prefix of u

    @property
    def word(self) -> Walk:
        return self.occurrence.word


def maximal_w_substrings(gamma: Walk, w: Walk) -> list[MaximalWSubstring]:
    """Occurrences of factors of w^N inside gamma that are supported on w
    and inextensible within gamma, each with its u^k v factorization."""
    out = []
    d = gamma.length
    lw = w.length
    for i in range(1, d + 2 - lw):
        for j in range(i + lw - 1, d + 1):
            word = gamma.letters[i - 1 : j]
            u = _periodic_factor(word, w)
            if u is None:
                continue
            if i > 1 and _periodic_factor(gamma.letters[i - 2 : j], w) is not None:
                continue
            if j < d and _periodic_factor(gamma.letters[i - 1 : j + 1], w) is not None:
                continue
            occ = Occurrence(gamma, i, j, "forward")
            k = len(word) // lw
            remainder = occ.word.sub(k * lw + 1, len(word))
            out.append(MaximalWSubstring(occ, u, k, remainder))
    return out


def is_directed(w: Walk) -> bool:
    """All letters share one sign; undefined (rejected) for length 0."""
    if w.length == 0:
        raise ValueError("directedness is undefined for length-0 walks")
    return len({l.sign for l in w.letters}) == 1
