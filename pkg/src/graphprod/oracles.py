"""Brute-force oracles used by the test suite and the ``verify`` command.

Each oracle decides its question by exhaustive enumeration at desk scale and
shares no code with the algorithm it checks: congruence closure by explicit
letter swaps, divisibility by explicit right multiplication, orthogonality by
explicit search for common multiples, multiplicative independence by
comparing products directly.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional

from . import _kernels
from .graph import Graph
from .monoids import Kind
from .traces import Syllable, Trace, from_syllables, right_lcm


# -- graphs --------------------------------------------------------------------

def union_find_complement_components(g: Graph) -> list[frozenset]:
    parent = {v: v for v in g.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in itertools.combinations(g.vertices, 2):
        if not g.adjacent(u, v):
            parent[find(u)] = find(v)
    groups: dict = {}
    for v in g.vertices:
        groups.setdefault(find(v), set()).add(v)
    return sorted((frozenset(s) for s in groups.values()), key=min)


# -- letter model ----------------------------------------------------------------

class LetterModel:
    """A graph product with trivial units viewed as a trace monoid over atoms.

    Letters are ``(vertex, atom_index)``. Two letters commute iff their
    vertices are adjacent, or they are distinct atoms of one free abelian
    vertex monoid.
    """

    def __init__(self, g: Graph):
        self.g = g
        letters = []
        for v in g.vertices:
            spec = g.monoid(v)
            if spec.kind not in (Kind.NAT, Kind.FREE, Kind.FREE_ABELIAN):
                raise ValueError(f"letter model needs trivial units, {v} carries {spec}")
            n = 1 if spec.kind is Kind.NAT else spec.param
            letters.extend((v, i) for i in range(n))
        self.letters = letters
        self.code = {x: i for i, x in enumerate(letters)}
        masks = []
        for v, i in letters:
            m = 0
            for j, (w, k) in enumerate(letters):
                if (v != w and g.adjacent(v, w)) or (
                    v == w and i != k and g.monoid(v).kind is Kind.FREE_ABELIAN
                ):
                    m |= 1 << j
            masks.append(m)
        self.masks = tuple(masks)

    def commute(self, a: int, b: int) -> bool:
        return bool(self.masks[a] >> b & 1)

    def word(self, t: Trace) -> tuple:
        out = []
        for syl in t.syllables:
            spec = syl.element.spec
            p = syl.element.payload
            if spec.kind is Kind.NAT:
                out.extend([self.code[(syl.vertex, 0)]] * p)
            elif spec.kind is Kind.FREE:
                out.extend(self.code[(syl.vertex, spec.letters.index(c))] for c in p)
            else:
                for i, n in enumerate(p):
                    out.extend([self.code[(syl.vertex, i)]] * n)
        return tuple(out)

    def trace(self, word: Iterable[int]) -> Trace:
        syls = []
        for a in word:
            v, i = self.letters[a]
            spec = self.g.monoid(v)
            if spec.kind is Kind.NAT:
                el = spec.element(1)
            elif spec.kind is Kind.FREE:
                el = spec.element(spec.letters[i])
            else:
                el = spec.element(tuple(int(j == i) for j in range(spec.param)))
            syls.append(Syllable(v, el))
        return from_syllables(self.g, syls)

    def normal(self, word) -> tuple:
        return _kernels.normal_word(tuple(word), self.masks)

    def closure(self, word) -> frozenset:
        """All words reachable from ``word`` by swapping adjacent commuting letters."""
        word = tuple(word)
        seen = {word}
        queue = deque([word])
        while queue:
            w = queue.popleft()
            for i in range(len(w) - 1):
                if self.commute(w[i], w[i + 1]):
                    u = w[:i] + (w[i + 1], w[i]) + w[i + 2:]
                    if u not in seen:
                        seen.add(u)
                        queue.append(u)
        return frozenset(seen)

    def levels(self, max_len: int) -> list[set]:
        """``levels[k]`` = normal words of length k."""
        out = [{()}]
        for _ in range(max_len):
            nxt = set()
            for w in out[-1]:
                for a in range(len(self.letters)):
                    nxt.add(self.normal(w + (a,)))
            out.append(nxt)
        return out


# -- normal forms ----------------------------------------------------------------

@dataclass
class OracleStats:
    cases: int = 0
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def normal_form_oracle(g: Graph, max_len: int = 4) -> OracleStats:
    """Compare normal forms with congruence closure on all words up to ``max_len``."""
    model = LetterModel(g)
    stats = OracleStats()
    n = len(model.letters)
    by_class: dict = {}
    by_trace: dict = {}
    for k in range(max_len + 1):
        for word in itertools.product(range(n), repeat=k):
            stats.cases += 1
            cls = model.closure(word)
            t = model.trace(word)
            if model.word(t) not in cls:
                stats.mismatches.append(("form not in class", word, t.literal()))
            by_class.setdefault(min(cls), set()).add(t)
            by_trace.setdefault(t, set()).add(min(cls))
    for key, ts in by_class.items():
        if len(ts) != 1:
            stats.mismatches.append(("class splits", key, sorted(x.literal() for x in ts)))
    for t, keys in by_trace.items():
        if len(keys) != 1:
            stats.mismatches.append(("trace merges classes", t.literal(), sorted(keys)))
    return stats


# -- least common multiples ------------------------------------------------------

def lcm_oracle(g: Graph, max_pair: int = 3, max_common: int = 6) -> OracleStats:
    """Check ``right_lcm`` against exhaustive common-multiple search.

    Pairs are all traces of atom length at most ``max_pair``. Common multiples
    are searched up to atom length ``max_common``; the least one must divide
    every common multiple found within two atoms of it.
    """
    model = LetterModel(g)
    levels = model.levels(max_common)
    upto = [set() for _ in range(max_common + 1)]
    acc: set = set()
    for k in range(max_common + 1):
        acc |= levels[k]
        upto[k] = set(acc)

    cache: dict = {}

    def multiples(w) -> frozenset:
        if w not in cache:
            room = max_common - len(w)
            cache[w] = frozenset(model.normal(w + r) for r in upto[room]) if room >= 0 else frozenset()
        return cache[w]

    pool = sorted(upto[max_pair], key=lambda w: (len(w), w))
    stats = OracleStats()
    for i, s in enumerate(pool):
        ms = multiples(s)
        ts_ = model.trace(s)
        for t in pool[i:]:
            stats.cases += 1
            common = ms & multiples(t)
            got = right_lcm(ts_, model.trace(t))
            if not common:
                if got.exists:
                    stats.mismatches.append(("orthogonal by search", s, t, got.lcm.literal()))
                continue
            m0 = min(common, key=lambda w: (len(w), w))
            mm = multiples(m0)
            bad = [w for w in common if len(w) <= len(m0) + 2 and w not in mm]
            if bad:
                stats.mismatches.append(("no least common multiple", s, t, m0, bad[:3]))
            if got.orthogonal:
                stats.mismatches.append(("common multiple exists", s, t, m0))
            elif model.word(got.lcm) != m0:
                stats.mismatches.append(("lcm differs", s, t, model.word(got.lcm), m0))
    return stats


# -- orthogonality / core / divisibility by search ----------------------------

def divides_by_search(s: Trace, t: Trace, universe: Iterable[Trace]) -> bool:
    return any(s * r == t for r in universe)


def has_common_multiple(s: Trace, t: Trace, universe: list[Trace]) -> bool:
    ms = {s * r for r in universe}
    return any(t * r in ms for r in universe)


def core_by_definition(s: Trace, universe: Iterable[Trace], multipliers: Optional[list[Trace]] = None) -> bool:
    """s is core iff it has a common multiple with every element of ``universe``.

    A common multiple of s and t is searched as ``s * r`` divisible by t, with r
    ranging over ``multipliers`` (default: the universe itself). When the
    multipliers contain every r with atom length at most that of t, this is
    exact for unit-free vertex monoids.
    """
    from .traces import left_divides

    universe = list(universe)
    mults = [s * r for r in (universe if multipliers is None else multipliers)]
    for t in universe:
        if left_divides(s, t) or left_divides(t, s):
            continue
        if not any(left_divides(t, x) for x in mults):
            return False
    return True


def core_related_by_search(s: Trace, t: Trace, cores: list[Trace]) -> bool:
    left = {s * a for a in cores}
    return any(t * b in left for b in cores)


# -- multiplicative independence ---------------------------------------------------

def rationally_independent_bruteforce(bases: list[int], max_total: int = 6) -> bool:
    """Distinct exponent vectors with sum <= ``max_total`` give distinct products."""
    seen = set()
    for total in range(max_total + 1):
        for ks in _compositions(total, len(bases)):
            p = math.prod(b**k for b, k in zip(bases, ks))
            if p in seen:
                return False
            seen.add(p)
    return True


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


# -- accurate sets ------------------------------------------------------------------

def accurate_subsets(universe: list[Trace], max_size: int) -> Iterable[tuple[Trace, ...]]:
    """All nonempty pairwise-orthogonal subsets of size at most ``max_size``."""
    from .traces import is_orthogonal

    n = len(universe)
    orth = [[False] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            orth[i][j] = orth[j][i] = is_orthogonal(universe[i], universe[j])

    def extend(chosen: list[int], start: int):
        yield tuple(universe[i] for i in chosen)
        if len(chosen) == max_size:
            return
        for k in range(start, n):
            if all(orth[k][c] for c in chosen):
                yield from extend(chosen + [k], k + 1)

    for i in range(n):
        yield from extend([i], i + 1)


def optional_graph_atlas(n: int) -> Optional[list]:
    """All graphs on ``n`` vertices up to isomorphism (networkx atlas), or None."""
    try:
        import networkx as nx
    except ImportError:
        return None
    return [h for h in nx.graph_atlas_g() if h.number_of_nodes() == n]
