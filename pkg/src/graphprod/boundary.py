"""Foundation sets, accurate sets, refinements and property (AR).

A finite set F is a foundation set when no element is orthogonal to all of
F. Refuting that needs one witness; confirming it needs a reason. Reasons
available here: an invertible member, a cover of every atom, or the exact
prefix-cover criterion when every coconnected component is a free monoid or
a single left reversible vertex. Anything else is bounded search, and a
bounded search that finds nothing says UNKNOWN.
"""

from __future__ import annotations

import enum
import functools
import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .errors import PreconditionViolation, WitnessFailure
from .graph import (
    BlockingPath,
    Graph,
    blocking_path,
    complement_bfs,
    induced_subgraph,
    is_coconnected,
    verify_blocking_path,
)
from .monoids import Kind, VertexElement, monoid_flags, v_is_invertible, v_lcm
from .traces import (
    Syllable,
    Trace,
    _remove,
    atoms,
    back_accessible,
    from_syllables,
    identity,
    is_invertible,
    left_divides,
    lift,
    multiply,
    product,
    rehome,
    restrict,
    right_lcm,
    traces_up_to,
)
from .traces import is_orthogonal as _is_orthogonal

DEFAULT_SEARCH_BUDGET = 50_000


@functools.lru_cache(maxsize=1 << 18)
def orthogonal(s: Trace, t: Trace) -> bool:
    """Memoised orthogonality; traces are immutable and hashable."""
    return _is_orthogonal(s, t)


# -- types ---------------------------------------------------------------------

@dataclass(frozen=True)
class FoundationCandidate:
    graph: Graph
    elements: tuple[Trace, ...]

    @classmethod
    def of(cls, traces: Iterable[Trace], graph: Optional[Graph] = None) -> "FoundationCandidate":
        out: list[Trace] = []
        for t in traces:
            if graph is None:
                graph = t.graph
            elif t.graph != graph:
                raise PreconditionViolation("candidate elements live in different graph products")
            if t not in out:
                out.append(t)
        if graph is None or not out:
            raise PreconditionViolation("a foundation candidate needs at least one element")
        return cls(graph, tuple(out))

    def __iter__(self) -> Iterator[Trace]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def literals(self) -> list[str]:
        return [t.literal() for t in self.elements]

    def total_length(self) -> int:
        return sum(len(t) for t in self.elements)


def _candidate(f) -> FoundationCandidate:
    return f if isinstance(f, FoundationCandidate) else FoundationCandidate.of(f)


class Status(enum.Enum):
    FOUNDATION = "FOUNDATION"
    NOT_FOUNDATION = "NOT_FOUNDATION"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class FoundationVerdict:
    status: Status
    candidate: FoundationCandidate
    witness: Optional[Trace] = None
    bound: Optional[int] = None
    reason: str = ""

    def __post_init__(self):
        if self.status is Status.NOT_FOUNDATION:
            if self.witness is None:
                raise WitnessFailure("NOT_FOUNDATION needs a witness")
            bad = [f for f in self.candidate if not orthogonal(self.witness, f)]
            if bad:
                raise WitnessFailure(f"witness {self.witness} meets {bad[0]}")

    @property
    def is_foundation(self) -> bool:
        return self.status is Status.FOUNDATION

    def as_dict(self) -> dict:
        d = {"status": self.status.value, "reason": self.reason}
        if self.witness is not None:
            d["witness"] = self.witness.literal()
        if self.status is Status.UNKNOWN:
            d["bound"] = self.bound
        return d


class ArStatus(enum.Enum):
    HAS_AR = "HAS_AR"
    LACKS_AR = "LACKS_AR"
    UNKNOWN = "UNKNOWN"


class ArMethod(enum.Enum):
    CHARACTERIZATION = "CHARACTERIZATION"
    SEARCH = "SEARCH"


@dataclass(frozen=True)
class ArVerdict:
    status: ArStatus
    method: ArMethod
    counterexample: Optional[FoundationCandidate] = None
    reason: str = ""

    def as_dict(self) -> dict:
        d = {"status": self.status.value, "method": self.method.value, "reason": self.reason}
        if self.counterexample is not None:
            d["counterexample"] = self.counterexample.literals()
        return d


@dataclass(frozen=True)
class Refinement:
    refinement: Optional[FoundationCandidate]
    method: str


# -- accuracy --------------------------------------------------------------------

def is_accurate(f) -> bool:
    els = list(_candidate(f))
    return all(orthogonal(a, b) for a, b in itertools.combinations(els, 2))


def default_bound(f) -> int:
    f = _candidate(f)
    return f.total_length() + len(f.graph) + 2


# -- orthogonal witnesses -------------------------------------------------------

def _power(x: VertexElement, j: int) -> VertexElement:
    out = x
    for _ in range(j - 1):
        out = out * x
    return out


def _single(g: Graph, v: str, el: VertexElement) -> Trace:
    return from_syllables(g, [Syllable(v, el)], check=False)


def _path_word(g: Graph, path: Sequence[str]) -> Trace:
    return product(g, [_single(g, w, g.monoid(w).generator()) for w in path])


def construct_orthogonal_witness(f) -> Optional[Trace]:
    """Build a trace orthogonal to every member of ``f`` from a blocking path.

    Returns None when the leading parts of ``f`` already touch every vertex.
    """
    f = _candidate(f)
    g = f.graph
    if len(g) < 2 or not is_coconnected(g):
        raise PreconditionViolation("witness construction needs a coconnected graph with >= 2 vertices")
    if any(is_invertible(x) for x in f):
        raise PreconditionViolation("witness construction needs a candidate without invertible elements")
    if all(g.monoid(v).is_group for v in g.vertices):
        raise PreconditionViolation("every vertex monoid is a group")

    c: set = set()
    for x in f:
        for syl in x.syllables:
            c.add(syl.vertex)
            if not v_is_invertible(syl.element):
                break
    if c == set(g.vertices):
        return None
    path = list(blocking_path(g, c).path)
    if g.monoid(path[-1]).is_group:
        path += complement_bfs(g, path[-1], lambda w: not g.monoid(w).is_group)[1:]
    if not verify_blocking_path(g, BlockingPath(tuple(path), frozenset(c))):
        raise WitnessFailure(f"constructed path {path} does not block {sorted(c)}")
    s = _path_word(g, path)
    bad = [x for x in f if not orthogonal(s, x)]
    if bad:
        raise WitnessFailure(f"constructed {s} is not orthogonal to {bad[0]}")
    return s


def _guided_candidates(g: Graph, f: Sequence[Trace]) -> Iterator[Trace]:
    """Candidate witnesses following the accurate-set refutation on a coconnected graph.

    Two families: ``s r b`` where ``f = s t_v`` has maximal length, ``u`` is a
    neighbour of ``v``, ``r`` a power of the ``u`` generator and ``b`` runs
    along a blocking path for ``{u} | N(u)``; and ``s t r t r`` through an
    isolated vertex.
    """
    reps = len(f) + 1
    longest = max(len(x) for x in f)
    for x in f:
        if len(x) != longest:
            continue
        for j in back_accessible(x):
            s = _remove(x, j)
            for u in sorted(g.neighbours(x.syllables[j].vertex)):
                c = {u} | set(g.neighbours(u))
                if c == set(g.vertices):
                    continue
                b = _path_word(g, blocking_path(g, c).path)
                gen = g.monoid(u).generator()
                for k in range(1, reps + 1):
                    yield multiply(multiply(s, _single(g, u, _power(gen, k))), b)
    isolated = [v for v in g.vertices if not g.neighbours(v)]
    edged = [v for v in g.vertices if g.neighbours(v)]
    non_groups = [v for v in g.vertices if not g.monoid(v).is_group]
    for tv, u, w in itertools.product(isolated, edged, non_groups):
        gu, gt, gw = (g.monoid(y).generator() for y in (u, tv, w))
        for i, k, m in itertools.product(range(reps + 1), range(1, reps + 1), range(1, reps + 1)):
            s = _single(g, u, _power(gu, i)) if i else identity(g)
            t = _single(g, tv, _power(gt, k))
            r = _single(g, w, _power(gw, m))
            yield product(g, [s, t, r, t, r])


def _component_witness(f: FoundationCandidate) -> Optional[tuple[Trace, str]]:
    """A witness supported on one coconnected component, if one is found."""
    g = f.graph
    for comp in g.decomposition.components:
        if len(comp) < 2:
            continue
        parts = [restrict(x, comp) for x in f]
        if any(is_invertible(p) for p in parts):
            continue
        sub = induced_subgraph(g, comp)
        if all(sub.monoid(v).is_group for v in sub.vertices):
            continue
        local = list(dict.fromkeys(rehome(p, sub) for p in parts))
        w = construct_orthogonal_witness(FoundationCandidate(sub, tuple(local)))
        if w is not None:
            return lift(w, g), "blocking-path witness"
        for cand in _guided_candidates(sub, local):
            if all(orthogonal(cand, p) for p in local):
                return lift(cand, g), "guided witness"
    return None


# -- bounded enumeration --------------------------------------------------------

def trace_levels(g: Graph, bound: int, budget: int = DEFAULT_SEARCH_BUDGET) -> Iterator[tuple[int, list[Trace]]]:
    """Yield ``(k, traces of atom length k)`` for k = 0..bound, each level sorted.

    Stops before a level that would push the running total past ``budget``.
    """
    gens = atoms(g)
    seen = {identity(g)}
    level = [identity(g)]
    produced = 1
    yield 0, level
    for k in range(1, bound + 1):
        nxt = []
        for t in level:
            for a in gens:
                u = multiply(t, a)
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        produced += len(nxt)
        if not nxt or produced > budget:
            return
        level = sorted(nxt, key=Trace.sort_key)
        yield k, level


def _search_witness(f: FoundationCandidate, bound: int, budget: int) -> tuple[Optional[Trace], int]:
    """Exhaustive witness search; returns the witness and the last completed level."""
    done = -1
    for k, level in trace_levels(f.graph, bound, budget):
        for t in level:
            if all(orthogonal(t, x) for x in f):
                return t, k
        done = k
    return None, done


# -- free-sum model -----------------------------------------------------------------

class FreeSumModel:
    """A graph product split into free-monoid summands and left reversible vertices.

    A component is free when it is a single free vertex monoid, or an
    edge-free component whose vertices carry N or free monoids (a free
    product of free monoids). It is inert when it is one vertex with a left
    reversible monoid (N, N^d, Z, Z/n): nothing there is orthogonal.
    """

    def __init__(self, g: Graph, free: list[frozenset], inert: list[frozenset]):
        self.g = g
        self.free = free
        self.inert = inert

    @classmethod
    def build(cls, g: Graph) -> Optional["FreeSumModel"]:
        d = g.decomposition
        free, inert = [], []
        for comp, edges in zip(d.components, d.induced_edge_sets):
            kinds = {g.monoid(v).kind for v in comp}
            if len(comp) == 1:
                (free if kinds == {Kind.FREE} else inert).append(comp)
            elif not edges and kinds <= {Kind.NAT, Kind.FREE}:
                free.append(comp)
            else:
                return None
        return cls(g, free, inert)

    def word(self, t: Trace, comp: frozenset) -> tuple:
        out = []
        for syl in t.syllables:
            if syl.vertex not in comp:
                continue
            if syl.element.spec.kind is Kind.NAT:
                out.extend([(syl.vertex, "")] * syl.element.payload)
            else:
                out.extend((syl.vertex, c) for c in syl.element.payload)
        return tuple(out)

    def alphabet(self, comp: frozenset) -> list:
        out = []
        for v in sorted(comp):
            spec = self.g.monoid(v)
            out.extend([(v, "")] if spec.kind is Kind.NAT else [(v, c) for c in spec.letters])
        return out

    def trace(self, words: dict) -> Trace:
        syls = []
        for w in words.values():
            for v, c in w:
                spec = self.g.monoid(v)
                syls.append(Syllable(v, spec.element(1 if spec.kind is Kind.NAT else c)))
        return from_syllables(self.g, syls)

    def _choices(self, comp, words: list[tuple]) -> list[tuple[tuple, frozenset]]:
        """Words for one component paired with the members of F they are comparable to.

        Only prefixes of members and their one-letter exits matter; of those,
        only inclusion-minimal hit sets are kept.
        """
        closure = {w[:k] for w in words for k in range(len(w) + 1)}
        alpha = self.alphabet(comp)
        out: dict = {}
        for p in sorted(closure, key=lambda w: (len(w), w)):
            hits = frozenset(i for i, w in enumerate(words) if w[: len(p)] == p or p[: len(w)] == w)
            out.setdefault(hits, p)
            exits = [a for a in alpha if p + (a,) not in closure]
            if exits:
                below = frozenset(i for i, w in enumerate(words) if p[: len(w)] == w)
                out.setdefault(below, p + (exits[0],))
        minimal = [h for h in out if not any(o < h for o in out)]
        return sorted(((out[h], h) for h in minimal), key=lambda x: (len(x[1]), len(x[0]), x[0]))

    def avoiding_tuple(self, f: Sequence[Trace]) -> Optional[Trace]:
        """A trace orthogonal to every element of ``f``, or None if ``f`` is a foundation set."""
        options = []
        for comp in self.free:
            words = [self.word(x, comp) for x in f]
            if any(words):
                options.append((comp, self._choices(comp, words)))

        def dfs(k: int, alive: frozenset, picked: dict) -> Optional[dict]:
            if not alive:
                return dict(picked)
            if k == len(options):
                return None
            comp, choices = options[k]
            for word, hits in choices:
                picked[comp] = word
                found = dfs(k + 1, alive & hits, picked)
                if found is not None:
                    return found
                del picked[comp]
            return None

        found = dfs(0, frozenset(range(len(f))), {})
        return None if found is None else self.trace(found)

    def complete_code(self, comp, words: list[tuple]) -> list[tuple]:
        """Complete prefix code such that any member comparable to a codeword is its prefix."""
        closure = {w[:k] for w in words for k in range(len(w) + 1)}
        alpha = self.alphabet(comp)
        code = []
        for p in sorted(closure, key=lambda w: (len(w), w)):
            children = [p + (a,) for a in alpha]
            if not any(ch in closure for ch in children):
                code.append(p)
            else:
                code.extend(ch for ch in children if ch not in closure)
        return code

    def refine(self, f: Sequence[Trace]) -> list[Trace]:
        g = self.g
        codes = []
        for comp in self.free:
            words = [self.word(x, comp) for x in f]
            codes.append((comp, self.complete_code(comp, words) if any(words) else [()]))
        tails = []
        for comp in self.inert:
            (v,) = comp
            join = g.monoid(v).identity()
            for x in f:
                part = restrict(x, comp)
                if part.syllables:
                    join = v_lcm(join, part.syllables[0].element).lcm
            tails.append(identity(g) if join.is_identity else _single(g, v, join))
        tail = product(g, tails)
        out = []
        for combo in itertools.product(*(c for _, c in codes)):
            head = self.trace({comp: w for (comp, _), w in zip(codes, combo)})
            out.append(multiply(head, tail))
        return out


# -- cover shortcut -----------------------------------------------------------------

def _atom_cover(f: FoundationCandidate) -> bool:
    """F holds every atom of some coconnected component whose vertices have no units.

    A trace with a nonidentity part in that component starts with one of those
    atoms; a trace with no such part commutes with all of them.
    """
    g = f.graph
    members = set(f.elements)
    for comp in g.decomposition.components:
        vs = sorted(comp)
        if all(monoid_flags(g.monoid(v)).units_trivial for v in vs) and all(a in members for a in atoms(g, vs)):
            return True
    return False


# -- foundation decision -------------------------------------------------------

def is_foundation_set(f, bound: Optional[int] = None, budget: int = DEFAULT_SEARCH_BUDGET) -> FoundationVerdict:
    f = _candidate(f)
    if bound is None:
        bound = default_bound(f)
    if bound < 1:
        raise PreconditionViolation("bound must be at least 1")
    g = f.graph
    if any(is_invertible(x) for x in f):
        return FoundationVerdict(Status.FOUNDATION, f, reason="contains an invertible element")
    if _atom_cover(f):
        return FoundationVerdict(Status.FOUNDATION, f, reason="contains every atom of a unit-free component")
    model = FreeSumModel.build(g)
    if model is not None:
        w = model.avoiding_tuple(f.elements)
        if w is None:
            return FoundationVerdict(Status.FOUNDATION, f, reason="exact prefix-cover criterion")
        return FoundationVerdict(Status.NOT_FOUNDATION, f, witness=w, reason="avoiding tuple of free words")
    found = _component_witness(f)
    if found is not None:
        return FoundationVerdict(Status.NOT_FOUNDATION, f, witness=found[0], reason=found[1])
    w, done = _search_witness(f, bound, budget)
    if w is not None:
        return FoundationVerdict(Status.NOT_FOUNDATION, f, witness=w, reason="exhaustive search")
    return FoundationVerdict(Status.UNKNOWN, f, bound=done, reason=f"no witness with atom length <= {done}")


# -- refinements ------------------------------------------------------------------

def _refines(new: Sequence[Trace], old: FoundationCandidate) -> bool:
    return all(any(left_divides(x, y) for x in old) for y in new)


def refine(f, bound: Optional[int] = None, budget: int = DEFAULT_SEARCH_BUDGET) -> Refinement:
    """Accurate refinement of a foundation set together with the method that produced it."""
    f = _candidate(f)
    if bound is None:
        bound = default_bound(f)
    verdict = is_foundation_set(f, bound, budget)
    if not verdict.is_foundation:
        raise PreconditionViolation(f"not a certified foundation set ({verdict.status.value})")
    g = f.graph
    units = [x for x in f if is_invertible(x)]
    if units:
        return Refinement(FoundationCandidate(g, (units[0],)), "invertible element")
    if is_accurate(f):
        return Refinement(f, "already accurate")
    if len(g) >= 2 and is_coconnected(g) and g.edges:
        # Edged coconnected products have no unit-free accurate foundation set,
        # and every refinement of a unit-free set is unit-free.
        return Refinement(None, "no accurate foundation set without units")
    model = FreeSumModel.build(g)
    if model is not None:
        out = FoundationCandidate.of(model.refine(f.elements), g)
        if not (is_accurate(out) and _refines(out.elements, f)):
            raise WitnessFailure("prefix-code refinement failed its own check")
        if not is_foundation_set(out, budget=budget).is_foundation:
            raise WitnessFailure("prefix-code refinement is not a foundation set")
        return Refinement(out, "complete prefix codes")
    return _greedy_refine(f, bound, budget)


def _greedy_refine(f: FoundationCandidate, bound: int, budget: int) -> Refinement:
    """Grow an accurate subset of F*S, replacing each uncovered witness w by lcm(w, f)."""
    g = f.graph
    chosen: list[Trace] = []
    w = f.elements[0]
    while True:
        step = next((m.lcm for m in (right_lcm(w, x) for x in f) if m.exists), None)
        if step is None or step.atom_length() > bound:
            return Refinement(None, f"no refinement within atom length {bound}")
        chosen.append(step)
        v = is_foundation_set(FoundationCandidate(g, tuple(chosen)), bound, budget)
        if v.is_foundation:
            return Refinement(FoundationCandidate(g, tuple(chosen)), "greedy witness completion")
        if v.status is Status.UNKNOWN:
            return Refinement(None, f"search inconclusive at atom length {v.bound}")
        w = v.witness


def accurate_refinement(f, bound: Optional[int] = None, budget: int = DEFAULT_SEARCH_BUDGET) -> Optional[FoundationCandidate]:
    return refine(f, bound, budget).refinement


# -- property (AR) ---------------------------------------------------------------

def _generator_set(g: Graph, comp: Iterable[str]) -> FoundationCandidate:
    return FoundationCandidate.of([a for a in atoms(g, sorted(comp)) if not is_invertible(a)], g)


def has_property_ar(g: Graph) -> ArVerdict:
    d = g.decomposition
    edged = [i for i in d.i2_indices if d.induced_edge_sets[i]]
    if g.is_raam:
        if not edged:
            return ArVerdict(ArStatus.HAS_AR, ArMethod.CHARACTERIZATION, reason="every coconnected component is edge-free")
        comp = d.components[edged[0]]
        cx = _generator_set(g, comp)
        if not is_foundation_set(cx).is_foundation:
            raise WitnessFailure("generator set of an edged component is not a foundation set")
        return ArVerdict(ArStatus.LACKS_AR, ArMethod.CHARACTERIZATION, cx, reason=f"component {sorted(comp)} has an edge")
    if all(g.monoid(v).is_group for v in g.vertices):
        return ArVerdict(ArStatus.HAS_AR, ArMethod.CHARACTERIZATION, reason="the product is a group")
    for i in edged:
        comp = d.components[i]
        if all(g.monoid(v).is_group for v in comp):
            continue
        sub = induced_subgraph(g, comp)
        if not is_foundation_set(_generator_set(sub, comp)).is_foundation:
            continue
        cx = FoundationCandidate.of([lift(x, g) for x in _generator_set(sub, comp)], g)
        if is_foundation_set(cx).is_foundation:
            return ArVerdict(
                ArStatus.LACKS_AR, ArMethod.CHARACTERIZATION, cx,
                reason=f"component {sorted(comp)} has an edge and a unit-free foundation set",
            )
    if FreeSumModel.build(g) is not None:
        return ArVerdict(ArStatus.HAS_AR, ArMethod.CHARACTERIZATION, reason="direct sum of free and left reversible summands")
    return ArVerdict(ArStatus.UNKNOWN, ArMethod.CHARACTERIZATION, reason="outside the characterised cases")


def foundation_sets_up_to(g: Graph, max_atoms: int, max_size: int) -> Iterator[FoundationCandidate]:
    """Certified unit-free foundation sets with elements of bounded atom length, smallest first."""
    pool = [t for t in traces_up_to(g, max_atoms) if not is_invertible(t)]
    for k in range(1, max_size + 1):
        for combo in itertools.combinations(pool, k):
            cand = FoundationCandidate(g, combo)
            if is_foundation_set(cand).is_foundation:
                yield cand


def has_property_ar_search(g: Graph, max_atoms: int = 2, max_size: int = 3, bound: int = 5) -> ArVerdict:
    """Refinement search over every small foundation set; LACKS_AR carries the first failure."""
    for cand in foundation_sets_up_to(g, max_atoms, max_size):
        if refine(cand, bound).refinement is None:
            return ArVerdict(ArStatus.LACKS_AR, ArMethod.SEARCH, cand, reason=f"no accurate refinement within atom length {bound}")
    return ArVerdict(
        ArStatus.HAS_AR, ArMethod.SEARCH,
        reason=f"every foundation set of <= {max_size} elements with atom length <= {max_atoms} refines",
    )
