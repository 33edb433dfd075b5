"""Generalised scales on right-angled Artin monoids and on direct sums of free monoids.

The candidate scale sends a trace to the product over free summands of
(rank of the summand) ** (word length of its part there). It is a genuine
scale exactly when some summand is free of rank >= 2, every such summand is
edge-free, and the ranks are multiplicatively independent.
"""

from __future__ import annotations

import enum
import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .boundary import FoundationCandidate, Status, is_accurate, is_foundation_set
from .errors import BudgetExceeded, NotInImage, PreconditionViolation, ScaleAbsent, Unsupported
from .graph import Graph
from .monoids import Kind, VertexElement
from .structure import core_related, structure_report
from .traces import Syllable, Trace, from_syllables, restrict

DEFAULT_CLASS_BUDGET = 10_000


# -- multiplicative independence -------------------------------------------

def factorize(n: int) -> dict[int, int]:
    if n < 1:
        raise PreconditionViolation(f"cannot factor {n}")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def integer_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over the rationals by fraction-free (Bareiss) elimination."""
    m = [list(r) for r in rows if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    rank, prev = 0, 1
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for r in range(rank + 1, len(m)):
            for c in range(col + 1, ncols):
                m[r][c] = (m[r][c] * m[rank][col] - m[rank][c] * m[r][col]) // prev
            m[r][col] = 0
        prev = m[rank][col]
        rank += 1
        if rank == len(m):
            break
    return rank


@dataclass(frozen=True)
class SupernaturalExponentVector:
    base_list: tuple[int, ...]
    exponents: tuple[int, ...]

    def __post_init__(self):
        if len(self.base_list) != len(self.exponents):
            raise PreconditionViolation("bases and exponents differ in length")
        if any(m < 2 for m in self.base_list) or any(k < 0 for k in self.exponents):
            raise PreconditionViolation("bases must be >= 2 and exponents >= 0")

    def value(self) -> int:
        return math.prod(m**k for m, k in zip(self.base_list, self.exponents))

    def prime_vector(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for m, k in zip(self.base_list, self.exponents):
            for p, e in factorize(m).items():
                out[p] = out.get(p, 0) + e * k
        return {p: e for p, e in out.items() if e}


def rationally_independent(m: Sequence[int]) -> bool:
    m = list(m)
    if any(x < 2 for x in m):
        raise PreconditionViolation("every base must be at least 2")
    facs = [factorize(x) for x in m]
    primes = sorted({p for f in facs for p in f})
    return integer_rank([[f.get(p, 0) for p in primes] for f in facs]) == len(m)


def dependence_certificate(m: Sequence[int]) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Distinct exponent vectors with equal products, or None if ``m`` is independent."""
    m = list(m)
    if rationally_independent(m):
        return None
    facs = [factorize(x) for x in m]
    primes = sorted({p for f in facs for p in f})
    # Solve sum_i k_i * e_i = 0 over the rationals, e_i the prime vector of m_i.
    rows = [[Fraction(f.get(p, 0)) for f in facs] for p in primes]
    ncols = len(m)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        lead = rows[r][c]
        rows[r] = [x / lead for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                q = rows[i][c]
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    free = next(c for c in range(ncols) if c not in pivots)
    vec = [Fraction(0)] * ncols
    vec[free] = Fraction(1)
    for i, c in enumerate(pivots):
        vec[c] = -rows[i][free]
    scale = math.lcm(*(x.denominator for x in vec))
    ints = [int(x * scale) for x in vec]
    plus = tuple(max(x, 0) for x in ints)
    minus = tuple(max(-x, 0) for x in ints)
    return plus, minus


def free_monoid_scale(rank: int, w) -> int:
    """``rank ** len(w)`` for a word (string or free-monoid element)."""
    if rank < 2:
        raise PreconditionViolation("free monoid rank must be at least 2")
    if isinstance(w, VertexElement):
        w = w.payload
    return rank ** len(w)


# -- existence ---------------------------------------------------------------

class Obstruction(enum.Enum):
    NONE = "NONE"
    ALL_UNIVERSAL = "ALL_UNIVERSAL"
    EDGED_COMPONENT = "EDGED_COMPONENT"
    RATIONALLY_DEPENDENT = "RATIONALLY_DEPENDENT"


@dataclass(frozen=True)
class GeneralisedScale:
    graph: Graph
    components: tuple[frozenset, ...]
    component_sizes: tuple[int, ...]
    obstruction: Obstruction
    obstruction_index: Optional[int] = None

    @property
    def exists(self) -> bool:
        return self.obstruction is Obstruction.NONE

    def as_dict(self) -> dict:
        d = {
            "exists": self.exists,
            "obstruction": self.obstruction.value,
            "component_sizes": list(self.component_sizes),
            "components": [sorted(c) for c in self.components],
        }
        if self.obstruction_index is not None:
            d["component_index"] = self.obstruction_index
        return d


def _rank(g: Graph, comp: frozenset) -> int:
    return sum(1 if g.monoid(v).kind is Kind.NAT else g.monoid(v).param for v in comp)


def generalised_scale(g: Graph) -> GeneralisedScale:
    d = g.decomposition
    if not g.is_raam:
        for comp, edges in zip(d.components, d.induced_edge_sets):
            kinds = {g.monoid(v).kind for v in comp}
            if edges or not kinds <= {Kind.NAT, Kind.FREE}:
                raise Unsupported("scales are decided for RAAMs and direct sums of free monoids only")
    free = [i for i, c in enumerate(d.components) if _rank(g, c) >= 2]
    comps = tuple(d.components[i] for i in free)
    sizes = tuple(_rank(g, c) for c in comps)
    if not free:
        return GeneralisedScale(g, comps, sizes, Obstruction.ALL_UNIVERSAL)
    for i in free:
        if d.induced_edge_sets[i]:
            return GeneralisedScale(g, comps, sizes, Obstruction.EDGED_COMPONENT, i)
    if not rationally_independent(sizes):
        return GeneralisedScale(g, comps, sizes, Obstruction.RATIONALLY_DEPENDENT)
    return GeneralisedScale(g, comps, sizes, Obstruction.NONE)


def _require(gs: GeneralisedScale) -> None:
    if not gs.exists:
        raise ScaleAbsent(f"no generalised scale: {gs.obstruction.value}")


def _value(gs: GeneralisedScale, s: Trace) -> int:
    return math.prod(m ** restrict(s, c).atom_length() for c, m in zip(gs.components, gs.component_sizes))


def evaluate_scale(gs: GeneralisedScale, s: Trace) -> int:
    _require(gs)
    if s.graph != gs.graph:
        from .errors import GraphMismatch

        raise GraphMismatch("trace and scale belong to different graphs")
    return _value(gs, s)


# -- classes over a value ------------------------------------------------------

def exponent_tuples(sizes: Sequence[int], n: int) -> list[tuple[int, ...]]:
    """All exponent vectors k with prod(sizes[i] ** k[i]) == n."""
    if n < 1:
        return []
    if not sizes:
        return [()] if n == 1 else []
    m, rest = sizes[0], sizes[1:]
    out, k, q = [], 0, n
    while True:
        out.extend((k,) + t for t in exponent_tuples(rest, q))
        if q % m:
            break
        q //= m
        k += 1
    return out


def _letters(g: Graph, comp: frozenset) -> list[tuple[str, VertexElement]]:
    out = []
    for v in sorted(comp):
        spec = g.monoid(v)
        if spec.kind is Kind.NAT:
            out.append((v, spec.element(1)))
        else:
            out.extend((v, spec.element(c)) for c in spec.letters)
    return out


def _words(g: Graph, comp: frozenset, k: int) -> list[list[Syllable]]:
    alpha = _letters(g, comp)
    return [[Syllable(v, e) for v, e in w] for w in itertools.product(alpha, repeat=k)]


def value_classes(gs: GeneralisedScale, n: int, extra: int = 1) -> list[list[Trace]]:
    """The core-relation classes of traces with candidate value ``n``.

    Members are the words whose free parts have the prescribed lengths, with
    up to ``extra`` atoms of left reversible vertices interleaved at any
    position. Works whether or not the candidate is a genuine scale.
    """
    g = gs.graph
    tuples = exponent_tuples(gs.component_sizes, n)
    core_atoms = [
        Syllable(v, a)
        for v in g.vertices
        if not any(v in c for c in gs.components)
        for a in g.monoid(v).atoms()
    ]
    members: set = set()
    for ks in tuples:
        per = [_words(g, c, k) for c, k in zip(gs.components, ks)]
        for combo in itertools.product(*per):
            base = [s for part in combo for s in part]
            members.add(from_syllables(g, base))
            for e in range(1, extra + 1):
                for ins in itertools.product(core_atoms, repeat=e):
                    for pos in itertools.combinations_with_replacement(range(len(base) + 1), e):
                        word = list(base)
                        for p, a in sorted(zip(pos, ins), key=lambda x: -x[0]):
                            word.insert(p, a)
                        members.add(from_syllables(g, word))
    classes: list[list[Trace]] = []
    for t in sorted(members, key=Trace.sort_key):
        for cls in classes:
            if core_related(cls[0], t):
                cls.append(t)
                break
        else:
            classes.append([t])
    return classes


@dataclass
class ScaleAxiomReport:
    n: int
    exponents: list
    class_count: int
    transversal: list
    accurate: bool
    foundation: str
    alternatives_checked: int = 0
    alternatives_failed: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (
            self.class_count == self.n
            and self.accurate
            and self.foundation == Status.FOUNDATION.value
            and not self.alternatives_failed
        )

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "exponents": self.exponents,
            "class_count": self.class_count,
            "transversal": self.transversal,
            "accurate": self.accurate,
            "foundation": self.foundation,
            "alternatives_checked": self.alternatives_checked,
            "alternatives_failed": self.alternatives_failed,
            "ok": self.ok,
        }


def _check_transversal(reps: list[Trace]) -> tuple[bool, str]:
    cand = FoundationCandidate.of(reps)
    return is_accurate(cand), is_foundation_set(cand).status.value


def verify_scale_axioms(
    gs: GeneralisedScale,
    n: int,
    budget: int = DEFAULT_CLASS_BUDGET,
    alternatives: int = 0,
    seed: int = 0,
) -> ScaleAxiomReport:
    """Count the classes over ``n`` and check transversals for accuracy and foundation.

    ``alternatives`` extra transversals are drawn, with a seeded generator,
    from the enumerated members of each class.
    """
    _require(gs)
    if n > budget:
        raise BudgetExceeded(f"n = {n} exceeds the class budget {budget}")
    tuples = exponent_tuples(gs.component_sizes, n)
    if not tuples:
        raise NotInImage(f"{n} is not a value of the scale")
    classes = value_classes(gs, n)
    reps = [c[0] for c in classes]
    accurate, foundation = _check_transversal(reps)
    report = ScaleAxiomReport(
        n=n,
        exponents=[list(t) for t in tuples],
        class_count=len(classes),
        transversal=[t.literal() for t in reps],
        accurate=accurate,
        foundation=foundation,
    )
    rng = random.Random(seed)
    for _ in range(alternatives):
        alt = [rng.choice(c) for c in classes]
        acc, fnd = _check_transversal(alt)
        report.alternatives_checked += 1
        if not acc or fnd != Status.FOUNDATION.value:
            report.alternatives_failed.append([t.literal() for t in alt])
    return report


def image_values(gs: GeneralisedScale, limit: int) -> list[int]:
    """Every value of the candidate scale up to ``limit``."""
    vals = {1}
    frontier = [1]
    while frontier:
        nxt = []
        for x in frontier:
            for m in gs.component_sizes:
                y = x * m
                if y <= limit and y not in vals:
                    vals.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(vals)


# -- uniqueness ---------------------------------------------------------------

def _generator_axiom_holds(values: Sequence[int], limit: int) -> bool:
    """Scale axioms on a free monoid whose letters carry ``values``, for all n <= limit.

    Kernel: a letter of value 1 would be a non-core element in the kernel.
    For every n, the words of value n must number exactly n and form a
    complete prefix code (Kraft sum 1) when n is a value.
    """
    if any(v < 2 for v in values):
        return False
    k = len(values)
    by_value: dict[int, list[int]] = {1: [0]}
    frontier = [(1, 0)]
    while frontier:
        nxt = []
        for val, length in frontier:
            for v in values:
                w = val * v
                if w <= limit:
                    by_value.setdefault(w, []).append(length + 1)
                    nxt.append((w, length + 1))
        frontier = nxt
    for n, lengths in by_value.items():
        if len(lengths) != n:
            return False
        if sum(Fraction(1, k**L) for L in lengths) != 1:
            return False
    return True


@dataclass
class UniquenessReport:
    bound: int
    survivors: dict = field(default_factory=dict)
    expected: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.survivors == self.expected

    def as_dict(self) -> dict:
        return {
            "bound": self.bound,
            "survivors": {k: [list(v) for v in vs] for k, vs in self.survivors.items()},
            "expected": {k: [list(v) for v in vs] for k, vs in self.expected.items()},
            "ok": self.ok,
        }


def verify_scale_uniqueness(gs: GeneralisedScale, generator_value_bound: int) -> UniquenessReport:
    """Try every assignment of generator values in [1, bound], component by component."""
    _require(gs)
    g = gs.graph
    bound = generator_value_bound
    report = UniquenessReport(bound)
    limit = bound * bound
    for c, size in zip(gs.components, gs.component_sizes):
        key = ",".join(sorted(c))
        report.survivors[key] = [
            vals for vals in itertools.product(range(1, bound + 1), repeat=size)
            if _generator_axiom_holds(vals, limit)
        ]
        report.expected[key] = [(size,) * size] if size <= bound else []
    for v in g.vertices:
        if any(v in c for c in gs.components):
            continue
        # Core generators lie in the kernel.
        report.survivors[v] = [(1,)]
        report.expected[v] = [(1,)]
    return report


# -- admissibility ---------------------------------------------------------------

@dataclass(frozen=True)
class AdmissibilityReport:
    admissible: bool
    core_factorable: bool
    ci_cap_closed: bool
    scale: GeneralisedScale
    irreducibles: tuple[int, ...]
    freely_generated: bool

    def as_dict(self) -> dict:
        return {
            "admissible": self.admissible,
            "core_factorable": self.core_factorable,
            "ci_cap_closed": self.ci_cap_closed,
            "scale": self.scale.as_dict(),
            "irreducibles": list(self.irreducibles),
            "freely_generated": self.freely_generated,
        }


def is_admissible(g: Graph) -> AdmissibilityReport:
    rep = structure_report(g)
    gs = generalised_scale(g)
    sizes = gs.component_sizes
    freely = rationally_independent(sizes) if sizes else True
    return AdmissibilityReport(
        admissible=rep.core_factorable and rep.ci_cap_closed and gs.exists and freely,
        core_factorable=rep.core_factorable,
        ci_cap_closed=rep.ci_cap_closed,
        scale=gs,
        irreducibles=tuple(sorted(set(sizes))),
        freely_generated=freely,
    )
