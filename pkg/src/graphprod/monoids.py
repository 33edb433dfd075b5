"""Vertex monoids: a uniform interface over a small catalogue of right LCM monoids.

Catalogue (string code in parentheses)::

    NAT            (N)       the natural numbers under addition
    FREE(k)        (F<k>)    free monoid on k generators, words over GEN_LETTERS
    FREE_ABELIAN(d)(N^<d>)   N^d under componentwise addition
    INTEGERS       (Z)       the integers under addition (a group)
    FINITE_CYCLIC(n)(Z/<n>)  Z/nZ (a finite group)

Elements are immutable ``VertexElement`` values whose payload is canonical for
its kind, so element equality is payload equality.
"""

from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass
from typing import Iterator, Optional, Union

from .errors import NotADivisor, ParseError, PreconditionViolation, SpecMismatch

GEN_LETTERS = "xyzwuvstpqrabcdefghijklmno"

Payload = Union[int, str, tuple]


class Kind(enum.Enum):
    NAT = "NAT"
    FREE = "FREE"
    FREE_ABELIAN = "FREE_ABELIAN"
    INTEGERS = "INTEGERS"
    FINITE_CYCLIC = "FINITE_CYCLIC"


_CODE_RE = re.compile(r"^(?:(N)|F(\d+)|N\^(\d+)|(Z)|Z/(\d+))$")


@dataclass(frozen=True, order=True)
class VertexMonoidSpec:
    kind: Kind
    param: int = 1

    def __post_init__(self):
        if self.kind in (Kind.NAT, Kind.INTEGERS):
            if self.param != 1:
                raise PreconditionViolation(f"{self.kind.value} takes no parameter")
        elif self.kind is Kind.FREE:
            if not 1 <= self.param <= len(GEN_LETTERS):
                raise PreconditionViolation(f"free rank must be in 1..{len(GEN_LETTERS)}")
        elif self.kind is Kind.FREE_ABELIAN:
            if self.param < 1:
                raise PreconditionViolation("free abelian rank must be >= 1")
        elif self.kind is Kind.FINITE_CYCLIC:
            # Z/1 is the trivial monoid, which is excluded.
            if self.param < 2:
                raise PreconditionViolation("cyclic modulus must be >= 2")

    # -- constructors -------------------------------------------------------
    @classmethod
    def nat(cls) -> "VertexMonoidSpec":
        return cls(Kind.NAT)

    @classmethod
    def free(cls, k: int) -> "VertexMonoidSpec":
        return cls(Kind.FREE, k)

    @classmethod
    def free_abelian(cls, d: int) -> "VertexMonoidSpec":
        return cls(Kind.FREE_ABELIAN, d)

    @classmethod
    def integers(cls) -> "VertexMonoidSpec":
        return cls(Kind.INTEGERS)

    @classmethod
    def cyclic(cls, n: int) -> "VertexMonoidSpec":
        return cls(Kind.FINITE_CYCLIC, n)

    @classmethod
    def parse(cls, code: str) -> "VertexMonoidSpec":
        m = _CODE_RE.match(code.strip())
        if not m:
            raise ParseError(f"unknown monoid code {code!r}")
        nat, free, fab, z, cyc = m.groups()
        if nat:
            return cls.nat()
        if free is not None:
            k = int(free)
            if k < 2:
                raise ParseError(f"free monoid code needs rank >= 2, got {code!r}")
            return cls.free(k)
        if fab is not None:
            return cls.free_abelian(int(fab))
        if z:
            return cls.integers()
        n = int(cyc)
        if n < 2:
            raise ParseError(f"cyclic modulus must be >= 2, got {code!r}")
        return cls.cyclic(n)

    @property
    def code(self) -> str:
        if self.kind is Kind.NAT:
            return "N"
        if self.kind is Kind.FREE:
            return f"F{self.param}"
        if self.kind is Kind.FREE_ABELIAN:
            return f"N^{self.param}"
        if self.kind is Kind.INTEGERS:
            return "Z"
        return f"Z/{self.param}"

    def __str__(self) -> str:
        return self.code

    # -- element helpers ----------------------------------------------------
    @property
    def is_group(self) -> bool:
        return self.kind in (Kind.INTEGERS, Kind.FINITE_CYCLIC)

    @property
    def letters(self) -> str:
        return GEN_LETTERS[: self.param] if self.kind is Kind.FREE else ""

    def identity(self) -> "VertexElement":
        if self.kind is Kind.FREE:
            return VertexElement(self, "")
        if self.kind is Kind.FREE_ABELIAN:
            return VertexElement(self, (0,) * self.param)
        return VertexElement(self, 0)

    def element(self, payload) -> "VertexElement":
        """Validate and canonicalise ``payload`` into an element of this monoid."""
        k = self.kind
        if k is Kind.NAT:
            if not isinstance(payload, int) or payload < 0:
                raise PreconditionViolation(f"NAT payload must be a nonnegative int, got {payload!r}")
            return VertexElement(self, payload)
        if k is Kind.FREE:
            if not isinstance(payload, str) or any(c not in self.letters for c in payload):
                raise PreconditionViolation(f"word {payload!r} not over {self.letters!r}")
            return VertexElement(self, payload)
        if k is Kind.FREE_ABELIAN:
            tup = tuple(payload)
            if len(tup) != self.param or any((not isinstance(x, int)) or x < 0 for x in tup):
                raise PreconditionViolation(f"N^{self.param} payload must be a {self.param}-tuple of nonnegative ints")
            return VertexElement(self, tup)
        if not isinstance(payload, int):
            raise PreconditionViolation(f"group payload must be int, got {payload!r}")
        if k is Kind.INTEGERS:
            return VertexElement(self, payload)
        return VertexElement(self, payload % self.param)

    def generator(self) -> "VertexElement":
        """The default non-identity element (the RAAM generator for N)."""
        if self.kind is Kind.FREE:
            return VertexElement(self, GEN_LETTERS[0])
        if self.kind is Kind.FREE_ABELIAN:
            return VertexElement(self, (1,) + (0,) * (self.param - 1))
        return VertexElement(self, 1)

    def atoms(self) -> tuple["VertexElement", ...]:
        """A finite generating set; every element is a product of atoms."""
        if self.kind is Kind.FREE:
            return tuple(VertexElement(self, c) for c in self.letters)
        if self.kind is Kind.FREE_ABELIAN:
            return tuple(
                VertexElement(self, tuple(int(i == j) for j in range(self.param))) for i in range(self.param)
            )
        if self.kind is Kind.INTEGERS:
            return (VertexElement(self, 1), VertexElement(self, -1))
        return (VertexElement(self, 1),)

    def parse_element(self, text: str) -> "VertexElement":
        text = text.strip()
        try:
            if self.kind is Kind.FREE:
                return self.element(text)
            if self.kind is Kind.FREE_ABELIAN:
                return self.element(tuple(int(x) for x in text.split(",")))
            return self.element(int(text))
        except (ValueError, PreconditionViolation) as exc:
            raise ParseError(f"bad {self.code} element {text!r}: {exc}") from None


@dataclass(frozen=True, order=True)
class VertexElement:
    spec: VertexMonoidSpec
    payload: Payload

    @property
    def is_identity(self) -> bool:
        return self == self.spec.identity()

    def size(self) -> int:
        """Word length in the atoms of the monoid (absolute value for Z)."""
        k = self.spec.kind
        if k is Kind.NAT:
            return self.payload
        if k is Kind.FREE:
            return len(self.payload)
        if k is Kind.FREE_ABELIAN:
            return sum(self.payload)
        if k is Kind.INTEGERS:
            return abs(self.payload)
        return min(self.payload, self.spec.param - self.payload)

    def text(self) -> str:
        if self.spec.kind is Kind.FREE_ABELIAN:
            return ",".join(map(str, self.payload))
        return str(self.payload)

    def __str__(self) -> str:
        return self.text()

    def __mul__(self, other: "VertexElement") -> "VertexElement":
        return v_multiply(self, other)


@dataclass(frozen=True)
class VertexLcm:
    """Either a least common right multiple or an orthogonality verdict."""

    lcm: Optional[VertexElement]

    @property
    def exists(self) -> bool:
        return self.lcm is not None

    @property
    def orthogonal(self) -> bool:
        return self.lcm is None

    def __str__(self) -> str:
        return "ORTHOGONAL" if self.lcm is None else f"EXISTS({self.lcm})"


ORTHOGONAL = VertexLcm(None)


def _same(a: VertexElement, b: VertexElement) -> VertexMonoidSpec:
    if a.spec != b.spec:
        raise SpecMismatch(f"{a.spec} vs {b.spec}")
    return a.spec


def v_multiply(a: VertexElement, b: VertexElement) -> VertexElement:
    spec = _same(a, b)
    k = spec.kind
    if k is Kind.FREE:
        return VertexElement(spec, a.payload + b.payload)
    if k is Kind.FREE_ABELIAN:
        return VertexElement(spec, tuple(x + y for x, y in zip(a.payload, b.payload)))
    if k is Kind.FINITE_CYCLIC:
        return VertexElement(spec, (a.payload + b.payload) % spec.param)
    return VertexElement(spec, a.payload + b.payload)


def v_is_invertible(a: VertexElement) -> bool:
    return a.spec.is_group or a.is_identity


def v_inverse(a: VertexElement) -> VertexElement:
    if not v_is_invertible(a):
        raise NotADivisor(f"{a} is not invertible in {a.spec}")
    if a.spec.kind is Kind.INTEGERS:
        return VertexElement(a.spec, -a.payload)
    if a.spec.kind is Kind.FINITE_CYCLIC:
        return VertexElement(a.spec, (-a.payload) % a.spec.param)
    return a


def v_divides(a: VertexElement, m: VertexElement) -> bool:
    """True iff ``a`` left-divides ``m``."""
    spec = _same(a, m)
    k = spec.kind
    if spec.is_group:
        return True
    if k is Kind.NAT:
        return a.payload <= m.payload
    if k is Kind.FREE:
        return m.payload.startswith(a.payload)
    return all(x <= y for x, y in zip(a.payload, m.payload))


def v_left_quotient(a: VertexElement, m: VertexElement) -> VertexElement:
    """The unique ``q`` with ``a * q == m``."""
    spec = _same(a, m)
    if not v_divides(a, m):
        raise NotADivisor(f"{a} does not left-divide {m} in {spec}")
    k = spec.kind
    if k is Kind.FREE:
        return VertexElement(spec, m.payload[len(a.payload):])
    if k is Kind.FREE_ABELIAN:
        return VertexElement(spec, tuple(y - x for x, y in zip(a.payload, m.payload)))
    if k is Kind.FINITE_CYCLIC:
        return VertexElement(spec, (m.payload - a.payload) % spec.param)
    return VertexElement(spec, m.payload - a.payload)


def v_lcm(a: VertexElement, b: VertexElement) -> VertexLcm:
    spec = _same(a, b)
    k = spec.kind
    if spec.is_group:
        # Every element is a common multiple; return the first argument.
        return VertexLcm(a)
    if k is Kind.NAT:
        return VertexLcm(a if a.payload >= b.payload else b)
    if k is Kind.FREE_ABELIAN:
        return VertexLcm(VertexElement(spec, tuple(max(x, y) for x, y in zip(a.payload, b.payload))))
    if b.payload.startswith(a.payload):
        return VertexLcm(b)
    if a.payload.startswith(b.payload):
        return VertexLcm(a)
    return ORTHOGONAL


def v_is_core(a: VertexElement) -> bool:
    """Membership in the core submonoid (S_v)_c."""
    return monoid_flags(a.spec).core_is_whole or a.is_identity


def v_in_ci_prime(a: VertexElement) -> bool:
    """Membership in (S_v)_ci' = core irreducibles together with units.

    Catalogue cores are either everything or trivial: when the core is the
    whole monoid there are no core irreducibles, and when it is trivial every
    non-unit is core irreducible.
    """
    if v_is_invertible(a):
        return True
    return not monoid_flags(a.spec).core_is_whole


@dataclass(frozen=True)
class MonoidFlags:
    is_group: bool
    is_left_reversible: bool
    core_is_whole: bool
    units_trivial: bool
    units_finite: bool
    core_factorable: bool
    ci_cap_closed: bool
    alpha_faithful: bool
    alpha_almost_free: bool
    alpha_star_almost_free: bool
    finite_propagation: bool

    def as_dict(self) -> dict:
        return dict(self.__dict__)


# One-line justifications, N and N^d (and F1, which is N):
#   left reversible: any two elements have a common multiple (pointwise max)
#   core is whole: left reversible, so nothing is orthogonal to anything
#   core factorable / cap-closed: S_ci is empty, so S = {1}.S_c and closure is vacuous
#   alpha not faithful: S/~ is a single point and the core is nontrivial
#   alpha almost free: on a one-point space every stabiliser-fixed set is finite
#   alpha* almost free: S* = {1} acts trivially on S/S* (no x != 1 to check)
#   finite propagation: units finite (trivial), as for right-angled Artin monoids
_COMMUTATIVE_CANCELLATIVE = MonoidFlags(
    is_group=False,
    is_left_reversible=True,
    core_is_whole=True,
    units_trivial=True,
    units_finite=True,
    core_factorable=True,
    ci_cap_closed=True,
    alpha_faithful=False,
    alpha_almost_free=True,
    alpha_star_almost_free=True,
    finite_propagation=True,
)

# F_k, k >= 2:
#   not left reversible: x and y have no common right multiple
#   core trivial: every w != 1 is orthogonal to a word starting with another letter
#   core factorable: S_ci = S \ {1}, so S = S_ci^1 . {1}
#   cap-closed: the lcm of two comparable nonempty words is the longer one, again in S_ci
#   alpha faithful / almost free: the acting core {1} has nothing to separate or fix
#   finite propagation: units trivial
_FREE = MonoidFlags(
    is_group=False,
    is_left_reversible=False,
    core_is_whole=False,
    units_trivial=True,
    units_finite=True,
    core_factorable=True,
    ci_cap_closed=True,
    alpha_faithful=True,
    alpha_almost_free=True,
    alpha_star_almost_free=True,
    finite_propagation=True,
)

# Z:
#   group, hence left reversible and S = S* = S_c with S/~ a point
#   alpha not faithful: Z acts trivially on a point
#   alpha / alpha* almost free: fixed-point sets lie in a one-point space
#   finite propagation: not certified (units infinite), recorded False
_INTEGERS = MonoidFlags(
    is_group=True,
    is_left_reversible=True,
    core_is_whole=True,
    units_trivial=False,
    units_finite=False,
    core_factorable=True,
    ci_cap_closed=True,
    alpha_faithful=False,
    alpha_almost_free=True,
    alpha_star_almost_free=True,
    finite_propagation=False,
)

# Z/n, n >= 2: as for Z, except the unit group is finite, which certifies
# finite propagation.
_CYCLIC = MonoidFlags(
    is_group=True,
    is_left_reversible=True,
    core_is_whole=True,
    units_trivial=False,
    units_finite=True,
    core_factorable=True,
    ci_cap_closed=True,
    alpha_faithful=False,
    alpha_almost_free=True,
    alpha_star_almost_free=True,
    finite_propagation=True,
)


def monoid_flags(spec: VertexMonoidSpec) -> MonoidFlags:
    """Hard-coded structural facts for a catalogue monoid."""
    k = spec.kind
    if k in (Kind.NAT, Kind.FREE_ABELIAN) or (k is Kind.FREE and spec.param == 1):
        return _COMMUTATIVE_CANCELLATIVE
    if k is Kind.FREE:
        return _FREE
    if k is Kind.INTEGERS:
        return _INTEGERS
    return _CYCLIC


v_flags = monoid_flags


def _iter_elements(spec: VertexMonoidSpec, max_size: int) -> Iterator[VertexElement]:
    k = spec.kind
    if k is Kind.NAT:
        for n in range(max_size + 1):
            yield VertexElement(spec, n)
    elif k is Kind.FREE:
        for n in range(max_size + 1):
            for tup in itertools.product(spec.letters, repeat=n):
                yield VertexElement(spec, "".join(tup))
    elif k is Kind.FREE_ABELIAN:
        for total in range(max_size + 1):
            tuples = [t for t in itertools.product(range(total + 1), repeat=spec.param) if sum(t) == total]
            for t in sorted(tuples, reverse=True):
                yield VertexElement(spec, t)
    elif k is Kind.INTEGERS:
        yield VertexElement(spec, 0)
        for n in range(1, max_size + 1):
            yield VertexElement(spec, n)
            yield VertexElement(spec, -n)
    else:
        for r in range(min(spec.param - 1, max_size) + 1):
            yield VertexElement(spec, r)


def v_enumerate(spec: VertexMonoidSpec, max_size: int) -> list[VertexElement]:
    """All elements of size at most ``max_size``, identity first, in a fixed order."""
    if max_size < 0:
        raise PreconditionViolation("max_size must be >= 0")
    return list(_iter_elements(spec, max_size))
