"""Commutative monoids that dimension functions take values in.

Values of the extended naturals are plain ``int`` (non-negative) or the
singleton :data:`INF`.  Sequences of extended naturals are tuples with
trailing zeros trimmed, so equal sequences have equal representations.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Optional, Sequence, Union

from .report import CheckRecord, ViolationReport


class MonoidUsageError(TypeError):
    """An operation was applied to values outside the monoid's carrier."""


class _Infinity:
    """The point at infinity of the extended naturals."""

    _instance: Optional["_Infinity"] = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("tangentdim.inf")


INF = _Infinity()

NatInf = Union[int, _Infinity]


def is_nat(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool) and x >= 0


def is_natinf(x) -> bool:
    return x is INF or is_nat(x)


def is_natstarinf(x) -> bool:
    return x is INF or (is_nat(x) and x >= 1)


def is_integer(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def is_seq(x) -> bool:
    return (
        isinstance(x, tuple)
        and all(is_natinf(v) for v in x)
        and (len(x) == 0 or x[-1] != 0)
    )


def seq(values: Iterable[NatInf]) -> tuple:
    """Normalise an iterable of extended naturals into a sequence value."""
    out = list(values)
    for v in out:
        if not is_natinf(v):
            raise MonoidUsageError(f"not an extended natural: {v!r}")
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def nat_add(a: NatInf, b: NatInf) -> NatInf:
    if a is INF or b is INF:
        return INF
    return a + b


def nat_mul(a: NatInf, b: NatInf) -> NatInf:
    # infinity absorbs everything, zero included
    if a is INF or b is INF:
        return INF
    return a * b


def nat_max(a: NatInf, b: NatInf) -> NatInf:
    if a is INF or b is INF:
        return INF
    return max(a, b)


def lcm(a: NatInf, b: NatInf) -> NatInf:
    """Least common multiple on positive integers extended by infinity.

    Raises:
        MonoidUsageError: if either argument is zero or not an extended natural.
    """
    if not (is_natstarinf(a) and is_natstarinf(b)):
        raise MonoidUsageError(f"lcm is defined on positive integers and inf, got {a!r}, {b!r}")
    if a is INF or b is INF:
        return INF
    return a * b // math.gcd(a, b)


def seq_add(a: tuple, b: tuple) -> tuple:
    n = max(len(a), len(b))
    a = a + (0,) * (n - len(a))
    b = b + (0,) * (n - len(b))
    return seq(nat_add(x, y) for x, y in zip(a, b))


@dataclass(frozen=True)
class MonoidSpec:
    """A commutative monoid given by its operation and unit.

    ``mul`` is present only for rigs, where ``op`` is the addition.
    """

    tag: str
    op: Callable[[Any, Any], Any]
    unit: Any
    contains: Callable[[Any], bool]
    is_rig: bool = False
    mul: Optional[Callable[[Any, Any], Any]] = None
    one: Any = None
    neg: Optional[Callable[[Any], Any]] = None
    eq: Callable[[Any, Any], bool] = field(default=lambda a, b: a == b)

    def check(self, x):
        if not self.contains(x):
            raise MonoidUsageError(f"{x!r} is not an element of monoid {self.tag}")
        return x

    def sum(self, values: Iterable[Any]):
        acc = self.unit
        for v in values:
            acc = combine(self, acc, v)
        return acc

    def times(self, n: int, x):
        """``x`` combined with itself ``n`` times."""
        return self.sum([x] * n)

    def __repr__(self):
        return f"MonoidSpec({self.tag})"


def combine(m: MonoidSpec, a, b):
    """Apply the monoid operation, rejecting values outside the carrier."""
    return m.op(m.check(a), m.check(b))


NAT_ADD = MonoidSpec("nat-add", nat_add, 0, is_natinf)
NAT_MUL = MonoidSpec("nat-mul", nat_mul, 1, is_natinf)
NAT_MAX = MonoidSpec("nat-max", nat_max, 0, is_natinf)
LCM = MonoidSpec("lcm", lcm, 1, is_natstarinf)
SEQ_ADD = MonoidSpec("seq-add", seq_add, (), is_seq)
INT_RIG = MonoidSpec(
    "int-rig",
    lambda a, b: a + b,
    0,
    is_integer,
    is_rig=True,
    mul=lambda a, b: a * b,
    one=1,
    neg=lambda a: -a,
)
# finite naturals only, for callers that want to exclude infinity
NAT_ADD_FINITE = MonoidSpec("nat-add-finite", lambda a, b: a + b, 0, is_nat)
NAT_MUL_FINITE = MonoidSpec("nat-mul-finite", lambda a, b: a * b, 1, is_nat)

MONOIDS = {
    m.tag: m for m in (NAT_ADD, NAT_MUL, NAT_MAX, LCM, SEQ_ADD, INT_RIG, NAT_ADD_FINITE, NAT_MUL_FINITE)
}


def get_monoid(tag: str) -> MonoidSpec:
    try:
        return MONOIDS[tag]
    except KeyError:
        raise MonoidUsageError(f"unknown monoid tag {tag!r}; known: {sorted(MONOIDS)}") from None


def rig_mul(m: MonoidSpec, a, b):
    if not m.is_rig:
        raise MonoidUsageError(f"monoid {m.tag} has no multiplication")
    return m.mul(m.check(a), m.check(b))


def check_monoid_laws(m: MonoidSpec, samples: Sequence[Any]) -> ViolationReport:
    """Check associativity, commutativity and unitality on all sample tuples.

    The report stops at the first failing law and carries the witness.
    """
    report = ViolationReport(f"monoid-laws[{m.tag}]", corpus=[repr(s) for s in samples])
    for x in samples:
        m.check(x)
    laws = []
    for x in samples:
        laws.append(("left-unit", (x,), combine(m, m.unit, x), x))
        laws.append(("right-unit", (x,), combine(m, x, m.unit), x))
    for x, y in itertools.product(samples, repeat=2):
        laws.append(("commutativity", (x, y), combine(m, x, y), combine(m, y, x)))
    for x, y, z in itertools.product(samples, repeat=3):
        laws.append(
            (
                "associativity",
                (x, y, z),
                combine(m, combine(m, x, y), z),
                combine(m, x, combine(m, y, z)),
            )
        )
    for name, witness, lhs, rhs in laws:
        if not m.eq(lhs, rhs):
            report.add(CheckRecord(name, "fail", {"elements": [repr(w) for w in witness]}, repr(lhs), repr(rhs)))
            return report
    report.add(CheckRecord("monoid-laws", "pass", {"samples": len(samples)}))
    return report
