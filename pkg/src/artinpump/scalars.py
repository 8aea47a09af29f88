"""Commutative semirings with exact arithmetic.

Scalars are plain immutable Python values whose type depends on the
semiring kind:

=================  ==========================================
kind               scalar
=================  ==========================================
boolean            ``int`` in {0, 1}
modular-int(n)     ``int`` residue in ``range(n)``
prime-field(p)     ``int`` residue in ``range(p)``
rationals          ``fractions.Fraction``
dual-rationals     :class:`Dual` (a + b*x with x*x = 0)
max-times          non-negative ``Fraction``
finite-table       ``int`` element id in ``range(m)``
=================  ==========================================

Every semiring carries a capability :class:`Tier` that tells the span
machinery which decision procedure applies to it.
"""
from __future__ import annotations

import enum
import itertools
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Hashable, Iterable, Iterator, Sequence

from .errors import SemiringError

__all__ = [
    "Tier", "Semiring", "Dual", "Violation",
    "BooleanSemiring", "ModularIntegers", "PrimeField", "Rationals",
    "DualRationals", "MaxTimes", "TableSemiring", "CustomSemiring",
    "make_semiring", "sr_add", "sr_mul", "scalar_parse", "scalar_format",
    "axiom_suite", "AXIOMS",
]


class Tier(enum.Enum):
    """Which membership/equality procedure a semiring admits."""

    FINITE = "finite"
    FIELD = "field"
    ALGEBRA = "algebra"
    MAXTIMES = "maxtimes"
    NONE = "none"


_RAT = r"-?\d+(?:/\d+)?"
_RAT_RE = re.compile(rf"^{_RAT}$")
_INT_RE = re.compile(r"^-?\d+$")
_TABLE_RE = re.compile(r"^#(\d+)$")


def _parse_rational(text: str) -> Fraction:
    if not _RAT_RE.match(text):
        raise SemiringError(f"malformed rational literal {text!r}")
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise SemiringError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def _format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _random_fraction(rng: random.Random, lo: int = -9, hi: int = 9) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, 9))


@dataclass(frozen=True, order=True)
class Dual:
    """The dual number ``a + b*x`` over the rationals."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    def __add__(self, other: Dual) -> Dual:
        return Dual(self.a + other.a, self.b + other.b)

    def __mul__(self, other: Dual) -> Dual:
        return Dual(self.a * other.a, self.a * other.b + self.b * other.a)

    def __neg__(self) -> Dual:
        return Dual(-self.a, -self.b)

    def is_unit(self) -> bool:
        return self.a != 0

    def inverse(self) -> Dual:
        if not self.a:
            raise ZeroDivisionError("dual number with zero real part has no inverse")
        return Dual(1 / self.a, -self.b / (self.a * self.a))

    def __str__(self) -> str:
        return DualRationals().format(self)


class Semiring:
    """Abstract commutative semiring.

    Subclasses are frozen dataclasses, so two handles describing the same
    semiring compare (and hash) equal.
    """

    kind: str = "abstract"
    tier: Tier = Tier.NONE
    is_field: bool = False
    is_ring: bool = False

    zero: Any
    one: Any

    def add(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def contains(self, a) -> bool:
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def format(self, a) -> str:
        return str(a)

    def neg(self, a):
        raise SemiringError(f"{self.name} is not a ring")

    def inv(self, a):
        raise SemiringError(f"{self.name} is not a field")

    def sample(self, rng: random.Random):
        """A pseudo-random element, used by property sweeps."""
        return rng.choice(self.elements())

    @property
    def size(self) -> int | None:
        """Carrier cardinality, or None for infinite carriers."""
        return None

    @property
    def is_finite(self) -> bool:
        return self.size is not None

    def elements(self) -> list:
        raise SemiringError(f"{self.name} has an infinite carrier")

    def descriptor(self) -> dict:
        return {"kind": self.kind}

    @property
    def name(self) -> str:
        return self.kind

    def sum(self, xs: Iterable):
        acc = self.zero
        for x in xs:
            acc = self.add(acc, x)
        return acc

    def power(self, a, k: int):
        acc = self.one
        for _ in range(k):
            acc = self.mul(acc, a)
        return acc

    def __repr__(self) -> str:
        return f"<Semiring {self.name}>"


@dataclass(frozen=True, repr=False)
class BooleanSemiring(Semiring):
    kind = "boolean"
    tier = Tier.FINITE
    zero = 0
    one = 1

    def add(self, a, b):
        return a | b

    def mul(self, a, b):
        return a & b

    def contains(self, a) -> bool:
        return type(a) is int and a in (0, 1)

    def parse(self, text: str):
        text = text.strip()
        if text not in ("0", "1"):
            raise SemiringError(f"boolean literal must be 0 or 1, got {text!r}")
        return int(text)

    @property
    def size(self):
        return 2

    def elements(self):
        return [0, 1]

    @property
    def name(self):
        return "B"


@dataclass(frozen=True, repr=False)
class ModularIntegers(Semiring):
    """The ring Z/nZ."""

    n: int = 2
    kind = "modular-int"
    tier = Tier.FINITE
    is_ring = True
    zero = 0
    one = 1

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise SemiringError(f"modulus must be an integer >= 2, got {self.n!r}")

    def add(self, a, b):
        return (a + b) % self.n

    def mul(self, a, b):
        return (a * b) % self.n

    def neg(self, a):
        return (-a) % self.n

    def contains(self, a) -> bool:
        return type(a) is int and 0 <= a < self.n

    def parse(self, text: str):
        text = text.strip()
        if not _INT_RE.match(text):
            raise SemiringError(f"malformed residue literal {text!r}")
        return int(text) % self.n

    @property
    def size(self):
        return self.n

    def elements(self):
        return list(range(self.n))

    def descriptor(self):
        return {"kind": self.kind, "n": self.n}

    @property
    def name(self):
        return f"Z{self.n}"


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p ** 0.5) + 1))


@dataclass(frozen=True, repr=False)
class PrimeField(ModularIntegers):
    """The field F_p; same residues as Z/pZ but also admits field elimination."""

    n: int = 2
    kind = "prime-field"
    is_field = True

    def __post_init__(self):
        if not isinstance(self.n, int) or not _is_prime(self.n):
            raise SemiringError(f"prime-field needs a prime p, got {self.n!r}")

    @property
    def p(self) -> int:
        return self.n

    def inv(self, a):
        if a % self.n == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, -1, self.n)

    def descriptor(self):
        return {"kind": self.kind, "p": self.n}

    @property
    def name(self):
        return f"F{self.n}"


@dataclass(frozen=True, repr=False)
class Rationals(Semiring):
    kind = "rationals"
    tier = Tier.FIELD
    is_field = True
    is_ring = True
    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        return 1 / a

    def contains(self, a) -> bool:
        return isinstance(a, Fraction)

    def parse(self, text: str):
        return _parse_rational(text.strip())

    def format(self, a) -> str:
        return _format_rational(a)

    def sample(self, rng):
        return _random_fraction(rng)

    @property
    def name(self):
        return "Q"


@dataclass(frozen=True, repr=False)
class DualRationals(Semiring):
    """Q[x]/(x^2), an Artinian ring with zero divisors."""

    kind = "dual-rationals"
    tier = Tier.ALGEBRA
    is_ring = True
    zero = Dual(0, 0)
    one = Dual(1, 0)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def contains(self, a) -> bool:
        return isinstance(a, Dual)

    def parse(self, text: str):
        text = text.replace(" ", "")
        if not text.endswith("x"):
            return Dual(_parse_rational(text), 0)
        body = text[:-1]
        # split "a+bx" / "a-bx" / "a+-bx" at the last sign that follows a digit
        cut = next((i for i in range(len(body) - 1, 0, -1)
                    if body[i] in "+-" and body[i - 1].isdigit()), None)
        if cut is None:
            a, b = "0", body
        else:
            a, b = body[:cut], body[cut + 1:] if body[cut] == "+" else body[cut:]
        if b in ("", "-"):
            b += "1"
        return Dual(_parse_rational(a), _parse_rational(b))

    def format(self, d) -> str:
        if d.b == 0:
            return _format_rational(d.a)
        if d.a == 0:
            return f"{_format_rational(d.b)}x"
        return f"{_format_rational(d.a)}+{_format_rational(d.b)}x"

    def sample(self, rng):
        return Dual(_random_fraction(rng), _random_fraction(rng))

    @property
    def name(self):
        return "Q[x]/(x^2)"


@dataclass(frozen=True, repr=False)
class MaxTimes(Semiring):
    """(Q>=0, max, *, 0, 1)."""

    kind = "max-times"
    tier = Tier.MAXTIMES
    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a if a >= b else b

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return 1 / a

    def contains(self, a) -> bool:
        return isinstance(a, Fraction) and a >= 0

    def parse(self, text: str):
        q = _parse_rational(text.strip())
        if q < 0:
            raise SemiringError(f"max-times carrier is Q>=0, got {text!r}")
        return q

    def format(self, a) -> str:
        return _format_rational(a)

    def sample(self, rng):
        return _random_fraction(rng, 0, 9)

    @property
    def name(self):
        return "Qmax"


@dataclass(frozen=True, repr=False)
class TableSemiring(Semiring):
    """Finite semiring given by explicit operation tables over ids 0..m-1.

    Id 0 is the additive neutral element and id 1 the multiplicative one.
    Construct through :func:`make_semiring` to get the axioms verified.
    """

    add_table: tuple = ()
    mul_table: tuple = ()
    kind = "finite-table"
    tier = Tier.FINITE
    zero = 0
    one = 1

    def add(self, a, b):
        return self.add_table[a][b]

    def mul(self, a, b):
        return self.mul_table[a][b]

    def contains(self, a) -> bool:
        return type(a) is int and 0 <= a < len(self.add_table)

    @property
    def is_ring(self) -> bool:
        return all(0 in row for row in self.add_table)

    def neg(self, a):
        for b, s in enumerate(self.add_table[a]):
            if s == 0:
                return b
        raise SemiringError(f"#{a} has no additive inverse")

    def parse(self, text: str):
        m = _TABLE_RE.match(text.strip())
        if not m:
            raise SemiringError(f"finite-table literal must look like #<id>, got {text!r}")
        a = int(m.group(1))
        if not self.contains(a):
            raise SemiringError(f"element id {a} outside carrier of size {self.size}")
        return a

    def format(self, a) -> str:
        return f"#{a}"

    @property
    def size(self):
        return len(self.add_table)

    def elements(self):
        return list(range(self.size))

    def descriptor(self):
        return {"kind": self.kind,
                "add": [list(r) for r in self.add_table],
                "mul": [list(r) for r in self.mul_table]}

    @property
    def name(self):
        return f"T{self.size}"


@dataclass(frozen=True, repr=False, eq=False)
class CustomSemiring(Semiring):
    """User-supplied operations with no decision procedures (tier NONE).

    Handles compare by identity.
    """

    plus: Callable = None
    times: Callable = None
    zero: Hashable = None
    one: Hashable = None
    member: Callable = field(default=lambda a: True)
    label: str = "custom"
    kind = "custom"
    tier = Tier.NONE

    def add(self, a, b):
        return self.plus(a, b)

    def mul(self, a, b):
        return self.times(a, b)

    def contains(self, a) -> bool:
        return self.member(a)

    def parse(self, text: str):
        raise SemiringError("custom semirings have no literal grammar")

    def sample(self, rng):
        raise SemiringError("custom semirings cannot be sampled")

    @property
    def name(self):
        return self.label


_ALIASES = {
    "boolean": {"kind": "boolean"}, "b": {"kind": "boolean"}, "bool": {"kind": "boolean"},
    "rationals": {"kind": "rationals"}, "q": {"kind": "rationals"},
    "dual-rationals": {"kind": "dual-rationals"}, "dual": {"kind": "dual-rationals"},
    "q[x]/(x^2)": {"kind": "dual-rationals"},
    "max-times": {"kind": "max-times"}, "maxtimes": {"kind": "max-times"}, "qmax": {"kind": "max-times"},
}


def _descriptor_from_string(text: str) -> dict:
    key = text.strip().lower()
    if key in _ALIASES:
        return dict(_ALIASES[key])
    m = re.fullmatch(r"z(\d+)", key)
    if m:
        return {"kind": "modular-int", "n": int(m.group(1))}
    m = re.fullmatch(r"f(\d+)", key)
    if m:
        return {"kind": "prime-field", "p": int(m.group(1))}
    raise SemiringError(f"unknown semiring {text!r}")


def make_semiring(desc) -> Semiring:
    """Build a semiring from a descriptor dict or a short name.

    Short names: ``boolean``/``B``, ``Z<n>``, ``F<p>``, ``Q``, ``dual``,
    ``maxtimes``.  Finite tables are checked against every axiom.

    >>> make_semiring("Z4").mul(2, 2)
    0
    """
    if isinstance(desc, Semiring):
        return desc
    if isinstance(desc, str):
        desc = _descriptor_from_string(desc)
    if not isinstance(desc, dict) or "kind" not in desc:
        raise SemiringError(f"semiring descriptor must name a kind, got {desc!r}")
    kind = desc["kind"]
    if kind == "boolean":
        return BooleanSemiring()
    if kind == "modular-int":
        return ModularIntegers(desc.get("n"))
    if kind == "prime-field":
        return PrimeField(desc.get("p"))
    if kind == "rationals":
        return Rationals()
    if kind == "dual-rationals":
        return DualRationals()
    if kind == "max-times":
        return MaxTimes()
    if kind == "finite-table":
        return _make_table(desc.get("add"), desc.get("mul"))
    raise SemiringError(f"unknown semiring kind {kind!r}")


def _make_table(add, mul) -> TableSemiring:
    if not add or not mul:
        raise SemiringError("finite-table needs non-empty 'add' and 'mul' tables")
    m = len(add)
    if m < 2:
        raise SemiringError("finite-table carrier needs at least the ids 0 and 1")
    for label, table in (("add", add), ("mul", mul)):
        if len(table) != m or any(len(row) != m for row in table):
            raise SemiringError(f"'{label}' table must be {m}x{m}")
        for row in table:
            for e in row:
                if type(e) is not int or not 0 <= e < m:
                    raise SemiringError(f"'{label}' table entry {e!r} is not an element id")
    S = TableSemiring(tuple(map(tuple, add)), tuple(map(tuple, mul)))
    report = axiom_suite(S, "exhaustive")
    if report:
        v = report[0]
        others = sorted({w.axiom for w in report} - {v.axiom})
        also = f" (also violated: {', '.join(others)})" if others else ""
        raise SemiringError(f"table violates {v.axiom} at {v.witness}{also}")
    return S


def _check(S: Semiring, *xs):
    for x in xs:
        if not S.contains(x):
            raise SemiringError(f"{x!r} is not an element of {S.name}")


def sr_add(S: Semiring, a, b):
    _check(S, a, b)
    return S.add(a, b)


def sr_mul(S: Semiring, a, b):
    _check(S, a, b)
    return S.mul(a, b)


def scalar_parse(S: Semiring, text: str):
    return S.parse(text)


def scalar_format(S: Semiring, a) -> str:
    _check(S, a)
    return S.format(a)


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple


AXIOMS = (
    "additive associativity",
    "additive commutativity",
    "additive identity",
    "multiplicative associativity",
    "multiplicative commutativity",
    "multiplicative identity",
    "distributivity",
    "absorption of 0",
)


def _violations(S: Semiring, a, b, c) -> Iterator[tuple[str, tuple]]:
    add, mul, z, o = S.add, S.mul, S.zero, S.one
    if add(add(a, b), c) != add(a, add(b, c)):
        yield AXIOMS[0], (a, b, c)
    if add(a, b) != add(b, a):
        yield AXIOMS[1], (a, b)
    if add(a, z) != a or add(z, a) != a:
        yield AXIOMS[2], (a,)
    if mul(mul(a, b), c) != mul(a, mul(b, c)):
        yield AXIOMS[3], (a, b, c)
    if mul(a, b) != mul(b, a):
        yield AXIOMS[4], (a, b)
    if mul(a, o) != a or mul(o, a) != a:
        yield AXIOMS[5], (a,)
    if mul(a, add(b, c)) != add(mul(a, b), mul(a, c)):
        yield AXIOMS[6], (a, b, c)
    if mul(z, a) != z or mul(a, z) != z:
        yield AXIOMS[7], (a,)


def axiom_suite(S: Semiring, samples: str | Sequence = "exhaustive") -> list[Violation]:
    """Check the eight commutative-semiring axioms.

    ``samples`` is ``"exhaustive"`` (finite carriers only), a sequence of
    scalars (every triple over it is tested), or a sequence of 3-tuples.
    Returns the violations found, deduplicated, in discovery order.
    """
    if isinstance(samples, str):
        if samples != "exhaustive":
            raise SemiringError(f"unknown sample mode {samples!r}")
        if not S.is_finite:
            raise SemiringError(f"exhaustive axiom check needs a finite carrier, {S.name} is infinite")
        triples: Iterable = itertools.product(S.elements(), repeat=3)
    else:
        samples = list(samples)
        if samples and all(isinstance(t, tuple) and len(t) == 3 for t in samples):
            triples = samples
        else:
            triples = itertools.product(samples, repeat=3)
    seen = set()
    report = []
    for a, b, c in triples:
        for axiom, witness in _violations(S, a, b, c):
            if (axiom, witness) not in seen:
                seen.add((axiom, witness))
                report.append(Violation(axiom, witness))
    return report
