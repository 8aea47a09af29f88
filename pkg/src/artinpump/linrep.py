"""Matrices over a semiring and linear representations of weighted languages.

Words are plain strings; each character is one letter.  The homomorphism
convention is ``mu(uv) = mu(u) @ mu(v)`` so that ``L(w) = in @ mu(w) @ out``
with ``in`` a row covector and ``out`` a column vector.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .errors import BudgetExceeded, DimensionError, SemiringError
from .scalars import Semiring, make_semiring

DEFAULT_SUPPORT_BUDGET = 10 ** 6


@dataclass(frozen=True, repr=False)
class Matrix:
    semiring: Semiring
    rows: int
    cols: int
    entries: tuple  # tuple of row tuples

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise DimensionError(f"matrix dimensions must be positive, got {self.rows}x{self.cols}")
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionError(f"entries do not form a {self.rows}x{self.cols} array")

    @classmethod
    def from_rows(cls, S: Semiring, rows: Sequence[Sequence]) -> Matrix:
        rows = tuple(tuple(r) for r in rows)
        if not rows or not rows[0]:
            raise DimensionError("matrix needs at least one row and column")
        for r in rows:
            for a in r:
                if not S.contains(a):
                    raise SemiringError(f"{a!r} is not an element of {S.name}")
        return cls(S, len(rows), len(rows[0]), rows)

    @classmethod
    def parse(cls, S: Semiring, rows: Sequence[Sequence[str]]) -> Matrix:
        return cls.from_rows(S, [[S.parse(str(t)) for t in r] for r in rows])

    @classmethod
    def column_vector(cls, S: Semiring, values: Sequence) -> Matrix:
        return cls.from_rows(S, [[v] for v in values])

    @classmethod
    def row_vector(cls, S: Semiring, values: Sequence) -> Matrix:
        return cls.from_rows(S, [list(values)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.cols)]

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __matmul__(self, other: Matrix) -> Matrix:
        return mat_mul(self, other)

    def apply(self, v: Sequence) -> tuple:
        """Matrix times column vector, with the vector given as a flat sequence."""
        if len(v) != self.cols:
            raise DimensionError(f"vector of length {len(v)} against {self.cols} columns")
        S = self.semiring
        return tuple(S.sum(S.mul(a, b) for a, b in zip(row, v)) for row in self.entries)

    def format(self) -> list[list[str]]:
        return [[self.semiring.format(a) for a in r] for r in self.entries]

    def __repr__(self) -> str:
        return f"Matrix({self.semiring.name}, {self.format()})"

    def __str__(self) -> str:
        cells = self.format()
        width = max(len(c) for r in cells for c in r)
        return "\n".join("[" + " ".join(c.rjust(width) for c in r) + "]" for r in cells)


def identity(S: Semiring, n: int) -> Matrix:
    return Matrix(S, n, n, tuple(tuple(S.one if i == j else S.zero for j in range(n)) for i in range(n)))


def zeros(S: Semiring, rows: int, cols: int | None = None) -> Matrix:
    cols = rows if cols is None else cols
    return Matrix(S, rows, cols, tuple(tuple(S.zero for _ in range(cols)) for _ in range(rows)))


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    """``(A B)[p][r] = sum_q A[p][q] * B[q][r]``, exactly."""
    if A.semiring != B.semiring:
        raise SemiringError(f"cannot multiply {A.semiring.name} by {B.semiring.name} matrix")
    if A.cols != B.rows:
        raise DimensionError(f"cannot multiply {A.rows}x{A.cols} by {B.rows}x{B.cols}")
    S = A.semiring
    add, mul, zero = S.add, S.mul, S.zero
    bcols = [B.column(j) for j in range(B.cols)]
    out = []
    for row in A.entries:
        new = []
        for col in bcols:
            acc = zero
            for a, b in zip(row, col):
                acc = add(acc, mul(a, b))
            new.append(acc)
        out.append(tuple(new))
    return Matrix(S, A.rows, B.cols, tuple(out))


def mat_pow(A: Matrix, k: int) -> Matrix:
    if not A.is_square():
        raise DimensionError("only square matrices have powers")
    if k < 0:
        raise ValueError("negative matrix power")
    result = identity(A.semiring, A.rows)
    base = A
    while k:
        if k & 1:
            result = mat_mul(result, base)
        k >>= 1
        if k:
            base = mat_mul(base, base)
    return result


@dataclass(frozen=True)
class WeightedWordSample:
    word: str
    weight: object


@dataclass(frozen=True, eq=False)
class LinearRepresentation:
    """A weighted automaton ``(Q, in, out, mu)``.

    ``in_vec`` is 1 x |Q|, ``out_vec`` is |Q| x 1 and every ``mu`` matrix is
    |Q| x |Q|, all over the same semiring.
    """

    semiring: Semiring
    states: tuple
    in_vec: Matrix
    out_vec: Matrix
    mu: Mapping[str, Matrix]

    def __post_init__(self):
        n = len(self.states)
        if n == 0:
            raise DimensionError("a representation needs at least one state")
        if len(set(self.states)) != n:
            raise DimensionError("state names must be distinct")
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "mu", dict(sorted(self.mu.items())))
        if (self.in_vec.rows, self.in_vec.cols) != (1, n):
            raise DimensionError(f"input covector must be 1x{n}")
        if (self.out_vec.rows, self.out_vec.cols) != (n, 1):
            raise DimensionError(f"output vector must be {n}x1")
        for letter, m in self.mu.items():
            if not isinstance(letter, str) or len(letter) != 1:
                raise DimensionError(f"letters must be single characters, got {letter!r}")
            if (m.rows, m.cols) != (n, n):
                raise DimensionError(f"matrix for {letter!r} must be {n}x{n}, got {m.rows}x{m.cols}")
        for m in (self.in_vec, self.out_vec, *self.mu.values()):
            if m.semiring != self.semiring:
                raise SemiringError("all matrices must share the representation's semiring")

    @classmethod
    def build(cls, semiring, in_vec: Sequence, out_vec: Sequence,
              mu: Mapping[str, Sequence[Sequence]], states: Sequence[str] | None = None
              ) -> LinearRepresentation:
        """Convenience constructor from plain scalars (or literal strings)."""
        S = make_semiring(semiring)

        def conv(a):
            # plain ints and the like go through the literal grammar
            if isinstance(a, str) or not S.contains(a):
                return S.parse(str(a))
            return a

        n = len(in_vec)
        states = tuple(states) if states is not None else tuple(f"q{i}" for i in range(n))
        return cls(
            S, states,
            Matrix.row_vector(S, [conv(a) for a in in_vec]),
            Matrix.column_vector(S, [conv(a) for a in out_vec]),
            {k: Matrix.from_rows(S, [[conv(a) for a in r] for r in rows]) for k, rows in mu.items()},
        )

    @property
    def alphabet(self) -> tuple:
        return tuple(self.mu)

    @property
    def dim(self) -> int:
        return len(self.states)

    def __eq__(self, other):
        if not isinstance(other, LinearRepresentation):
            return NotImplemented
        return (self.semiring == other.semiring and self.states == other.states
                and self.in_vec == other.in_vec and self.out_vec == other.out_vec
                and self.mu == other.mu)

    __hash__ = None

    def check_word(self, w: str) -> None:
        for i, c in enumerate(w):
            if c not in self.mu:
                raise SemiringError(f"unknown letter {c!r} at position {i} (alphabet {''.join(self.alphabet)!r})")


def mu_of_word(rep: LinearRepresentation, w: str) -> Matrix:
    rep.check_word(w)
    m = identity(rep.semiring, rep.dim)
    for c in w:
        m = mat_mul(m, rep.mu[c])
    return m


def _row_times(S: Semiring, row: tuple, M: Matrix) -> tuple:
    add, mul, zero = S.add, S.mul, S.zero
    out = []
    for j in range(M.cols):
        acc = zero
        for i, a in enumerate(row):
            acc = add(acc, mul(a, M.entries[i][j]))
        out.append(acc)
    return tuple(out)


def _dot(S: Semiring, row: tuple, col: tuple):
    return S.sum(S.mul(a, b) for a, b in zip(row, col))


def evaluate(rep: LinearRepresentation, w: str):
    """The weight ``L(w) = in @ mu(w) @ out``."""
    rep.check_word(w)
    S = rep.semiring
    row = rep.in_vec.entries[0]
    for c in w:
        row = _row_times(S, row, rep.mu[c])
    return _dot(S, row, rep.out_vec.column(0))


def words_up_to(alphabet: Sequence[str], max_len: int) -> Iterator[str]:
    """All words of length <= max_len, by length then lexicographically."""
    letters = sorted(alphabet)
    level = [""]
    for _ in range(max_len + 1):
        yield from level
        level = [w + c for w in level for c in letters]


def support_sample(rep: LinearRepresentation, max_len: int,
                   budget: int = DEFAULT_SUPPORT_BUDGET) -> list[WeightedWordSample]:
    """Every word of length <= max_len with nonzero weight.

    Refuses with :class:`BudgetExceeded` when more than ``budget`` words
    would have to be evaluated.
    """
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    k = len(rep.alphabet)
    total = sum(k ** i for i in range(max_len + 1))
    if total > budget:
        raise BudgetExceeded(f"{total} words up to length {max_len} exceed the budget of {budget}")
    S = rep.semiring
    out_col = rep.out_vec.column(0)
    letters = sorted(rep.alphabet)
    found = []
    level = [("", rep.in_vec.entries[0])]
    for length in range(max_len + 1):
        for w, row in level:
            weight = _dot(S, row, out_col)
            if weight != S.zero:
                found.append(WeightedWordSample(w, weight))
        if length < max_len:
            level = [(w + c, _row_times(S, row, rep.mu[c])) for w, row in level for c in letters]
    return found
