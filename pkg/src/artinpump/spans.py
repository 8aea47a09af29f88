"""Finitely generated subsemimodules of S^n and their lengths.

A subsemimodule is always held as a generator list (:class:`SpanBasis`).
Membership and equality are decided by a procedure picked from the
semiring's capability tier:

* FINITE   - materialize the closure of the generators and look the vector up
* FIELD    - Gaussian elimination
* ALGEBRA  - dual rationals embedded in Q^2n, generators augmented by x*g
* MAXTIMES - residuation (greatest scalar multiple below the target)

Lattices of all subsemimodules are only built for finite carriers.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import BudgetExceeded, DimensionError, UndecidableError
from .linrep import Matrix
from .scalars import Dual, MaxTimes, Rationals, Semiring, Tier

CapabilityTier = Tier

DEFAULT_LATTICE_BUDGET = 4096

_Q = Rationals()


@dataclass(frozen=True)
class SpanBasis:
    semiring: Semiring
    ambient_dim: int
    generators: tuple = ()

    def __post_init__(self):
        gens = tuple(tuple(g) for g in self.generators)
        for g in gens:
            if len(g) != self.ambient_dim:
                raise DimensionError(f"generator of length {len(g)} in ambient dimension {self.ambient_dim}")
        object.__setattr__(self, "generators", gens)

    @property
    def tier(self) -> Tier:
        return self.semiring.tier

    def __contains__(self, v) -> bool:
        return span_membership(self, v)


def procedure_for(S: Semiring, n: int, budget: int = DEFAULT_LATTICE_BUDGET) -> str:
    """Name of the decision procedure used for spans in S^n."""
    tier = S.tier
    if tier is Tier.FINITE:
        if S.is_field and S.size ** n > budget:
            return "field"
        return "finite"
    if tier is Tier.FIELD:
        return "field"
    if tier is Tier.ALGEBRA:
        return "algebra"
    if tier is Tier.MAXTIMES:
        return "maxtimes"
    raise UndecidableError(f"span membership is undecidable here: {S.name} has no capability tier")


# -- FINITE ------------------------------------------------------------------

def _add_vec(S, u, v):
    return tuple(S.add(a, b) for a, b in zip(u, v))


def _scale(S, s, v):
    return tuple(S.mul(s, a) for a in v)


@lru_cache(maxsize=4096)
def closure(S: Semiring, n: int, generators: tuple) -> frozenset:
    """All S-linear combinations of ``generators`` in S^n.

    Built one generator at a time: if N is closed then
    ``<N, g> = {m + s*g : m in N, s in S}``.
    """
    elems = S.elements()
    current = {tuple(S.zero for _ in range(n))}
    for g in generators:
        if g in current:
            continue
        multiples = {_scale(S, s, g) for s in elems}
        current = {_add_vec(S, m, sg) for m in current for sg in multiples}
    return frozenset(current)


def span_elements(B: SpanBasis) -> frozenset:
    if not B.semiring.is_finite:
        raise UndecidableError(f"{B.semiring.name} spans cannot be listed element by element")
    return closure(B.semiring, B.ambient_dim, B.generators)


# -- FIELD -------------------------------------------------------------------

def _reduce(S: Semiring, basis: list[tuple[int, tuple]], v: tuple) -> tuple:
    """Reduce v against an echelon basis given as (pivot column, row) pairs."""
    v = list(v)
    for p, row in basis:
        c = v[p]
        if c != S.zero:
            f = S.neg(c)
            v = [S.add(a, S.mul(f, b)) for a, b in zip(v, row)]
    return tuple(v)


def echelon(S: Semiring, vectors: Iterable[Sequence]) -> list[tuple[int, tuple]]:
    """Reduced echelon basis of the row space, rows normalized to pivot 1."""
    basis: list[tuple[int, tuple]] = []
    for v in vectors:
        r = _reduce(S, basis, tuple(v))
        p = next((i for i, a in enumerate(r) if a != S.zero), None)
        if p is None:
            continue
        inv = S.inv(r[p])
        r = tuple(S.mul(inv, a) for a in r)
        # keep the basis fully reduced so that _reduce works in one pass
        new_basis = []
        for q, row in basis:
            c = row[p]
            if c != S.zero:
                f = S.neg(c)
                row = tuple(S.add(a, S.mul(f, b)) for a, b in zip(row, r))
            new_basis.append((q, row))
        new_basis.append((p, r))
        basis = new_basis
    return basis


def rank(S: Semiring, vectors: Iterable[Sequence]) -> int:
    return len(echelon(S, vectors))


def _field_member(S: Semiring, gens: Sequence[tuple], v: tuple) -> bool:
    residual = _reduce(S, echelon(S, gens), v)
    return all(a == S.zero for a in residual)


# -- ALGEBRA -----------------------------------------------------------------

def _embed(v: Sequence[Dual]) -> tuple:
    return tuple(d.a for d in v) + tuple(d.b for d in v)


def _times_x(v: Sequence[Dual]) -> tuple:
    return tuple(Dual(0, d.a) for d in v)


def _algebra_generators(gens: Sequence[tuple]) -> list[tuple]:
    out = []
    for g in gens:
        out.append(_embed(g))
        out.append(_embed(_times_x(g)))
    return out


# -- MAXTIMES ----------------------------------------------------------------

def residual_scalar(g: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    """Greatest lambda with lambda*g <= v coordinatewise (0 for g = 0)."""
    lam = None
    for gc, vc in zip(g, v):
        if gc:
            q = vc / gc
            lam = q if lam is None or q < lam else lam
    return Fraction(0) if lam is None else lam


def residuation(gens: Sequence[tuple], v: tuple) -> tuple:
    """The largest max-combination of ``gens`` lying below ``v``."""
    best = tuple(Fraction(0) for _ in v)
    for g in gens:
        lam = residual_scalar(g, v)
        best = tuple(max(b, lam * gc) for b, gc in zip(best, g))
    return best


# -- public operations -------------------------------------------------------

def span_membership(B: SpanBasis, v: Sequence) -> bool:
    """Is ``v`` in the span of ``B.generators``?"""
    v = tuple(v)
    S, n = B.semiring, B.ambient_dim
    if len(v) != n:
        raise DimensionError(f"vector of length {len(v)} in ambient dimension {n}")
    proc = procedure_for(S, n)
    if all(a == S.zero for a in v):
        return True
    if proc == "finite":
        return v in closure(S, n, B.generators)
    if proc == "field":
        return _field_member(S, B.generators, v)
    if proc == "algebra":
        return _field_member(_Q, _algebra_generators(B.generators), _embed(v))
    return residuation(B.generators, v) == v


def is_subspan(B1: SpanBasis, B2: SpanBasis) -> bool:
    """<B1> is contained in <B2>."""
    _compatible(B1, B2)
    S, n = B1.semiring, B1.ambient_dim
    proc = procedure_for(S, n)
    if proc == "finite":
        return closure(S, n, B1.generators) <= closure(S, n, B2.generators)
    if proc == "field":
        basis = echelon(S, B2.generators)
        return all(all(a == S.zero for a in _reduce(S, basis, g)) for g in B1.generators)
    if proc == "algebra":
        basis = echelon(_Q, _algebra_generators(B2.generators))
        return all(all(a == 0 for a in _reduce(_Q, basis, _embed(g))) for g in B1.generators)
    return all(span_membership(B2, g) for g in B1.generators)


def span_equal(B1: SpanBasis, B2: SpanBasis) -> bool:
    return is_subspan(B1, B2) and is_subspan(B2, B1)


def _compatible(B1: SpanBasis, B2: SpanBasis) -> None:
    if B1.semiring != B2.semiring:
        raise DimensionError(f"spans over {B1.semiring.name} and {B2.semiring.name}")
    if B1.ambient_dim != B2.ambient_dim:
        raise DimensionError(f"ambient dimensions {B1.ambient_dim} and {B2.ambient_dim} differ")


def image_basis(A: Matrix) -> SpanBasis:
    """The image of A, generated by its columns (the images of the unit vectors)."""
    return SpanBasis(A.semiring, A.rows, tuple(A.columns()))


def span_rank(B: SpanBasis) -> int:
    """Dimension of a span over a field (or of its rational embedding for ALGEBRA)."""
    proc = procedure_for(B.semiring, B.ambient_dim)
    if proc == "field":
        return rank(B.semiring, B.generators)
    if proc == "algebra":
        return rank(_Q, _algebra_generators(B.generators))
    if B.semiring.is_field:
        return rank(B.semiring, B.generators)
    raise UndecidableError(f"rank is only defined over fields, not {B.semiring.name}")


# -- lattices and length -----------------------------------------------------

@dataclass(frozen=True)
class SubmoduleLattice:
    """Every subsemimodule of a finite semimodule, with covering edges.

    ``nodes`` are sorted by size; ``covers`` holds index pairs (i, j) with
    nodes[i] covered by nodes[j].
    """

    semiring: Semiring
    dim: int
    ambient: frozenset
    nodes: tuple
    covers: tuple = field(repr=False)

    def __len__(self) -> int:
        return len(self.nodes)

    def index(self, node) -> int:
        return self.nodes.index(frozenset(node))


def _extend(S: Semiring, elems, N: frozenset, v: tuple) -> frozenset:
    multiples = {_scale(S, s, v) for s in elems}
    return frozenset(_add_vec(S, m, sv) for m in N for sv in multiples)


def _sort_key(node: frozenset):
    return (len(node), sorted(node))


def enumerate_sublattice(S: Semiring, ambient: Iterable[tuple], dim: int | None = None) -> SubmoduleLattice:
    """All subsemimodules of the finite semimodule ``ambient`` (a closed set of vectors)."""
    if S.tier is not Tier.FINITE:
        raise UndecidableError(f"lattice enumeration needs a finite carrier, not {S.name}")
    ambient = frozenset(ambient)
    if dim is None:
        dim = len(next(iter(ambient)))
    elems = S.elements()
    bottom = frozenset({tuple(S.zero for _ in range(dim))})
    if not bottom <= ambient:
        raise DimensionError("ambient set does not contain the zero vector")
    extensions: dict[frozenset, set[frozenset]] = {}
    todo = [bottom]
    while todo:
        N = todo.pop()
        if N in extensions:
            continue
        ext = set()
        for v in ambient - N:
            K = _extend(S, elems, N, v)
            if not K <= ambient:
                raise DimensionError("ambient set is not closed under the semiring operations")
            ext.add(K)
        extensions[N] = ext
        todo.extend(K for K in ext if K not in extensions)
    nodes = sorted(extensions, key=_sort_key)
    pos = {N: i for i, N in enumerate(nodes)}
    covers = []
    for N, ext in extensions.items():
        for K in ext:
            if not any(K2 < K for K2 in ext):
                covers.append((pos[N], pos[K]))
    return SubmoduleLattice(S, dim, ambient, tuple(nodes), tuple(sorted(covers)))


def enumerate_lattice(S: Semiring, n: int, budget: int = DEFAULT_LATTICE_BUDGET) -> SubmoduleLattice:
    """The lattice of all subsemimodules of S^n (finite S only)."""
    if S.tier is not Tier.FINITE:
        raise UndecidableError(f"lattice enumeration needs a finite carrier, not {S.name}")
    if n < 1:
        raise DimensionError("dimension must be positive")
    if S.size ** n > budget:
        raise BudgetExceeded(f"|{S.name}|^{n} = {S.size ** n} elements exceed the lattice budget of {budget}")
    full = closure(S, n, tuple(tuple(S.one if i == j else S.zero for i in range(n)) for j in range(n)))
    return enumerate_sublattice(S, full, n)


def length_exact(L: SubmoduleLattice) -> int:
    """Number of strict steps in a longest chain (longest path over covers)."""
    best = [0] * len(L.nodes)
    # covers go from smaller to larger nodes and nodes are sorted by size
    for i, j in sorted(L.covers, key=lambda e: len(L.nodes[e[0]])):
        best[j] = max(best[j], best[i] + 1)
    return max(best)


def span_length(B: SpanBasis, budget: int = DEFAULT_LATTICE_BUDGET) -> int:
    """Exact length of a span over a finite semiring, by lattice enumeration."""
    elems = span_elements(B)
    if len(elems) > budget:
        raise BudgetExceeded(f"span with {len(elems)} elements exceeds the lattice budget of {budget}")
    return length_exact(enumerate_sublattice(B.semiring, elems, B.ambient_dim))


@lru_cache(maxsize=None)
def _self_length(S: Semiring) -> int:
    return length_exact(enumerate_lattice(S, 1))


def length_bound(S: Semiring, n: int) -> int:
    """An upper bound on the length of S^n.

    Fields give n; finite rings min(n * l(S), |S|^n - 1); other finite
    semirings |S|^n - 1; dual rationals 2n.  Max-times and untiered
    semirings have no finite bound.
    """
    if n < 1:
        raise DimensionError("dimension must be positive")
    if S.is_field and S.tier in (Tier.FIELD, Tier.FINITE):
        return n
    if S.tier is Tier.FINITE:
        crude = S.size ** n - 1
        if S.is_ring:
            return min(n * _self_length(S), crude)
        return crude
    if S.tier is Tier.ALGEBRA:
        return 2 * n
    raise UndecidableError(f"no finite bound available: {S.name}^{n} may have infinite length")


# -- max-times chain ---------------------------------------------------------

@dataclass(frozen=True)
class ChainStep:
    index: int
    added: tuple
    strict: bool
    generators_are_members: bool


@dataclass(frozen=True)
class ChainReport:
    steps: tuple

    @property
    def all_strict(self) -> bool:
        return all(s.strict for s in self.steps)

    @property
    def members_ok(self) -> bool:
        return all(s.generators_are_members for s in self.steps)


def maxtimes_chain(i_max: int) -> ChainReport:
    """Check that M_i = <(0,1), (1,1), ..., (i,1)> strictly grows in Qmax^2.

    Step i records whether u_{i+1} = (i+1, 1) lies outside M_i, and whether
    every u_j with j <= i+1 lies in M_{i+1}.
    """
    if i_max < 1:
        raise ValueError("i_max must be at least 1")
    S = MaxTimes()
    u = [(Fraction(i), Fraction(1)) for i in range(i_max + 1)]
    steps = []
    for i in range(i_max):
        before = SpanBasis(S, 2, u[: i + 1])
        after = SpanBasis(S, 2, u[: i + 2])
        strict = not span_membership(before, u[i + 1])
        members = all(span_membership(after, g) for g in u[: i + 2])
        steps.append(ChainStep(i, u[i + 1], strict, members))
    return ChainReport(tuple(steps))
