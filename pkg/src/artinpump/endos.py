"""Endomorphisms of S^n: pseudoregularity and injective/surjective checks."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .errors import BudgetExceeded, DimensionError, UndecidableError
from .linrep import Matrix, mat_mul, mat_pow
from .scalars import Tier
from .spans import (DEFAULT_LATTICE_BUDGET, SpanBasis, image_basis, procedure_for,
                    rank, span_equal)


@dataclass(frozen=True)
class EndoReport:
    matrix: Matrix
    pseudoregular: bool
    im_basis: SpanBasis
    im_sq_basis: SpanBasis
    injective: Optional[bool] = None
    surjective: Optional[bool] = None


def _require_square(A: Matrix) -> None:
    if not A.is_square():
        raise DimensionError(f"endomorphisms are square, got {A.rows}x{A.cols}")


def is_pseudoregular(A: Matrix, injsurj: bool = False) -> EndoReport:
    """Decide ``im A == im A^2``.

    With ``injsurj=True`` the report also carries the injective/surjective
    verdicts when the tier supports them.
    """
    _require_square(A)
    im = image_basis(A)
    im_sq = image_basis(mat_mul(A, A))
    verdict = span_equal(im, im_sq)
    inj = surj = None
    if injsurj:
        try:
            inj, surj = injective_surjective(A)
        except (UndecidableError, BudgetExceeded):
            pass
    return EndoReport(A, verdict, im, im_sq, inj, surj)


def factorization_check(A: Matrix, G: Matrix, B: Matrix) -> bool:
    """A = G B with im B = im (B G B); such an A is always pseudoregular."""
    for m in (A, G, B):
        _require_square(m)
    if mat_mul(G, B) != A:
        return False
    return span_equal(image_basis(B), image_basis(mat_mul(mat_mul(B, G), B)))


def injective_surjective(A: Matrix, budget: int = DEFAULT_LATTICE_BUDGET) -> tuple[bool, bool]:
    """(injective, surjective) for A viewed as a map S^cols -> S^rows.

    Finite carriers are decided by enumerating the whole domain, fields
    by rank.  Other tiers are refused.
    """
    S = A.semiring
    if S.tier not in (Tier.FINITE, Tier.FIELD):
        raise UndecidableError(f"injectivity is not decided for {S.name} ({S.tier.value} tier)")
    n = max(A.rows, A.cols)
    if procedure_for(S, n, budget) == "field":
        r = rank(S, A.columns())
        return r == A.cols, r == A.rows
    if S.size ** A.cols > budget or S.size ** A.rows > budget:
        raise BudgetExceeded(f"enumerating {S.name}^{n} exceeds the budget of {budget}")
    images = {A.apply(v) for v in itertools.product(S.elements(), repeat=A.cols)}
    return len(images) == S.size ** A.cols, len(images) == S.size ** A.rows


def pseudopower(A: Matrix, ell: int) -> tuple[Matrix, EndoReport]:
    """A^ell and its pseudoregularity report; true whenever ell >= l(S^n)."""
    _require_square(A)
    if ell < 0:
        raise ValueError("ell must be non-negative")
    P = mat_pow(A, ell)
    return P, is_pseudoregular(P)
