import itertools
import random

import pytest

from artinpump import (Dual, Matrix, UndecidableError, enumerate_lattice, factorization_check,
                       image_basis, injective_surjective, is_pseudoregular, length_exact,
                       make_semiring, mat_mul, pseudopower, span_length)
from oracles import image_set, mat_mul_rows


def all_matrices(S, n):
    for flat in itertools.product(S.elements(), repeat=n * n):
        yield Matrix.from_rows(S, [flat[i * n:(i + 1) * n] for i in range(n)])


@pytest.mark.parametrize("name,n", [("Z4", 1), ("Z6", 1), ("Z2", 2), ("boolean", 2), ("F3", 2)])
def test_injective_iff_surjective(name, n):
    S = make_semiring(name)
    for A in all_matrices(S, n):
        inj, surj = injective_surjective(A)
        image = image_set(S, A.entries)
        assert inj == surj == (len(image) == S.size ** n)


@pytest.mark.parametrize("name", ["Z2", "boolean", "Z4", "F3"])
def test_pseudoregular_matches_image_oracle(name):
    S = make_semiring(name)
    for A in all_matrices(S, 2):
        sq = mat_mul_rows(S, A.entries, A.entries)
        expect = image_set(S, A.entries) == image_set(S, sq)
        assert is_pseudoregular(A).pseudoregular == expect


@pytest.mark.parametrize("name,ell", [("Z2", 2), ("boolean", 3)])
def test_pseudopower_at_the_length(name, ell):
    S = make_semiring(name)
    assert length_exact(enumerate_lattice(S, 2)) == ell
    for A in all_matrices(S, 2):
        P, report = pseudopower(A, ell)
        assert report.pseudoregular
        assert report.matrix == P


def test_pseudopower_too_small_can_fail():
    S = make_semiring("Z2")
    nil = Matrix.parse(S, [["0", "1"], ["0", "0"]])
    assert not pseudopower(nil, 1)[1].pseudoregular
    assert pseudopower(nil, 2)[1].pseudoregular


def test_rational_examples():
    Q = make_semiring("Q")
    assert not is_pseudoregular(Matrix.parse(Q, [["0", "1"], ["0", "0"]])).pseudoregular
    assert is_pseudoregular(Matrix.parse(Q, [["1", "1"], ["0", "0"]])).pseudoregular
    assert is_pseudoregular(Matrix.parse(Q, [["2", "1"], ["1", "1"]])).pseudoregular
    report = is_pseudoregular(Matrix.parse(Q, [["1", "2"], ["2", "4"]]), injsurj=True)
    assert report.pseudoregular
    assert report.injective is False and report.surjective is False


def test_dual_examples():
    D = make_semiring("dual")
    x = Dual(0, 1)
    assert not is_pseudoregular(Matrix.from_rows(D, [[x]])).pseudoregular
    assert is_pseudoregular(Matrix.from_rows(D, [[Dual(1, 1)]])).pseudoregular
    assert is_pseudoregular(Matrix.from_rows(D, [[Dual(0)]])).pseudoregular


def test_maxtimes_examples():
    M = make_semiring("maxtimes")
    assert is_pseudoregular(Matrix.parse(M, [["2", "0"], ["0", "3"]])).pseudoregular
    # (0 1; 0 0) squares to zero
    assert not is_pseudoregular(Matrix.parse(M, [["0", "1"], ["0", "0"]])).pseudoregular


def test_factorization_gives_pseudoregular():
    Q = make_semiring("Q")
    G = Matrix.parse(Q, [["2", "7"], ["0", "5"]])
    B = Matrix.parse(Q, [["1", "0"], ["0", "0"]])
    A = mat_mul(G, B)
    assert factorization_check(A, G, B)
    assert is_pseudoregular(A).pseudoregular
    assert not factorization_check(B, G, B)


def test_image_length_never_exceeds_ambient():
    rng = random.Random(9)
    for name in ["Z2", "Z4", "boolean"]:
        S = make_semiring(name)
        for n in (1, 2):
            ambient = length_exact(enumerate_lattice(S, n))
            for _ in range(15):
                A = Matrix.from_rows(S, [[rng.choice(S.elements()) for _ in range(n)] for _ in range(n)])
                assert span_length(image_basis(A)) <= ambient


def test_injsurj_refuses_other_tiers():
    with pytest.raises(UndecidableError):
        injective_surjective(Matrix.from_rows(make_semiring("dual"), [[Dual(1)]]))
    with pytest.raises(UndecidableError):
        injective_surjective(Matrix.parse(make_semiring("maxtimes"), [["1"]]))


def test_injsurj_large_prime_field_uses_rank():
    F = make_semiring("F101")
    A = Matrix.parse(F, [["1", "2", "3"], ["0", "1", "4"], ["5", "6", "0"]])
    assert injective_surjective(A) == (True, True)
    B = Matrix.parse(F, [["1", "2", "3"], ["2", "4", "6"], ["0", "0", "1"]])
    assert injective_surjective(B) == (False, False)
