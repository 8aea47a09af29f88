import random

import pytest

from artinpump import (BudgetExceeded, LinearRepresentation, NotInSupport, NoWitness, SemiringError,
                       WordTooShort, apply_letter_map, builtin_claim, claim_words, evaluate,
                       extract_witness, find_quasipower, gap_sequence, length_bound, make_semiring,
                       mu_of_word, pump_power_witness, pump_verify, pumped_weights,
                       quasipower_constant, reduce_alphabet, refute_support, verify_quasipower)
from artinpump.pump import CONSISTENT, PUMPING_CONTRADICTION, SUPPORT_MISMATCH, _zero_run
from artinpump.endos import is_pseudoregular
from oracles import is_quasipower, n_r


# -- quasipower constants ----------------------------------------------------

def test_constant_sigma_one_doubles():
    assert [quasipower_constant(r, 1) for r in range(21)] == [2 ** r for r in range(21)]


def test_constant_sigma_two():
    assert [quasipower_constant(r, 2) for r in range(4)] == [1, 3, 27, 3623878683]


@pytest.mark.parametrize("sigma", [1, 2, 3, 5])
def test_constant_matches_recursion(sigma):
    for r in range(3 if sigma > 2 else 4):
        assert quasipower_constant(r, sigma) == n_r(r, sigma)


def test_constant_refuses_monsters():
    with pytest.raises(BudgetExceeded):
        quasipower_constant(5, 2)


# -- quasipowers -------------------------------------------------------------

def test_quasipower_unary():
    d = find_quasipower("aaaa", 2)
    assert d.us == ("a", "aa", "aaaa") and d.vs == ("", "")
    assert verify_quasipower(d)


def test_quasipower_too_short():
    with pytest.raises(WordTooShort):
        find_quasipower("ab" * 13, 2)


def test_random_strict_quasipowers():
    rng = random.Random(11)
    for _ in range(200):
        sigma = rng.choice([1, 2])
        r = rng.randint(0, 6) if sigma == 1 else rng.randint(0, 2)
        letters = "ab"[:sigma]
        n = n_r(r, sigma) + rng.randint(0, 5)
        w = "".join(rng.choice(letters) for _ in range(n))
        d = find_quasipower(w, r, sigma=sigma)
        assert verify_quasipower(d, w)
        assert is_quasipower(d.word, r)


def test_best_effort_finds_short_towers():
    d = find_quasipower("xxabacabayy", 2, best_effort=True)
    assert verify_quasipower(d)
    assert d.word == "abacaba" and d.position == 2
    assert is_quasipower(d.word, 2)
    with pytest.raises(NoWitness):
        find_quasipower("abc", 1, best_effort=True)


def test_verify_rejects_broken_towers():
    d = find_quasipower("aaaa", 2)
    broken = type(d)(2, ("a", "aa", "aab"), ("", ""), 0, "aaaa")
    assert not verify_quasipower(broken)
    assert not verify_quasipower(d, host="bbbb")


# -- witnesses ---------------------------------------------------------------

def test_scan_witness(even_rep):
    wit = extract_witness(even_rep, "aaaaaa")
    assert (wit.u, wit.x, wit.v) == ("", "a", "aaaaa")
    assert wit.evidence.pseudoregular


def test_chain_witness(even_rep):
    wit = extract_witness(even_rep, "a" * 8, "chain")
    assert wit.x and wit.word == "a" * 8
    assert is_pseudoregular(mu_of_word(even_rep, wit.x)).pseudoregular
    assert verify_quasipower(wit.decomposition)


def test_no_witness_for_nilpotent_letters():
    rep = LinearRepresentation.build("Q", [1, 0], [0, 1], {"a": [[0, 1], [0, 0]]})
    with pytest.raises(NoWitness):
        extract_witness(rep, "a")


def test_chain_mode_on_finite_ring():
    rep = LinearRepresentation.build("Z4", [1, 0], [1, 1], {"a": [[2, 1], [0, 1]]})
    bound = length_bound(rep.semiring, rep.dim)
    # order bound + 1 = 5 over one letter needs 2^5 letters
    w = "a" * 32
    wit = extract_witness(rep, w, "chain")
    assert wit.word == w and bound == 4
    assert is_pseudoregular(mu_of_word(rep, wit.x)).pseudoregular


# -- gap bound ---------------------------------------------------------------

def test_zero_run_counts_trailing_zeros():
    assert _zero_run([5, 1, 0, 0, 2, 0, 0, 0], 0) == 3
    assert _zero_run([5, 0, 0, 1, 0, 1], 0) == 1
    assert _zero_run([5, 0, 0], 0) == 0


def test_pump_verify_even(even_rep):
    report = pump_verify(even_rep, "a" * 6, K=40)
    assert report.witness.x
    assert report.nonzero_count >= 20
    assert report.gap.asserted and not report.gap.violated
    weights = [evaluate(even_rep, w) for w in report.pumped_words()]
    assert list(report.gap.weights) == weights


def test_pump_verify_rejects_non_support(even_rep):
    with pytest.raises(NotInSupport):
        pump_verify(even_rep, "aaa")


def test_pumped_weights_match_direct_evaluation():
    rng = random.Random(13)
    for name in ["F2", "Z4", "Q"]:
        S = make_semiring(name)
        for _ in range(20):
            rep = _random_rep(rng, S, 2)
            w = "".join(rng.choice("ab") for _ in range(4))
            try:
                wit = extract_witness(rep, w)
            except NoWitness:
                continue
            assert list(pumped_weights(rep, wit, 10)) == [evaluate(rep, wit.pumped(k)) for k in range(11)]


def _random_rep(rng, S, n):
    pick = (lambda: rng.choice(S.elements())) if S.is_finite else (lambda: S.parse(str(rng.randint(-2, 2))))
    mu = {c: [[pick() for _ in range(n)] for _ in range(n)] for c in "ab"}
    return LinearRepresentation.build(S, [pick() for _ in range(n)], [pick() for _ in range(n)], mu)


@pytest.mark.parametrize("name", ["F2", "F3", "Z4", "Q"])
def test_gap_bound_sweep(name):
    S = make_semiring(name)
    rng = random.Random(17)
    checked = 0
    while checked < 40:
        rep = _random_rep(rng, S, rng.randint(1, 3))
        w = "".join(rng.choice("ab") for _ in range(rng.randint(1, 5)))
        try:
            gap = gap_sequence(rep, extract_witness(rep, w), 64)
        except NoWitness:
            continue
        if gap.asserted:
            checked += 1
            assert not gap.violated


def test_gap_bound_is_tight_for_a_cycle():
    # cycle of length 3 over Q: exactly two zeros between support hits
    rep = LinearRepresentation.build("Q", [1, 0, 0], [1, 0, 0],
                                     {"a": [[0, 1, 0], [0, 0, 1], [1, 0, 0]]})
    wit = extract_witness(rep, "aaa")
    gap = gap_sequence(rep, wit, 12)
    assert gap.max_zero_run_after_first_nonzero == 2
    assert gap.gap_bound == 3 and not gap.violated


def test_gap_not_asserted_without_bound():
    rep = LinearRepresentation.build("maxtimes", [1], [1], {"a": [[2]]})
    gap = gap_sequence(rep, extract_witness(rep, "a"), 5)
    assert gap.gap_bound is None and gap.violated is None and not gap.asserted
    assert list(gap.weights) == [1, 2, 4, 8, 16, 32]


# -- infinite alphabets ------------------------------------------------------

def test_power_rule_witness(even_rep):
    N = length_bound(even_rep.semiring, even_rep.dim)
    wit = pump_power_witness(even_rep, "", "a", "", N)
    assert wit.x == "a" * N and wit.source == "power-rule"
    assert wit.evidence.pseudoregular


def test_power_rule_errors(even_rep):
    with pytest.raises(WordTooShort):
        pump_power_witness(even_rep, "", "a", "", 1)
    with pytest.raises(WordTooShort):
        pump_power_witness(even_rep, "", "a", "", 0)
    with pytest.raises(NotInSupport):
        pump_power_witness(even_rep, "a", "a", "", 2)


def test_reduce_alphabet_preserves_weights():
    rng = random.Random(19)
    S = make_semiring("Z4")
    pool = [[[rng.randrange(4) for _ in range(2)] for _ in range(2)] for _ in range(3)]
    letters = "abcdefghij"
    mu = {c: pool[i % 3] for i, c in enumerate(letters)}
    rep = LinearRepresentation.build(S, [1, 2], [3, 1], mu)
    reduced, psi = reduce_alphabet(rep)
    assert len(reduced.alphabet) == len({tuple(map(tuple, m)) for m in pool})
    assert psi["d"] == "a"
    for _ in range(100):
        w = "".join(rng.choice(letters) for _ in range(rng.randint(0, 10)))
        assert evaluate(rep, w) == evaluate(reduced, apply_letter_map(psi, w))


def test_reduce_alphabet_needs_finite_semiring(even_rep):
    with pytest.raises(SemiringError):
        reduce_alphabet(even_rep)


# -- refutation --------------------------------------------------------------

def test_claims():
    anbn = builtin_claim("anbn")
    assert anbn("") and anbn("aabb") and not anbn("abab") and not anbn("aab")
    assert builtin_claim("equal-counts", "ab")("abba")
    assert builtin_claim("even-length")("xy")
    assert claim_words(["", "ab"])("ab")
    with pytest.raises(ValueError):
        builtin_claim("primes")


def test_refute_support_mismatch(even_rep):
    v = refute_support(even_rep, builtin_claim("anbn"))
    assert v.kind == SUPPORT_MISMATCH and v.word == "aa" and v.in_support


def test_refute_consistent(even_rep):
    assert refute_support(even_rep, builtin_claim("even-length"), max_len=10).kind == CONSISTENT


def test_refute_pumping_contradiction(mod7_rep):
    # agrees with a^n b^n on every word up to length 6, but pumping escapes
    v = refute_support(mod7_rep, builtin_claim("anbn"), max_len=6)
    assert v.kind == PUMPING_CONTRADICTION
    assert evaluate(mod7_rep, v.word) != 0
    assert not builtin_claim("anbn")(v.word)
    assert v.word == v.witness.pumped(v.k)
    # with a longer window the disagreement already shows up directly
    assert refute_support(mod7_rep, builtin_claim("anbn"), max_len=7).kind == SUPPORT_MISMATCH
