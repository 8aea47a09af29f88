"""Pumping witnesses for recognizable weighted languages.

The pipeline: find a nonempty factor ``x`` of a support word ``w = u x v``
whose matrix ``mu(x)`` is pseudoregular, then follow the pumped weights
``L(u x^k v)``.  Once ``L(u x v) != 0`` at most ``l(S^Q)`` consecutive
pumped weights can vanish, so infinitely many pumped words stay in the
support.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Optional, Sequence

from .endos import EndoReport, is_pseudoregular, pseudopower
from .errors import (ArtinError, BudgetExceeded, NoWitness, NotInSupport, SemiringError,
                     UndecidableError, WordTooShort)
from .linrep import (DEFAULT_SUPPORT_BUDGET, LinearRepresentation, Matrix, _dot, _row_times,
                     evaluate, mat_mul, mu_of_word, words_up_to)
from .spans import image_basis, length_bound, span_equal

DEFAULT_K = 64

# refuse to materialize N_r beyond this many bits
_MAX_CONSTANT_BITS = 1 << 24


# -- quasipowers -------------------------------------------------------------

def quasipower_constant(r: int, sigma: int) -> int:
    """N_r with N_0 = 1 and N_{r+1} = N_r * (1 + sigma^N_r).

    >>> [quasipower_constant(r, 2) for r in range(3)]
    [1, 3, 27]
    """
    if r < 0 or sigma < 1:
        raise ValueError("need r >= 0 and sigma >= 1")
    n = 1
    for _ in range(r):
        if sigma > 1 and n * math.log2(sigma) > _MAX_CONSTANT_BITS:
            raise BudgetExceeded(f"N_{r} for |Sigma| = {sigma} is too large to write down")
        n = n * (1 + sigma ** n)
    return n


def _constant_at_most(r: int, sigma: int, cap: int) -> Optional[int]:
    """N_r if it is <= cap, else None (without computing huge powers)."""
    n = 1
    for _ in range(r):
        if sigma > 1 and n * math.log2(sigma) > math.log2(cap + 1):
            return None
        n = n * (1 + sigma ** n)
        if n > cap:
            return None
    return n


@dataclass(frozen=True)
class QuasipowerDecomposition:
    """A tower u_0, ..., u_r with u_i = u_{i-1} v_i u_{i-1}.

    ``us`` holds u_0..u_r and ``vs`` holds v_1..v_r; u_r starts at
    ``position`` inside ``host``.
    """

    order: int
    us: tuple
    vs: tuple
    position: int
    host: Optional[str] = None

    @property
    def word(self) -> str:
        return self.us[-1]


def verify_quasipower(d: QuasipowerDecomposition, host: Optional[str] = None) -> bool:
    host = d.host if host is None else host
    if len(d.us) != d.order + 1 or len(d.vs) != d.order:
        return False
    if not d.us[0]:
        return False
    for i in range(1, d.order + 1):
        if d.us[i] != d.us[i - 1] + d.vs[i - 1] + d.us[i - 1]:
            return False
    if host is not None:
        if d.position < 0 or host[d.position:d.position + len(d.us[-1])] != d.us[-1]:
            return False
    return True


def _strict_tower(w: str, start: int, r: int, sigma: int):
    if r == 0:
        return [w[start]], [], start
    block = quasipower_constant(r - 1, sigma)
    count = 1 + sigma ** block
    pair = None
    # lexicographically least (i, j): smallest i with a later twin, then its first twin
    firsts: dict[str, int] = {}
    for k in range(count):
        b = w[start + k * block:start + (k + 1) * block]
        if b in firsts:
            i = firsts[b]
            if pair is None or i < pair[0]:
                pair = (i, k)
        else:
            firsts[b] = k
    i, j = pair
    us, vs, pos = _strict_tower(w, start + i * block, r - 1, sigma)
    u = us[-1]
    offset = pos - (start + i * block)
    second = start + j * block + offset
    v = w[pos + len(u):second]
    us.append(u + v + u)
    vs.append(v)
    return us, vs, pos


@lru_cache(maxsize=None)
def _decompose(s: str, r: int):
    """Tower showing that s itself is a quasipower of order r, or None."""
    if r == 0:
        return ((s,), ()) if s else None
    for k in range(1, len(s) // 2 + 1):
        u = s[:k]
        if s.endswith(u):
            sub = _decompose(u, r - 1)
            if sub is not None:
                v = s[k:len(s) - k]
                return sub[0] + (s,), sub[1] + (v,)
    return None


def find_quasipower(w: str, r: int, best_effort: bool = False,
                    sigma: Optional[int] = None) -> QuasipowerDecomposition:
    """Locate a quasipower of order r inside w.

    Strict mode needs ``len(w) >= N_r`` (for the number of distinct letters
    in w, unless ``sigma`` is given) and follows the pigeonhole
    construction on the first N_r letters.  Best-effort mode searches all
    factors, shortest first, and raises :class:`NoWitness` on failure.
    """
    if r < 0:
        raise ValueError("order must be non-negative")
    if best_effort:
        for length in range(1, len(w) + 1):
            for start in range(len(w) - length + 1):
                tower = _decompose(w[start:start + length], r)
                if tower is not None:
                    return QuasipowerDecomposition(r, tower[0], tower[1], start, w)
        raise NoWitness(f"no quasipower of order {r} inside a word of length {len(w)}")
    if sigma is None:
        sigma = max(1, len(set(w)))
    need = _constant_at_most(r, sigma, len(w))
    if not w or need is None:
        shown = _constant_at_most(r, sigma, 10 ** 30)
        raise WordTooShort(f"order {r} over {sigma} letters needs length >= "
                           f"{shown if shown is not None else 'astronomically many'}, got {len(w)}")
    us, vs, pos = _strict_tower(w, 0, r, sigma)
    return QuasipowerDecomposition(r, tuple(us), tuple(vs), pos, w)


# -- witnesses ---------------------------------------------------------------

@dataclass(frozen=True)
class PumpingWitness:
    u: str
    x: str
    v: str
    evidence: EndoReport
    source: str  # "quasipower-chain", "opportunistic-scan" or "power-rule"
    decomposition: Optional[QuasipowerDecomposition] = field(default=None, repr=False)

    def __post_init__(self):
        if not self.x:
            raise ValueError("a pumping witness needs a nonempty factor x")

    @property
    def word(self) -> str:
        return self.u + self.x + self.v

    def pumped(self, k: int) -> str:
        return self.u + self.x * k + self.v


def _scan(rep: LinearRepresentation, w: str) -> PumpingWitness:
    matrices: dict[str, Matrix] = {}
    verdicts: dict[str, EndoReport] = {}
    for length in range(1, len(w) + 1):
        for start in range(len(w) - length + 1):
            x = w[start:start + length]
            if x not in verdicts:
                prefix = matrices.get(x[:-1])
                m = mat_mul(prefix, rep.mu[x[-1]]) if prefix is not None else mu_of_word(rep, x)
                matrices[x] = m
                verdicts[x] = is_pseudoregular(m)
            if verdicts[x].pseudoregular:
                return PumpingWitness(w[:start], x, w[start + length:], verdicts[x], "opportunistic-scan")
    raise NoWitness(f"no nonempty factor of {w!r} has a pseudoregular matrix")


def _chain(rep: LinearRepresentation, w: str) -> PumpingWitness:
    bound = length_bound(rep.semiring, rep.dim)
    r = bound + 1
    d = find_quasipower(w, r)
    images = [image_basis(mu_of_word(rep, u)) for u in d.us]
    # im mu(u_r) <= ... <= im mu(u_0) has at most `bound` strict steps
    i = next((i for i in range(1, r + 1) if span_equal(images[i], images[i - 1])), None)
    if i is None:
        raise ArtinError(f"image chain of length {r} has no equality; length bound {bound} is wrong")
    x = d.vs[i - 1] + d.us[i - 1]
    start = d.position + len(d.us[i - 1])
    report = is_pseudoregular(mu_of_word(rep, x))
    if not report.pseudoregular:
        raise ArtinError(f"chain factor {x!r} is not pseudoregular")
    return PumpingWitness(w[:start], x, w[start + len(x):], report, "quasipower-chain", d)


def extract_witness(rep: LinearRepresentation, w: str, mode: str = "scan") -> PumpingWitness:
    """Split ``w = u x v`` with x nonempty and mu(x) pseudoregular.

    ``scan`` tries factors by increasing length, then start position.
    ``chain`` builds a quasipower of order l + 1 (l the length bound of
    S^Q) and takes x = v_i u_{i-1} at the first stabilizing image.
    """
    rep.check_word(w)
    if mode == "scan":
        return _scan(rep, w)
    if mode == "chain":
        return _chain(rep, w)
    raise ValueError(f"unknown witness mode {mode!r}")


# -- pumped sequences --------------------------------------------------------

@dataclass(frozen=True)
class GapReport:
    weights: tuple
    gap_bound: Optional[int]
    max_zero_run_after_first_nonzero: int
    violated: Optional[bool]
    s1_nonzero: bool = False

    @property
    def asserted(self) -> bool:
        """The bound applies: it is known and s_1 != 0."""
        return self.gap_bound is not None and self.s1_nonzero


def _zero_run(weights: Sequence, zero) -> int:
    tail = list(weights[1:])
    first = next((i for i, s in enumerate(tail) if s != zero), None)
    if first is None:
        return 0
    best = run = 0
    for s in tail[first:]:
        run = run + 1 if s == zero else 0
        best = max(best, run)
    return best


def pumped_weights(rep: LinearRepresentation, witness: PumpingWitness, K: int) -> tuple:
    """s_k = (in mu(u)) mu(x)^k (mu(v) out) for k = 0..K."""
    S = rep.semiring
    row = _row_times(S, rep.in_vec.entries[0], mu_of_word(rep, witness.u))
    col = mu_of_word(rep, witness.v).apply(rep.out_vec.column(0))
    alpha = mu_of_word(rep, witness.x)
    out = []
    for _ in range(K + 1):
        out.append(_dot(S, row, col))
        row = _row_times(S, row, alpha)
    return tuple(out)


def gap_sequence(rep: LinearRepresentation, witness: PumpingWitness, K: int = DEFAULT_K) -> GapReport:
    """Pumped weights s_0..s_K and the longest zero run after the first nonzero s_k (k >= 1)."""
    if K < 1:
        raise ValueError("K must be at least 1")
    S = rep.semiring
    weights = pumped_weights(rep, witness, K)
    run = _zero_run(weights, S.zero)
    try:
        bound = length_bound(S, rep.dim)
    except UndecidableError:
        bound = None
    s1 = weights[1] != S.zero
    if bound is None:
        violated = None
    else:
        violated = s1 and run > bound
    return GapReport(weights, bound, run, violated, s1)


@dataclass(frozen=True)
class PumpReport:
    word: str
    weight: object
    witness: PumpingWitness
    gap: GapReport
    nonzero_count: int
    K: int

    def pumped_words(self) -> list[str]:
        return [self.witness.pumped(k) for k in range(self.K + 1)]

    def to_dict(self, S) -> dict:
        g = self.gap
        return {
            "word": self.word,
            "weight": S.format(self.weight),
            "witness": {"u": self.witness.u, "x": self.witness.x, "v": self.witness.v,
                        "source": self.witness.source,
                        "pseudoregular": self.witness.evidence.pseudoregular},
            "K": self.K,
            "weights": [S.format(s) for s in g.weights],
            "nonzero_count": self.nonzero_count,
            "gap": {"bound": g.gap_bound,
                    "max_zero_run": g.max_zero_run_after_first_nonzero,
                    "asserted": g.asserted,
                    "violated": g.violated},
        }


def pump_verify(rep: LinearRepresentation, w: str, K: int = DEFAULT_K, mode: str = "scan") -> PumpReport:
    """Extract a witness for a support word and follow its pumped weights up to K."""
    weight = evaluate(rep, w)
    if weight == rep.semiring.zero:
        raise NotInSupport(f"{w!r} is not in the support (weight 0)")
    witness = extract_witness(rep, w, mode)
    gap = gap_sequence(rep, witness, K)
    nonzero = sum(1 for s in gap.weights if s != rep.semiring.zero)
    return PumpReport(w, weight, witness, gap, nonzero, K)


def pump_power_witness(rep: LinearRepresentation, a: str, b: str, c: str, N: int) -> PumpingWitness:
    """Witness u = a, x = b^N, v = c for a support word a b^N c.

    Needs N at least the length bound of S^Q, which makes mu(b)^N
    pseudoregular for every letter b.
    """
    if len(b) != 1:
        raise ValueError(f"b must be a single letter, got {b!r}")
    if N < 1:
        raise WordTooShort("N must be positive, otherwise x would be empty")
    rep.check_word(a + b + c)
    bound = length_bound(rep.semiring, rep.dim)
    if N < bound:
        raise WordTooShort(f"N = {N} is below the length bound {bound} of {rep.semiring.name}^{rep.dim}")
    w = a + b * N + c
    if evaluate(rep, w) == rep.semiring.zero:
        raise NotInSupport(f"{w!r} is not in the support")
    _, report = pseudopower(rep.mu[b], N)
    if not report.pseudoregular:
        raise ArtinError(f"mu({b!r})^{N} is not pseudoregular despite N >= length bound")
    return PumpingWitness(a, b * N, c, report, "power-rule")


# -- alphabet reduction ------------------------------------------------------

def reduce_alphabet(rep: LinearRepresentation) -> tuple[LinearRepresentation, dict]:
    """Merge letters with equal matrices; returns (reduced rep, letter map psi).

    Each class is represented by its first letter in alphabet order.
    """
    if not rep.semiring.is_finite:
        raise SemiringError(f"alphabet reduction needs a finite semiring, {rep.semiring.name} is infinite")
    reps: dict[Matrix, str] = {}
    psi = {}
    for letter in rep.alphabet:
        psi[letter] = reps.setdefault(rep.mu[letter], letter)
    reduced = LinearRepresentation(rep.semiring, rep.states, rep.in_vec, rep.out_vec,
                                   {r: rep.mu[r] for r in reps.values()})
    return reduced, psi


def apply_letter_map(psi: dict, w: str) -> str:
    return "".join(psi[c] for c in w)


# -- refutation --------------------------------------------------------------

@dataclass(frozen=True)
class Claim:
    name: str
    predicate: Callable[[str], bool]

    def __call__(self, w: str) -> bool:
        return self.predicate(w)


_ANBN = re.compile(r"^(a*)(b*)$")


def _anbn(w: str) -> bool:
    m = _ANBN.match(w)
    return bool(m) and len(m.group(1)) == len(m.group(2))


def _equal_counts(w: str, alphabet: Iterable[str]) -> bool:
    return len({w.count(c) for c in alphabet}) <= 1


def claim_words(words: Iterable[str], name: str = "word-list") -> Claim:
    allowed = frozenset(words)
    return Claim(name, allowed.__contains__)


def builtin_claim(name: str, alphabet: Sequence[str] = ("a", "b")) -> Claim:
    """``anbn``, ``equal-counts`` (over ``alphabet``) or ``even-length``."""
    if name == "anbn":
        return Claim(name, _anbn)
    if name == "equal-counts":
        letters = tuple(alphabet)
        return Claim(name, lambda w: _equal_counts(w, letters))
    if name == "even-length":
        return Claim(name, lambda w: len(w) % 2 == 0)
    raise ValueError(f"unknown claim {name!r}")


CONSISTENT = "CONSISTENT"
SUPPORT_MISMATCH = "SUPPORT_MISMATCH"
PUMPING_CONTRADICTION = "PUMPING_CONTRADICTION"


@dataclass(frozen=True)
class Verdict:
    kind: str
    word: Optional[str] = None
    in_support: Optional[bool] = None
    k: Optional[int] = None
    witness: Optional[PumpingWitness] = None
    checked_words: int = 0

    def to_dict(self) -> dict:
        out = {"verdict": self.kind, "checked_words": self.checked_words}
        if self.word is not None:
            out["word"] = self.word
            out["in_support"] = self.in_support
        if self.k is not None:
            out["k"] = self.k
        if self.witness is not None:
            out["witness"] = {"u": self.witness.u, "x": self.witness.x, "v": self.witness.v}
        return out


def refute_support(rep: LinearRepresentation, claim: Claim | Callable[[str], bool],
                   max_len: int = 8, K: int = DEFAULT_K,
                   budget: int = DEFAULT_SUPPORT_BUDGET) -> Verdict:
    """Bounded search for evidence that supp L differs from a claimed language.

    First every word up to ``max_len`` is compared against the claim.  If
    they all agree, the support words satisfying the claim are pumped
    (longest first) and the first pumped word that is in the support but
    violates the claim is reported.
    """
    letters = rep.alphabet
    total = sum(len(letters) ** i for i in range(max_len + 1))
    if total > budget:
        raise BudgetExceeded(f"{total} words up to length {max_len} exceed the budget of {budget}")
    zero = rep.semiring.zero
    support = []
    checked = 0
    for w in words_up_to(letters, max_len):
        checked += 1
        inside = evaluate(rep, w) != zero
        if inside != bool(claim(w)):
            return Verdict(SUPPORT_MISMATCH, w, inside, checked_words=checked)
        if inside:
            support.append(w)
    for w in sorted(support, key=lambda s: (-len(s), s)):
        try:
            witness = extract_witness(rep, w, "scan")
        except NoWitness:
            continue
        for k, s in enumerate(pumped_weights(rep, witness, K)):
            word = witness.pumped(k)
            if s != zero and not claim(word):
                return Verdict(PUMPING_CONTRADICTION, word, True, k, witness, checked)
    return Verdict(CONSISTENT, checked_words=checked)
