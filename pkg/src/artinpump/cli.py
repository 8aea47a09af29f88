"""Command-line front end and the JSON automaton file format.

An automaton file is one JSON object::

    {
      "semiring": {"kind": "rationals"},
      "states": ["even", "odd"],
      "in": ["1", "0"],
      "out": ["1", "0"],
      "letters": {
        "a": [
          ["0", "1"],
          ["1", "0"]
        ]
      }
    }

Scalars are strings in the semiring's literal grammar so that big
integers and fractions survive the trip.  :func:`dumps` writes the
canonical layout; ``dumps(loads(text))`` is a fixed point.

Exit codes: 0 success, 1 domain error, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import __version__
from .endos import injective_surjective, is_pseudoregular
from .errors import ArtinError, DimensionError, FormatError
from .linrep import LinearRepresentation, Matrix, evaluate, mu_of_word, support_sample
from .pump import (DEFAULT_K, apply_letter_map, builtin_claim, claim_words, extract_witness,
                   find_quasipower, gap_sequence, pump_verify, quasipower_constant,
                   reduce_alphabet, refute_support, verify_quasipower)
from .scalars import axiom_suite, make_semiring
from .spans import (enumerate_lattice, length_bound, length_exact, maxtimes_chain,
                    span_elements)

# -- file format -------------------------------------------------------------

_FIELDS = ("semiring", "states", "in", "out", "letters")


def _parse_vector(S, values, where):
    if not isinstance(values, list):
        raise FormatError(f"{where} must be a list of scalar strings")
    out = []
    for i, t in enumerate(values):
        if not isinstance(t, str):
            raise FormatError(f"{where}[{i}] must be a string literal, got {t!r}")
        try:
            out.append(S.parse(t))
        except ArtinError as exc:
            raise type(exc)(f"{where}[{i}]: {exc}") from None
    return out


def loads(text: str) -> LinearRepresentation:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise FormatError("automaton file must hold a JSON object")
    missing = [f for f in _FIELDS if f not in doc]
    if missing:
        raise FormatError(f"missing field(s): {', '.join(missing)}")
    extra = sorted(set(doc) - set(_FIELDS))
    if extra:
        raise FormatError(f"unknown field(s): {', '.join(extra)}")
    S = make_semiring(doc["semiring"])
    states = doc["states"]
    if not isinstance(states, list) or not all(isinstance(s, str) for s in states):
        raise FormatError("states must be a list of names")
    n = len(states)
    in_vec = _parse_vector(S, doc["in"], "in")
    out_vec = _parse_vector(S, doc["out"], "out")
    for name, vec in (("in", in_vec), ("out", out_vec)):
        if len(vec) != n:
            raise DimensionError(f"'{name}' has {len(vec)} entries for {n} states")
    letters = doc["letters"]
    if not isinstance(letters, dict):
        raise FormatError("letters must map each letter to a matrix")
    mu = {}
    for letter, rows in letters.items():
        if not isinstance(rows, list) or len(rows) != n:
            raise DimensionError(f"matrix for {letter!r} must have {n} rows")
        parsed = [_parse_vector(S, r, f"letters.{letter}[{i}]") for i, r in enumerate(rows)]
        for i, r in enumerate(parsed):
            if len(r) != n:
                raise DimensionError(f"row {i} of matrix for {letter!r} has {len(r)} entries for {n} states")
        mu[letter] = Matrix.from_rows(S, parsed)
    return LinearRepresentation(S, tuple(states), Matrix.row_vector(S, in_vec),
                                Matrix.column_vector(S, out_vec), mu)


def _vec(S, values) -> str:
    return json.dumps([S.format(a) for a in values], ensure_ascii=False)


def dumps(rep: LinearRepresentation) -> str:
    S = rep.semiring
    lines = [
        "{",
        f'  "semiring": {json.dumps(S.descriptor())},',
        f'  "states": {json.dumps(list(rep.states), ensure_ascii=False)},',
        f'  "in": {_vec(S, rep.in_vec.entries[0])},',
        f'  "out": {_vec(S, rep.out_vec.column(0))},',
        '  "letters": {',
    ]
    items = list(rep.mu.items())
    for k, (letter, m) in enumerate(items):
        lines.append(f"    {json.dumps(letter, ensure_ascii=False)}: [")
        for i, row in enumerate(m.entries):
            lines.append(f"      {_vec(S, row)}" + ("," if i + 1 < m.rows else ""))
        lines.append("    ]" + ("," if k + 1 < len(items) else ""))
    lines += ["  }", "}"]
    return "\n".join(lines) + "\n"


def load(path) -> LinearRepresentation:
    return loads(Path(path).read_text(encoding="utf-8"))


def save(rep: LinearRepresentation, path) -> None:
    Path(path).write_text(dumps(rep), encoding="utf-8")


# -- output helpers ----------------------------------------------------------

def _fmt_vec(S, v) -> str:
    return "(" + ", ".join(S.format(a) for a in v) + ")"


def _word(w: str) -> str:
    return w if w else "ε"


def _table(header, rows) -> str:
    widths = [max(len(str(c)) for c in col) for col in zip(header, *rows)]
    line = lambda r: "  ".join(str(c).ljust(w) for c, w in zip(r, widths)).rstrip()
    return "\n".join([line(header), line(["-" * w for w in widths])] + [line(r) for r in rows])


def _witness_dict(wit) -> dict:
    return {"u": wit.u, "x": wit.x, "v": wit.v, "source": wit.source,
            "pseudoregular": wit.evidence.pseudoregular}


def _semiring_and_dim(args):
    if args.file:
        rep = load(args.file)
        return rep.semiring, rep.dim
    if not args.semiring:
        raise _Usage("give an automaton file or --semiring")
    return make_semiring(args.semiring), args.dim


class _Usage(Exception):
    pass


# -- commands ----------------------------------------------------------------
# each returns (human text, json-able data)

def cmd_eval(args):
    rep = load(args.file)
    w = evaluate(rep, args.word)
    s = rep.semiring.format(w)
    return s, {"word": args.word, "weight": s}


def cmd_support(args):
    rep = load(args.file)
    S = rep.semiring
    sample = support_sample(rep, args.max_len, args.budget)
    rows = [(_word(x.word), S.format(x.weight)) for x in sample]
    text = _table(("word", "weight"), rows) if rows else "(empty support up to this length)"
    return text, {"max_len": args.max_len,
                  "support": [{"word": x.word, "weight": S.format(x.weight)} for x in sample]}


def cmd_mu(args):
    rep = load(args.file)
    m = mu_of_word(rep, args.word)
    return str(m), {"word": args.word, "matrix": m.format()}


def cmd_pseudoregular(args):
    rep = load(args.file)
    S = rep.semiring
    r = is_pseudoregular(mu_of_word(rep, args.word), injsurj=True)
    data = {"word": args.word, "pseudoregular": r.pseudoregular,
            "image_generators": [[S.format(a) for a in g] for g in r.im_basis.generators],
            "image_sq_generators": [[S.format(a) for a in g] for g in r.im_sq_basis.generators],
            "injective": r.injective, "surjective": r.surjective}
    text = "\n".join([
        f"mu({_word(args.word)}) pseudoregular: {r.pseudoregular}",
        "im   generated by " + ", ".join(_fmt_vec(S, g) for g in r.im_basis.generators),
        "im^2 generated by " + ", ".join(_fmt_vec(S, g) for g in r.im_sq_basis.generators),
    ] + ([f"injective: {r.injective}  surjective: {r.surjective}"] if r.injective is not None else []))
    return text, data


def cmd_witness(args):
    rep = load(args.file)
    wit = extract_witness(rep, args.word, args.mode)
    data = _witness_dict(wit)
    if wit.decomposition is not None:
        data["quasipower"] = {"us": list(wit.decomposition.us), "vs": list(wit.decomposition.vs),
                              "position": wit.decomposition.position}
    text = f"u = {_word(wit.u)}\nx = {wit.x}\nv = {_word(wit.v)}\nsource: {wit.source}"
    return text, data


def _gap_text(S, gap, wit) -> list[str]:
    rows = [(k, _word(wit.pumped(k)) if len(wit.pumped(k)) <= 40 else f"|{len(wit.pumped(k))}|",
             S.format(s)) for k, s in enumerate(gap.weights)]
    if gap.gap_bound is None:
        verdict = "no finite length bound for this semiring; gap not checked"
    elif not gap.asserted:
        verdict = "s_1 = 0, gap bound not asserted"
    else:
        verdict = f"{'VIOLATED' if gap.violated else 'ok'}"
    return [_table(("k", "u x^k v", "weight"), rows),
            f"longest zero run after first nonzero: {gap.max_zero_run_after_first_nonzero}"
            f" (bound {gap.gap_bound if gap.gap_bound is not None else 'n/a'}): {verdict}"]


def cmd_pump(args):
    rep = load(args.file)
    S = rep.semiring
    report = pump_verify(rep, args.word, args.k, args.mode)
    wit = report.witness
    text = "\n".join([
        f"w = {args.word}  weight {S.format(report.weight)}",
        f"witness: u = {_word(wit.u)}, x = {wit.x}, v = {_word(wit.v)} ({wit.source})",
        *_gap_text(S, report.gap, wit),
        f"pumped words in support for k <= {args.k}: {report.nonzero_count}",
    ])
    return text, report.to_dict(S)


def cmd_gap(args):
    rep = load(args.file)
    S = rep.semiring
    wit = extract_witness(rep, args.word, args.mode)
    gap = gap_sequence(rep, wit, args.k)
    data = {"witness": _witness_dict(wit), "weights": [S.format(s) for s in gap.weights],
            "bound": gap.gap_bound, "max_zero_run": gap.max_zero_run_after_first_nonzero,
            "asserted": gap.asserted, "violated": gap.violated}
    return "\n".join(_gap_text(S, gap, wit)), data


def cmd_length(args):
    S, n = _semiring_and_dim(args)
    data = {"semiring": S.name, "dim": n}
    lines = []
    if not args.bound:
        data["exact"] = length_exact(enumerate_lattice(S, n, args.budget))
        lines.append(f"l({S.name}^{n}) = {data['exact']}")
    if not args.exact:
        data["bound"] = length_bound(S, n)
        lines.append(f"l({S.name}^{n}) <= {data['bound']}")
    return "\n".join(lines), data


def cmd_lattice(args):
    S, n = _semiring_and_dim(args)
    L = enumerate_lattice(S, n, args.budget)
    nodes = [sorted(_fmt_vec(S, v) for v in node) for node in L.nodes]
    lines = [f"{len(L)} subsemimodules of {S.name}^{n}, length {length_exact(L)}"]
    for i, node in enumerate(nodes):
        up = [j for a, j in L.covers if a == i]
        lines.append(f"  [{i}] size {len(node)}: {{{', '.join(node)}}}" + (f" -> {up}" if up else ""))
    return "\n".join(lines), {"semiring": S.name, "dim": n, "nodes": nodes,
                              "covers": [list(c) for c in L.covers], "length": length_exact(L)}


def cmd_injsurj(args):
    rep = load(args.file)
    inj, surj = injective_surjective(mu_of_word(rep, args.word))
    return f"injective: {inj}\nsurjective: {surj}", {"word": args.word, "injective": inj, "surjective": surj}


def cmd_constant(args):
    n = quasipower_constant(args.r, args.sigma)
    return str(n), {"r": args.r, "sigma": args.sigma, "N": str(n)}


def cmd_quasipower(args):
    d = find_quasipower(args.word, args.r, best_effort=args.best_effort, sigma=args.sigma)
    ok = verify_quasipower(d)
    lines = [f"order {d.order} quasipower at position {d.position}: {d.word}"]
    lines += [f"  u_{i} = {u}" + (f"   (v_{i} = {_word(d.vs[i - 1])})" if i else "") for i, u in enumerate(d.us)]
    lines.append(f"verified: {ok}")
    return "\n".join(lines), {"order": d.order, "us": list(d.us), "vs": list(d.vs),
                              "position": d.position, "verified": ok}


def cmd_reduce_alphabet(args):
    rep = load(args.file)
    reduced, psi = reduce_alphabet(rep)
    if args.output:
        save(reduced, args.output)
    text = "\n".join([f"{a} -> {b}" for a, b in psi.items()]) + "\n" + dumps(reduced).rstrip("\n")
    data = {"map": psi, "alphabet": list(reduced.alphabet), "automaton": json.loads(dumps(reduced))}
    if args.check:
        rng = random.Random(0)
        for _ in range(args.check):
            w = "".join(rng.choice(rep.alphabet) for _ in range(rng.randint(0, 12)))
            if evaluate(rep, w) != evaluate(reduced, apply_letter_map(psi, w)):
                raise ArtinError(f"reduction changed the weight of {w!r}")
        data["checked_words"] = args.check
        text += f"\nweights preserved on {args.check} random words"
    return text, data


def cmd_refute(args):
    rep = load(args.file)
    if args.claim == "words":
        if args.words is None:
            raise _Usage("--claim words needs --words")
        claim = claim_words(w for w in args.words.split(","))
    else:
        claim = builtin_claim(args.claim, rep.alphabet)
    v = refute_support(rep, claim, args.max_len, args.k)
    lines = [v.kind]
    if v.kind == "SUPPORT_MISMATCH":
        lines.append(f"{_word(v.word)} is {'in' if v.in_support else 'not in'} the support "
                     f"but the claim says {'no' if v.in_support else 'yes'}")
    elif v.kind == "PUMPING_CONTRADICTION":
        w = v.witness
        lines.append(f"pumping {_word(w.u)}·({w.x})^k·{_word(w.v)} at k = {v.k} gives {v.word}, "
                     f"in the support but outside the claim")
    lines.append(f"words checked up to length {args.max_len}: {v.checked_words}")
    return "\n".join(lines), v.to_dict()


def cmd_demo(args):
    report = maxtimes_chain(args.steps)
    rows = [(f"M_{s.index} < M_{s.index + 1}", _fmt_vec(make_semiring("maxtimes"), s.added),
             "strict" if s.strict else "NOT strict") for s in report.steps]
    text = _table(("inclusion", "new generator", "verdict"), rows) + \
        f"\nall {len(rows)} inclusions strict: {report.all_strict}"
    return text, {"steps": [{"index": s.index, "added": [str(a) for a in s.added], "strict": s.strict,
                             "generators_are_members": s.generators_are_members}
                            for s in report.steps],
                  "all_strict": report.all_strict}


def cmd_axioms(args):
    if args.file:
        S = load(args.file).semiring
    elif args.semiring:
        S = make_semiring(args.semiring)
    else:
        raise _Usage("give an automaton file or --semiring")
    if S.is_finite and not args.samples:
        mode = "exhaustive"
        report = axiom_suite(S, "exhaustive")
    else:
        rng = random.Random(args.seed)
        count = args.samples or 1000
        mode = f"{count} random triples"
        report = axiom_suite(S, [(S.sample(rng), S.sample(rng), S.sample(rng)) for _ in range(count)])
    viol = [{"axiom": v.axiom, "witness": [S.format(a) for a in v.witness]} for v in report]
    text = f"{S.name}, {mode}: " + ("all axioms hold" if not viol else
                                    "\n".join(f"{v['axiom']} fails at {v['witness']}" for v in viol))
    return text, {"semiring": S.name, "mode": mode, "violations": viol}


# -- argument parsing --------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = argparse.ArgumentParser(prog="artinpump", description="Pumping witnesses for weighted automata.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_, file=True, word=False):
        sp = sub.add_parser(name, parents=[common], help=help_)
        if file:
            sp.add_argument("file")
        if word:
            sp.add_argument("word")
        sp.set_defaults(func=func, subparser=sp)
        return sp

    def dim_options(sp):
        sp.add_argument("file", nargs="?")
        sp.add_argument("--semiring")
        sp.add_argument("--dim", type=int, default=1)
        sp.add_argument("--budget", type=int, default=4096)

    add("eval", cmd_eval, "weight of a word", word=True)
    sp = add("support", cmd_support, "support words up to a length")
    sp.add_argument("--max-len", type=int, required=True)
    sp.add_argument("--budget", type=int, default=10 ** 6)
    add("mu", cmd_mu, "matrix of a word", word=True)
    add("pseudoregular", cmd_pseudoregular, "is mu(word) pseudoregular", word=True)
    sp = add("witness", cmd_witness, "pumping witness inside a word", word=True)
    sp.add_argument("--mode", choices=("scan", "chain"), default="scan")
    for name, func in (("pump", cmd_pump), ("gap", cmd_gap)):
        sp = add(name, func, "pump a support word" if name == "pump" else "pumped weights and gap check",
                 word=True)
        sp.add_argument("--k", type=int, default=DEFAULT_K)
        sp.add_argument("--mode", choices=("scan", "chain"), default="scan")
    sp = add("length", cmd_length, "length of S^n", file=False)
    dim_options(sp)
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--exact", action="store_true")
    g.add_argument("--bound", action="store_true")
    sp = add("lattice", cmd_lattice, "all subsemimodules of S^n", file=False)
    dim_options(sp)
    add("injsurj", cmd_injsurj, "injectivity and surjectivity of mu(word)", word=True)
    sp = add("constant", cmd_constant, "quasipower length constant N_r", file=False)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--sigma", type=int, required=True)
    sp = add("quasipower", cmd_quasipower, "quasipower inside a word", file=False, word=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--sigma", type=int)
    sp.add_argument("--best-effort", action="store_true")
    sp = add("reduce-alphabet", cmd_reduce_alphabet, "merge letters with equal matrices")
    sp.add_argument("-o", "--output")
    sp.add_argument("--check", type=int, default=0, metavar="N", help="verify on N random words")
    sp = add("refute", cmd_refute, "test a claimed support against the automaton")
    sp.add_argument("--claim", required=True, choices=("anbn", "equal-counts", "even-length", "words"))
    sp.add_argument("--words", help="comma-separated word list for --claim words")
    sp.add_argument("--max-len", type=int, default=8)
    sp.add_argument("--k", type=int, default=DEFAULT_K)
    sp = add("demo", cmd_demo, "built-in demonstrations", file=False)
    sp.add_argument("name", choices=("maxtimes-chain",))
    sp.add_argument("--steps", type=int, default=25)
    sp = add("axioms", cmd_axioms, "check the semiring axioms", file=False)
    sp.add_argument("file", nargs="?")
    sp.add_argument("--semiring")
    sp.add_argument("--samples", type=int, default=0)
    sp.add_argument("--seed", type=int, default=0)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text, data = args.func(args)
    except _Usage as exc:
        args.subparser.print_usage(sys.stderr)
        print(f"{args.subparser.prog}: error: {exc}", file=sys.stderr)
        return 2
    except (ArtinError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.json:
        sys.stdout.write(json.dumps(data, ensure_ascii=False, indent=2) + "\n")
    else:
        sys.stdout.write(text + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
