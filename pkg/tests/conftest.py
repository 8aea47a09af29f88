from pathlib import Path

import pytest

from artinpump import LinearRepresentation, load

AUTOMATA = Path(__file__).resolve().parent.parent / "automata"


@pytest.fixture
def automata_dir():
    return AUTOMATA


@pytest.fixture
def even_rep():
    return load(AUTOMATA / "even_length.json")


@pytest.fixture
def mod7_rep():
    return load(AUTOMATA / "anbn_mod7.json")


def rep_from(semiring, in_vec, out_vec, mu):
    return LinearRepresentation.build(semiring, in_vec, out_vec, mu)


# filled in by test_acceptance.py: number -> (passed, title, seconds, limit)
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        passed, title, seconds, limit = ACCEPTANCE[n]
        verdict = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"{verdict}  {n:>2}. {title}  ({seconds:.2f} s, limit {limit} s)")
