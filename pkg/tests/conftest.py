from __future__ import annotations

from pathlib import Path

import pytest

from nradiv import IntFormula, Script, parse_script

REPO = Path(__file__).resolve().parent.parent

CORPUS_EXPECTED = {
    "poly_simple.smt2": "polynomial-only",
    "poly_quantified.smt2": "polynomial-only",
    "poly_ite.smt2": "polynomial-only",
    "poly_let.smt2": "polynomial-only",
    "constdiv_half.smt2": "constant-division-only",
    "constdiv_negative.smt2": "constant-division-only",
    "constdiv_decimal.smt2": "constant-division-only",
    "constdiv_nested.smt2": "constant-division-only",
    "nonconst_var.smt2": "non-constant-division",
    "nonconst_zero.smt2": "non-constant-division",
    "nonconst_guarded_ite.smt2": "non-constant-division",
}

MALFORMED = "malformed_unbalanced.smt2"


@pytest.fixture(scope="session")
def corpus_dir() -> Path:
    return REPO / "corpus"


@pytest.fixture(scope="session")
def golden_div0_path() -> Path:
    return REPO / "golden" / "fermat-cubic.smt2"


@pytest.fixture(scope="session")
def golden_int_path() -> Path:
    return REPO / "golden" / "fermat-cubic-int.smt2"


@pytest.fixture(scope="session")
def cubic_sum_script(golden_int_path: Path) -> Script:
    return parse_script(golden_int_path.read_text())


@pytest.fixture(scope="session")
def cubic_sum_formula(cubic_sum_script: Script) -> IntFormula:
    return IntFormula.from_script(cubic_sum_script)


@pytest.fixture(scope="session")
def parsed_corpus(corpus_dir: Path) -> dict[str, Script]:
    return {
        name: parse_script((corpus_dir / name).read_text())
        for name in CORPUS_EXPECTED
    }
