from fractions import Fraction

import pytest

from nradiv import (
    DecodeError,
    EncodeError,
    EncodeMode,
    IntFormula,
    Sort,
    decode_witness,
    encode_integer_formula,
    encode_via_div0,
    floor_axioms,
    format_term,
    parse_script,
    print_script,
    replace_uf_with_div0,
)
from nradiv.encoder import DIV_BY_ZERO_MARKER
from nradiv.terms import Apply, Const, Div, Ite, const, eq, var


def ivar(name: str):
    return var(name, Sort.INT)


def iconst(n: int):
    return const(n, Sort.INT)


UF_SHIFT = "(forall ((x Real)) (= (+ (f x) 1) (f (+ x 1))))"
UF_BASE = "(forall ((x Real)) (=> (and (<= 0 x) (< x 1)) (= (f x) 0)))"
DIV0_SHIFT = "(forall ((x Real)) (= (+ (/ x 0) 1) (/ (+ x 1) 0)))"
DIV0_BASE = "(forall ((x Real)) (=> (and (<= 0 x) (< x 1)) (= (/ x 0) 0)))"


def test_floor_axioms_uf_text():
    ax = floor_axioms(EncodeMode.UF)
    assert format_term(ax.shift_axiom) == UF_SHIFT
    assert format_term(ax.base_axiom) == UF_BASE
    assert ax.f_name == "f"


def test_floor_axioms_div0_text():
    ax = floor_axioms(EncodeMode.DIV0)
    assert format_term(ax.shift_axiom) == DIV0_SHIFT
    assert format_term(ax.base_axiom) == DIV0_BASE
    assert ax.f_name == DIV_BY_ZERO_MARKER


def test_div0_axioms_are_uf_axioms_with_division_spelling():
    uf = floor_axioms(EncodeMode.UF)
    d0 = floor_axioms(EncodeMode.DIV0)
    assert replace_uf_with_div0(uf.shift_axiom, "f") == d0.shift_axiom
    assert replace_uf_with_div0(uf.base_axiom, "f") == d0.base_axiom


def test_encode_uf_structure(cubic_sum_formula):
    problem = encode_integer_formula(cubic_sum_formula)
    s = problem.script
    assert problem.mode is EncodeMode.UF
    assert s.logic == "UFNRA"
    assert [d.name for d in s.decls] == ["f", "a", "b", "c"]
    assert s.decls[0].params == (Sort.REAL,)
    assert all(d.result is Sort.REAL for d in s.decls)
    texts = [format_term(a) for a in s.assertions]
    assert texts[0] == UF_SHIFT
    assert texts[1] == UF_BASE
    assert texts[2:5] == ["(= (f a) a)", "(= (f b) b)", "(= (f c) c)"]
    assert texts[5] == "(= (+ (* a a a) (* b b b)) (* c c c))"
    assert s.check_sat


def test_encode_div0_structure(cubic_sum_formula):
    problem = encode_via_div0(cubic_sum_formula)
    s = problem.script
    assert s.logic == "NRA"
    assert [d.name for d in s.decls] == ["a", "b", "c"]
    texts = [format_term(a) for a in s.assertions]
    assert texts[2] == "(= (/ a 0) a)"


def test_modes_differ_only_in_floor_spelling(cubic_sum_formula):
    uf = encode_integer_formula(cubic_sum_formula).script
    d0 = encode_via_div0(cubic_sum_formula).script
    mapped = tuple(replace_uf_with_div0(a, "f") for a in uf.assertions)
    assert mapped == d0.assertions


def test_golden_output(cubic_sum_formula, golden_div0_path):
    text = print_script(encode_via_div0(cubic_sum_formula).script)
    assert text == golden_div0_path.read_text()


def test_encoded_scripts_round_trip(cubic_sum_formula):
    for problem in (
        encode_integer_formula(cubic_sum_formula),
        encode_via_div0(cubic_sum_formula),
    ):
        text = print_script(problem.script)
        again = parse_script(text)
        assert again == problem.script
        assert print_script(again) == text


def test_uf_name_avoids_variables():
    formula = IntFormula(("f",), eq(ivar("f"), iconst(0)))
    problem = encode_integer_formula(formula)
    assert [d.name for d in problem.script.decls] == ["f0", "f"]
    assert format_term(problem.script.assertions[2]) == "(= (f0 f) f)"


# ---------------------------------------------------------------------------
# IntFormula validation


def test_int_formula_rejects_duplicates():
    with pytest.raises(EncodeError, match="duplicate"):
        IntFormula(("x", "x"), eq(ivar("x"), iconst(0)))


def test_int_formula_rejects_non_bool_body():
    with pytest.raises(EncodeError, match="Bool"):
        IntFormula(("x",), ivar("x"))


def test_int_formula_rejects_loose_variables():
    with pytest.raises(EncodeError, match="free variables"):
        IntFormula(("x",), eq(ivar("x"), ivar("y")))


def test_int_formula_rejects_real_pieces():
    body = Apply("=", (ivar("x"), const(1)), Sort.BOOL)
    with pytest.raises(EncodeError, match="non-Int literal"):
        IntFormula(("x",), body)
    with pytest.raises(EncodeError, match="must be Int"):
        IntFormula(("x",), eq(var("x", Sort.REAL), var("x", Sort.REAL)))


def test_int_formula_rejects_division_ite_quantifiers():
    x = ivar("x")
    with pytest.raises(EncodeError, match="not allowed"):
        IntFormula(("x",), eq(Div(x, x, Sort.INT), x))
    with pytest.raises(EncodeError, match="not allowed"):
        IntFormula(("x",), eq(Ite(eq(x, x), x, x), x))
    quantified = parse_script("(assert (forall ((q Real)) (= q q)))").assertions[0]
    with pytest.raises(EncodeError, match="not allowed"):
        IntFormula((), quantified)


def test_int_formula_rejects_function_calls():
    call = Apply("g", (ivar("x"),), Sort.INT)
    with pytest.raises(EncodeError, match="operator 'g'"):
        IntFormula(("x",), eq(call, ivar("x")))


def test_from_script(cubic_sum_script, cubic_sum_formula):
    assert IntFormula.from_script(cubic_sum_script) == cubic_sum_formula


def test_from_script_conjoins_assertions():
    s = parse_script(
        "(set-logic QF_NIA)(declare-fun x () Int)"
        "(assert (<= 0 x))(assert (< x 3))"
    )
    formula = IntFormula.from_script(s)
    assert format_term(formula.body) == "(and (<= 0 x) (< x 3))"


def test_from_script_empty_body_is_true():
    s = parse_script("(set-logic QF_NIA)(declare-fun x () Int)(check-sat)")
    assert IntFormula.from_script(s).body == Const(True, Sort.BOOL)


def test_from_script_rejects_non_int_and_non_constant():
    with pytest.raises(EncodeError, match="must be Int"):
        IntFormula.from_script(parse_script("(declare-fun x () Real)(assert (= x x))"))
    with pytest.raises(EncodeError, match="not a constant"):
        IntFormula.from_script(
            parse_script(
                "(set-logic QF_NIA)(declare-fun g (Int) Int)(assert (= (g 1) 1))"
            )
        )


# ---------------------------------------------------------------------------
# decode_witness


@pytest.fixture(params=[encode_integer_formula, encode_via_div0], ids=["uf", "div0"])
def cubic_problem(request, cubic_sum_formula):
    return request.param(cubic_sum_formula)


def test_decode_accepts_integer_solution(cubic_problem):
    witness = {"a": Fraction(0), "b": Fraction(1), "c": Fraction(1)}
    assert decode_witness(cubic_problem, witness) == {"a": 0, "b": 1, "c": 1}


def test_decode_rejects_non_integer(cubic_problem):
    bad = {"a": Fraction(1, 2), "b": Fraction(1), "c": Fraction(1)}
    with pytest.raises(DecodeError) as info:
        decode_witness(cubic_problem, bad)
    assert info.value.term == cubic_problem.script.assertions[2]


def test_decode_rejects_body_violation(cubic_problem):
    bad = {"a": Fraction(1), "b": Fraction(1), "c": Fraction(1)}
    with pytest.raises(DecodeError) as info:
        decode_witness(cubic_problem, bad)
    assert info.value.term == cubic_problem.script.assertions[-1]


def test_decode_rejects_missing_or_non_rational(cubic_problem):
    with pytest.raises(DecodeError, match="missing"):
        decode_witness(cubic_problem, {"a": Fraction(0), "b": Fraction(1)})
    with pytest.raises(DecodeError, match="rational"):
        decode_witness(
            cubic_problem, {"a": True, "b": Fraction(1), "c": Fraction(1)}
        )


def test_decode_negative_witness(cubic_problem):
    witness = {"a": Fraction(-2), "b": Fraction(0), "c": Fraction(-2)}
    assert decode_witness(cubic_problem, witness) == {"a": -2, "b": 0, "c": -2}


def test_encoded_division_census(cubic_sum_formula):
    """The division-by-zero spelling uses one division per floor application.

    Shift axiom: two.  Base axiom: one.  One fixpoint per variable: three.
    The body has none.  Six total, all with a constant zero divisor.
    """

    from nradiv import DivisorKind, classify_script

    problem = encode_via_div0(cubic_sum_formula)
    verdict = classify_script(problem.script)
    assert len(verdict.occurrences) == 6
    assert all(
        o.divisor_class.kind is DivisorKind.CONSTANT_ZERO for o in verdict.occurrences
    )
    assert sum(1 for o in verdict.occurrences if o.under_quantifier) == 3
