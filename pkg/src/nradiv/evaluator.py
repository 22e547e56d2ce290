"""Exact rational evaluation with a pluggable reading of division by zero.

Every arithmetic step uses `fractions.Fraction`; nothing is rounded.
A `DivInterpretation` is consulted only when a divisor evaluates to
exactly 0, so interpretations agree on every division with a nonzero
divisor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import TYPE_CHECKING, Callable, Iterable, Mapping, Sequence, Union

from .errors import BudgetExceededError, EvalError
from .terms import Apply, Const, Div, Ite, Quantifier, Term, Var

if TYPE_CHECKING:  # import only for annotations; encoder imports us at runtime
    from .encoder import IntFormula

Value = Union[Fraction, bool]
Assignment = Mapping[str, Value]
FuncTable = Mapping[str, Callable[..., Fraction]]


@dataclass(frozen=True)
class DivInterpretation:
    """Total reading of `x / 0`: `at_zero` maps the numerator to the result."""

    name: str
    at_zero: Callable[[Fraction], Fraction] = field(compare=False)


def floor_oracle(x: Fraction) -> Fraction:
    """Reference floor, delegated to `math.floor` on the exact rational."""

    return Fraction(math.floor(x))


def forced_value(x: Fraction) -> Fraction:
    """Floor computed from its two characteristic properties alone.

    Shift x into [0, 1) one unit at a time, counting the steps; the
    count is what the shift and base properties force `x/0` to be.
    Independent of `floor_oracle`, so the two can cross-check.
    """

    steps = Fraction(0)
    while x < 0:
        x += 1
        steps -= 1
    while x >= 1:
        x -= 1
        steps += 1
    return steps


FLOOR = DivInterpretation("floor", floor_oracle)

IDENTITY = DivInterpretation("identity", lambda x: x)


def constant_interpretation(value: Fraction | int) -> DivInterpretation:
    c = Fraction(value)
    return DivInterpretation(f"constant({c})", lambda _x: c)


def _as_fraction(value: Value, context: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, Fraction):
        raise EvalError(f"{context}: expected a rational, got {value!r}")
    return value


def _as_bool(value: Value, context: str) -> bool:
    if not isinstance(value, bool):
        raise EvalError(f"{context}: expected a Boolean, got {value!r}")
    return value


def eval_term(
    term: Term,
    assignment: Assignment,
    div: DivInterpretation = FLOOR,
    funcs: FuncTable | None = None,
) -> Value:
    """Evaluate a quantifier-free term under an assignment.

    `funcs` supplies meanings for declared non-nullary function symbols;
    `div` is consulted only at zero divisors.  `ite` evaluates a single
    branch, so a division in the untaken branch is never touched.
    """

    match term:
        case Const(value, _):
            return value
        case Var(name, _):
            if name not in assignment:
                raise EvalError(f"no value for '{name}' in assignment")
            return assignment[name]
        case Div(num, den):
            d = _as_fraction(eval_term(den, assignment, div, funcs), "divisor")
            n = _as_fraction(eval_term(num, assignment, div, funcs), "numerator")
            return div.at_zero(n) if d == 0 else n / d
        case Ite(cond, then, orelse):
            c = _as_bool(eval_term(cond, assignment, div, funcs), "ite condition")
            branch = then if c else orelse
            return eval_term(branch, assignment, div, funcs)
        case Quantifier():
            raise EvalError("cannot evaluate a quantified term")
        case Apply(op, args, _):
            return _eval_apply(op, args, assignment, div, funcs)
    raise EvalError(f"not a term: {term!r}")


def _eval_apply(op, args, assignment, div, funcs) -> Value:
    def rec(t: Term) -> Value:
        return eval_term(t, assignment, div, funcs)

    if op == "and":
        return all(_as_bool(rec(a), "'and' argument") for a in args)
    if op == "or":
        return any(_as_bool(rec(a), "'or' argument") for a in args)
    if op == "not":
        return not _as_bool(rec(args[0]), "'not' argument")
    if op == "=>":
        vals = [_as_bool(rec(a), "'=>' argument") for a in args]
        out = vals[-1]
        for v in reversed(vals[:-1]):  # right-associative
            out = (not v) or out
        return out
    if op in ("=", "distinct"):
        vals = [rec(a) for a in args]
        if op == "=":
            return all(v == vals[0] for v in vals[1:])
        return all(vals[i] != vals[j] for i in range(len(vals)) for j in range(i + 1, len(vals)))
    if op in ("<", "<=", ">", ">="):
        vals = [_as_fraction(rec(a), f"'{op}' argument") for a in args]
        pairs = zip(vals, vals[1:])
        if op == "<":
            return all(a < b for a, b in pairs)
        if op == "<=":
            return all(a <= b for a, b in pairs)
        if op == ">":
            return all(a > b for a, b in pairs)
        return all(a >= b for a, b in pairs)
    if op in ("+", "-", "*"):
        vals = [_as_fraction(rec(a), f"'{op}' argument") for a in args]
        if op == "+":
            return sum(vals, Fraction(0))
        if op == "*":
            out = Fraction(1)
            for v in vals:
                out *= v
            return out
        if len(vals) == 1:
            return -vals[0]
        out = vals[0]
        for v in vals[1:]:
            out -= v
        return out
    if funcs is not None and op in funcs:
        vals = [_as_fraction(rec(a), f"'{op}' argument") for a in args]
        return funcs[op](*vals)
    raise EvalError(f"no interpretation for function symbol '{op}'")


# ---------------------------------------------------------------------------
# Checking the two floor properties on sample points.


@dataclass(frozen=True)
class AxiomViolation:
    sample: Fraction
    axiom: str  # "shift" or "base"
    detail: str


@dataclass(frozen=True)
class AxiomReport:
    interpretation: str
    samples: int
    violations: tuple[AxiomViolation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def default_sample_grid(
    k_max: int = 70, denominators: Sequence[int] = (1, 2, 3, 7)
) -> list[Fraction]:
    """Deduplicated, sorted grid {k/q : |k| <= k_max, q in denominators}."""

    grid = {Fraction(k, q) for q in denominators for k in range(-k_max, k_max + 1)}
    return sorted(grid)


def check_axiom_samples(
    div: DivInterpretation, samples: Iterable[Fraction] | None = None
) -> AxiomReport:
    """Test f := div.at_zero against the shift and base properties.

    shift: f(x) + 1 == f(x + 1) at every sample x;
    base:  f(x) == 0 at every sample x in [0, 1).
    """

    points = default_sample_grid() if samples is None else list(samples)
    violations: list[AxiomViolation] = []
    f = div.at_zero
    for x in points:
        got, want = f(x) + 1, f(x + 1)
        if got != want:
            violations.append(
                AxiomViolation(x, "shift", f"f({x}) + 1 = {got} but f({x + 1}) = {want}")
            )
        if 0 <= x < 1 and f(x) != 0:
            violations.append(AxiomViolation(x, "base", f"f({x}) = {f(x)}, expected 0"))
    return AxiomReport(div.name, len(points), tuple(violations))


# ---------------------------------------------------------------------------
# Brute-force integer satisfiability inside a box.


def brute_force_int_sat(
    formula: IntFormula, bound: int, budget: int | None = 10_000_000
) -> dict[str, int] | None:
    """First integer witness of `formula` with all |values| <= bound.

    Assignments are enumerated in lexicographic order over the variable
    list, each coordinate running from -bound to bound.  Returns None
    when no assignment in the box satisfies the body; raises
    BudgetExceededError after `budget` assignments.
    """

    names = formula.variables
    steps = 0
    for combo in product(range(-bound, bound + 1), repeat=len(names)):
        steps += 1
        if budget is not None and steps > budget:
            raise BudgetExceededError(
                f"gave up after {budget} assignments (bound {bound}, {len(names)} variables)"
            )
        assignment = {n: Fraction(v) for n, v in zip(names, combo)}
        if eval_term(formula.body, assignment) is True:
            return dict(zip(names, combo))
    return None
