"""SMT-LIB2 reader: tokenizer, s-expression reader, sort-checking builder.

Supported commands: set-logic, set-info, declare-fun, declare-const,
define-fun, assert, check-sat, exit.  Anything else is preserved
verbatim as an "unsupported" record and re-emitted on printing; an
unsupported construct inside an assertion is an error.

`let` bindings are expanded during parsing and `define-fun` bodies are
inlined at each application, so the resulting AST contains neither.
"""

from __future__ import annotations

import string
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError, SortError, UndeclaredSymbolError
from .printer import format_symbol
from .terms import (
    BUILTIN_OPS,
    NUMERIC_SORTS,
    Apply,
    Const,
    Div,
    FunDecl,
    Ite,
    Loc,
    NO_LOC,
    Quantifier,
    Script,
    Sort,
    Term,
    Unsupported,
    Var,
    neg_literal,
    substitute,
)

_SIMPLE_START = frozenset(string.ascii_letters + "~!@$%^&*_-+=<>.?/")
_SIMPLE_CHARS = _SIMPLE_START | frozenset(string.digits)

_RESERVED = frozenset(
    {"true", "false", "ite", "let", "forall", "exists", "as", "par", "_", "!"}
) | BUILTIN_OPS | {"/"}

# Theory symbols we recognize as real SMT-LIB but do not model.
_KNOWN_UNSUPPORTED_OPS = frozenset(
    {"div", "mod", "abs", "to_real", "to_int", "is_int", "^", "!", "_", "root-obj", "select", "store"}
)


@dataclass(frozen=True)
class SAtom:
    kind: str  # "symbol" | "keyword" | "numeral" | "decimal" | "string"
    text: str
    loc: Loc


@dataclass(frozen=True)
class SList:
    items: tuple
    loc: Loc


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    loc: Loc


def _line_starts(text: str) -> list[int]:
    starts = [0]
    for i, ch in enumerate(text):
        if ch == "\n":
            starts.append(i + 1)
    return starts


def _tokenize(text: str) -> list[_Token]:
    starts = _line_starts(text)

    def loc_at(pos: int) -> Loc:
        line = bisect_right(starts, pos)
        return Loc(line, pos - starts[line - 1] + 1)

    tokens: list[_Token] = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c in " \t\r\n":
            i += 1
            continue
        if c == ";":
            while i < n and text[i] != "\n":
                i += 1
            continue
        loc = loc_at(i)
        if c in "()":
            tokens.append(_Token(c, c, loc))
            i += 1
        elif c == '"':
            i += 1
            chunk: list[str] = []
            while True:
                if i >= n:
                    raise ParseError("unterminated string literal", loc)
                if text[i] == '"':
                    if i + 1 < n and text[i + 1] == '"':  # "" escapes a quote
                        chunk.append('"')
                        i += 2
                        continue
                    i += 1
                    break
                chunk.append(text[i])
                i += 1
            tokens.append(_Token("string", "".join(chunk), loc))
        elif c == "|":
            end = text.find("|", i + 1)
            if end < 0:
                raise ParseError("unterminated quoted symbol", loc)
            tokens.append(_Token("symbol", text[i + 1 : end], loc))
            i = end + 1
        elif c == ":":
            j = i + 1
            while j < n and text[j] in _SIMPLE_CHARS:
                j += 1
            if j == i + 1:
                raise ParseError("malformed keyword", loc)
            tokens.append(_Token("keyword", text[i + 1 : j], loc))
            i = j
        elif c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            if j < n and text[j] == ".":
                k = j + 1
                while k < n and text[k].isdigit():
                    k += 1
                if k == j + 1:
                    raise ParseError("malformed decimal literal", loc)
                tokens.append(_Token("decimal", text[i:k], loc))
                i = k
            else:
                tokens.append(_Token("numeral", text[i:j], loc))
                i = j
        elif c in _SIMPLE_START:
            j = i
            while j < n and text[j] in _SIMPLE_CHARS:
                j += 1
            tokens.append(_Token("symbol", text[i:j], loc))
            i = j
        else:
            raise ParseError(f"unexpected character {c!r}", loc)
    return tokens


def _read_forms(tokens: list[_Token]) -> list[SAtom | SList]:
    forms: list[SAtom | SList] = []
    stack: list[tuple[list, Loc]] = []
    for tok in tokens:
        if tok.kind == "(":
            stack.append(([], tok.loc))
        elif tok.kind == ")":
            if not stack:
                raise ParseError("unmatched ')'", tok.loc)
            items, loc = stack.pop()
            form = SList(tuple(items), loc)
            (stack[-1][0] if stack else forms).append(form)
        else:
            atom = SAtom(tok.kind, tok.text, tok.loc)
            (stack[-1][0] if stack else forms).append(atom)
    if stack:
        raise ParseError("unbalanced '(': input ended inside a list", stack[-1][1])
    return forms


def render_sexpr(sx: SAtom | SList) -> str:
    """Canonical one-line rendering, used for unsupported commands."""

    match sx:
        case SAtom("symbol", text, _):
            return format_symbol(text)
        case SAtom("string", text, _):
            escaped = text.replace('"', '""')
            return f'"{escaped}"'
        case SAtom("keyword", text, _):
            return f":{text}"
        case SAtom(_, text, _):
            return text
        case SList(items, _):
            return "(" + " ".join(render_sexpr(x) for x in items) + ")"
    raise TypeError(f"not an s-expression: {sx!r}")


class _UnsupportedSort(Exception):
    pass


def _parse_sort(sx) -> Sort:
    if isinstance(sx, SAtom) and sx.kind == "symbol":
        try:
            return Sort(sx.text)
        except ValueError:
            raise _UnsupportedSort()
    raise _UnsupportedSort()


def _numeral_sort(logic: str | None) -> Sort:
    """Numerals are Int in integer logics, Real otherwise."""

    if logic and "RA" in logic:
        return Sort.REAL
    if logic and "IA" in logic:
        return Sort.INT
    return Sort.REAL


class _ScriptBuilder:
    def __init__(self) -> None:
        self.logic: str | None = None
        self.metadata: list[tuple[str, str]] = []
        self.decls: dict[str, FunDecl] = {}
        self.macros: dict[str, tuple[tuple[tuple[str, Sort], ...], Term]] = {}
        self.assertions: list[Term] = []
        self.unsupported: list[Unsupported] = []
        self.check_sat = False
        self.exit_cmd = False

    # -- commands ----------------------------------------------------------

    def run(self, forms: list) -> Script:
        for form in forms:
            if not isinstance(form, SList):
                raise ParseError("expected a command", form.loc)
            if not form.items or not (
                isinstance(form.items[0], SAtom) and form.items[0].kind == "symbol"
            ):
                raise ParseError("command must start with a symbol", form.loc)
            head = form.items[0].text
            args = form.items[1:]
            handler = getattr(self, "_cmd_" + head.replace("-", "_"), None)
            if handler is None:
                self.unsupported.append(Unsupported(render_sexpr(form), form.loc))
                continue
            handler(form, args)
            if self.exit_cmd:
                break
        return Script(
            logic=self.logic,
            metadata=tuple(self.metadata),
            decls=tuple(self.decls.values()),
            assertions=tuple(self.assertions),
            unsupported=tuple(self.unsupported),
            check_sat=self.check_sat,
            exit_cmd=self.exit_cmd,
        )

    def _symbol(self, sx, what: str) -> SAtom:
        if not (isinstance(sx, SAtom) and sx.kind == "symbol"):
            loc = sx.loc if isinstance(sx, (SAtom, SList)) else NO_LOC
            raise ParseError(f"expected {what}", loc)
        return sx

    def _register(self, name: SAtom) -> None:
        if name.text in _RESERVED:
            raise ParseError(f"cannot redefine builtin symbol '{name.text}'", name.loc)
        if name.text in self.decls or name.text in self.macros:
            raise ParseError(f"symbol '{name.text}' is already declared", name.loc)

    def _cmd_set_logic(self, form: SList, args) -> None:
        if len(args) != 1:
            raise ParseError("set-logic takes one symbol", form.loc)
        name = self._symbol(args[0], "a logic name")
        if self.logic is not None:
            raise ParseError("logic is already set", form.loc)
        self.logic = name.text

    def _cmd_set_info(self, form: SList, args) -> None:
        if not args or not (isinstance(args[0], SAtom) and args[0].kind == "keyword"):
            raise ParseError("set-info needs a keyword", form.loc)
        if len(args) > 2:
            raise ParseError("malformed set-info", form.loc)
        value = render_sexpr(args[1]) if len(args) == 2 else ""
        self.metadata.append((args[0].text, value))

    def _cmd_declare_fun(self, form: SList, args) -> None:
        if len(args) != 3 or not isinstance(args[1], SList):
            raise ParseError("malformed declare-fun", form.loc)
        name = self._symbol(args[0], "a function name")
        self._register(name)
        try:
            params = tuple(_parse_sort(p) for p in args[1].items)
            result = _parse_sort(args[2])
        except _UnsupportedSort:
            self.unsupported.append(Unsupported(render_sexpr(form), form.loc))
            return
        self.decls[name.text] = FunDecl(name.text, params, result, name.loc)

    def _cmd_declare_const(self, form: SList, args) -> None:
        if len(args) != 2:
            raise ParseError("malformed declare-const", form.loc)
        name = self._symbol(args[0], "a constant name")
        self._register(name)
        try:
            result = _parse_sort(args[1])
        except _UnsupportedSort:
            self.unsupported.append(Unsupported(render_sexpr(form), form.loc))
            return
        self.decls[name.text] = FunDecl(name.text, (), result, name.loc)

    def _cmd_define_fun(self, form: SList, args) -> None:
        if len(args) != 4 or not isinstance(args[1], SList):
            raise ParseError("malformed define-fun", form.loc)
        name = self._symbol(args[0], "a function name")
        self._register(name)
        params: list[tuple[str, Sort]] = []
        try:
            for p in args[1].items:
                if not (isinstance(p, SList) and len(p.items) == 2):
                    raise ParseError("malformed parameter list", args[1].loc)
                pname = self._symbol(p.items[0], "a parameter name")
                if any(pname.text == seen for seen, _ in params):
                    raise ParseError(f"duplicate parameter '{pname.text}'", pname.loc)
                params.append((pname.text, _parse_sort(p.items[1])))
            result = _parse_sort(args[2])
        except _UnsupportedSort:
            self.unsupported.append(Unsupported(render_sexpr(form), form.loc))
            return
        scope = {pname: Var(pname, psort) for pname, psort in params}
        body = self._term(args[3], [scope])
        if body.sort is not result:
            raise SortError(
                f"define-fun body has sort {body.sort}, declared {result}", args[3].loc
            )
        self.macros[name.text] = (tuple(params), body)

    def _cmd_assert(self, form: SList, args) -> None:
        if len(args) != 1:
            raise ParseError("assert takes one term", form.loc)
        term = self._term(args[0], [])
        if term.sort is not Sort.BOOL:
            raise SortError(f"assertion must be Bool, got {term.sort}", args[0].loc)
        self.assertions.append(term)

    def _cmd_check_sat(self, form: SList, args) -> None:
        if args:
            raise ParseError("check-sat takes no arguments", form.loc)
        self.check_sat = True

    def _cmd_exit(self, form: SList, args) -> None:
        if args:
            raise ParseError("exit takes no arguments", form.loc)
        self.exit_cmd = True

    # -- terms -------------------------------------------------------------

    def _lookup(self, name: str, scopes: list[dict[str, Term]]) -> Term | None:
        for scope in reversed(scopes):
            if name in scope:
                return scope[name]
        return None

    def _term(self, sx, scopes: list[dict[str, Term]]) -> Term:
        if isinstance(sx, SAtom):
            return self._atom_term(sx, scopes)
        if not isinstance(sx, SList):
            raise ParseError("expected a term", NO_LOC)
        if not sx.items:
            raise ParseError("empty application", sx.loc)
        head = sx.items[0]
        if isinstance(head, SList):
            raise ParseError("unsupported construct in term position", head.loc)
        if head.kind != "symbol":
            raise ParseError(f"cannot apply {head.kind} '{head.text}'", head.loc)
        return self._application(head, sx.items[1:], scopes)

    def _atom_term(self, sx: SAtom, scopes) -> Term:
        if sx.kind == "numeral":
            return Const(Fraction(int(sx.text)), _numeral_sort(self.logic), sx.loc)
        if sx.kind == "decimal":
            return Const(Fraction(sx.text), Sort.REAL, sx.loc)
        if sx.kind != "symbol":
            raise ParseError(f"unexpected {sx.kind} in term position", sx.loc)
        name = sx.text
        if name == "true":
            return Const(True, Sort.BOOL, sx.loc)
        if name == "false":
            return Const(False, Sort.BOOL, sx.loc)
        bound = self._lookup(name, scopes)
        if bound is not None:
            return bound
        if name in self.macros:
            params, body = self.macros[name]
            if params:
                raise SortError(f"'{name}' expects {len(params)} arguments", sx.loc)
            return body
        if name in self.decls:
            decl = self.decls[name]
            if decl.params:
                raise SortError(f"'{name}' expects {len(decl.params)} arguments", sx.loc)
            return Var(name, decl.result, sx.loc)
        raise UndeclaredSymbolError(f"undeclared symbol '{name}'", sx.loc)

    def _built_args(self, items, scopes) -> tuple[Term, ...]:
        return tuple(self._term(x, scopes) for x in items)

    def _require_numeric(self, op: str, args: tuple[Term, ...], items) -> Sort:
        sorts = {a.sort for a in args}
        if len(sorts) == 1 and sorts <= NUMERIC_SORTS:
            return args[0].sort
        for a, sx in zip(args, items):
            if a.sort not in NUMERIC_SORTS:
                raise SortError(f"'{op}' expects numeric arguments, got {a.sort}", sx.loc)
        raise SortError(f"'{op}' mixes Real and Int arguments", items[0].loc)

    def _require_bool(self, op: str, args: tuple[Term, ...], items) -> None:
        for a, sx in zip(args, items):
            if a.sort is not Sort.BOOL:
                raise SortError(f"'{op}' expects Bool arguments, got {a.sort}", sx.loc)

    def _arity(self, op: str, items, loc: Loc, least: int) -> None:
        if len(items) < least:
            raise ParseError(f"'{op}' needs at least {least} arguments", loc)

    def _application(self, head: SAtom, items, scopes) -> Term:
        op = head.text
        loc = head.loc

        if op == "let":
            return self._let(head, items, scopes)
        if op in ("forall", "exists"):
            return self._quantifier(head, items, scopes)
        if op == "ite":
            if len(items) != 3:
                raise ParseError("'ite' needs exactly 3 arguments", loc)
            cond, then, orelse = self._built_args(items, scopes)
            if cond.sort is not Sort.BOOL:
                raise SortError("'ite' condition must be Bool", items[0].loc)
            if then.sort is not orelse.sort:
                raise SortError(
                    f"'ite' branches disagree: {then.sort} vs {orelse.sort}", items[2].loc
                )
            return Ite(cond, then, orelse, loc)

        if op == "/":
            self._arity(op, items, loc, 2)
            args = self._built_args(items, scopes)
            sort = self._require_numeric(op, args, items)
            if sort is Sort.INT and _numeral_sort(self.logic) is not Sort.INT:
                raise SortError("'/' on Int arguments outside an integer logic", loc)
            term = args[0]
            for arg in args[1:]:  # n-ary division associates to the left
                term = Div(term, arg, sort, loc)
            return term

        if op in ("+", "*"):
            self._arity(op, items, loc, 2)
            args = self._built_args(items, scopes)
            return Apply(op, args, self._require_numeric(op, args, items), loc)
        if op == "-":
            self._arity(op, items, loc, 1)
            args = self._built_args(items, scopes)
            sort = self._require_numeric(op, args, items)
            if len(args) == 1 and isinstance(args[0], Const):
                return neg_literal(args[0])
            return Apply(op, args, sort, loc)
        if op in ("<", "<=", ">", ">="):
            self._arity(op, items, loc, 2)
            args = self._built_args(items, scopes)
            self._require_numeric(op, args, items)
            return Apply(op, args, Sort.BOOL, loc)
        if op in ("=", "distinct"):
            self._arity(op, items, loc, 2)
            args = self._built_args(items, scopes)
            sorts = {a.sort for a in args}
            if len(sorts) != 1:
                raise SortError(f"'{op}' mixes sorts {sorted(s.value for s in sorts)}", loc)
            return Apply(op, args, Sort.BOOL, loc)
        if op == "not":
            if len(items) != 1:
                raise ParseError("'not' needs exactly 1 argument", loc)
            args = self._built_args(items, scopes)
            self._require_bool(op, args, items)
            return Apply(op, args, Sort.BOOL, loc)
        if op in ("and", "or", "=>"):
            self._arity(op, items, loc, 2)
            args = self._built_args(items, scopes)
            self._require_bool(op, args, items)
            return Apply(op, args, Sort.BOOL, loc)

        if op in self.macros and self._lookup(op, scopes) is None:
            return self._macro_call(head, items, scopes)
        if op in self.decls and self._lookup(op, scopes) is None:
            return self._declared_call(head, items, scopes)
        if op in _KNOWN_UNSUPPORTED_OPS:
            raise ParseError(f"unsupported operator '{op}'", loc)
        raise UndeclaredSymbolError(f"undeclared function symbol '{op}'", loc)

    def _macro_call(self, head: SAtom, items, scopes) -> Term:
        params, body = self.macros[head.text]
        if len(items) != len(params):
            raise SortError(
                f"'{head.text}' expects {len(params)} arguments, got {len(items)}", head.loc
            )
        args = self._built_args(items, scopes)
        for arg, (pname, psort), sx in zip(args, params, items):
            if arg.sort is not psort:
                raise SortError(
                    f"argument '{pname}' of '{head.text}' must be {psort}, got {arg.sort}",
                    sx.loc,
                )
        return substitute(body, {p: a for (p, _), a in zip(params, args)})

    def _declared_call(self, head: SAtom, items, scopes) -> Term:
        decl = self.decls[head.text]
        if not decl.params:
            raise ParseError(f"'{head.text}' is a constant, not a function", head.loc)
        if len(items) != len(decl.params):
            raise SortError(
                f"'{head.text}' expects {len(decl.params)} arguments, got {len(items)}",
                head.loc,
            )
        args = self._built_args(items, scopes)
        for i, (arg, psort, sx) in enumerate(zip(args, decl.params, items)):
            if arg.sort is not psort:
                raise SortError(
                    f"argument {i + 1} of '{head.text}' must be {psort}, got {arg.sort}",
                    sx.loc,
                )
        return Apply(head.text, args, decl.result, head.loc)

    def _let(self, head: SAtom, items, scopes) -> Term:
        if len(items) != 2 or not isinstance(items[0], SList):
            raise ParseError("malformed let", head.loc)
        bindings: dict[str, Term] = {}
        for b in items[0].items:
            if not (isinstance(b, SList) and len(b.items) == 2):
                raise ParseError("malformed let binding", items[0].loc)
            name = self._symbol(b.items[0], "a let-bound name")
            if name.text in bindings:
                raise ParseError(f"duplicate let binding '{name.text}'", name.loc)
            # Bindings are parallel: right-hand sides see the outer scope.
            bindings[name.text] = self._term(b.items[1], scopes)
        return self._term(items[1], scopes + [bindings])

    def _quantifier(self, head: SAtom, items, scopes) -> Term:
        if len(items) != 2 or not isinstance(items[0], SList) or not items[0].items:
            raise ParseError(f"malformed {head.text}", head.loc)
        bound: list[tuple[str, Sort]] = []
        scope: dict[str, Term] = {}
        for b in items[0].items:
            if not (isinstance(b, SList) and len(b.items) == 2):
                raise ParseError("malformed binder", items[0].loc)
            name = self._symbol(b.items[0], "a bound variable")
            if name.text in scope:
                raise ParseError(f"duplicate bound variable '{name.text}'", name.loc)
            try:
                sort = _parse_sort(b.items[1])
            except _UnsupportedSort:
                raise ParseError("unsupported sort in binder", b.items[1].loc)
            bound.append((name.text, sort))
            scope[name.text] = Var(name.text, sort, name.loc)
        body = self._term(items[1], scopes + [scope])
        if body.sort is not Sort.BOOL:
            raise SortError(f"{head.text} body must be Bool, got {body.sort}", items[1].loc)
        return Quantifier(head.text, tuple(bound), body, head.loc)


def parse_script(text: str) -> Script:
    """Parse a whole script; raises a ScriptError subclass with a location."""

    return _ScriptBuilder().run(_read_forms(_tokenize(text)))
