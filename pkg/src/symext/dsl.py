"""Line-oriented workbench scripts: tokenizer, parser and canonical printer.

One statement per line::

    seed 7
    let p = cond {0 0 0 0 -> 1}
    let x = name {<p, check 0>, <top, X(0,0,0)>}
    check support X(0,0,0) {(0,0,0)}

The full grammar is in ``docs/grammar.md``.  :func:`print_script` emits a
canonical form (seed, then declarations, then checks, keyword arguments
sorted) and ``parse_script(print_script(ws)) == ws`` for every parsed ``ws``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Any

from .forcing import Eq, Mem, SubsetOfCheck
from .group import Automorphism, SupportSpec, WreathPerm
from .names import (AVEC, CALSEQ, Bounds, Check, Ext, Name, Sym, _von_neumann, bullet, hf)
from .perm import Cycle, FinPerm, Swap, format_moves
from .poset import TOP, CohenCondition, FinitePoset
from .qforcing import HPerm, QCondition

# ---------------------------------------------------------------------------
# errors and tokens


class DslError(Exception):
    """Parse or reference error with a 1-based source position."""

    def __init__(self, msg: str, line: int, col: int, expected=()):
        self.msg = msg
        self.line = line
        self.col = col
        self.expected = frozenset(expected)
        text = f"line {line}, column {col}: {msg}"
        if self.expected:
            text += " (expected " + ", ".join(sorted(self.expected)) + ")"
        super().__init__(text)


@dataclass(frozen=True)
class Tok:
    kind: str  # int, ident, punct, end
    text: str
    line: int
    col: int


_TOKEN = re.compile(r"""
    (?P<ws>[ \t]+)
  | (?P<comment>\#.*)
  | (?P<punct>->|<=|[{}()\[\]<>,;:=@*])
  | (?P<int>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*(?:-[A-Za-z][A-Za-z0-9_]*)*)
""", re.VERBOSE)


def tokenize_line(text: str, line: int) -> list[Tok]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise DslError(f"unexpected character {text[pos]!r}", line, pos + 1)
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            out.append(Tok(kind, m.group(), line, pos + 1))
        pos = m.end()
    out.append(Tok("end", "", line, len(text) + 1))
    return out


# ---------------------------------------------------------------------------
# script values


@dataclass(frozen=True)
class Ref:
    """Reference to an earlier declaration."""

    name: str


@dataclass(frozen=True)
class Word:
    """Bare identifier that is not a declaration (preset names, ``all``)."""

    text: str


@dataclass(frozen=True)
class Fix:
    """Pointwise stabiliser of a set of poset labels."""

    labels: tuple


@dataclass(frozen=True)
class LabelMap:
    pairs: tuple

    def as_dict(self) -> dict:
        return dict(self.pairs)


@dataclass(frozen=True)
class HFValue:
    """Hereditarily finite set literal (``set {0, 1}``)."""

    value: Any

    @property
    def hf(self) -> frozenset:
        return hf(self.value)

    def __eq__(self, other):
        return isinstance(other, HFValue) and self.hf == other.hf

    def __hash__(self):
        return hash(self.hf)


@dataclass(frozen=True)
class Lit:
    """Composite literal: ``system``, ``lemma`` or ``restriction`` with named fields."""

    kind: str
    fields: tuple

    def get(self, key, default=None):
        return dict(self.fields).get(key, default)


@dataclass(frozen=True)
class Directive:
    kind: str
    args: tuple = ()
    kwargs: tuple = ()

    def kw(self) -> dict:
        return dict(self.kwargs)


@dataclass(frozen=True)
class WorkbenchScript:
    seed: int | None = None
    declarations: tuple = ()
    directives: tuple = ()

    def table(self) -> dict:
        return dict(self.declarations)


COMPOSITE_FIELDS = {
    "system": ("poset", "group", "base"),
    "lemma": ("base", "n", "q", "qp"),
    "restriction": ("system", "x", "group", "map", "set"),
}

# kind -> (positional arity, allowed keywords)
CHECK_SCHEMAS = {
    "symmetry-lemma": (0, {"bounds", "system", "stmt"}),
    "forcing-theorem": (0, {"bounds", "poset", "stmt"}),
    "action-identities": (0, {"samples", "bounds"}),
    "homogeneity-lemma": (0, {"lemma", "bounds", "width"}),
    "block-swap": (0, {"samples", "cond", "support", "level", "k", "kp"}),
    "q-laws": (0, {"samples", "qcond"}),
    "restriction-decides": (0, {"restriction", "corpus"}),
    "normality": (0, {"system", "samples", "bounds"}),
    "support": (2, {"system", "samples"}),
}

OBJECT_KEYWORDS = ("cond", "wreath", "hperm", "auto", "poset", "name", "qcond", "support",
                   "system", "lemma", "restriction", "stmt", "bounds", "set")
SYMBOL_TAGS = ("X", "A", "AN", "AVEC", "TS", "B", "CALB", "CALSEQ")
STATEMENT_HEADS = ("mem", "eq", "subset")
PRESET_WORDS = ("tiny", "small", "full")


# ---------------------------------------------------------------------------
# parser


class _Parser:
    def __init__(self, toks: list[Tok], decls: dict):
        self.toks = toks
        self.i = 0
        self.decls = decls

    # token helpers
    def peek(self, k: int = 0) -> Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def next(self) -> Tok:
        t = self.peek()
        self.i += 1
        return t

    def fail(self, msg: str, expected=(), tok: Tok | None = None):
        t = tok or self.peek()
        raise DslError(msg, t.line, t.col, expected)

    def at(self, text: str) -> bool:
        t = self.peek()
        return t.kind in ("punct", "ident") and t.text == text

    def expect(self, text: str) -> Tok:
        if not self.at(text):
            got = self.peek().text or "end of line"
            self.fail(f"found {got!r}", {repr(text)})
        return self.next()

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.i += 1
            return True
        return False

    def int_(self) -> int:
        t = self.peek()
        if t.kind != "int":
            self.fail(f"found {t.text or 'end of line'!r}", {"integer"})
        self.i += 1
        return int(t.text)

    def ident(self) -> str:
        t = self.peek()
        if t.kind != "ident":
            self.fail(f"found {t.text or 'end of line'!r}", {"identifier"})
        self.i += 1
        return t.text

    def label(self) -> str:
        t = self.peek()
        if t.kind not in ("ident", "int"):
            self.fail(f"found {t.text or 'end of line'!r}", {"label"})
        self.i += 1
        return t.text

    def end(self):
        if self.peek().kind != "end":
            self.fail(f"unexpected {self.peek().text!r}", {"end of line"})

    def sep_list(self, item, close: str, sep: str = ","):
        out = []
        if self.accept(close):
            return out
        while True:
            out.append(item())
            if self.accept(close):
                return out
            if not self.at(sep):
                self.fail(f"found {self.peek().text or 'end of line'!r}", {repr(sep), repr(close)})
            self.next()

    # objects
    def obj(self):
        t = self.peek()
        if t.kind != "ident" or t.text not in OBJECT_KEYWORDS:
            self.fail(f"found {t.text or 'end of line'!r}", set(OBJECT_KEYWORDS))
        self.i += 1
        kw = t.text
        if kw == "cond":
            return self.cond_body()
        if kw == "wreath":
            return self.wreath_body()
        if kw == "hperm":
            return self.hperm_body()
        if kw == "auto":
            return self.auto_body()
        if kw == "poset":
            return self.poset_body()
        if kw == "name":
            return self.name()
        if kw == "qcond":
            return self.qcond_body()
        if kw == "support":
            return self.support_body()
        if kw == "stmt":
            return self.statement()
        if kw == "bounds":
            return self.bounds_body()
        if kw == "set":
            return HFValue(self.hf_value())
        return self.composite(kw)

    def cond_body(self) -> CohenCondition:
        self.expect("{")

        def entry():
            key = tuple(self.int_() for _ in range(4))
            self.expect("->")
            tok = self.peek()
            bit = self.int_()
            if bit not in (0, 1):
                self.fail("condition values are bits", {"0", "1"}, tok)
            return key, bit

        start = self.peek()
        entries = self.sep_list(entry, "}")
        try:
            return CohenCondition(entries)
        except ValueError as e:
            self.fail(str(e), tok=start)

    def moves(self, stop: tuple) -> FinPerm:
        moves = []
        while not any(self.at(s) for s in stop) and self.peek().kind != "end":
            if self.accept("id"):
                continue
            if self.accept("swap"):
                moves.append(Swap(self.int_(), self.int_()))
            elif self.at("("):
                tok = self.next()
                pts = []
                while not self.accept(")"):
                    pts.append(self.int_())
                try:
                    moves.append(Cycle(tuple(pts)))
                except ValueError as e:
                    self.fail(str(e), tok=tok)
            else:
                self.fail(f"found {self.peek().text!r}", {"'('", "'swap'", "'id'"} | {repr(s) for s in stop})
        return FinPerm(moves)

    def wreath_body(self) -> WreathPerm:
        self.expect("{")
        outer, inner = {}, {}

        def entry():
            if self.accept("outer"):
                n = self.int_()
                self.expect(":")
                outer[n] = self.moves((";", "}"))
            elif self.accept("inner"):
                n, m = self.int_(), self.int_()
                self.expect(":")
                inner[(n, m)] = self.moves((";", "}"))
            else:
                self.fail(f"found {self.peek().text!r}", {"'outer'", "'inner'"})

        self.sep_list(entry, "}", ";")
        return WreathPerm(outer, inner)

    def hperm_body(self) -> HPerm:
        self.expect("{")
        per = {}

        def entry():
            a = self.int_()
            self.expect(":")
            per[a] = self.moves((";", "}"))

        self.sep_list(entry, "}", ";")
        return HPerm(per)

    def auto_body(self) -> Automorphism:
        tok = self.expect("{")

        def entry():
            a = self.label()
            self.expect("->")
            return a, self.label()

        pairs = self.sep_list(entry, "}")
        try:
            return Automorphism(dict(pairs))
        except ValueError as e:
            self.fail(str(e), tok=tok)

    def poset_body(self) -> FinitePoset:
        tok = self.expect("{")
        fields = {}
        closure = False

        def entry():
            nonlocal closure
            key_tok = self.peek()
            key = self.ident()
            if key == "leq" and self.accept("*"):
                closure = True
            self.expect(":")
            if key == "elements":
                els = []
                while not (self.at(";") or self.at("}")):
                    els.append(self.label())
                fields[key] = els
            elif key == "top":
                fields[key] = self.label()
            elif key == "leq":
                pairs = []
                if not (self.at(";") or self.at("}")):
                    while True:
                        a = self.label()
                        self.expect("<=")
                        pairs.append((a, self.label()))
                        if not self.accept(","):
                            break
                fields[key] = pairs
            else:
                self.fail(f"unknown poset field {key!r}", {"elements", "top", "leq"}, key_tok)

        self.sep_list(entry, "}", ";")
        for need in ("elements", "top"):
            if need not in fields:
                self.fail(f"poset lacks {need}", {need}, tok)
        try:
            if closure:
                return FinitePoset.from_relation(fields["elements"], fields.get("leq", []), fields["top"])
            return FinitePoset(fields["elements"], fields.get("leq", []), fields["top"])
        except (KeyError, ValueError) as e:
            self.fail(f"bad poset: {e}", tok=tok)

    def coord(self) -> tuple[int, int]:
        self.expect("(")
        a, n = self.int_(), self.int_()
        self.expect(")")
        return a, n

    def qcond_body(self) -> QCondition:
        tok = self.expect("{")
        t = {}

        def branch():
            c = self.coord()
            self.expect(":")
            self.expect("[")
            vals = []
            while not self.accept("]"):
                vals.append(self.int_())
            t[c] = vals

        self.sep_list(branch, "}", ";")
        self.expect("f")
        self.expect("{")
        f = {}

        def fentry():
            self.expect("{")
            cs = []
            while not self.accept("}"):
                cs.append(self.coord())
            self.expect(":")
            f[frozenset(cs)] = self.int_()

        self.sep_list(fentry, "}", ";")
        try:
            return QCondition(t, f)
        except ValueError as e:
            self.fail(str(e), tok=tok)

    def triple(self) -> tuple[int, int, int]:
        self.expect("(")
        a = self.int_()
        self.expect(",")
        b = self.int_()
        self.expect(",")
        c = self.int_()
        self.expect(")")
        return a, b, c

    def support_body(self) -> SupportSpec:
        self.expect("{")
        return SupportSpec(self.sep_list(self.triple, "}"))

    def bounds_body(self) -> Bounds:
        self.expect("(")
        vals = [self.int_()]
        for _ in range(3):
            self.expect(",")
            vals.append(self.int_())
        self.expect(")")
        return Bounds(*vals)

    def hf_value(self):
        t = self.peek()
        if t.kind == "int":
            return self.int_()
        if self.accept("{"):
            return frozenset(self.sep_list(self.hf_value, "}"))
        if self.accept("("):
            return tuple(self.sep_list(self.hf_value, ")"))
        self.fail(f"found {t.text or 'end of line'!r}", {"integer", "'{'", "'('"})

    def statement(self):
        t = self.peek()
        head = self.ident() if t.kind == "ident" else None
        if head not in STATEMENT_HEADS:
            self.fail(f"found {t.text!r}", set(STATEMENT_HEADS), t)
        self.expect("(")
        x = self.name()
        self.expect(",")
        if head == "subset":
            y = self.hf_value()
        else:
            y = self.name()
        self.expect(")")
        if head == "mem":
            return Mem(x, y)
        if head == "eq":
            return Eq(x, y)
        return SubsetOfCheck(x, y)

    # names
    def name(self) -> Name:
        t = self.peek()
        if t.kind == "ident":
            if t.text == "check":
                self.i += 1
                return Check(self.hf_value())
            if t.text == "bullet":
                self.i += 1
                self.expect("[")
                return bullet(self.sep_list(self.name, "]"))
            if t.text in SYMBOL_TAGS:
                return self.symbolic()
            if t.text in self.decls:
                v = self.decls[t.text]
                if isinstance(v, Name):
                    self.i += 1
                    return v
                self.fail(f"{t.text} is not a name", {"name"}, t)
            self.fail(f"undeclared name {t.text!r}", {"name"}, t)
        if self.accept("{"):
            return Ext(self.sep_list(self.pair, "}"))
        self.fail(f"found {t.text or 'end of line'!r}", {"'check'", "'bullet'", "'{'", "symbolic name"})

    def symbolic(self) -> Sym:
        tag_tok = self.peek()
        tag = self.ident()
        if tag in ("AVEC", "CALSEQ"):
            return AVEC if tag == "AVEC" else CALSEQ
        if tag == "TS":
            self.expect("[")
            s = []
            while not self.accept("]"):
                s.append(self.int_())
            at = None
            if self.accept("@"):
                self.expect("(")
                a = self.int_()
                self.expect(",")
                n = self.int_()
                self.expect(")")
                at = (a, n)
            return Sym("TS", tuple(s), at)
        self.expect("(")
        params = self.sep_list(self.int_, ")")
        arity = {"X": 3, "A": 2, "AN": 1, "B": 2, "CALB": 1}[tag]
        if len(params) != arity:
            self.fail(f"{tag} takes {arity} parameters, got {len(params)}", {f"{arity} integers"}, tag_tok)
        return Sym(tag, *params)

    def pair(self):
        self.expect("<")
        c = self.condition()
        self.expect(",")
        y = self.name()
        self.expect(">")
        return c, y

    def condition(self):
        t = self.peek()
        if self.accept("top"):
            return TOP
        if t.kind == "ident" and t.text == "cond":
            self.i += 1
            return self.cond_body()
        if t.kind == "ident" and t.text == "qcond":
            self.i += 1
            return self.qcond_body()
        if t.kind == "ident" and isinstance(self.decls.get(t.text), (CohenCondition, QCondition)):
            self.i += 1
            return self.decls[t.text]
        return self.label()

    # field values and arguments
    def value(self, words=()):
        t = self.peek()
        if t.kind == "int":
            return self.int_()
        if t.kind == "ident":
            if t.text in OBJECT_KEYWORDS:
                return self.obj()
            if t.text in STATEMENT_HEADS and self.peek(1).text == "(":
                return self.statement()
            if t.text == "fix" and self.peek(1).text == "(":
                self.i += 1
                self.expect("(")
                labels = []
                while not self.accept(")"):
                    labels.append(self.label())
                return Fix(tuple(labels))
            if t.text == "map" and self.peek(1).text == "{":
                self.i += 2

                def entry():
                    a = self.label()
                    self.expect("->")
                    return a, self.label()

                return LabelMap(tuple(sorted(self.sep_list(entry, "}"))))
            if t.text in ("check", "bullet") or t.text in SYMBOL_TAGS:
                return self.name()
            self.i += 1
            if t.text in self.decls:
                return Ref(t.text)
            if t.text not in words:
                self.fail(f"undeclared reference {t.text!r}", set(words) | {"declared name"}, t)
            return Word(t.text)
        if self.accept("["):
            return tuple(self.sep_list(lambda: self.value(words), "]"))
        if t.text == "{":
            nxt = self.peek(1)
            if nxt.text == "<":
                return self.name()
            if nxt.text == "(":
                return self.support_body()
            if nxt.text == "}":
                self.i += 2
                return SupportSpec()
            self.fail(f"found {nxt.text!r}", {"'<'", "'('", "'}'"}, nxt)
        if t.text == "(":
            return self.bounds_body()
        self.fail(f"found {t.text or 'end of line'!r}", {"value"})

    def composite(self, kind: str) -> Lit:
        tok = self.expect("{")
        allowed = COMPOSITE_FIELDS[kind]
        fields = {}

        def entry():
            kt = self.peek()
            key = self.ident()
            if key not in allowed:
                self.fail(f"unknown {kind} field {key!r}", set(allowed), kt)
            if key in fields:
                self.fail(f"duplicate field {key!r}", set(), kt)
            self.expect(":")
            fields[key] = self.value(("all",) if key in ("group", "base") else ())

        self.sep_list(entry, "}", ";")
        return Lit(kind, tuple((k, fields[k]) for k in allowed if k in fields))

    def directive(self) -> Directive:
        kt = self.peek()
        kind = self.ident()
        if kind not in CHECK_SCHEMAS:
            self.fail(f"unknown check kind {kind!r}", set(CHECK_SCHEMAS), kt)
        arity, keys = CHECK_SCHEMAS[kind]
        args, kwargs = [], {}
        while self.peek().kind != "end":
            t = self.peek()
            if t.kind == "ident" and self.peek(1).text == "=":
                if t.text not in keys:
                    self.fail(f"{kind} takes no argument {t.text!r}", keys, t)
                if t.text in kwargs:
                    self.fail(f"duplicate argument {t.text!r}", set(), t)
                self.i += 2
                kwargs[t.text] = self.value(PRESET_WORDS if t.text == "bounds" else ())
            else:
                if kwargs:
                    self.fail("positional argument after keyword", {"keyword argument"}, t)
                args.append(self.value())
        if len(args) != arity:
            self.fail(f"{kind} takes {arity} positional arguments, got {len(args)}",
                      {f"{arity} arguments"}, kt)
        return Directive(kind, tuple(args), tuple(sorted(kwargs.items())))


def parse_script(text: str) -> WorkbenchScript:
    seed = None
    decls: dict = {}
    order: list = []
    directives = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = tokenize_line(raw, lineno)
        if toks[0].kind == "end":
            continue
        p = _Parser(toks, decls)
        head = p.peek()
        if p.accept("seed"):
            if seed is not None:
                p.fail("seed given twice", tok=head)
            seed = p.int_()
        elif p.accept("let"):
            nt = p.peek()
            name = p.ident()
            if name in decls:
                p.fail(f"{name!r} declared twice", tok=nt)
            if name in OBJECT_KEYWORDS or name in SYMBOL_TAGS or name in ("top", "check", "bullet"):
                p.fail(f"{name!r} is reserved", tok=nt)
            p.expect("=")
            val = p.obj()
            decls[name] = val
            order.append((name, val))
        elif p.accept("check"):
            directives.append(p.directive())
        else:
            p.fail(f"found {head.text!r}", {"'seed'", "'let'", "'check'"})
        p.end()
    return WorkbenchScript(seed, tuple(order), tuple(directives))


# ---------------------------------------------------------------------------
# printer


def _decode(v: frozenset):
    """Readable form of an hf value: ordinal, sequence, or set."""
    if v == _von_neumann(len(v)):
        return len(v)
    seq = _as_sequence(v)
    if seq is not None:
        return tuple(_decode(x) for x in seq)
    return frozenset(v)


def _as_sequence(v: frozenset):
    items = {}
    for m in v:
        pr = _as_kpair(m)
        if pr is None:
            return None
        i, x = pr
        if i != _von_neumann(len(i)) or len(i) in items:
            return None
        items[len(i)] = x
    if sorted(items) != list(range(len(items))):
        return None
    return [items[i] for i in range(len(items))]


def _as_kpair(m):
    if not isinstance(m, frozenset):
        return None
    parts = list(m)
    if len(parts) == 1 and len(parts[0]) == 1:
        (a,) = parts[0]
        return a, a
    if len(parts) == 2:
        s, d = sorted(parts, key=len)
        if len(s) == 1 and len(d) == 2 and s <= d:
            (a,) = s
            (b,) = d - s
            return a, b
    return None


def format_hf(v) -> str:
    return _format_hf_val(_decode(hf(v)) if not isinstance(v, frozenset) else _decode(v))


def _format_hf_val(d) -> str:
    if isinstance(d, int):
        return str(d)
    if isinstance(d, tuple):
        return "(" + ", ".join(_format_hf_val(x) for x in d) + ")"
    return "{" + ", ".join(sorted(format_hf(x) for x in d)) + "}"


def format_condition(c) -> str:
    if c is TOP:
        return "top"
    if isinstance(c, CohenCondition):
        return repr(c)
    if isinstance(c, QCondition):
        return format_qcond(c)
    return _format_label(c)


def _format_label(x) -> str:
    s = str(x)
    if not re.fullmatch(r"\d+|[A-Za-z_][A-Za-z0-9_]*", s):
        raise ValueError(f"label {s!r} cannot be written in a script")
    return s


def format_name(x: Name) -> str:
    if isinstance(x, Check):
        return "check " + format_hf(x.hf)
    if isinstance(x, Sym):
        t, p = x.tag, x.params
        if t in ("AVEC", "CALSEQ"):
            return t
        if t == "TS":
            s, at = p
            out = "TS[" + " ".join(map(str, s)) + "]"
            return out + (f"@({at[0]},{at[1]})" if at is not None else "")
        return f"{t}(" + ",".join(map(str, p)) + ")"
    pairs = sorted((format_condition(c), format_name(y)) for c, y in x.pairs)
    if pairs and all(c is TOP for c, _ in x.pairs):
        return "bullet[" + ", ".join(sorted(y for _, y in pairs)) + "]"
    return "{" + ", ".join(f"<{c}, {y}>" for c, y in pairs) + "}"


def format_wreath(pi: WreathPerm) -> str:
    parts = [f"outer {n}: {format_moves(p.moves)}" for n, p in sorted(pi.outer.items())]
    parts += [f"inner {n} {m}: {format_moves(p.moves)}" for (n, m), p in sorted(pi.inner.items())]
    return "wreath {" + "; ".join(parts) + "}"


def format_hperm(pi: HPerm) -> str:
    return "hperm {" + "; ".join(f"{a}: {format_moves(p.moves)}"
                                 for a, p in sorted(pi.per_alpha.items())) + "}"


def format_auto(g: Automorphism) -> str:
    return "auto {" + ", ".join(f"{_format_label(a)}->{_format_label(b)}"
                                for a, b in sorted(g.mapping.items(), key=lambda kv: (str(kv[0]), str(kv[1])))) + "}"


def _fmt_coord(c) -> str:
    return f"({c[0]} {c[1]})"


def format_qcond(q: QCondition) -> str:
    t = "; ".join(f"{_fmt_coord(c)}: [{' '.join(map(str, s))}]" for c, s in sorted(q.t.items()))
    f = "; ".join("{" + " ".join(_fmt_coord(c) for c in sorted(a)) + f"}}: {v}"
                  for a, v in sorted(q.f.items(), key=lambda kv: (len(kv[0]), sorted(kv[0]))))
    return f"qcond {{{t}}} f {{{f}}}"


def format_poset(P: FinitePoset) -> str:
    els = " ".join(_format_label(e) for e in P.elements)
    pairs = sorted(P.leq, key=lambda ab: (P.index[ab[0]], P.index[ab[1]]))
    leq = ", ".join(f"{_format_label(a)}<={_format_label(b)}" for a, b in pairs)
    return f"poset {{elements: {els}; top: {_format_label(P.top)}; leq: {leq}}}"


def format_support(E: SupportSpec) -> str:
    return "{" + ", ".join(f"({n},{m},{a})" for n, m, a in sorted(E.triples)) + "}"


def format_statement(phi) -> str:
    if isinstance(phi, Mem):
        return f"mem({format_name(phi.c)}, {format_name(phi.x)})"
    if isinstance(phi, Eq):
        return f"eq({format_name(phi.x)}, {format_name(phi.y)})"
    return f"subset({format_name(phi.x)}, {format_hf(phi.a.hf)})"


def format_object(v) -> str:
    """Object literal with its leading keyword, as accepted after ``let x =``."""
    if isinstance(v, CohenCondition):
        return repr(v)
    if isinstance(v, WreathPerm):
        return format_wreath(v)
    if isinstance(v, HPerm):
        return format_hperm(v)
    if isinstance(v, Automorphism):
        return format_auto(v)
    if isinstance(v, FinitePoset):
        return format_poset(v)
    if isinstance(v, Name):
        return "name " + format_name(v)
    if isinstance(v, QCondition):
        return format_qcond(v)
    if isinstance(v, SupportSpec):
        return "support " + format_support(v)
    if isinstance(v, (Mem, Eq, SubsetOfCheck)):
        return "stmt " + format_statement(v)
    if isinstance(v, Bounds):
        return f"bounds ({v.N},{v.M},{v.K},{v.B})"
    if isinstance(v, HFValue):
        return "set " + format_hf(v.hf)
    if isinstance(v, Lit):
        body = "; ".join(f"{k}: {format_value(x)}" for k, x in v.fields)
        return f"{v.kind} {{{body}}}"
    raise TypeError(f"no literal form for {type(v).__name__}")


def format_value(v) -> str:
    """Field or argument value."""
    if isinstance(v, bool):
        raise TypeError("booleans have no literal form")
    if isinstance(v, int):
        return str(v)
    if isinstance(v, Ref):
        return v.name
    if isinstance(v, Word):
        return v.text
    if isinstance(v, Fix):
        return "fix(" + " ".join(_format_label(x) for x in v.labels) + ")"
    if isinstance(v, LabelMap):
        return "map {" + ", ".join(f"{_format_label(a)}->{_format_label(b)}" for a, b in v.pairs) + "}"
    if isinstance(v, tuple):
        return "[" + ", ".join(format_value(x) for x in v) + "]"
    if isinstance(v, Name):
        return format_name(v)
    if isinstance(v, SupportSpec):
        return format_support(v)
    if isinstance(v, (Mem, Eq, SubsetOfCheck)):
        return format_statement(v)
    if isinstance(v, Bounds):
        return f"({v.N},{v.M},{v.K},{v.B})"
    return format_object(v)


def format_directive(d: Directive) -> str:
    parts = ["check", d.kind]
    parts += [format_value(a) for a in d.args]
    parts += [f"{k}={format_value(v)}" for k, v in d.kwargs]
    return " ".join(parts)


def print_script(ws: WorkbenchScript) -> str:
    lines = []
    if ws.seed is not None:
        lines.append(f"seed {ws.seed}")
    lines += [f"let {k} = {format_object(v)}" for k, v in ws.declarations]
    lines += [format_directive(d) for d in ws.directives]
    return "\n".join(lines) + ("\n" if lines else "")
