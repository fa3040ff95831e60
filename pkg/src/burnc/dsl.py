"""The burnc script language: lexer, AST, recursive-descent parser, checker and printer.

Grammar (informal)::

    script    := stmt*
    stmt      := decl | command
    decl      := "group" NAME "=" ("perm" "(" INT ")" gens | "product" "(" NAME "," NAME ")")
               | "subgroup" NAME "=" gens "in" NAME
               | "symbol" NAME "=" "(" "H" "=" sub "," "Y" "=" sub "," "beta" "=" chars ")" "in" NAME "dim" INT
               | "class" NAME "=" ("0" "in" NAME "dim" INT | term (("+" | "-") term)*)
               | "prefilter" NAME "=" "{" [pair ("," pair)*] "}" "in" NAME
               | "indexed" NAME "=" ["projective"] "[" iterm (";" iterm)* "]" "in" NAME "dim" INT
    term      := ["-"] [INT "*"] NAME
    pair      := "(" "H" "=" sub "," "Y" "=" sub ")"
    iterm     := [INT "*"] "(" "H" "=" sub "," "Hp" "=" sub "," "Y" "=" sub ","
                 "beta" "=" chars "," "gamma" "=" "[" [INT ":" char ("," INT ":" char)*] "]" ")"
    sub       := NAME | gens
    gens      := "<" [perm ("," perm)*] ">"
    perm      := ("(" INT* ")")+
    chars     := "[" [char ("," char)*] "]"
    char      := INT | "(" INT ("," INT)* ")" | "{" perm ":" INT ("," perm ":" INT)* "}"
    bc        := "BC" "(" NAME "," INT ")" ["with" NAME]
    command   := "structure" bc
               | "reduce" NAME "in" bc
               | "is_zero" NAME "in" bc
               | "equal" NAME "," NAME "in" bc
               | "restrict" NAME ["from" NAME] "to" NAME ["as" NAME]
               | "product" NAME "," NAME ["in" NAME] ["as" NAME]
               | "diagonal_product" NAME "," NAME ["as" NAME]
               | "projectivize" NAME ["as" NAME]
               | "indexed_push" NAME "to" "[" [INT ("," INT)*] "]" ["as" NAME]
               | "project" NAME "with" NAME ["as" NAME]
               | "check_prefilter" NAME
               | "show" NAME

Comments run from ``#`` to the end of the line.  In ``Y = sub`` the listed
generators are added to H (to Hp for indexed terms), so ``Y=<>`` is the
trivial Y.  A subgroup name may stand for a group wherever a group is
expected.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union


class ParseError(Exception):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Loc:
    line: int
    col: int


NOLOC = Loc(0, 0)


def _loc() -> Loc:
    return field(default=NOLOC, compare=False, repr=False)


# ---------------------------------------------------------------------------
# lexer
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Token:
    kind: str  # NAME, INT, PUNCT, EOF
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<punct>[=()<>,\[\]{}:;*+\-])
""", re.VERBOSE)


def tokenize(src: str) -> list[Token]:
    toks = []
    pos = 0
    line, col = 1, 1
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None:
            raise ParseError(f"unexpected character {src[pos]!r}", line, col)
        kind = m.lastgroup
        text = m.group()
        if kind == "int":
            toks.append(Token("INT", text, line, col))
        elif kind == "name":
            toks.append(Token("NAME", text, line, col))
        elif kind == "punct":
            toks.append(Token("PUNCT", text, line, col))
        if kind == "nl":
            line, col = line + 1, 1
        else:
            col += len(text)
        pos = m.end()
    toks.append(Token("EOF", "", line, col))
    return toks


# ---------------------------------------------------------------------------
# AST
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Perm:
    cycles: tuple[tuple[int, ...], ...]
    loc: Loc = _loc()

    def text(self) -> str:
        return "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles) or "()"


@dataclass(frozen=True)
class Gens:
    perms: tuple[Perm, ...]
    loc: Loc = _loc()


@dataclass(frozen=True)
class NameRef:
    name: str
    loc: Loc = _loc()


SubRef = Union[NameRef, Gens]


@dataclass(frozen=True)
class CharInt:
    value: int
    loc: Loc = _loc()


@dataclass(frozen=True)
class CharTuple:
    values: tuple[int, ...]
    loc: Loc = _loc()


@dataclass(frozen=True)
class CharValues:
    pairs: tuple[tuple[Perm, int], ...]
    loc: Loc = _loc()


CharExpr = Union[CharInt, CharTuple, CharValues]


@dataclass(frozen=True)
class GroupPerm:
    name: str
    degree: int
    gens: Gens
    loc: Loc = _loc()


@dataclass(frozen=True)
class GroupProduct:
    name: str
    left: NameRef
    right: NameRef
    loc: Loc = _loc()


@dataclass(frozen=True)
class SubgroupDecl:
    name: str
    gens: Gens
    group: NameRef
    loc: Loc = _loc()


@dataclass(frozen=True)
class SymbolDecl:
    name: str
    H: SubRef
    Y: SubRef
    beta: tuple[CharExpr, ...]
    group: NameRef
    dim: int
    loc: Loc = _loc()


@dataclass(frozen=True)
class ClassTerm:
    coeff: int
    ref: NameRef
    loc: Loc = _loc()


@dataclass(frozen=True)
class ClassDecl:
    name: str
    terms: tuple[ClassTerm, ...]
    group: NameRef | None = None  # only for the zero class
    dim: int | None = None
    loc: Loc = _loc()


@dataclass(frozen=True)
class PrefilterDecl:
    name: str
    pairs: tuple[tuple[SubRef, SubRef], ...]
    group: NameRef
    loc: Loc = _loc()


@dataclass(frozen=True)
class IndexedTerm:
    coeff: int
    H: SubRef
    Hp: SubRef
    Y: SubRef
    beta: tuple[CharExpr, ...]
    gamma: tuple[tuple[int, CharExpr], ...]
    loc: Loc = _loc()


@dataclass(frozen=True)
class IndexedDecl:
    name: str
    projective: bool
    terms: tuple[IndexedTerm, ...]
    group: NameRef
    dim: int
    loc: Loc = _loc()


@dataclass(frozen=True)
class BCRef:
    group: NameRef
    dim: int
    prefilter: NameRef | None = None
    loc: Loc = _loc()


@dataclass(frozen=True)
class Structure:
    bc: BCRef
    loc: Loc = _loc()


@dataclass(frozen=True)
class Reduce:
    target: NameRef
    bc: BCRef
    loc: Loc = _loc()


@dataclass(frozen=True)
class IsZero:
    target: NameRef
    bc: BCRef
    loc: Loc = _loc()


@dataclass(frozen=True)
class Equal:
    left: NameRef
    right: NameRef
    bc: BCRef
    loc: Loc = _loc()


@dataclass(frozen=True)
class Restrict:
    target: NameRef
    source: NameRef | None
    to: NameRef
    as_name: str | None = None
    loc: Loc = _loc()


@dataclass(frozen=True)
class Product:
    left: NameRef
    right: NameRef
    group: NameRef | None = None
    as_name: str | None = None
    loc: Loc = _loc()


@dataclass(frozen=True)
class DiagonalProduct:
    left: NameRef
    right: NameRef
    as_name: str | None = None
    loc: Loc = _loc()


@dataclass(frozen=True)
class Projectivize:
    target: NameRef
    as_name: str | None = None
    loc: Loc = _loc()


@dataclass(frozen=True)
class IndexedPush:
    target: NameRef
    J: tuple[int, ...]
    as_name: str | None = None
    loc: Loc = _loc()


@dataclass(frozen=True)
class Project:
    target: NameRef
    prefilter: NameRef
    as_name: str | None = None
    loc: Loc = _loc()


@dataclass(frozen=True)
class CheckPrefilter:
    prefilter: NameRef
    loc: Loc = _loc()


@dataclass(frozen=True)
class Show:
    target: NameRef
    loc: Loc = _loc()


Decl = Union[GroupPerm, GroupProduct, SubgroupDecl, SymbolDecl, ClassDecl, PrefilterDecl, IndexedDecl]
Command = Union[Structure, Reduce, IsZero, Equal, Restrict, Product, DiagonalProduct, Projectivize,
                IndexedPush, Project, CheckPrefilter, Show]
Stmt = Union[Decl, Command]


@dataclass(frozen=True)
class Script:
    statements: tuple[Stmt, ...]


KEYWORDS = {
    "group", "subgroup", "symbol", "class", "prefilter", "indexed", "structure", "reduce", "is_zero",
    "equal", "restrict", "product", "diagonal_product", "projectivize", "indexed_push", "project",
    "check_prefilter", "show", "in", "dim", "perm", "with", "from", "to", "as", "BC", "projective",
}
DECL_KEYWORDS = ("group", "subgroup", "symbol", "class", "prefilter", "indexed")
COMMAND_KEYWORDS = ("structure", "reduce", "is_zero", "equal", "restrict", "product", "diagonal_product",
                    "projectivize", "indexed_push", "project", "check_prefilter", "show")


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


class Parser:
    def __init__(self, src: str):
        self.toks = tokenize(src)
        self.i = 0

    # token helpers
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def loc(self) -> Loc:
        return Loc(self.tok.line, self.tok.col)

    def error(self, msg: str, tok: Token | None = None) -> ParseError:
        t = tok or self.tok
        return ParseError(msg, t.line, t.col)

    def _desc(self, t: Token) -> str:
        return "end of input" if t.kind == "EOF" else repr(t.text)

    def at(self, text: str) -> bool:
        t = self.tok
        return t.kind in ("PUNCT", "NAME") and t.text == text

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        if not self.at(text):
            raise self.error(f"expected {text!r}, found {self._desc(self.tok)}")
        t = self.tok
        self.i += 1
        return t

    def name(self, what: str = "a name") -> str:
        t = self.tok
        if t.kind != "NAME" or t.text in KEYWORDS:
            raise self.error(f"expected {what}, found {self._desc(t)}")
        self.i += 1
        return t.text

    def ref(self, what: str = "a name") -> NameRef:
        loc = self.loc()
        return NameRef(self.name(what), loc)

    def integer(self, signed: bool = False) -> int:
        neg = signed and self.accept("-")
        t = self.tok
        if t.kind != "INT":
            raise self.error(f"expected an integer, found {self._desc(t)}")
        self.i += 1
        return -int(t.text) if neg else int(t.text)

    # grammar
    def script(self) -> Script:
        out = []
        while self.tok.kind != "EOF":
            t = self.tok
            if t.kind == "NAME" and t.text in DECL_KEYWORDS:
                out.append(self.decl())
            elif t.kind == "NAME" and t.text in COMMAND_KEYWORDS:
                out.append(self.command())
            else:
                raise self.error(f"expected a declaration or command, found {self._desc(t)}")
            self.accept(";")
        return Script(tuple(out))

    def perm(self) -> Perm:
        loc = self.loc()
        if not self.at("("):
            raise self.error(f"expected a permutation in cycle notation, found {self._desc(self.tok)}")
        cycles = []
        while self.accept("("):
            pts = []
            while self.tok.kind == "INT":
                pts.append(self.integer())
            self.expect(")")
            if pts:
                cycles.append(tuple(pts))
        return Perm(tuple(cycles), loc)

    def gens(self) -> Gens:
        loc = self.loc()
        self.expect("<")
        perms = []
        if not self.at(">"):
            perms.append(self.perm())
            while self.accept(","):
                perms.append(self.perm())
        self.expect(">")
        return Gens(tuple(perms), loc)

    def subref(self) -> SubRef:
        if self.at("<"):
            return self.gens()
        return self.ref("a subgroup name or <generators>")

    def field_(self, label: str) -> None:
        self.expect(label)
        self.expect("=")

    def char(self) -> CharExpr:
        loc = self.loc()
        if self.tok.kind == "INT" or self.at("-"):
            return CharInt(self.integer(signed=True), loc)
        if self.accept("("):
            vals = [self.integer(signed=True)]
            while self.accept(","):
                vals.append(self.integer(signed=True))
            self.expect(")")
            return CharTuple(tuple(vals), loc)
        if self.accept("{"):
            pairs = []
            while True:
                p = self.perm()
                self.expect(":")
                pairs.append((p, self.integer(signed=True)))
                if not self.accept(","):
                    break
            self.expect("}")
            return CharValues(tuple(pairs), loc)
        raise self.error(f"expected a character, found {self._desc(self.tok)}")

    def chars(self) -> tuple[CharExpr, ...]:
        self.expect("[")
        out = []
        if not self.at("]"):
            out.append(self.char())
            while self.accept(","):
                out.append(self.char())
        self.expect("]")
        return tuple(out)

    def decl(self) -> Decl:
        loc = self.loc()
        kw = self.tok.text
        self.i += 1
        nm = self.name(f"a name for the {kw}")
        self.expect("=")
        if kw == "group":
            if self.accept("perm"):
                self.expect("(")
                deg = self.integer()
                self.expect(")")
                if deg < 1:
                    raise self.error("degree must be positive", self.toks[self.i - 2])
                return GroupPerm(nm, deg, self.gens(), loc)
            if self.accept("product"):
                self.expect("(")
                a = self.ref("a group name")
                self.expect(",")
                b = self.ref("a group name")
                self.expect(")")
                return GroupProduct(nm, a, b, loc)
            raise self.error(f"expected 'perm' or 'product', found {self._desc(self.tok)}")
        if kw == "subgroup":
            g = self.gens()
            self.expect("in")
            return SubgroupDecl(nm, g, self.ref("a group name"), loc)
        if kw == "symbol":
            self.expect("(")
            self.field_("H")
            H = self.subref()
            self.expect(",")
            self.field_("Y")
            Y = self.subref()
            self.expect(",")
            self.field_("beta")
            beta = self.chars()
            self.expect(")")
            self.expect("in")
            g = self.ref("a group name")
            self.expect("dim")
            return SymbolDecl(nm, H, Y, beta, g, self.integer(), loc)
        if kw == "class":
            if self.tok.kind == "INT" and self.tok.text == "0" and self.toks[self.i + 1].text == "in":
                self.i += 1
                self.expect("in")
                g = self.ref("a group name")
                self.expect("dim")
                return ClassDecl(nm, (), g, self.integer(), loc)
            terms = [self.class_term(-1 if self.accept("-") else 1)]
            while self.at("+") or self.at("-"):
                sign = 1 if self.tok.text == "+" else -1
                self.i += 1
                terms.append(self.class_term(sign))
            return ClassDecl(nm, tuple(terms), None, None, loc)
        if kw == "prefilter":
            self.expect("{")
            pairs = []
            if not self.at("}"):
                pairs.append(self.pair())
                while self.accept(","):
                    pairs.append(self.pair())
            self.expect("}")
            self.expect("in")
            return PrefilterDecl(nm, tuple(pairs), self.ref("a group name"), loc)
        assert kw == "indexed"
        proj = self.accept("projective")
        self.expect("[")
        terms = [self.indexed_term()]
        while self.accept(";"):
            if self.at("]"):
                break
            terms.append(self.indexed_term())
        self.expect("]")
        self.expect("in")
        g = self.ref("a group name")
        self.expect("dim")
        return IndexedDecl(nm, proj, tuple(terms), g, self.integer(), loc)

    def class_term(self, sign: int) -> ClassTerm:
        loc = self.loc()
        coeff = 1
        if self.tok.kind == "INT":
            coeff = self.integer()
            self.expect("*")
        return ClassTerm(sign * coeff, self.ref("a symbol or class name"), loc)

    def pair(self) -> tuple[SubRef, SubRef]:
        self.expect("(")
        self.field_("H")
        H = self.subref()
        self.expect(",")
        self.field_("Y")
        Y = self.subref()
        self.expect(")")
        return H, Y

    def indexed_term(self) -> IndexedTerm:
        loc = self.loc()
        coeff = 1
        if self.tok.kind == "INT" or self.at("-"):
            coeff = self.integer(signed=True)
            self.expect("*")
        self.expect("(")
        self.field_("H")
        H = self.subref()
        self.expect(",")
        self.field_("Hp")
        Hp = self.subref()
        self.expect(",")
        self.field_("Y")
        Y = self.subref()
        self.expect(",")
        self.field_("beta")
        beta = self.chars()
        self.expect(",")
        self.field_("gamma")
        self.expect("[")
        gamma = []
        if not self.at("]"):
            while True:
                idx = self.integer()
                self.expect(":")
                gamma.append((idx, self.char()))
                if not self.accept(","):
                    break
        self.expect("]")
        self.expect(")")
        return IndexedTerm(coeff, H, Hp, Y, beta, tuple(gamma), loc)

    def bc(self) -> BCRef:
        loc = self.loc()
        self.expect("BC")
        self.expect("(")
        g = self.ref("a group name")
        self.expect(",")
        n = self.integer()
        self.expect(")")
        pf = self.ref("a prefilter name") if self.accept("with") else None
        return BCRef(g, n, pf, loc)

    def as_name(self) -> str | None:
        return self.name("a result name") if self.accept("as") else None

    def command(self) -> Command:
        loc = self.loc()
        kw = self.tok.text
        self.i += 1
        if kw == "structure":
            return Structure(self.bc(), loc)
        if kw in ("reduce", "is_zero"):
            t = self.ref()
            self.expect("in")
            return (Reduce if kw == "reduce" else IsZero)(t, self.bc(), loc)
        if kw == "equal":
            a = self.ref()
            self.expect(",")
            b = self.ref()
            self.expect("in")
            return Equal(a, b, self.bc(), loc)
        if kw == "restrict":
            t = self.ref()
            src = self.ref("a group name") if self.accept("from") else None
            self.expect("to")
            to = self.ref("a subgroup name")
            return Restrict(t, src, to, self.as_name(), loc)
        if kw == "product":
            a = self.ref()
            self.expect(",")
            b = self.ref()
            g = self.ref("a group name") if self.accept("in") else None
            return Product(a, b, g, self.as_name(), loc)
        if kw == "diagonal_product":
            a = self.ref()
            self.expect(",")
            b = self.ref()
            return DiagonalProduct(a, b, self.as_name(), loc)
        if kw == "projectivize":
            return Projectivize(self.ref(), self.as_name(), loc)
        if kw == "indexed_push":
            t = self.ref()
            self.expect("to")
            self.expect("[")
            J = []
            if not self.at("]"):
                J.append(self.integer())
                while self.accept(","):
                    J.append(self.integer())
            self.expect("]")
            return IndexedPush(t, tuple(J), self.as_name(), loc)
        if kw == "project":
            t = self.ref()
            self.expect("with")
            return Project(t, self.ref("a prefilter name"), self.as_name(), loc)
        if kw == "check_prefilter":
            return CheckPrefilter(self.ref("a prefilter name"), loc)
        assert kw == "show"
        return Show(self.ref(), loc)


def parse(src: str, check: bool = True) -> Script:
    """Parse a script; with ``check`` also resolve names and check dimensions."""
    script = Parser(src).script()
    if check:
        check_script(script)
    return script


# ---------------------------------------------------------------------------
# static checks
# ---------------------------------------------------------------------------


@dataclass
class _Info:
    kind: str            # group, subgroup, symbol, class, prefilter, indexed
    group: str | None = None   # owning group name, or None when only known at run time
    dim: int | None = None


def _err(msg: str, loc: Loc) -> ParseError:
    return ParseError(msg, loc.line, loc.col)


def check_script(script: Script) -> None:
    """Resolve every name reference and check dimensions that are known statically."""
    env: dict[str, _Info] = {}

    def define(name: str, info: _Info, loc: Loc) -> None:
        if name in env:
            raise _err(f"{name!r} is already defined", loc)
        env[name] = info

    def need(ref: NameRef, *kinds: str) -> _Info:
        info = env.get(ref.name)
        if info is None:
            raise _err(f"undefined name {ref.name!r}", ref.loc)
        if info.kind not in kinds:
            raise _err(f"{ref.name!r} is a {info.kind}, expected " + " or ".join(kinds), ref.loc)
        return info

    def group_like(ref: NameRef) -> None:
        need(ref, "group", "subgroup")

    def subref(s: SubRef) -> None:
        if isinstance(s, NameRef):
            need(s, "subgroup")

    def classlike(ref: NameRef) -> _Info:
        return need(ref, "symbol", "class")

    for st in script.statements:
        if isinstance(st, GroupPerm):
            for p in st.gens.perms:
                for c in p.cycles:
                    for x in c:
                        if not 1 <= x <= st.degree:
                            raise _err(f"point {x} outside 1..{st.degree}", p.loc)
            define(st.name, _Info("group", st.name), st.loc)
        elif isinstance(st, GroupProduct):
            group_like(st.left)
            group_like(st.right)
            define(st.name, _Info("group", st.name), st.loc)
        elif isinstance(st, SubgroupDecl):
            group_like(st.group)
            define(st.name, _Info("subgroup", st.group.name), st.loc)
        elif isinstance(st, SymbolDecl):
            group_like(st.group)
            subref(st.H)
            subref(st.Y)
            if len(st.beta) > st.dim:
                raise _err(f"beta has {len(st.beta)} characters but dim is {st.dim}", st.loc)
            define(st.name, _Info("symbol", st.group.name, st.dim), st.loc)
        elif isinstance(st, ClassDecl):
            if st.group is not None:
                group_like(st.group)
                info = _Info("class", st.group.name, st.dim)
            else:
                infos = [classlike(t.ref) for t in st.terms]
                gs = {i.group for i in infos}
                ds = {i.dim for i in infos}
                if None not in gs and len(gs) > 1:
                    raise _err("class mixes symbols over different groups: " + ", ".join(sorted(gs)), st.loc)
                if None not in ds and len(ds) > 1:
                    raise _err("class mixes dimensions " + ", ".join(map(str, sorted(ds))), st.loc)
                info = _Info("class", infos[0].group if len(gs) == 1 else None,
                             infos[0].dim if len(ds) == 1 else None)
            define(st.name, info, st.loc)
        elif isinstance(st, PrefilterDecl):
            group_like(st.group)
            for H, Y in st.pairs:
                subref(H)
                subref(Y)
            define(st.name, _Info("prefilter", st.group.name), st.loc)
        elif isinstance(st, IndexedDecl):
            group_like(st.group)
            idx = None
            for t in st.terms:
                for s in (t.H, t.Hp, t.Y):
                    subref(s)
                I = [i for i, _ in t.gamma]
                if len(set(I)) != len(I):
                    raise _err("repeated gamma index", t.loc)
                if idx is None:
                    idx = set(I)
                elif set(I) != idx:
                    raise _err("indexed terms use different index sets", t.loc)
                budget = st.dim - len(I) + (1 if st.projective else 0)
                if len(t.beta) > budget:
                    raise _err(f"beta has {len(t.beta)} characters but at most {budget} fit", t.loc)
            if st.projective and not idx:
                raise _err("projective indexed symbols need a nonempty index set", st.loc)
            define(st.name, _Info("indexed", st.group.name, st.dim), st.loc)
        elif isinstance(st, (Structure, Reduce, IsZero, Equal)):
            group_like(st.bc.group)
            if st.bc.prefilter is not None:
                pf = need(st.bc.prefilter, "prefilter")
                if pf.group != st.bc.group.name:
                    raise _err(f"prefilter {st.bc.prefilter.name!r} belongs to {pf.group}", st.bc.prefilter.loc)
            targets = [] if isinstance(st, Structure) else (
                [st.left, st.right] if isinstance(st, Equal) else [st.target])
            for t in targets:
                info = classlike(t)
                if info.group is not None and info.group != st.bc.group.name:
                    raise _err(f"{t.name!r} lives over {info.group}, not {st.bc.group.name}", t.loc)
                if info.dim is not None and info.dim > st.bc.dim:
                    raise _err(f"{t.name!r} has dimension {info.dim} > {st.bc.dim}", t.loc)
        elif isinstance(st, Restrict):
            info = classlike(st.target)
            if st.source is not None:
                group_like(st.source)
            need(st.to, "subgroup")
            if st.as_name:
                define(st.as_name, _Info("class", st.to.name, info.dim), st.loc)
        elif isinstance(st, (Product, DiagonalProduct)):
            a = classlike(st.left)
            b = classlike(st.right)
            if isinstance(st, Product) and st.group is not None:
                need(st.group, "group")
            if isinstance(st, DiagonalProduct) and a.group and b.group and a.group != b.group:
                raise _err("diagonal_product needs classes over the same group", st.loc)
            dim = None if a.dim is None or b.dim is None else a.dim + b.dim
            if isinstance(st, DiagonalProduct):
                grp = a.group if a.group == b.group else None
            else:
                grp = st.group.name if st.group is not None else None
            if st.as_name:
                define(st.as_name, _Info("class", grp, dim), st.loc)
        elif isinstance(st, (Projectivize, IndexedPush)):
            info = need(st.target, "indexed")
            if st.as_name:
                define(st.as_name, _Info("class", info.group, info.dim), st.loc)
        elif isinstance(st, Project):
            info = classlike(st.target)
            need(st.prefilter, "prefilter")
            if st.as_name:
                define(st.as_name, _Info("class", info.group, info.dim), st.loc)
        elif isinstance(st, CheckPrefilter):
            need(st.prefilter, "prefilter")
        elif isinstance(st, Show):
            if st.target.name not in env:
                raise _err(f"undefined name {st.target.name!r}", st.target.loc)


# ---------------------------------------------------------------------------
# printer
# ---------------------------------------------------------------------------


def _gens(g: Gens) -> str:
    return "<" + ", ".join(p.text() for p in g.perms) + ">"


def _sub(s: SubRef) -> str:
    return s.name if isinstance(s, NameRef) else _gens(s)


def _char(c: CharExpr) -> str:
    if isinstance(c, CharInt):
        return str(c.value)
    if isinstance(c, CharTuple):
        return "(" + ", ".join(map(str, c.values)) + ")"
    return "{" + ", ".join(f"{p.text()}: {v}" for p, v in c.pairs) + "}"


def _chars(cs: tuple[CharExpr, ...]) -> str:
    return "[" + ", ".join(_char(c) for c in cs) + "]"


def _bc(b: BCRef) -> str:
    s = f"BC({b.group.name}, {b.dim})"
    return s + (f" with {b.prefilter.name}" if b.prefilter else "")


def _as(n: str | None) -> str:
    return f" as {n}" if n else ""


def format_statement(st: Stmt) -> str:
    if isinstance(st, GroupPerm):
        return f"group {st.name} = perm({st.degree}) {_gens(st.gens)}"
    if isinstance(st, GroupProduct):
        return f"group {st.name} = product({st.left.name}, {st.right.name})"
    if isinstance(st, SubgroupDecl):
        return f"subgroup {st.name} = {_gens(st.gens)} in {st.group.name}"
    if isinstance(st, SymbolDecl):
        return (f"symbol {st.name} = (H={_sub(st.H)}, Y={_sub(st.Y)}, beta={_chars(st.beta)}) "
                f"in {st.group.name} dim {st.dim}")
    if isinstance(st, ClassDecl):
        if not st.terms:
            return f"class {st.name} = 0 in {st.group.name} dim {st.dim}"
        parts = []
        for k, t in enumerate(st.terms):
            sign = "-" if t.coeff < 0 else "+"
            mag = "" if abs(t.coeff) == 1 else f"{abs(t.coeff)}*"
            if k == 0:
                parts.append(("-" if t.coeff < 0 else "") + mag + t.ref.name)
            else:
                parts.append(f"{sign} {mag}{t.ref.name}")
        return f"class {st.name} = " + " ".join(parts)
    if isinstance(st, PrefilterDecl):
        pairs = ", ".join(f"(H={_sub(H)}, Y={_sub(Y)})" for H, Y in st.pairs)
        return f"prefilter {st.name} = {{{pairs}}} in {st.group.name}"
    if isinstance(st, IndexedDecl):
        terms = []
        for t in st.terms:
            gamma = ", ".join(f"{i}: {_char(c)}" for i, c in t.gamma)
            head = "" if t.coeff == 1 else f"{t.coeff}*"
            terms.append(f"  {head}(H={_sub(t.H)}, Hp={_sub(t.Hp)}, Y={_sub(t.Y)}, "
                         f"beta={_chars(t.beta)}, gamma=[{gamma}])")
        proj = "projective " if st.projective else ""
        return (f"indexed {st.name} = {proj}[\n" + " ;\n".join(terms)
                + f"\n] in {st.group.name} dim {st.dim}")
    if isinstance(st, Structure):
        return f"structure {_bc(st.bc)}"
    if isinstance(st, Reduce):
        return f"reduce {st.target.name} in {_bc(st.bc)}"
    if isinstance(st, IsZero):
        return f"is_zero {st.target.name} in {_bc(st.bc)}"
    if isinstance(st, Equal):
        return f"equal {st.left.name}, {st.right.name} in {_bc(st.bc)}"
    if isinstance(st, Restrict):
        src = f" from {st.source.name}" if st.source else ""
        return f"restrict {st.target.name}{src} to {st.to.name}{_as(st.as_name)}"
    if isinstance(st, Product):
        grp = f" in {st.group.name}" if st.group else ""
        return f"product {st.left.name}, {st.right.name}{grp}{_as(st.as_name)}"
    if isinstance(st, DiagonalProduct):
        return f"diagonal_product {st.left.name}, {st.right.name}{_as(st.as_name)}"
    if isinstance(st, Projectivize):
        return f"projectivize {st.target.name}{_as(st.as_name)}"
    if isinstance(st, IndexedPush):
        return f"indexed_push {st.target.name} to [{', '.join(map(str, st.J))}]{_as(st.as_name)}"
    if isinstance(st, Project):
        return f"project {st.target.name} with {st.prefilter.name}{_as(st.as_name)}"
    if isinstance(st, CheckPrefilter):
        return f"check_prefilter {st.prefilter.name}"
    if isinstance(st, Show):
        return f"show {st.target.name}"
    raise TypeError(f"unknown statement {st!r}")


def format_script(script: Script) -> str:
    return "".join(format_statement(st) + "\n" for st in script.statements)


__all__ = [
    "ParseError", "Loc", "Token", "tokenize", "Parser", "parse", "check_script", "Script",
    "format_statement", "format_script",
    "Perm", "Gens", "NameRef", "CharInt", "CharTuple", "CharValues",
    "GroupPerm", "GroupProduct", "SubgroupDecl", "SymbolDecl", "ClassTerm", "ClassDecl", "PrefilterDecl",
    "IndexedTerm", "IndexedDecl", "BCRef", "Structure", "Reduce", "IsZero", "Equal", "Restrict",
    "Product", "DiagonalProduct", "Projectivize", "IndexedPush", "Project", "CheckPrefilter", "Show",
]
