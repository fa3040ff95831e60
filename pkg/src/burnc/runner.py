"""Execute parsed scripts and render the resulting reports."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Any

from . import dsl
from .burnside import (
    BurnsideClass,
    Prefilter,
    ResourceLimitError,
    build_presentation,
    diagonal_product,
    fibration_class,
    indexed_push,
    prefilter_violations,
    product,
    product_group,
    project,
    restrict,
    subgroup_group,
)
from .groups import Character, FiniteGroup, GroupError, Subgroup, abelian_structure, group_from_cycles
from .symbols import IndexedSymbol, SymbolError, describe_lift, lift_generators, make_indexed, symbol

SCHEMA_VERSION = 1


class CommandError(Exception):
    pass


@dataclass
class Result:
    index: int
    command: str
    status: str = "ok"
    kind: str = ""
    summary: str = ""
    structure: dict | None = None
    verdict: bool | None = None
    klass: BurnsideClass | None = None
    lines: list[str] = field(default_factory=list)
    message: str | None = None
    diagnostics: dict = field(default_factory=dict)
    timing_ms: float | None = None


@dataclass
class Report:
    results: list[Result]

    @property
    def ok(self) -> bool:
        return all(r.status == "ok" for r in self.results)


@dataclass
class _Indexed:
    group: FiniteGroup
    n: int
    projective: bool
    terms: list[tuple[int, IndexedSymbol]]


class Executor:
    def __init__(self, max_generators: int | None = None, max_relations: int | None = None,
                 timing: bool = False, b2_on_b1_pairs: bool = True):
        self.max_generators = max_generators
        self.max_relations = max_relations
        self.timing = timing
        self.b2_on_b1_pairs = b2_on_b1_pairs
        self.values: dict[str, Any] = {}
        self.failed: dict[str, str] = {}

    # -- name resolution ----------------------------------------------------

    def get(self, ref: dsl.NameRef) -> Any:
        if ref.name in self.failed:
            raise CommandError(f"{ref.name!r} is unavailable: {self.failed[ref.name]}")
        try:
            return self.values[ref.name]
        except KeyError:
            raise CommandError(f"undefined name {ref.name!r}") from None

    def group(self, ref: dsl.NameRef) -> FiniteGroup:
        v = self.get(ref)
        if isinstance(v, FiniteGroup):
            return v
        if isinstance(v, Subgroup):
            return subgroup_group(v)[0]
        raise CommandError(f"{ref.name!r} is not a group")

    def klass(self, ref: dsl.NameRef) -> BurnsideClass:
        v = self.get(ref)
        if isinstance(v, BurnsideClass):
            return v
        raise CommandError(f"{ref.name!r} is not a symbol or class")

    def transport(self, sub: Subgroup, G: FiniteGroup) -> Subgroup:
        """A declared subgroup viewed inside G (G may be a subgroup turned into a group)."""
        if sub.group is G:
            return sub
        parent = getattr(G, "parent", None)
        if parent is not None and parent[0] is sub.group:
            back = {x: i for i, x in enumerate(parent[1])}
            if any(x not in back for x in sub.elements):
                raise CommandError("subgroup is not contained in the group")
            return Subgroup(G, (back[x] for x in sub.elements))
        raise CommandError("subgroup belongs to a different group")

    def subgroup(self, s: dsl.SubRef, G: FiniteGroup, start: Subgroup | None = None) -> Subgroup:
        if isinstance(s, dsl.NameRef):
            v = self.get(s)
            if not isinstance(v, Subgroup):
                raise CommandError(f"{s.name!r} is not a subgroup")
            sub = self.transport(v, G)
            return G.generate(sub.generators(), start=start) if start is not None else sub
        gens = [self.element(p, G) for p in s.perms]
        return G.generate(gens, start=start)

    def element(self, p: dsl.Perm, G: FiniteGroup) -> int:
        try:
            return G.element_from_cycles(p.text())
        except GroupError as e:
            raise CommandError(f"{p.loc.line}:{p.loc.col}: {e}") from None

    def character(self, c: dsl.CharExpr, H: Subgroup) -> Character:
        st = abelian_structure(H)
        if isinstance(c, dsl.CharInt):
            if st.rank != 1:
                raise CommandError(f"{c.loc.line}:{c.loc.col}: subgroup has invariant factors "
                                   f"{st.invariant_factors}; write the character as a tuple or by values")
            return st.character((c.value,))
        if isinstance(c, dsl.CharTuple):
            if len(c.values) != st.rank:
                raise CommandError(f"{c.loc.line}:{c.loc.col}: expected {st.rank} coefficients "
                                   f"for invariant factors {st.invariant_factors}")
            return st.character(c.values)
        vals = {}
        for p, v in c.pairs:
            g = self.element(p, H.group)
            if g not in H:
                raise CommandError(f"{p.loc.line}:{p.loc.col}: {p.text()} is not in the subgroup")
            vals[g] = v
        try:
            return st.character_from_values(vals)
        except GroupError as e:
            raise CommandError(f"{c.loc.line}:{c.loc.col}: {e}") from None

    def presentation(self, bc: dsl.BCRef):
        G = self.group(bc.group)
        P = None
        if bc.prefilter is not None:
            P = self.get(bc.prefilter)
            if P.group is not G:
                raise CommandError("prefilter belongs to a different group")
        return build_presentation(G, bc.dim, P, self.max_generators, self.max_relations, self.b2_on_b1_pairs)

    # -- declarations -------------------------------------------------------

    def declare(self, st: dsl.Decl) -> None:
        if isinstance(st, dsl.GroupPerm):
            G = group_from_cycles([p.text() for p in st.gens.perms], st.degree, name=st.name)
            self.values[st.name] = G
        elif isinstance(st, dsl.GroupProduct):
            A, B = self.group(st.left), self.group(st.right)
            self.values[st.name] = product_group(A, B)
        elif isinstance(st, dsl.SubgroupDecl):
            G = self.group(st.group)
            self.values[st.name] = G.generate([self.element(p, G) for p in st.gens.perms])
        elif isinstance(st, dsl.SymbolDecl):
            G = self.group(st.group)
            H = self.subgroup(st.H, G)
            S = self.subgroup(st.Y, G, start=H)
            beta = [self.character(c, H) for c in st.beta]
            self.values[st.name] = BurnsideClass.from_symbol(symbol(H, S, beta, st.dim), st.dim)
        elif isinstance(st, dsl.ClassDecl):
            if not st.terms:
                self.values[st.name] = BurnsideClass(self.group(st.group), st.dim)
                return
            parts = [(t.coeff, self.klass(t.ref)) for t in st.terms]
            G = parts[0][1].group
            n = max(c.n for _, c in parts)
            total = BurnsideClass(G, n)
            for k, c in parts:
                if c.group is not G:
                    raise CommandError("class mixes symbols over different groups")
                total = total + BurnsideClass(G, n, c.coeffs) * k
            self.values[st.name] = total
        elif isinstance(st, dsl.PrefilterDecl):
            G = self.group(st.group)
            pairs = []
            for Hr, Yr in st.pairs:
                H = self.subgroup(Hr, G)
                pairs.append((H, self.subgroup(Yr, G, start=H)))
            self.values[st.name] = Prefilter(G, pairs)
        elif isinstance(st, dsl.IndexedDecl):
            G = self.group(st.group)
            terms = []
            for t in st.terms:
                H = self.subgroup(t.H, G)
                Hp = self.subgroup(t.Hp, G)
                Sp = self.subgroup(t.Y, G, start=Hp)
                beta = [self.character(c, Hp) for c in t.beta]
                gamma = [(i, self.character(c, Hp)) for i, c in t.gamma]
                terms.append((t.coeff, make_indexed(H, Hp, Sp, beta, gamma, st.dim, st.projective)))
            self.values[st.name] = _Indexed(G, st.dim, st.projective, terms)
        else:
            raise TypeError(st)

    # -- commands -----------------------------------------------------------

    def run_command(self, st: dsl.Command, res: Result) -> None:
        if isinstance(st, dsl.Structure):
            p = self.presentation(st.bc)
            q = p.structure
            res.kind = "structure"
            res.structure = {"free_rank": q.free_rank, "torsion": list(q.torsion)}
            res.summary = q.describe()
            res.diagnostics = {"generators": len(p.generators), "relations": p.relations.nrows}
            if p.prefilter is not None:
                res.diagnostics["reduced_presentation"] = p.reduced
        elif isinstance(st, dsl.Reduce):
            p = self.presentation(st.bc)
            self._set_class(res, p.reduce(self._in(self.klass(st.target), p)))
            free, tors = p.coordinates(self._in(self.klass(st.target), p))
            res.diagnostics = {"free_coordinates": list(free), "torsion_coordinates": list(tors)}
        elif isinstance(st, dsl.IsZero):
            p = self.presentation(st.bc)
            self._set_verdict(res, p.class_is_zero(self._in(self.klass(st.target), p)))
        elif isinstance(st, dsl.Equal):
            p = self.presentation(st.bc)
            a = self._in(self.klass(st.left), p)
            b = self._in(self.klass(st.right), p)
            self._set_verdict(res, p.classes_equal(a, b))
        elif isinstance(st, dsl.Restrict):
            c = self.klass(st.target)
            if st.source is not None and self.group(st.source) is not c.group:
                raise CommandError(f"{st.target.name!r} does not live over {st.source.name}")
            sub = self.get(st.to)
            if not isinstance(sub, Subgroup):
                raise CommandError(f"{st.to.name!r} is not a subgroup")
            self._store(st.as_name, res, restrict(c, self.transport(sub, c.group)))
        elif isinstance(st, dsl.Product):
            a, b = self.klass(st.left), self.klass(st.right)
            P = self.group(st.group) if st.group is not None else None
            self._store(st.as_name, res, product(a, b, P))
        elif isinstance(st, dsl.DiagonalProduct):
            self._store(st.as_name, res, diagonal_product(self.klass(st.left), self.klass(st.right)))
        elif isinstance(st, dsl.Projectivize):
            xi = self._indexed(st.target)
            if not xi.projective:
                raise CommandError(f"{st.target.name!r} is not projectively indexed")
            self._store(st.as_name, res, fibration_class(xi.terms, xi.group, xi.n))
        elif isinstance(st, dsl.IndexedPush):
            xi = self._indexed(st.target)
            if xi.projective:
                raise CommandError(f"{st.target.name!r} is projectively indexed; use projectivize")
            self._store(st.as_name, res, indexed_push(xi.terms, st.J, xi.group, xi.n))
        elif isinstance(st, dsl.Project):
            c = self.klass(st.target)
            P = self.get(st.prefilter)
            if P.group is not c.group:
                raise CommandError("prefilter belongs to a different group")
            self._store(st.as_name, res, project(c, P))
        elif isinstance(st, dsl.CheckPrefilter):
            P = self.get(st.prefilter)
            bad = prefilter_violations(P)
            self._set_verdict(res, not bad)
            G = P.group
            for H, S, g in bad:
                res.lines.append(f"(H={H.describe()}, Y={describe_lift(H, S)}): "
                                 f"missing (H={G.generate([g], start=H).describe()}, Y={describe_lift(G.generate([g], start=H), S)})")
        elif isinstance(st, dsl.Show):
            self._show(st.target, res)
        else:
            raise TypeError(st)

    def _in(self, c: BurnsideClass, p) -> BurnsideClass:
        if c.group is not p.group:
            raise CommandError("class lives over a different group")
        return c

    def _indexed(self, ref: dsl.NameRef) -> _Indexed:
        v = self.get(ref)
        if not isinstance(v, _Indexed):
            raise CommandError(f"{ref.name!r} is not an indexed class")
        return v

    def _set_verdict(self, res: Result, v: bool) -> None:
        res.kind = "verdict"
        res.verdict = v
        res.summary = "true" if v else "false"

    def _set_class(self, res: Result, c: BurnsideClass) -> None:
        res.kind = "class"
        res.klass = c
        res.summary = f"{len(c)} term(s) over {c.group.name or 'group'}, dim {c.n}"

    def _store(self, name: str | None, res: Result, c: BurnsideClass) -> None:
        self._set_class(res, c)
        if name:
            self.values[name] = c

    def _show(self, ref: dsl.NameRef, res: Result) -> None:
        v = self.get(ref)
        res.kind = "info"
        if isinstance(v, FiniteGroup):
            res.summary = f"group of order {v.order}"
            if v.perm_degree:
                res.lines.append(f"acting on {v.perm_degree} points")
        elif isinstance(v, Subgroup):
            res.summary = f"subgroup of order {len(v)}, generated by {v.describe()}"
            if v.is_abelian():
                st = abelian_structure(v)
                basis = ", ".join(v.group.label(b) for b in st.basis)
                res.lines.append(f"invariant factors {list(st.invariant_factors)}; character basis dual to [{basis}]")
        elif isinstance(v, BurnsideClass):
            self._set_class(res, v)
        elif isinstance(v, Prefilter):
            res.summary = f"prefilter with {len(v.representatives)} pair(s) up to conjugacy"
            for H, S in v.representatives:
                res.lines.append(f"(H={H.describe()}, Y={describe_lift(H, S)})")
        elif isinstance(v, _Indexed):
            res.summary = (("projectively " if v.projective else "") +
                           f"indexed class with {len(v.terms)} term(s), dim {v.n}")
            for k, t in v.terms:
                res.lines.append(f"{k:+d}  {t}")

    # -- driver -------------------------------------------------------------

    def execute(self, script: dsl.Script) -> Report:
        results = []
        for st in script.statements:
            is_decl = isinstance(st, (dsl.GroupPerm, dsl.GroupProduct, dsl.SubgroupDecl, dsl.SymbolDecl,
                                      dsl.ClassDecl, dsl.PrefilterDecl, dsl.IndexedDecl))
            res = Result(len(results) + 1, dsl.format_statement(st).split("\n")[0])
            t0 = time.perf_counter()
            try:
                if is_decl:
                    self.declare(st)
                else:
                    self.run_command(st, res)
            except (CommandError, GroupError, SymbolError, ResourceLimitError, KeyError, ValueError) as e:
                res.status = "error"
                res.message = str(e.args[0]) if isinstance(e, KeyError) and e.args else str(e)
                if is_decl:
                    self.failed[st.name] = res.message
                elif getattr(st, "as_name", None):
                    self.failed[st.as_name] = res.message
            if self.timing:
                res.timing_ms = round((time.perf_counter() - t0) * 1000, 3)
            if not is_decl or res.status == "error":
                results.append(res)
        return Report(results)


def execute(script: dsl.Script, **options) -> Report:
    return Executor(**options).execute(script)


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def _class_json(c: BurnsideClass) -> list[dict]:
    out = []
    for s, k in c.terms():
        G = s.group
        out.append({
            "coeff": k,
            "H": [G.label(x) for x in s.H.generators()],
            "Y": [G.label(x) for x in lift_generators(s.H, s.S)],
            "beta": [list(b.coeffs) for b in s.beta],
            "text": str(s),
        })
    return out


def _class_lines(c: BurnsideClass) -> list[str]:
    if not c:
        return ["0"]
    return [f"{k:+d}  {s}" for s, k in c.terms()]


def render_text(report: Report) -> str:
    out = []
    for r in report.results:
        head = f"[{r.index}] {r.command}"
        out.append(head)
        if r.status == "error":
            out.append(f"    error: {r.message}")
        else:
            if r.summary:
                out.append(f"    {r.summary}")
            if r.klass is not None:
                out.extend("    " + line for line in _class_lines(r.klass))
            out.extend("    " + line for line in r.lines)
            if r.diagnostics:
                out.append("    " + ", ".join(f"{k}: {v}" for k, v in r.diagnostics.items()))
        if r.timing_ms is not None:
            out.append(f"    time: {r.timing_ms} ms")
    return "\n".join(out) + ("\n" if out else "")


def render_json(report: Report) -> str:
    items = []
    for r in report.results:
        items.append({
            "index": r.index,
            "command": r.command,
            "status": r.status,
            "kind": r.kind or None,
            "summary": r.summary or None,
            "structure": r.structure,
            "verdict": r.verdict,
            "class": _class_json(r.klass) if r.klass is not None else None,
            "details": r.lines,
            "message": r.message,
            "diagnostics": r.diagnostics,
            "timing_ms": r.timing_ms,
        })
    return json.dumps({"schema_version": SCHEMA_VERSION, "results": items}, indent=2) + "\n"


def emit(report: Report, fmt: str = "text") -> bytes:
    if fmt == "json":
        return render_json(report).encode()
    if fmt == "text":
        return render_text(report).encode()
    raise ValueError(f"unknown format {fmt!r}")


__all__ = ["Executor", "Report", "Result", "CommandError", "execute", "emit", "render_text", "render_json",
           "SCHEMA_VERSION"]
