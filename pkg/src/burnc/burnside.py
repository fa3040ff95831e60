"""Presentations of BC_n(G), class arithmetic and the functorial maps."""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .groups import (
    FiniteGroup,
    GroupError,
    Subgroup,
    abelian_structure,
    centralizer,
    direct_product,
    subgroup_as_group,
)
from .lattice import IntMatrix, QuotientStructure, quotient_structure
from .symbols import (
    IndexedSymbol,
    Symbol,
    SymbolError,
    canonicalize,
    enumerate_symbols,
    make_symbol,
    omega,
    omega_proj,
    psi,
    symbol_relations,
    validate_indexed,
)


class ResourceLimitError(RuntimeError):
    pass


class BurnsideClass:
    """A finite Z-combination of canonical symbols of BC_n(G)."""

    __slots__ = ("group", "n", "coeffs")

    def __init__(self, group: FiniteGroup, n: int, coeffs: dict[Symbol, int] | None = None):
        self.group = group
        self.n = n
        self.coeffs: dict[Symbol, int] = {}
        for s, c in (coeffs or {}).items():
            self._add(s, c)

    @classmethod
    def from_symbol(cls, s: Symbol, n: int, coeff: int = 1) -> "BurnsideClass":
        if len(s.beta) > n:
            raise SymbolError(f"symbol needs dimension >= {len(s.beta)}")
        return cls(s.group, n, {canonicalize(s): coeff})

    @classmethod
    def from_terms(cls, group: FiniteGroup, n: int, terms: Iterable[tuple[int, Symbol]]) -> "BurnsideClass":
        out = cls(group, n)
        for c, s in terms:
            out._add(canonicalize(s), c)
        return out

    def _add(self, s: Symbol, c: int) -> None:
        if s.group is not self.group:
            raise GroupError("symbol belongs to a different group")
        v = self.coeffs.get(s, 0) + c
        if v:
            self.coeffs[s] = v
        else:
            self.coeffs.pop(s, None)

    def _compatible(self, other: "BurnsideClass") -> None:
        if other.group is not self.group or other.n != self.n:
            raise GroupError("classes live in different Burnside groups")

    def __add__(self, other: "BurnsideClass") -> "BurnsideClass":
        self._compatible(other)
        out = BurnsideClass(self.group, self.n, self.coeffs)
        for s, c in other.coeffs.items():
            out._add(s, c)
        return out

    def __neg__(self) -> "BurnsideClass":
        return BurnsideClass(self.group, self.n, {s: -c for s, c in self.coeffs.items()})

    def __sub__(self, other: "BurnsideClass") -> "BurnsideClass":
        return self + (-other)

    def __mul__(self, k: int) -> "BurnsideClass":
        return BurnsideClass(self.group, self.n, {s: k * c for s, c in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BurnsideClass):
            return NotImplemented
        return self.group is other.group and self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((id(self.group), self.n, frozenset(self.coeffs.items())))

    def __len__(self) -> int:
        return len(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def terms(self) -> list[tuple[Symbol, int]]:
        """Terms in canonical-symbol order."""
        return sorted(self.coeffs.items(), key=lambda t: t[0].sort_key())

    def __iter__(self) -> Iterator[tuple[Symbol, int]]:
        return iter(self.terms())

    def __repr__(self) -> str:
        return f"BurnsideClass({self.group.name or '?'}, n={self.n}, {len(self.coeffs)} terms)"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for s, c in self.terms():
            sign = "-" if c < 0 else "+"
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            parts.append(f"{sign} {mag}{s}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else text


# ---------------------------------------------------------------------------
# prefilters
# ---------------------------------------------------------------------------


class Prefilter:
    """A conjugation-closed set of pairs (H, S), S the lift of Y."""

    def __init__(self, G: FiniteGroup, pairs: Iterable[tuple[Subgroup, Subgroup]]):
        self.group = G
        keys: set[tuple[int, int]] = set()
        reps: list[tuple[Subgroup, Subgroup]] = []
        for H, S in pairs:
            if H.group is not G or S.group is not G:
                raise GroupError("prefilter pair from a different group")
            if not H.is_abelian():
                raise GroupError("prefilter H must be abelian")
            if not H <= S or not S <= centralizer(G, H):
                raise GroupError("prefilter pair needs H <= S <= Z_G(H)")
            if (H.mask, S.mask) in keys:
                continue
            orbit = {(_conj(G, g, H).mask, _conj(G, g, S).mask) for g in range(G.order)}
            keys |= orbit
            reps.append(min(((Subgroup.from_mask(G, h), Subgroup.from_mask(G, s)) for h, s in orbit),
                            key=lambda p: (p[0].elements, p[1].elements)))
        self.keys = frozenset(keys)
        self.representatives = sorted(reps, key=lambda p: (len(p[0]), p[0].elements, len(p[1]), p[1].elements))

    def contains(self, H: Subgroup, S: Subgroup) -> bool:
        return (H.mask, S.mask) in self.keys

    def __contains__(self, pair: tuple[Subgroup, Subgroup]) -> bool:
        return self.contains(*pair)

    def __len__(self) -> int:
        return len(self.keys)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Prefilter) and other.group is self.group and other.keys == self.keys

    def __hash__(self) -> int:
        return hash(self.keys)


def _conj(G: FiniteGroup, g: int, H: Subgroup) -> Subgroup:
    return Subgroup(G, (G.conj(g, h) for h in H.elements))


def prefilter_violations(P: Prefilter) -> list[tuple[Subgroup, Subgroup, int]]:
    """Pairs (H, S) in P and g in the centre of S with (<H, g>, S) missing from P."""
    G = P.group
    out = []
    for H, S in P.representatives:
        if H.is_trivial():
            continue
        mul = G.mul
        for g in S.elements:
            if g in H:
                continue
            if any(mul[g][s] != mul[s][g] for s in S.generators()):
                continue
            Hg = G.generate([g], start=H)
            if not P.contains(Hg, S):
                out.append((H, S, g))
    return out


def prefilter_closed(G: FiniteGroup, P: Prefilter) -> bool:
    """Whether P satisfies the closure hypothesis that allows the reduced presentation."""
    if P.group is not G:
        raise GroupError("prefilter belongs to a different group")
    return not prefilter_violations(P)


def project(c: BurnsideClass, P: Prefilter | None) -> BurnsideClass:
    """Drop the terms whose (H, S) is outside P."""
    if P is None:
        return c
    return BurnsideClass(c.group, c.n, {s: k for s, k in c.coeffs.items() if P.contains(s.H, s.S)})


# ---------------------------------------------------------------------------
# presentations
# ---------------------------------------------------------------------------


class Presentation:
    """Generators and relation matrix of BC_n(G) or of a prefilter quotient.

    ``reduced`` is True when the prefilter passed the closure test and only
    symbols with (H, S) in the prefilter are generators; otherwise the full
    generator set is kept and the symbols outside the prefilter are killed
    by unit rows.
    """

    def __init__(self, G: FiniteGroup, n: int, prefilter: Prefilter | None, generators: list[Symbol],
                 relations: IntMatrix, reduced: bool, rows_source: list[Symbol | None]):
        self.group = G
        self.n = n
        self.prefilter = prefilter
        self.generators = generators
        self.index = {s: i for i, s in enumerate(generators)}
        self.relations = relations
        self.reduced = reduced
        self.rows_source = rows_source
        self._structure: QuotientStructure | None = None

    def __repr__(self) -> str:
        return (f"Presentation({self.group.name or '?'}, n={self.n}, gens={len(self.generators)}, "
                f"rels={self.relations.nrows})")

    @property
    def structure(self) -> QuotientStructure:
        if self._structure is None:
            self._structure = quotient_structure(len(self.generators), self.relations)
        return self._structure

    def vector(self, c: BurnsideClass) -> dict[int, int]:
        if c.group is not self.group:
            raise GroupError("class belongs to a different group")
        if c.n > self.n:
            raise SymbolError(f"class of dimension {c.n} in a presentation of dimension {self.n}")
        if self.reduced:
            c = project(c, self.prefilter)
        out = {}
        for s, k in c.coeffs.items():
            i = self.index.get(s)
            if i is None:
                raise KeyError(f"symbol {s} is not a generator of this presentation")
            out[i] = k
        return out

    def relation_class(self, i: int) -> BurnsideClass:
        return self.to_class(self.relations.rows[i])

    def to_class(self, v: dict[int, int]) -> BurnsideClass:
        return BurnsideClass(self.group, self.n, {self.generators[j]: k for j, k in v.items()})

    def class_is_zero(self, c: BurnsideClass) -> bool:
        return self.structure.membership(self.vector(c))

    def classes_equal(self, c1: BurnsideClass, c2: BurnsideClass) -> bool:
        return self.class_is_zero(c1 - c2)

    def reduce(self, c: BurnsideClass) -> BurnsideClass:
        """Canonical representative of the class modulo relations."""
        return self.to_class(self.structure.reduce(self.vector(c)))

    def coordinates(self, c: BurnsideClass) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return self.structure.coordinates(self.vector(c))

    def symbol_class(self, s: Symbol) -> BurnsideClass:
        return BurnsideClass.from_symbol(s, self.n)


def _cache(G: FiniteGroup, attr: str) -> dict:
    d = getattr(G, attr, None)
    if d is None:
        d = {}
        setattr(G, attr, d)
    return d


def build_presentation(G: FiniteGroup, n: int, prefilter: Prefilter | None = None,
                       max_generators: int | None = None, max_relations: int | None = None,
                       b2_on_b1_pairs: bool = True) -> Presentation:
    """Presentation of BC_n(G), or of its quotient by symbols outside ``prefilter``."""
    if n < 0:
        raise ValueError("dimension must be nonnegative")
    if prefilter is not None and prefilter.group is not G:
        raise GroupError("prefilter belongs to a different group")
    key = (n, prefilter.keys if prefilter is not None else None, b2_on_b1_pairs)
    cache = _cache(G, "_presentations")
    pres = cache.get(key)
    if pres is not None:
        _check_caps(pres, max_generators, max_relations)
        return pres
    reduced = prefilter is not None and prefilter_closed(G, prefilter)
    gens = enumerate_symbols(G, n, prefilter if reduced else None)
    if max_generators is not None and len(gens) > max_generators:
        raise ResourceLimitError(f"{len(gens)} generators exceed the cap of {max_generators}")
    index = {s: i for i, s in enumerate(gens)}
    rows: list[dict[int, int]] = []
    source: list[Symbol | None] = []
    seen: set[tuple] = set()
    for s in gens:
        for vec in symbol_relations(s, b2_on_b1_pairs):
            row = {}
            for t, c in vec.items():
                j = index.get(t)
                if j is None:
                    if reduced:
                        continue  # outside the prefilter, hence zero
                    raise SymbolError(f"relation term {t} is not a generator")
                row[j] = c
            if not row:
                continue
            k = tuple(sorted(row.items()))
            if k in seen:
                continue
            seen.add(k)
            rows.append(row)
            source.append(s)
            if max_relations is not None and len(rows) > max_relations:
                raise ResourceLimitError(f"relation count exceeds the cap of {max_relations}")
    if prefilter is not None and not reduced:
        for i, s in enumerate(gens):
            if not prefilter.contains(s.H, s.S):
                rows.append({i: 1})
                source.append(None)
    pres = Presentation(G, n, prefilter, gens, IntMatrix(len(rows), len(gens), rows), reduced, source)
    cache[key] = pres
    return pres


def _check_caps(p: Presentation, max_generators: int | None, max_relations: int | None) -> None:
    if max_generators is not None and len(p.generators) > max_generators:
        raise ResourceLimitError(f"{len(p.generators)} generators exceed the cap of {max_generators}")
    if max_relations is not None and p.relations.nrows > max_relations:
        raise ResourceLimitError(f"{p.relations.nrows} relations exceed the cap of {max_relations}")


def class_is_zero(p: Presentation, c: BurnsideClass) -> bool:
    return p.class_is_zero(c)


def classes_equal(p: Presentation, c1: BurnsideClass, c2: BurnsideClass) -> bool:
    return p.classes_equal(c1, c2)


# ---------------------------------------------------------------------------
# restriction and products
# ---------------------------------------------------------------------------


def subgroup_group(H: Subgroup) -> tuple[FiniteGroup, list[int]]:
    """H as a group in its own right, with its embedding; cached so repeated calls agree."""
    cache = _cache(H.group, "_subgroup_groups")
    hit = cache.get(H.mask)
    if hit is None:
        name = f"{H.group.name}|{H.describe()}" if H.group.name else ""
        hit = subgroup_as_group(H, name)
        hit[0].parent = (H.group, hit[1])
        cache[H.mask] = hit
    return hit


def double_coset_reps(G: FiniteGroup, K: Subgroup, S: Subgroup) -> list[int]:
    """Least element of each double coset K g S."""
    seen = 0
    reps = []
    mul = G.mul
    for g in range(G.order):
        if seen >> g & 1:
            continue
        reps.append(g)
        for k in K.elements:
            kg = mul[k][g]
            for s in S.elements:
                seen |= 1 << mul[kg][s]
    return reps


def restrict_along(c: BurnsideClass, Gp: FiniteGroup, emb: Sequence[int]) -> BurnsideClass:
    """Restriction along an injective homomorphism emb: Gp -> G."""
    G = c.group
    image = Subgroup(G, emb)
    if len(image) != Gp.order:
        raise GroupError("embedding is not injective")
    back = {x: i for i, x in enumerate(emb)}
    out = BurnsideClass(Gp, c.n)
    for s, k in c.coeffs.items():
        for sym in _restrict_symbol(s, image, Gp, emb, back):
            out._add(sym, k)
    return out


def _restrict_symbol(s: Symbol, K: Subgroup, Gp: FiniteGroup, emb: Sequence[int],
                     back: dict[int, int]) -> list[Symbol]:
    G = s.group
    out = []
    for g in double_coset_reps(G, K, s.S):
        Hg = _conj(G, g, s.H)
        Hk = Hg & K
        Sk = _conj(G, g, s.S) & K
        beta = [b.conjugate(g) for b in s.beta]
        stk = abelian_structure(Hk)
        res = [b.restrict(stk) for b in beta]
        if any(b.is_zero() for b in res):
            continue
        Hp = Subgroup(Gp, (back[h] for h in Hk.elements))
        Sp = Subgroup(Gp, (back[x] for x in Sk.elements))
        stp = abelian_structure(Hp)
        chars = [b.pullback(stp, lambda y: emb[y]) for b in res]
        out.append(canonicalize(make_symbol(Hp, Sp, chars)))
    return out


def restrict(c: BurnsideClass, sub: Subgroup) -> BurnsideClass:
    """Restriction to a subgroup, returned over ``subgroup_group(sub)``."""
    if sub.group is not c.group:
        raise GroupError("subgroup of a different group")
    Gp, emb = subgroup_group(sub)
    return restrict_along(c, Gp, emb)


def product_group(A: FiniteGroup, B: FiniteGroup) -> FiniteGroup:
    """A x B, cached per pair so that products land in one group."""
    cache = _cache(A, "_products")
    hit = cache.get(id(B))
    if hit is None or hit[0] is not B:
        name = f"{A.name}x{B.name}" if A.name and B.name else ""
        P, _, _ = direct_product(A, B, name)
        hit = (B, P)
        cache[id(B)] = hit
    return hit[1]


def product_symbol(s1: Symbol, s2: Symbol, P: FiniteGroup) -> Symbol:
    A, B = P.factors
    pa, pb = P.projections
    nb = B.order
    H = Subgroup(P, (a * nb + b for a in s1.H.elements for b in s2.H.elements))
    S = Subgroup(P, (a * nb + b for a in s1.S.elements for b in s2.S.elements))
    st = abelian_structure(H)
    beta = [b.pullback(st, lambda y: pa[y]) for b in s1.beta]
    beta += [b.pullback(st, lambda y: pb[y]) for b in s2.beta]
    return canonicalize(make_symbol(H, S, beta))


def product(c1: BurnsideClass, c2: BurnsideClass, P: FiniteGroup | None = None) -> BurnsideClass:
    """The product class over G1 x G2 in dimension n1 + n2."""
    if P is None:
        P = product_group(c1.group, c2.group)
    if P.factors is None or P.factors[0] is not c1.group or P.factors[1] is not c2.group:
        raise GroupError("product group does not match the factors")
    out = BurnsideClass(P, c1.n + c2.n)
    for s1, k1 in c1.coeffs.items():
        for s2, k2 in c2.coeffs.items():
            out._add(product_symbol(s1, s2, P), k1 * k2)
    return out


def diagonal_product(c1: BurnsideClass, c2: BurnsideClass) -> BurnsideClass:
    """Product over G x G followed by restriction to the diagonal copy of G."""
    G = c1.group
    if c2.group is not G:
        raise GroupError("diagonal product needs classes over the same group")
    P = product_group(G, G)
    prod = product(c1, c2, P)
    return restrict_along(prod, G, [g * G.order + g for g in range(G.order)])


# ---------------------------------------------------------------------------
# indexed classes
# ---------------------------------------------------------------------------


IndexedTerms = Sequence[tuple[int, IndexedSymbol]]


def _psi_class(G: FiniteGroup, n: int, isym: IndexedSymbol | None, k: int, out: BurnsideClass) -> None:
    if isym is None:
        return
    for s, c in psi(isym).items():
        out._add(s, k * c)


def _common(terms: IndexedTerms, projective: bool) -> tuple[FiniteGroup, int, set[int]]:
    if not terms:
        raise SymbolError("empty indexed class")
    G = terms[0][1].group
    n = terms[0][1].n
    I = set(terms[0][1].indices)
    for _, t in terms:
        if t.group is not G or t.n != n:
            raise SymbolError("indexed symbols over different groups or dimensions")
        if set(t.indices) != I:
            raise SymbolError("indexed symbols over different index sets")
        if t.projective != projective:
            raise SymbolError("expected " + ("projective" if projective else "non-projective") + " symbols")
        validate_indexed(t)
    return G, n, I


def fibration_class(xi: IndexedTerms, G: FiniteGroup | None = None, n: int | None = None) -> BurnsideClass:
    """Sum over proper subsets J of I of psi_J(omega_proj(xi, J))."""
    if not xi:
        if G is None or n is None:
            raise SymbolError("empty input needs an explicit group and dimension")
        return BurnsideClass(G, n)
    G, n, I = _common(xi, True)
    out = BurnsideClass(G, n)
    order = sorted(I)
    for r in range(len(order)):
        for J in combinations(order, r):
            for k, t in xi:
                _psi_class(G, n, omega_proj(t, J), k, out)
    return out


def indexed_push(terms: IndexedTerms, J: Iterable[int], G: FiniteGroup | None = None,
                 n: int | None = None) -> BurnsideClass:
    """Linear extension of psi o omega_{I, I cap J}."""
    J = set(J)
    if not terms:
        if G is None or n is None:
            raise SymbolError("empty input needs an explicit group and dimension")
        return BurnsideClass(G, n)
    G, n, I = _common(terms, False)
    out = BurnsideClass(G, n)
    for k, t in terms:
        _psi_class(G, n, omega(t, I & J), k, out)
    return out


__all__ = [
    "BurnsideClass", "Prefilter", "Presentation", "ResourceLimitError",
    "prefilter_closed", "prefilter_violations", "project", "build_presentation",
    "class_is_zero", "classes_equal", "subgroup_group", "double_coset_reps",
    "restrict", "restrict_along", "product_group", "product_symbol", "product", "diagonal_product",
    "fibration_class", "indexed_push",
]
