"""Symbols (H, Y, beta) and their indexed variants, and the blow-up relations.

Y is never formed as a quotient: a symbol stores its lift S with
H <= S <= Z_G(H), so Y = S/H.  Characters in beta are kept sorted by
coefficient tuple, which takes care of reordering; conjugation is handled by
:func:`canonicalize`, which picks the least form over all of G.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

from .groups import (
    Character,
    FiniteGroup,
    GroupError,
    Subgroup,
    abelian_structure,
    abelian_subgroup_classes,
    centralizer,
    characters_generate,
    intermediate_subgroups,
)


class SymbolError(ValueError):
    pass


RelationVector = dict  # canonical symbol -> nonzero int


def _conj_elements(G: FiniteGroup, g: int, H: Subgroup) -> tuple[int, ...]:
    return tuple(sorted(G.conj(g, h) for h in H.elements))


def _conj_sub(G: FiniteGroup, g: int, H: Subgroup) -> Subgroup:
    return Subgroup(G, (G.conj(g, h) for h in H.elements))


def _sym_sort_key(H: Subgroup, S: Subgroup, beta: Sequence[Character]) -> tuple:
    return (len(H), H.elements, len(S), S.elements, len(beta), tuple(b.coeffs for b in beta))


@dataclass(frozen=True)
class Symbol:
    H: Subgroup
    S: Subgroup
    beta: tuple[Character, ...]

    @property
    def group(self) -> FiniteGroup:
        return self.H.group

    def sort_key(self) -> tuple:
        return _sym_sort_key(self.H, self.S, self.beta)

    def __lt__(self, other: "Symbol") -> bool:
        return self.sort_key() < other.sort_key()

    def pair(self) -> tuple[Subgroup, Subgroup]:
        return self.H, self.S

    def __str__(self) -> str:
        return format_symbol(self)


def format_character(b: Character) -> str:
    if len(b.coeffs) == 1:
        return str(b.coeffs[0])
    return "(" + ",".join(map(str, b.coeffs)) + ")"


def lift_generators(H: Subgroup, S: Subgroup) -> list[int]:
    """Least elements of S that, together with H, generate S."""
    G = S.group
    cur = H
    out = []
    for x in S.elements:
        if cur.mask == S.mask:
            break
        if x not in cur:
            out.append(x)
            cur = G.generate([x], start=cur)
    return out


def describe_lift(H: Subgroup, S: Subgroup) -> str:
    """Y = S/H written by generators of S beyond H; ``<>`` is the trivial Y."""
    return "<" + ", ".join(S.group.label(x) for x in lift_generators(H, S)) + ">"


def format_symbol(s: Symbol) -> str:
    return (f"(H={s.H.describe()}, Y={describe_lift(s.H, s.S)}, beta=["
            + ", ".join(format_character(b) for b in s.beta) + "])")


def make_symbol(H: Subgroup, S: Subgroup, beta: Iterable[Character], n: int | None = None,
                check: bool = True) -> Symbol:
    """Build a symbol (unsorted, unconjugated) after validating it."""
    beta = tuple(sorted(beta, key=lambda b: b.coeffs))
    s = Symbol(H, S, beta)
    if check:
        validate_symbol(s, n)
    return s


def validate_symbol(s: Symbol, n: int | None = None) -> None:
    H, S, beta = s.H, s.S, s.beta
    G = H.group
    if S.group is not G:
        raise SymbolError("H and S live in different groups")
    if not H.is_abelian():
        raise SymbolError("H is not abelian")
    if not H <= S:
        raise SymbolError("S does not contain H")
    mul = G.mul
    hg = H.generators()
    for x in S.generators():
        if any(mul[x][h] != mul[h][x] for h in hg):
            raise SymbolError("S is not contained in the centralizer of H")
    st = abelian_structure(H)
    for b in beta:
        if b.structure != st:
            raise SymbolError("character is not a character of H")
        if b.is_zero():
            raise SymbolError("beta contains the zero character")
    if n is not None and len(beta) > n:
        raise SymbolError(f"beta has length {len(beta)} > n = {n}")
    if not characters_generate(beta, H):
        raise SymbolError("beta does not generate the character group of H")


def conjugate_symbol(s: Symbol, g: int) -> Symbol:
    G = s.group
    return make_symbol(_conj_sub(G, g, s.H), _conj_sub(G, g, s.S),
                       [b.conjugate(g) for b in s.beta], check=False)


def canonicalize(s: Symbol) -> Symbol:
    """Least representative of the symbol under reordering and conjugation.

    Minimises (H.elements, S.elements, sorted beta coefficients) over
    simultaneous conjugation by all elements of G.
    """
    G = s.group
    key = (s.H.mask, s.S.mask, tuple(sorted(b.coeffs for b in s.beta)))
    cache = G._canon_cache
    hit = cache.get(key)
    if hit is not None:
        return hit
    best_h = None
    cands: list[int] = []
    for g in range(G.order):
        e = _conj_elements(G, g, s.H)
        if best_h is None or e < best_h:
            best_h, cands = e, [g]
        elif e == best_h:
            cands.append(g)
    best_s = None
    c2: list[int] = []
    for g in cands:
        e = _conj_elements(G, g, s.S)
        if best_s is None or e < best_s:
            best_s, c2 = e, [g]
        elif e == best_s:
            c2.append(g)
    Hc = Subgroup(G, best_h)
    Sc = Subgroup(G, best_s)
    target = abelian_structure(Hc)
    best_b = None
    for g in c2:
        gi = G.inv[g]
        bs = tuple(sorted((b.pullback(target, lambda y: G.conj(gi, y)) for b in s.beta),
                          key=lambda b: b.coeffs))
        k = tuple(b.coeffs for b in bs)
        if best_b is None or k < best_b[0]:
            best_b = (k, bs)
    out = Symbol(Hc, Sc, best_b[1] if best_b else ())
    cache[key] = out
    cache[(out.H.mask, out.S.mask, tuple(b.coeffs for b in out.beta))] = out
    return out


def is_canonical(s: Symbol) -> bool:
    return canonicalize(s) == s


def symbol(H: Subgroup, S: Subgroup, beta: Iterable[Character], n: int | None = None) -> Symbol:
    """Validated, canonical symbol."""
    return canonicalize(make_symbol(H, S, beta, n))


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------


def enumerate_symbols(G: FiniteGroup, n: int, prefilter=None) -> list[Symbol]:
    """All canonical symbols with |beta| <= n, optionally only those with (H, S) in the prefilter."""
    out: set[Symbol] = set()
    for H in abelian_subgroup_classes(G):
        Z = centralizer(G, H)
        lifts = intermediate_subgroups(H, Z)
        if prefilter is not None:
            lifts = [S for S in lifts if prefilter.contains(H, S)]
        if not lifts:
            continue
        st = abelian_structure(H)
        nonzero = [b for b in st.characters() if not b.is_zero()]
        if H.is_trivial():
            seqs: list[tuple[Character, ...]] = [()]
        else:
            seqs = []
            for ell in range(st.rank, n + 1):
                for combo in combinations_with_replacement(nonzero, ell):
                    if characters_generate(combo, H):
                        seqs.append(combo)
        for S in lifts:
            for beta in seqs:
                out.add(canonicalize(Symbol(H, S, beta)))
    return sorted(out, key=Symbol.sort_key)


# ---------------------------------------------------------------------------
# relations
# ---------------------------------------------------------------------------


def _add(vec: dict, key, c: int) -> None:
    v = vec.get(key, 0) + c
    if v:
        vec[key] = v
    else:
        vec.pop(key, None)


def _check_pair(beta: Sequence[Character], i: int, j: int) -> None:
    if not 0 <= i < j < len(beta):
        raise SymbolError(f"need 0 <= i < j < {len(beta)}, got ({i}, {j})")


def relation_B1(sym: Symbol, i: int, j: int) -> RelationVector | None:
    """{sym: 1} if beta[i] + beta[j] = 0, else None."""
    _check_pair(sym.beta, i, j)
    if (sym.beta[i] + sym.beta[j]).is_zero():
        return {canonicalize(sym): 1}
    return None


def theta_terms(H: Subgroup, beta: Sequence[Character], i: int, j: int):
    """The pieces of the (B2) right-hand side at positions i, j.

    Returns ``(theta1, theta2)``: ``theta1`` is a list of the (zero or two)
    character sequences on H; ``theta2`` is ``None`` or a pair
    ``(Hbar, restricted sequence)``.
    """
    bi, bj = beta[i], beta[j]
    rest = [b for k, b in enumerate(beta) if k != i and k != j]
    theta1 = []
    if bi != bj:
        theta1.append([bi, bj - bi] + rest)
        theta1.append([bj, bi - bj] + rest)
    diff = bi - bj
    theta2 = None
    if not any(b.in_cyclic(diff) for b in beta):
        Hbar = diff.kernel()
        stb = abelian_structure(Hbar)
        bar = [b.restrict(stb) for k, b in enumerate(beta) if k != i]
        theta2 = (Hbar, bar)
    return theta1, theta2


def relation_B2(sym: Symbol, i: int, j: int) -> RelationVector:
    """sym - Theta1 - Theta2 for the pair of positions (i, j), canonicalised."""
    _check_pair(sym.beta, i, j)
    theta1, theta2 = theta_terms(sym.H, sym.beta, i, j)
    vec: dict = {}
    _add(vec, canonicalize(sym), 1)
    for seq in theta1:
        _add(vec, canonicalize(make_symbol(sym.H, sym.S, seq, check=False)), -1)
    if theta2 is not None:
        Hbar, bar = theta2
        t2 = make_symbol(Hbar, sym.S, bar, check=False)
        validate_symbol(t2)
        _add(vec, canonicalize(t2), -1)
    return vec


def symbol_relations(sym: Symbol, b2_on_b1_pairs: bool = True) -> list[RelationVector]:
    """All (B1)/(B2) relation vectors of one symbol, one per distinct pair of values.

    With ``b2_on_b1_pairs=False`` no (B2) row is produced for pairs already
    killed by (B1).
    """
    out = []
    seen = set()
    beta = sym.beta
    for i in range(len(beta)):
        for j in range(i + 1, len(beta)):
            vals = (beta[i].coeffs, beta[j].coeffs)
            if vals in seen:
                continue
            seen.add(vals)
            r1 = relation_B1(sym, i, j)
            if r1 is not None:
                out.append(r1)
                if not b2_on_b1_pairs:
                    continue
            r2 = relation_B2(sym, i, j)
            if r2:
                out.append(r2)
    return out


# ---------------------------------------------------------------------------
# indexed and projectively indexed symbols
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IndexedSymbol:
    """(H <= Hp, Y' = Sp/Hp, beta, gamma) with gamma indexed by a finite set I."""

    H: Subgroup
    Hp: Subgroup
    Sp: Subgroup
    beta: tuple[Character, ...]
    gamma: tuple[tuple[int, Character], ...]
    n: int
    projective: bool = False

    @property
    def group(self) -> FiniteGroup:
        return self.Hp.group

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.gamma)

    def gamma_map(self) -> dict[int, Character]:
        return dict(self.gamma)

    def sort_key(self) -> tuple:
        return (len(self.Hp), self.Hp.elements, len(self.H), self.H.elements, self.Sp.elements,
                tuple(b.coeffs for b in self.beta), tuple((i, c.coeffs) for i, c in self.gamma))

    def __str__(self) -> str:
        g = ", ".join(f"{i}:{format_character(c)}" for i, c in self.gamma)
        return (f"(H={self.H.describe()}, Hp={self.Hp.describe()}, Y={describe_lift(self.Hp, self.Sp)}, beta=["
                + ", ".join(format_character(b) for b in self.beta) + f"], gamma=[{g}])"
                + (" projective" if self.projective else ""))


def make_indexed(H: Subgroup, Hp: Subgroup, Sp: Subgroup, beta: Iterable[Character],
                 gamma: dict[int, Character] | Sequence[tuple[int, Character]] | Sequence[Character],
                 n: int, projective: bool = False, check: bool = True) -> IndexedSymbol:
    if isinstance(gamma, dict):
        items = list(gamma.items())
    else:
        items = list(gamma)
        if items and isinstance(items[0], Character):
            items = list(enumerate(items))
    items.sort(key=lambda t: t[0])
    s = IndexedSymbol(H, Hp, Sp, tuple(sorted(beta, key=lambda b: b.coeffs)), tuple(items), n, projective)
    if check:
        validate_indexed(s)
    return s


def validate_indexed(s: IndexedSymbol) -> None:
    H, Hp, Sp = s.H, s.Hp, s.Sp
    G = Hp.group
    if not (H <= Hp <= Sp):
        raise SymbolError("need H <= Hp <= Sp")
    if not Hp.is_abelian():
        raise SymbolError("Hp is not abelian")
    mul = G.mul
    hg = Hp.generators()
    for x in Sp.generators():
        if any(mul[x][h] != mul[h][x] for h in hg):
            raise SymbolError("Sp is not contained in the centralizer of Hp")
    st = abelian_structure(Hp)
    idx = s.indices
    if len(set(idx)) != len(idx) or any(i < 0 for i in idx):
        raise SymbolError("gamma indices must be distinct natural numbers")
    if s.projective and not idx:
        raise SymbolError("projective symbols need a nonempty index set")
    for b in s.beta:
        if b.structure != st:
            raise SymbolError("beta entry is not a character of Hp")
        if b.is_zero():
            raise SymbolError("beta contains the zero character")
        if any(b.value(h) for h in H.elements):
            raise SymbolError("beta entry is not trivial on H")
    for _, c in s.gamma:
        if c.structure != st:
            raise SymbolError("gamma entry is not a character of Hp")
    # beta generates (Hp/H)^: the common kernel of beta is exactly H
    for h in Hp.elements:
        if h not in H and all(b.value(h) == 0 for b in s.beta):
            raise SymbolError("beta does not generate the dual of Hp/H")
    cs = [c for _, c in s.gamma]
    if s.projective:
        cs = [c - cs[0] for c in cs[1:]]
    if not characters_generate(cs, H):
        what = "differences of gamma" if s.projective else "gamma"
        raise SymbolError(f"{what} restricted to H do not generate the dual of H")
    budget = s.n - len(idx) + (1 if s.projective else 0)
    if len(s.beta) > budget:
        raise SymbolError(f"beta too long: {len(s.beta)} > {budget}")


def _restrict_all(chars: Iterable[Character], sub: Subgroup) -> list[Character]:
    st = abelian_structure(sub)
    return [c.restrict(st) for c in chars]


def psi(isym: IndexedSymbol) -> RelationVector:
    """(H <= Hp, Sp, beta, gamma) -> (Hp, Sp, beta + gamma) if every gamma value is nonzero, else 0."""
    if isym.projective:
        raise SymbolError("psi is defined on non-projective symbols")
    cs = [c for _, c in isym.gamma]
    if any(c.is_zero() for c in cs):
        return {}
    chars = list(isym.beta) + cs
    if not characters_generate(chars, isym.Hp):
        raise SymbolError("beta and gamma do not generate the dual of Hp (corrupted input)")
    return {canonicalize(make_symbol(isym.Hp, isym.Sp, chars, check=False)): 1}


def omega(isym: IndexedSymbol, J: Iterable[int]) -> IndexedSymbol | None:
    """Pass to the common kernel of the gamma values indexed by I \\ J."""
    if isym.projective:
        raise SymbolError("use omega_proj for projective symbols")
    J = set(J)
    I = set(isym.indices)
    if not J <= I:
        raise SymbolError(f"J = {sorted(J)} is not a subset of I = {sorted(I)}")
    if J == I:
        return isym
    G = isym.group
    mask = isym.Hp.mask
    for i, c in isym.gamma:
        if i not in J:
            mask &= c.kernel().mask
    Hpb = Subgroup.from_mask(G, mask)
    Hb = Subgroup.from_mask(G, mask & isym.H.mask)
    st = abelian_structure(Hpb)
    beta = [b.restrict(st) for b in isym.beta]
    if any(b.is_zero() for b in beta):
        return None
    gamma = [(j, c.restrict(st)) for j, c in isym.gamma if j in J]
    return IndexedSymbol(Hb, Hpb, isym.Sp, tuple(sorted(beta, key=lambda b: b.coeffs)),
                         tuple(gamma), isym.n, False)


def p_shift(isym: IndexedSymbol, c: Character) -> IndexedSymbol:
    """Subtract c from every gamma value (the projective relation)."""
    return IndexedSymbol(isym.H, isym.Hp, isym.Sp, isym.beta,
                         tuple((i, g - c) for i, g in isym.gamma), isym.n, isym.projective)


def omega_proj(isym: IndexedSymbol, J: Iterable[int]) -> IndexedSymbol | None:
    """Projective omega: shift so gamma vanishes at i0 = min(I \\ J), drop i0, then omega to J."""
    if not isym.projective:
        raise SymbolError("omega_proj needs a projective symbol")
    J = set(J)
    I = set(isym.indices)
    if not J < I:
        raise SymbolError("J must be a proper subset of I")
    i0 = min(I - J)
    shifted = p_shift(isym, isym.gamma_map()[i0])
    dropped = IndexedSymbol(shifted.H, shifted.Hp, shifted.Sp, shifted.beta,
                            tuple((i, c) for i, c in shifted.gamma if i != i0), isym.n, False)
    return omega(dropped, J)


def canonicalize_indexed(s: IndexedSymbol) -> IndexedSymbol:
    """Normal form under reordering, conjugation and, for projective symbols, the shift relation."""
    if s.projective:
        s = p_shift(s, s.gamma[0][1])
    G = s.group
    best = None
    for g in range(G.order):
        Hp = _conj_elements(G, g, s.Hp)
        if best is not None and Hp > best[0][0]:
            continue
        H = _conj_elements(G, g, s.H)
        Sp = _conj_elements(G, g, s.Sp)
        head = (Hp, H, Sp)
        if best is not None and head > best[0][:3]:
            continue
        target = abelian_structure(Subgroup(G, Hp))
        gi = G.inv[g]
        phi = lambda y, gi=gi: G.conj(gi, y)  # noqa: E731
        beta = tuple(sorted((b.pullback(target, phi) for b in s.beta), key=lambda b: b.coeffs))
        gamma = tuple((i, c.pullback(target, phi)) for i, c in s.gamma)
        key = head + (tuple(b.coeffs for b in beta), tuple(c.coeffs for _, c in gamma))
        if best is None or key < best[0]:
            best = (key, beta, gamma)
    key, beta, gamma = best
    return IndexedSymbol(Subgroup(G, key[1]), Subgroup(G, key[0]), Subgroup(G, key[2]),
                         beta, gamma, s.n, s.projective)


def indexed_relation_B1(isym: IndexedSymbol, i: int, j: int) -> dict | None:
    _check_pair(isym.beta, i, j)
    if (isym.beta[i] + isym.beta[j]).is_zero():
        return {canonicalize_indexed(isym): 1}
    return None


def indexed_relation_B2(isym: IndexedSymbol, i: int, j: int) -> dict:
    """(B2) on beta, with H carried along and gamma (restricted for Theta2) appended."""
    _check_pair(isym.beta, i, j)
    theta1, theta2 = theta_terms(isym.Hp, isym.beta, i, j)
    vec: dict = {}
    _add(vec, canonicalize_indexed(isym), 1)
    for seq in theta1:
        t = IndexedSymbol(isym.H, isym.Hp, isym.Sp, tuple(sorted(seq, key=lambda b: b.coeffs)),
                          isym.gamma, isym.n, isym.projective)
        _add(vec, canonicalize_indexed(t), -1)
    if theta2 is not None:
        Hbar, bar = theta2
        st = abelian_structure(Hbar)
        t = IndexedSymbol(isym.H, Hbar, isym.Sp, tuple(sorted(bar, key=lambda b: b.coeffs)),
                          tuple((k, c.restrict(st)) for k, c in isym.gamma), isym.n, isym.projective)
        _add(vec, canonicalize_indexed(t), -1)
    return vec


__all__ = [
    "Symbol", "IndexedSymbol", "SymbolError", "RelationVector",
    "make_symbol", "symbol", "validate_symbol", "canonicalize", "conjugate_symbol", "is_canonical",
    "enumerate_symbols", "relation_B1", "relation_B2", "symbol_relations", "theta_terms",
    "make_indexed", "validate_indexed", "psi", "omega", "omega_proj", "p_shift",
    "canonicalize_indexed", "indexed_relation_B1", "indexed_relation_B2",
    "format_symbol", "format_character", "lift_generators", "describe_lift", "GroupError",
]
