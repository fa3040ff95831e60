"""Finite groups stored as multiplication tables.

Elements are the integers ``0 .. order-1`` with ``0`` the identity.  Groups
are built from permutation generators (breadth-first closure, so numbering
is reproducible) or as direct products of existing groups.  Subgroups are
stored as sorted element tuples together with a bitmask for fast membership.

Permutations use 0-based image tuples internally; the product ``p * q``
means "apply ``p`` first, then ``q``", matching the usual cycle-notation
convention of GAP.
"""

from __future__ import annotations

import math
import re
from collections import deque
from functools import reduce
from itertools import product as iproduct
from typing import Callable, Iterable, Iterator, Sequence

DEFAULT_MAX_ORDER = 4096


class GroupError(ValueError):
    pass


# ---------------------------------------------------------------------------
# permutations in cycle notation
# ---------------------------------------------------------------------------

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> tuple[int, ...]:
    """Parse ``"(1 2)(3 4)"`` (1-based points) into an image tuple.

    Cycles are composed left to right.  ``"()"`` or ``""`` is the identity.
    """
    text = text.strip()
    perm = list(range(degree))
    if not text:
        return tuple(perm)
    pos = 0
    for m in _CYCLE_RE.finditer(text):
        if text[pos:m.start()].strip():
            raise GroupError(f"malformed cycle notation: {text!r}")
        pos = m.end()
        body = m.group(1).replace(",", " ").split()
        if not body:
            continue
        pts = [int(x) - 1 for x in body]
        if len(set(pts)) != len(pts):
            raise GroupError(f"repeated point in cycle {m.group(0)!r}")
        for p in pts:
            if not 0 <= p < degree:
                raise GroupError(f"point {p + 1} outside 1..{degree}")
        cyc = list(range(degree))
        for a, b in zip(pts, pts[1:] + pts[:1]):
            cyc[a] = b
        perm = [cyc[perm[i]] for i in range(degree)]
    if text[pos:].strip():
        raise GroupError(f"malformed cycle notation: {text!r}")
    return tuple(perm)


def format_cycles(perm: Sequence[int]) -> str:
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(str(x + 1))
            x = perm[x]
        out.append("(" + " ".join(cyc) + ")")
    return "".join(out) or "()"


def _compose(p: Sequence[int], q: Sequence[int]) -> tuple[int, ...]:
    # p first, then q
    return tuple(q[p[i]] for i in range(len(p)))


# ---------------------------------------------------------------------------
# groups and subgroups
# ---------------------------------------------------------------------------


class FiniteGroup:
    """A finite group given by its full multiplication table."""

    def __init__(self, mul: list[list[int]], labels: Sequence[object] | None = None,
                 name: str = "", perm_degree: int | None = None):
        self.order = len(mul)
        self.mul = mul
        self.identity = 0
        self.labels = list(labels) if labels is not None else list(range(self.order))
        self.name = name
        # set when labels are 0-based permutation image tuples
        self.perm_degree = perm_degree
        self.inv = [0] * self.order
        for a in range(self.order):
            row = mul[a]
            for b in range(self.order):
                if row[b] == 0:
                    self.inv[a] = b
                    break
        # set by direct_product: element -> component projections
        self.projections: tuple[list[int], list[int]] | None = None
        self.factors: tuple[FiniteGroup, FiniteGroup] | None = None
        self._structures: dict[int, AbelianStructure] = {}
        self._canon_cache: dict = {}
        self._abelian_classes: list[Subgroup] | None = None
        self._exponent: int | None = None
        self._orders: list[int] | None = None

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or '?'}, order={self.order})"

    # element arithmetic -------------------------------------------------

    def conj(self, g: int, x: int) -> int:
        """Return g x g^-1."""
        return self.mul[self.mul[g][x]][self.inv[g]]

    def power(self, x: int, k: int) -> int:
        k %= self.element_order(x)
        r = 0
        for _ in range(k):
            r = self.mul[r][x]
        return r

    def element_order(self, x: int) -> int:
        if self._orders is None:
            orders = []
            for a in range(self.order):
                k, y = 1, a
                while y != 0:
                    y = self.mul[y][a]
                    k += 1
                orders.append(k)
            self._orders = orders
        return self._orders[x]

    @property
    def exponent(self) -> int:
        if self._exponent is None:
            self._exponent = reduce(math.lcm, (self.element_order(x) for x in range(self.order)), 1)
        return self._exponent

    def label(self, x: int) -> str:
        lab = self.labels[x]
        if self.perm_degree is not None:
            return format_cycles(lab)
        return str(lab)

    def element_from_cycles(self, text: str) -> int:
        if self.perm_degree is None:
            raise GroupError(f"group {self.name!r} has no permutation representation")
        perm = parse_cycles(text, self.perm_degree)
        try:
            return self._label_index()[perm]
        except KeyError:
            raise GroupError(f"{text} is not an element of {self.name or 'the group'}") from None

    def _label_index(self) -> dict:
        idx = getattr(self, "_lab_idx", None)
        if idx is None:
            idx = {lab: i for i, lab in enumerate(self.labels)}
            self._lab_idx = idx
        return idx

    # subgroups -------------------------------------------------------------

    def subgroup(self, elements: Iterable[int]) -> "Subgroup":
        return Subgroup(self, elements)

    def whole(self) -> "Subgroup":
        return Subgroup(self, range(self.order))

    def trivial(self) -> "Subgroup":
        return Subgroup(self, (0,))

    def generate(self, gens: Iterable[int], start: "Subgroup | None" = None) -> "Subgroup":
        """Closure of ``gens`` (together with ``start`` if given)."""
        gens = list(dict.fromkeys(gens))
        if start is not None:
            gens = [g for g in gens if g not in start]
            if not gens:
                return start
            allgens = start.gen_list() + gens
            elems = set(start.elements)
        else:
            allgens = [g for g in gens if g != 0]
            elems = {0}
        frontier = deque(elems)
        mul = self.mul
        while frontier:
            x = frontier.popleft()
            row = mul[x]
            for s in allgens:
                y = row[s]
                if y not in elems:
                    elems.add(y)
                    frontier.append(y)
        sub = Subgroup(self, elems)
        sub._gens = allgens
        return sub

    def check_tables(self) -> None:
        """Full scan of the group axioms; raises GroupError on failure."""
        n, mul = self.order, self.mul
        for a in range(n):
            if mul[0][a] != a or mul[a][0] != a:
                raise GroupError("0 is not the identity")
            if mul[a][self.inv[a]] != 0 or mul[self.inv[a]][a] != 0:
                raise GroupError(f"bad inverse for {a}")
        for a in range(n):
            ma = mul[a]
            for b in range(n):
                ab = ma[b]
                mab = mul[ab]
                mb = mul[b]
                for c in range(n):
                    if mab[c] != ma[mb[c]]:
                        raise GroupError("multiplication is not associative")

    def abelian_structure(self, sub: "Subgroup") -> "AbelianStructure":
        st = self._structures.get(sub.mask)
        if st is None:
            st = AbelianStructure(sub)
            self._structures[sub.mask] = st
        return st


class Subgroup:
    """A subgroup of a FiniteGroup, as a sorted element tuple plus bitmask."""

    __slots__ = ("group", "elements", "mask", "_gens", "_mingens")

    def __init__(self, group: FiniteGroup, elements: Iterable[int]):
        self.group = group
        self._gens: list[int] | None = None
        self._mingens: list[int] | None = None
        self.elements = tuple(sorted(set(elements)))
        m = 0
        for x in self.elements:
            m |= 1 << x
        self.mask = m

    @classmethod
    def from_mask(cls, group: FiniteGroup, mask: int) -> "Subgroup":
        elems = []
        x = 0
        while mask:
            if mask & 1:
                elems.append(x)
            mask >>= 1
            x += 1
        return cls(group, elems)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, x: int) -> bool:
        return (self.mask >> x) & 1 == 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.group is other.group and self.mask == other.mask

    def __hash__(self) -> int:
        return hash(self.mask)

    def __le__(self, other: "Subgroup") -> bool:
        return self.mask & ~other.mask == 0

    def __lt__(self, other: "Subgroup") -> bool:
        return self <= other and self.mask != other.mask

    def __and__(self, other: "Subgroup") -> "Subgroup":
        return Subgroup.from_mask(self.group, self.mask & other.mask)

    def __repr__(self) -> str:
        return f"Subgroup(order={len(self)}, {self.elements})"

    @property
    def order(self) -> int:
        return len(self.elements)

    def is_trivial(self) -> bool:
        return self.mask == 1

    def is_abelian(self) -> bool:
        mul = self.group.mul
        els = self.elements
        for i, a in enumerate(els):
            for b in els[i + 1:]:
                if mul[a][b] != mul[b][a]:
                    return False
        return True

    def generators(self) -> list[int]:
        """A deterministic generating set: greedily add the least element not yet generated."""
        if self._mingens is None:
            G = self.group
            gens: list[int] = []
            cur = G.trivial()
            for x in self.elements:
                if cur.mask == self.mask:
                    break
                if x not in cur:
                    gens.append(x)
                    cur = G.generate([x], start=cur)
            self._mingens = gens
        return list(self._mingens)

    def gen_list(self) -> list[int]:
        return list(self._gens) if self._gens is not None else self.generators()

    def describe(self) -> str:
        return "<" + ", ".join(self.group.label(g) for g in self.generators()) + ">"


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------


def group_from_permutations(generators: Sequence[Sequence[int]], degree: int, name: str = "",
                            max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    """Close permutation generators (0-based image tuples) under composition.

    Elements are numbered in breadth-first order: starting from the identity,
    each dequeued element is multiplied on the right by the generators in the
    order given.
    """
    gens = []
    for g in generators:
        g = tuple(g)
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise GroupError(f"not a permutation of {degree} points: {g}")
        gens.append(g)
    ident = tuple(range(degree))
    labels = [ident]
    index = {ident: 0}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = _compose(x, s)
            if y not in index:
                if len(labels) >= max_order:
                    raise GroupError(f"group order exceeds bound {max_order}")
                index[y] = len(labels)
                labels.append(y)
                queue.append(y)
    mul = [[index[_compose(a, b)] for b in labels] for a in labels]
    return FiniteGroup(mul, labels, name=name, perm_degree=degree)


def group_from_cycles(cycles: Sequence[str], degree: int, name: str = "",
                      max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    return group_from_permutations([parse_cycles(c, degree) for c in cycles], degree, name, max_order)


def symmetric_group(n: int) -> FiniteGroup:
    if n <= 1:
        return group_from_permutations([], max(n, 1), name=f"S{n}")
    gens = [parse_cycles("(1 2)", n)]
    if n > 2:
        gens.append(parse_cycles("(" + " ".join(map(str, range(1, n + 1))) + ")", n))
    return group_from_permutations(gens, n, name=f"S{n}")


def cyclic_group(n: int) -> FiniteGroup:
    if n == 1:
        return group_from_permutations([], 1, name="C1")
    return group_from_permutations([tuple(list(range(1, n)) + [0])], n, name=f"C{n}")


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of an n-gon, order 2n, acting on n points."""
    rot = "(" + " ".join(map(str, range(1, n + 1))) + ")"
    refl = "".join(f"({i} {n + 2 - i})" for i in range(2, n // 2 + 1 + (n % 2)) if i < n + 2 - i)
    return group_from_cycles([rot, refl], n, name=f"D{n}")


def direct_product(A: FiniteGroup, B: FiniteGroup, name: str = "",
                   max_order: int = DEFAULT_MAX_ORDER) -> tuple[FiniteGroup, list[int], list[int]]:
    """Return ``(A x B, embed_A, embed_B)``.

    The element ``(a, b)`` gets index ``a * |B| + b``.  When both factors are
    permutation groups, the product acts on the disjoint union of the point
    sets, B's points shifted by A's degree.
    """
    na, nb = A.order, B.order
    if na * nb > max_order:
        raise GroupError(f"group order exceeds bound {max_order}")
    mul = []
    for a in range(na):
        ma = A.mul[a]
        for b in range(nb):
            mb = B.mul[b]
            mul.append([ma[c] * nb + mb[d] for c in range(na) for d in range(nb)])
    if A.perm_degree is not None and B.perm_degree is not None:
        da = A.perm_degree
        labels = [tuple(A.labels[a]) + tuple(da + x for x in B.labels[b])
                  for a in range(na) for b in range(nb)]
        deg = da + B.perm_degree
    else:
        labels = [(A.labels[a], B.labels[b]) for a in range(na) for b in range(nb)]
        deg = None
    P = FiniteGroup(mul, labels, name=name or f"{A.name}x{B.name}", perm_degree=deg)
    P.projections = ([x // nb for x in range(na * nb)], [x % nb for x in range(na * nb)])
    P.factors = (A, B)
    return P, [a * nb for a in range(na)], list(range(nb))


def subgroup_as_group(H: Subgroup, name: str = "") -> tuple[FiniteGroup, list[int]]:
    """Turn a subgroup into a standalone group; returns it and its embedding.

    Elements keep the parent's relative order, so the identity stays at 0.
    """
    G = H.group
    els = H.elements
    pos = {x: i for i, x in enumerate(els)}
    mul = [[pos[G.mul[a][b]] for b in els] for a in els]
    sub = FiniteGroup(mul, [G.labels[x] for x in els], name=name, perm_degree=G.perm_degree)
    return sub, list(els)


# ---------------------------------------------------------------------------
# subgroup machinery
# ---------------------------------------------------------------------------


def centralizer(G: FiniteGroup, H: Subgroup) -> Subgroup:
    mul = G.mul
    gens = H.generators()
    return Subgroup(G, (g for g in range(G.order) if all(mul[g][h] == mul[h][g] for h in gens)))


def normalizer(G: FiniteGroup, H: Subgroup) -> Subgroup:
    gens = H.generators()
    return Subgroup(G, (g for g in range(G.order) if all(G.conj(g, h) in H for h in gens)))


def conjugate_subgroup(G: FiniteGroup, g: int, H: Subgroup) -> Subgroup:
    """g H g^-1."""
    return Subgroup(G, (G.conj(g, h) for h in H.elements))


def _conj_mask(G: FiniteGroup, g: int, H: Subgroup) -> int:
    m = 0
    for h in H.elements:
        m |= 1 << G.conj(g, h)
    return m


def all_subgroups(G: FiniteGroup, abelian_only: bool = False) -> list[Subgroup]:
    """Every subgroup (or every abelian subgroup), by adjoining one element at a time."""
    seen = {1}
    todo = [G.trivial()]
    out = []
    while todo:
        A = todo.pop()
        out.append(A)
        cands = centralizer(G, A) if abelian_only else G.whole()
        for g in cands.elements:
            if g in A:
                continue
            B = G.generate([g], start=A)
            if B.mask not in seen:
                seen.add(B.mask)
                todo.append(B)
    out.sort(key=lambda s: (len(s), s.elements))
    return out


def abelian_subgroup_classes(G: FiniteGroup) -> list[Subgroup]:
    """One representative per conjugacy class of abelian subgroups.

    Each representative is the lexicographically least element tuple in its
    class; representatives are ordered by (order, elements).
    """
    if G._abelian_classes is not None:
        return G._abelian_classes
    remaining = {A.mask: A for A in all_subgroups(G, abelian_only=True)}
    reps = []
    while remaining:
        A = next(iter(remaining.values()))
        orbit = {_conj_mask(G, g, A) for g in range(G.order)}
        members = [Subgroup.from_mask(G, m) for m in orbit]
        reps.append(min(members, key=lambda s: s.elements))
        for m in orbit:
            remaining.pop(m, None)
    reps.sort(key=lambda s: (len(s), s.elements))
    G._abelian_classes = reps
    return reps


def intermediate_subgroups(H: Subgroup, C: Subgroup) -> list[Subgroup]:
    """All subgroups S with H <= S <= C (H normal in C)."""
    G = H.group
    if not H <= C:
        raise GroupError("H is not contained in C")
    for c in C.generators():
        for h in H.generators():
            if G.conj(c, h) not in H:
                raise GroupError("H is not normal in C")
    seen = {H.mask}
    todo = [H]
    out = []
    while todo:
        A = todo.pop()
        out.append(A)
        for g in C.elements:
            if g in A:
                continue
            B = G.generate([g], start=A)
            if B.mask not in seen:
                seen.add(B.mask)
                todo.append(B)
    out.sort(key=lambda s: (len(s), s.elements))
    return out


def _prime_factors(n: int) -> list[int]:
    ps, p = [], 2
    while p * p <= n:
        if n % p == 0:
            ps.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        ps.append(n)
    return ps


class AbelianStructure:
    """An identification H = Z/d1 + ... + Z/dr with d1 | d2 | ... | dr.

    ``basis[i]`` generates the Z/di factor; ``log`` and ``exp`` convert
    between elements and exponent tuples.
    """

    def __init__(self, H: Subgroup):
        if not H.is_abelian():
            raise GroupError("subgroup is not abelian")
        self.subgroup = H
        self.group = G = H.group
        factors, basis = _invariant_basis(H)
        self.invariant_factors = tuple(factors)
        self.basis = tuple(basis)
        self.rank = len(factors)
        self.exponent = factors[-1] if factors else 1
        self._exp: dict[tuple[int, ...], int] = {}
        self._log: dict[int, tuple[int, ...]] = {}
        for x in iproduct(*(range(d) for d in factors)):
            e = 0
            for b, k in zip(basis, x):
                for _ in range(k):
                    e = G.mul[e][b]
            self._exp[x] = e
            self._log[e] = x
        if len(self._log) != len(H):
            raise GroupError("internal error: basis does not span the subgroup")
        # element value scale into Z/N, N = group exponent
        N = G.exponent
        self._scale = tuple(N // d for d in factors)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AbelianStructure):
            return NotImplemented
        return self.subgroup == other.subgroup

    def __hash__(self) -> int:
        return hash(self.subgroup)

    def __repr__(self) -> str:
        return f"AbelianStructure({self.invariant_factors}, basis={self.basis})"

    def log(self, h: int) -> tuple[int, ...]:
        return self._log[h]

    def exp(self, x: Sequence[int]) -> int:
        return self._exp[tuple(c % d for c, d in zip(x, self.invariant_factors))]

    def character(self, coeffs: Sequence[int] | int) -> "Character":
        if isinstance(coeffs, int):
            coeffs = (coeffs,)
        coeffs = tuple(coeffs)
        if len(coeffs) != self.rank:
            raise GroupError(f"character needs {self.rank} coefficients, got {len(coeffs)}")
        return Character(self, tuple(c % d for c, d in zip(coeffs, self.invariant_factors)))

    def zero(self) -> "Character":
        return Character(self, (0,) * self.rank)

    def characters(self) -> list["Character"]:
        return [Character(self, c) for c in iproduct(*(range(d) for d in self.invariant_factors))]

    def character_from_values(self, values: dict[int, int]) -> "Character":
        """The character with b(g) = exp(2 pi i v / ord(g)) for each {g: v}.

        The listed elements must generate H.
        """
        G = self.group
        N = G.exponent
        if G.generate(values).mask != self.subgroup.mask:
            raise GroupError("listed elements do not generate the subgroup")
        want = {g: v * (N // G.element_order(g)) % N for g, v in values.items()}
        for b in self.characters():
            if all(b.value(g) == w for g, w in want.items()):
                return b
        raise GroupError("values do not define a character")


def _invariant_basis(H: Subgroup) -> tuple[list[int], list[int]]:
    G = H.group
    n = len(H)
    if n == 1:
        return [], []
    per_prime: list[list[tuple[int, int]]] = []
    for p in _prime_factors(n):
        P = [x for x in H.elements if _is_power_of(G.element_order(x), p)]
        Pset = set(P)
        chosen: list[tuple[int, int]] = []  # (order, element)
        span = {0}
        while len(span) < len(Pset):
            best = None
            for x in P:  # ascending index
                # order of x modulo span
                k, y = 1, x
                while y not in span:
                    y = G.mul[y][x]
                    k += 1
                if k == 1:
                    continue
                if k != G.element_order(x):
                    continue
                if best is None or k > best[0]:
                    best = (k, x)
            if best is None:
                raise GroupError("internal error: no independent element found")
            chosen.append(best)
            new = set()
            for s in span:
                y = s
                for _ in range(best[0]):
                    new.add(y)
                    y = G.mul[y][best[1]]
            span = new
        chosen.sort(key=lambda t: t[0])  # ascending orders
        per_prime.append(chosen)
    r = max(len(c) for c in per_prime)
    factors, basis = [], []
    for i in range(r):
        d, e = 1, 0
        for chosen in per_prime:
            j = i - (r - len(chosen))
            if j >= 0:
                k, x = chosen[j]
                d *= k
                e = G.mul[e][x]
        factors.append(d)
        basis.append(e)
    return factors, basis


def _is_power_of(m: int, p: int) -> bool:
    while m % p == 0:
        m //= p
    return m == 1


def abelian_structure(H: Subgroup) -> AbelianStructure:
    return H.group.abelian_structure(H)


# ---------------------------------------------------------------------------
# characters
# ---------------------------------------------------------------------------


class Character:
    """A character of an abelian subgroup, as coefficients against its basis.

    Values live in Z/N, N the exponent of the ambient group:
    ``b(h) = sum_i a_i x_i N/d_i`` where ``x = log(h)``.
    """

    __slots__ = ("structure", "coeffs")

    def __init__(self, structure: AbelianStructure, coeffs: tuple[int, ...]):
        self.structure = structure
        self.coeffs = coeffs

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Character):
            return NotImplemented
        return self.coeffs == other.coeffs and self.structure == other.structure

    def __hash__(self) -> int:
        return hash((self.coeffs, self.structure.subgroup.mask))

    def __lt__(self, other: "Character") -> bool:
        return self.coeffs < other.coeffs

    def __repr__(self) -> str:
        return f"Character{self.coeffs}"

    def _check(self, other: "Character") -> None:
        if other.structure != self.structure:
            raise GroupError("characters of different subgroups")

    def __add__(self, other: "Character") -> "Character":
        self._check(other)
        d = self.structure.invariant_factors
        return Character(self.structure, tuple((a + b) % m for a, b, m in zip(self.coeffs, other.coeffs, d)))

    def __neg__(self) -> "Character":
        d = self.structure.invariant_factors
        return Character(self.structure, tuple(-a % m for a, m in zip(self.coeffs, d)))

    def __sub__(self, other: "Character") -> "Character":
        return self + (-other)

    def __mul__(self, k: int) -> "Character":
        d = self.structure.invariant_factors
        return Character(self.structure, tuple(a * k % m for a, m in zip(self.coeffs, d)))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def order(self) -> int:
        return reduce(math.lcm, (m // math.gcd(a, m) for a, m in
                                 zip(self.coeffs, self.structure.invariant_factors)), 1)

    def value(self, h: int) -> int:
        """b(h) in Z/N, N the exponent of the ambient group."""
        st = self.structure
        x = st._log[h]
        N = st.group.exponent
        return sum(a * xi * s for a, xi, s in zip(self.coeffs, x, st._scale)) % N

    def pairing(self, h: int) -> int:
        """b(h) in Z/e, e the exponent of H."""
        st = self.structure
        return self.value(h) // (st.group.exponent // st.exponent)

    def kernel(self) -> Subgroup:
        H = self.structure.subgroup
        return Subgroup(H.group, (h for h in H.elements if self.value(h) == 0))

    def pullback(self, target: AbelianStructure, phi: Callable[[int], int]) -> "Character":
        """The character ``x -> b(phi(x))`` on ``target``.

        ``phi`` maps target elements into this character's subgroup (a group
        homomorphism, possibly between different ambient groups).
        """
        N = self.structure.group.exponent
        coeffs = []
        for y, d in zip(target.basis, target.invariant_factors):
            num = self.value(phi(y)) * d
            if num % N:
                raise GroupError("pullback is not a character (phi is not a homomorphism?)")
            coeffs.append(num // N % d)
        return Character(target, tuple(coeffs))

    def restrict(self, sub: Subgroup | AbelianStructure) -> "Character":
        st = sub if isinstance(sub, AbelianStructure) else abelian_structure(sub)
        if not st.subgroup <= self.structure.subgroup:
            raise GroupError("restriction target is not a subgroup")
        return self.pullback(st, lambda y: y)

    def conjugate(self, g: int) -> "Character":
        """b^g on gHg^-1, with b^g(x) = b(g^-1 x g)."""
        G = self.structure.group
        target = abelian_structure(conjugate_subgroup(G, g, self.structure.subgroup))
        gi = G.inv[g]
        return self.pullback(target, lambda y: G.conj(gi, y))

    def in_cyclic(self, c: "Character") -> bool:
        """Whether b lies in the cyclic subgroup of H^ generated by c."""
        self._check(c)
        x = self.structure.zero()
        for _ in range(c.order()):
            if x.coeffs == self.coeffs:
                return True
            x = x + c
        return False


def char_add(b: Character, c: Character) -> Character:
    return b + c


def char_neg(b: Character) -> Character:
    return -b


def char_is_zero(b: Character) -> bool:
    return b.is_zero()


def char_order(b: Character) -> int:
    return b.order()


def char_restrict(b: Character, sub: Subgroup) -> Character:
    return b.restrict(sub)


def char_kernel(b: Character) -> Subgroup:
    return b.kernel()


def char_in_cyclic(b: Character, c: Character) -> bool:
    return b.in_cyclic(c)


def char_conjugate(g: int, b: Character) -> Character:
    return b.conjugate(g)


def characters_generate(chars: Iterable[Character], H: Subgroup) -> bool:
    """Whether the characters generate the dual of H, i.e. their kernels meet trivially."""
    chars = list(chars)
    for h in H.elements:
        if h != 0 and all(b.value(h) == 0 for b in chars):
            return False
    return True
