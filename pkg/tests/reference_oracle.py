"""Brute-force reference for BC_n(G), sharing no code with the package.

Elements are permutation tuples, subgroups are frozensets, characters are
tuples of values in Q/Z (Fractions in [0, 1)) indexed by the sorted elements
of their subgroup.  Symbols are identified under reordering and conjugation
with a union-find over *all* conjugates, the relations are the literal (B1)
and (B2) on the first two entries of every ordering of beta, and prefilter
quotients use the full construction (every symbol outside the prefilter is
killed).  Membership is decided from Smith invariants computed by a plain
dense elimination.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product


# -- permutations ------------------------------------------------------------


def cycles_to_perm(text: str, degree: int) -> tuple[int, ...]:
    img = list(range(degree))
    for chunk in text.replace(")", ")|").split("|"):
        chunk = chunk.strip()
        if not chunk or chunk == "()":
            continue
        pts = [int(x) - 1 for x in chunk.strip("()").split()]
        cyc = list(range(degree))
        for a, b in zip(pts, pts[1:] + pts[:1]):
            cyc[a] = b
        img = [cyc[img[i]] for i in range(degree)]
    return tuple(img)


def mul(p, q):
    return tuple(q[p[i]] for i in range(len(p)))


def inv(p):
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def closure(gens, identity):
    elems = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(elems)


def order(x, identity):
    k, y = 1, x
    while y != identity:
        y = mul(y, x)
        k += 1
    return k


# -- the oracle ----------------------------------------------------------------


class Oracle:
    def __init__(self, gens: list[str], degree: int, n: int, prefilter=None, b2_on_b1_pairs: bool = True):
        self.degree = degree
        self.n = n
        self.e = tuple(range(degree))
        self.G = closure([cycles_to_perm(g, degree) for g in gens], self.e)
        self.elements = sorted(self.G)
        self.b2_on_b1_pairs = b2_on_b1_pairs
        self._subgroups()
        self._symbols()
        self.prefilter = None
        if prefilter is not None:
            keys = set()
            for Hg, Sg in prefilter:
                H = self.sub(Hg)
                S = closure(list(H) + [self.perm(x) for x in Sg], self.e)
                for g in self.elements:
                    keys.add((self.conj_set(g, H), self.conj_set(g, S)))
            self.prefilter = keys
        self._relations()

    def perm(self, text):
        return cycles_to_perm(text, self.degree)

    def sub(self, gens):
        return closure([self.perm(x) for x in gens], self.e)

    def conj(self, g, x):
        return mul(mul(g, x), inv(g))

    def conj_set(self, g, H):
        return frozenset(self.conj(g, h) for h in H)

    # every subgroup, by joining cyclic subgroups until nothing new appears
    def _subgroups(self):
        cyclic = {closure([x], self.e) for x in self.elements}
        subs = set(cyclic)
        frontier = set(cyclic)
        while frontier:
            new = set()
            for A in frontier:
                for C in cyclic:
                    if not C <= A:
                        J = closure(list(A | C), self.e)
                        if J not in subs:
                            new.add(J)
            subs |= new
            frontier = new
        self.subgroups = subs
        self.abelian = [H for H in subs if all(mul(a, b) == mul(b, a) for a in H for b in H)]

    def characters(self, H):
        """All homomorphisms H -> Q/Z, as value tuples over sorted(H)."""
        els = sorted(H)
        gens = []
        span = frozenset([self.e])
        for x in els:
            if x not in span:
                gens.append(x)
                span = closure(gens, self.e)
        out = []
        for vals in product(*[range(order(g, self.e)) for g in gens]):
            val = {self.e: Fraction(0)}
            frontier = [self.e]
            ok = True
            while frontier and ok:
                nxt = []
                for x in frontier:
                    for g, v in zip(gens, vals):
                        y = mul(x, g)
                        w = (val[x] + Fraction(v, order(g, self.e))) % 1
                        if y in val:
                            if val[y] != w:
                                ok = False
                                break
                        else:
                            val[y] = w
                            nxt.append(y)
                    if not ok:
                        break
                frontier = nxt
            if ok:
                out.append(tuple(val[x] for x in els))
        return out

    def _symbols(self):
        self.chars = {}
        syms = []
        for H in self.abelian:
            Z = frozenset(g for g in self.elements if all(mul(g, h) == mul(h, g) for h in H))
            lifts = [S for S in self.subgroups if H <= S <= Z]
            chs = self.characters(H)
            self.chars[H] = chs
            zero = tuple(Fraction(0) for _ in H)
            nonzero = [c for c in chs if c != zero]
            seqs = []
            if len(H) == 1:
                seqs = [()]
            else:
                for ell in range(1, self.n + 1):
                    for combo in product(nonzero, repeat=ell):
                        if tuple(sorted(combo)) != combo:
                            continue
                        if self.generates(H, combo):
                            seqs.append(combo)
            for S in lifts:
                for beta in seqs:
                    syms.append((H, S, beta))
        self.symbols = syms
        self.index = {s: i for i, s in enumerate(syms)}
        parent = list(range(len(syms)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for i, (H, S, beta) in enumerate(syms):
            for g in self.elements:
                j = self.index[self.conj_symbol(g, H, S, beta)]
                a, b = find(i), find(j)
                if a != b:
                    parent[max(a, b)] = min(a, b)
        roots = sorted({find(i) for i in range(len(syms))})
        col = {r: k for k, r in enumerate(roots)}
        self.column = [col[find(i)] for i in range(len(syms))]
        self.num_generators = len(roots)
        self.orbit_rep = {col[r]: syms[r] for r in roots}

    def generates(self, H, chars):
        els = sorted(H)
        for k, h in enumerate(els):
            if h != self.e and all(c[k] == 0 for c in chars):
                return False
        return True

    def conj_symbol(self, g, H, S, beta):
        Hg = self.conj_set(g, H)
        Sg = self.conj_set(g, S)
        gi = inv(g)
        new_els = sorted(Hg)
        old_pos = {x: k for k, x in enumerate(sorted(H))}
        nb = tuple(sorted(tuple(c[old_pos[self.conj(gi, y)]] for y in new_els) for c in beta))
        return (Hg, Sg, nb)

    def restrict_char(self, c, H, K):
        pos = {x: k for k, x in enumerate(sorted(H))}
        return tuple(c[pos[x]] for x in sorted(K))

    def key(self, H, S, beta):
        return self.column[self.index[(H, S, tuple(sorted(beta)))]]

    def _relations(self):
        rows = []
        for H, S, beta in self.orbit_rep.values():
            m = len(beta)
            done = set()
            for perm in permutations(range(m)):
                seq = [beta[p] for p in perm]
                if m < 2 or tuple(seq) in done:
                    continue
                done.add(tuple(seq))
                b1, b2 = seq[0], seq[1]
                rest = seq[2:]
                me = self.key(H, S, beta)
                if all((x + y) % 1 == 0 for x, y in zip(b1, b2)):
                    rows.append({me: 1})
                    if not self.b2_on_b1_pairs:
                        continue
                row = {me: 1}

                def add(k, c):
                    row[k] = row.get(k, 0) + c

                if b1 != b2:
                    d21 = tuple((y - x) % 1 for x, y in zip(b1, b2))
                    d12 = tuple((x - y) % 1 for x, y in zip(b1, b2))
                    add(self.key(H, S, [b1, d21] + rest), -1)
                    add(self.key(H, S, [b2, d12] + rest), -1)
                d = tuple((x - y) % 1 for x, y in zip(b1, b2))
                multiples = {tuple((k * v) % 1 for v in d) for k in range(len(H) + 1)}
                if not any(b in multiples for b in seq):
                    els = sorted(H)
                    Hbar = frozenset(h for k, h in enumerate(els) if d[k] == 0)
                    bar = [self.restrict_char(c, H, Hbar) for c in [b2] + rest]
                    add(self.key(Hbar, S, bar), -1)
                rows.append({k: v for k, v in row.items() if v})
        if self.prefilter is not None:
            for col, (H, S, beta) in self.orbit_rep.items():
                if (H, S) not in self.prefilter:
                    rows.append({col: 1})
        self.rows = [r for r in rows if r]

    # -- classes -----------------------------------------------------------

    def vector(self, terms):
        """terms: list of (coeff, H generators, Y generators, [ {perm: value} ])."""
        v = [0] * self.num_generators
        for coeff, Hg, Yg, beta in terms:
            H = self.sub(Hg)
            S = closure(list(H) + [self.perm(x) for x in Yg], self.e)
            els = sorted(H)
            chars = []
            for spec in beta:
                want = {self.perm(p): Fraction(val, order(self.perm(p), self.e)) % 1 for p, val in spec.items()}
                pos = {x: k for k, x in enumerate(els)}
                match = [c for c in self.chars[H] if all(c[pos[g]] == w for g, w in want.items())]
                assert len(match) == 1, "character not determined by the listed values"
                chars.append(match[0])
            v[self.key(H, S, chars)] += coeff
        return v

    def dense(self):
        return [[r.get(j, 0) for j in range(self.num_generators)] for r in self.rows]

    def structure(self):
        inv_ = smith_invariants(self.dense(), self.num_generators)
        return self.num_generators - len(inv_), [d for d in inv_ if d > 1]

    def is_zero(self, terms) -> bool:
        return in_lattice(self.dense(), self.vector(terms), self.num_generators)

    def equal(self, t1, t2) -> bool:
        return self.is_zero(list(t1) + [(-c, H, Y, b) for c, H, Y, b in t2])


# -- textbook Smith form --------------------------------------------------------


def smith_invariants(rows, ncols):
    """Nonzero diagonal of the Smith form, by plain dense elimination."""
    A = [list(r) for r in rows if any(r)]
    diag = []
    while A:
        m = len(A)
        best = None
        for i in range(m):
            for j in range(ncols):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        A[0], A[i] = A[i], A[0]
        for r in A:
            r[0], r[j] = r[j], r[0]
        while True:
            p = A[0][0]
            dirty = False
            for i in range(1, len(A)):
                q = A[i][0] // p
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[0])]
                if A[i][0]:
                    dirty = True
            for j in range(1, ncols):
                q = A[0][j] // p
                if q:
                    for r in A:
                        r[j] -= q * r[0]
                if A[0][j]:
                    dirty = True
            if not dirty:
                bad = next(((i, j) for i in range(1, len(A)) for j in range(1, ncols) if A[i][j] % p), None)
                if bad is None:
                    break
                A[0] = [a + b for a, b in zip(A[0], A[bad[0]])]
                continue
            # move the smallest remaining entry of row/column 0 to the pivot
            cands = [(abs(A[i][0]), i, 0) for i in range(len(A)) if A[i][0]]
            cands += [(abs(A[0][j]), 0, j) for j in range(ncols) if A[0][j]]
            _, i, j = min(cands)
            if i:
                A[0], A[i] = A[i], A[0]
            if j:
                for r in A:
                    r[0], r[j] = r[j], r[0]
        diag.append(abs(A[0][0]))
        A = [r[1:] for r in A[1:] if any(r[1:])]
        ncols -= 1
    diag.sort()
    # normalise to a divisibility chain through gcd/lcm swaps
    from math import gcd
    changed = True
    while changed:
        changed = False
        for a in range(len(diag)):
            for b in range(a + 1, len(diag)):
                x, y = diag[a], diag[b]
                g = gcd(x, y)
                if g != x:
                    diag[a], diag[b] = g, x * y // g
                    changed = True
        diag.sort()
    return diag


def in_lattice(rows, v, ncols) -> bool:
    """v lies in the row lattice iff adding it keeps the rank and the product of invariants."""
    base = smith_invariants(rows, ncols)
    ext = smith_invariants(list(rows) + [list(v)], ncols)
    if len(ext) != len(base):
        return False
    p1 = p2 = 1
    for d in base:
        p1 *= d
    for d in ext:
        p2 *= d
    return p1 == p2
