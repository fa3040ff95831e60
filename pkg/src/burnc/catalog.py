"""Worked examples used by the test-suite, the scripts and the docs.

Groups are built from permutations so that the same data can be written in
the script language.  In C5 x S3 the C5 factor moves points 1..5 and S3
moves points 6, 7, 8.
"""

from __future__ import annotations

from dataclasses import dataclass

from .burnside import BurnsideClass, Prefilter
from .groups import FiniteGroup, Subgroup, abelian_structure, cyclic_group, dihedral_group, direct_product, symmetric_group
from .symbols import IndexedSymbol, make_indexed, symbol


@dataclass
class Z5S3:
    G: FiniteGroup
    c5: int       # generator of C5
    t: int        # the transposition (6 7)
    r: int        # the 3-cycle (6 7 8)
    C5: Subgroup
    C5xC2: Subgroup
    C5xA3: Subgroup
    C2: Subgroup


def z5s3() -> Z5S3:
    G, _, _ = direct_product(cyclic_group(5), symmetric_group(3), "C5xS3")
    c5 = G.element_from_cycles("(1 2 3 4 5)")
    t = G.element_from_cycles("(6 7)")
    r = G.element_from_cycles("(6 7 8)")
    return Z5S3(G, c5, t, r, G.generate([c5]), G.generate([c5, t]), G.generate([c5, r]), G.generate([t]))


def z5s3_xi(ex: Z5S3, chi: int = 1) -> list[tuple[int, IndexedSymbol]]:
    """The four projectively indexed symbols of the bundle P(L0 + L1) over P^1.

    The k x k algebra of the last stratum is encoded by shrinking Y to the
    component stabiliser, i.e. Y = triv.
    """
    G, c5, t, r = ex.G, ex.c5, ex.t, ex.r
    n = 2
    st5 = abelian_structure(ex.C5)
    st2 = abelian_structure(ex.C5xC2)
    st3 = abelian_structure(ex.C5xA3)
    out = [make_indexed(ex.C5, ex.C5, G.whole(), [], [st5.character_from_values({c5: 0}),
                                                     st5.character_from_values({c5: chi})], n, True)]
    for eps in (0, 1):
        out.append(make_indexed(ex.C5, ex.C5xC2, ex.C5xC2,
                                [st2.character_from_values({c5: 0, t: 1})],
                                [st2.zero(), st2.character_from_values({c5: chi, t: eps})], n, True))
    out.append(make_indexed(ex.C5, ex.C5xA3, ex.C5xA3,
                            [st3.character_from_values({c5: 0, r: 1})],
                            [st3.zero(), st3.character_from_values({c5: chi, r: 1})], n, True))
    return [(1, x) for x in out]


def z5s3_displayed_class(ex: Z5S3, chi: int = 1, literal: bool = True) -> BurnsideClass:
    """The ten-term class as displayed for the example.

    With ``literal=False`` the last term uses -(chi, 1) = (-chi, 2) on
    C5 x A3, which is what the formula produces; the display shows (-chi, 1).
    """
    G, c5, t, r = ex.G, ex.c5, ex.t, ex.r
    st5 = abelian_structure(ex.C5)
    st2 = abelian_structure(ex.C5xC2)
    st3 = abelian_structure(ex.C5xA3)
    stt = abelian_structure(ex.C2)
    syms = [
        symbol(G.trivial(), G.whole(), []),
        symbol(ex.C2, ex.C5xC2, [stt.character(1)]),
    ]
    for s in (chi, -chi):
        a3 = 1 if (s == chi or literal) else -1
        syms += [
            symbol(ex.C5, G.whole(), [st5.character_from_values({c5: s})]),
            symbol(ex.C5xC2, ex.C5xC2, [st2.character_from_values({c5: 0, t: 1}),
                                        st2.character_from_values({c5: s, t: 0})]),
            symbol(ex.C5xC2, ex.C5xC2, [st2.character_from_values({c5: 0, t: 1}),
                                        st2.character_from_values({c5: s, t: 1})]),
            symbol(ex.C5xA3, ex.C5xA3, [st3.character_from_values({c5: 0, r: 1}),
                                        st3.character_from_values({c5: s, r: a3})]),
        ]
    return BurnsideClass.from_terms(G, 2, [(1, s) for s in syms])


def z5s3_prefilter(ex: Z5S3) -> Prefilter:
    return Prefilter(ex.G, [(ex.C5, ex.G.whole())])


def z5s3_projected_class(ex: Z5S3, chi: int = 1) -> BurnsideClass:
    st5 = abelian_structure(ex.C5)
    G = ex.G
    return BurnsideClass.from_terms(G, 2, [
        (1, symbol(ex.C5, G.whole(), [st5.character_from_values({ex.c5: chi})])),
        (1, symbol(ex.C5, G.whole(), [st5.character_from_values({ex.c5: -chi})])),
    ])


@dataclass
class D4Example:
    G: FiniteGroup
    C4: Subgroup
    rotation: int
    reflection: int


def d4_example() -> D4Example:
    G = dihedral_group(4)
    rot = G.element_from_cycles("(1 2 3 4)")
    ref = G.element_from_cycles("(2 4)")
    return D4Example(G, G.generate([rot]), rot, ref)


def d4_symbol_class(ex: D4Example) -> BurnsideClass:
    """(C4, Y = triv, (1)) in BC_1(D4)."""
    st = abelian_structure(ex.C4)
    return BurnsideClass.from_symbol(symbol(ex.C4, ex.C4, [st.character_from_values({ex.rotation: 1})]), 1)


__all__ = ["Z5S3", "z5s3", "z5s3_xi", "z5s3_displayed_class", "z5s3_prefilter", "z5s3_projected_class",
           "D4Example", "d4_example", "d4_symbol_class"]
