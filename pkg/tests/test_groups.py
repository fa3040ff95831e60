import itertools
import random

import pytest

from burnc.groups import (
    GroupError,
    abelian_structure,
    abelian_subgroup_classes,
    all_subgroups,
    centralizer,
    characters_generate,
    conjugate_subgroup,
    cyclic_group,
    dihedral_group,
    direct_product,
    format_cycles,
    group_from_cycles,
    intermediate_subgroups,
    normalizer,
    parse_cycles,
    subgroup_as_group,
    symmetric_group,
)
from reference_oracle import Oracle


@pytest.fixture(scope="module")
def S4():
    return symmetric_group(4)


def test_parse_and_format_cycles():
    assert parse_cycles("(1 2)(3 4)", 4) == (1, 0, 3, 2)
    assert parse_cycles("()", 3) == (0, 1, 2)
    # left to right: (1 2) first, then (2 3)
    assert parse_cycles("(1 2)(2 3)", 3) == (2, 0, 1)
    assert format_cycles(parse_cycles("(1 2)(2 3)", 3)) == "(1 3 2)"
    assert format_cycles((1, 2, 0)) == "(1 2 3)"
    assert format_cycles((0, 1, 2)) == "()"


@pytest.mark.parametrize("bad", ["(1 5)", "(1 1)", "(1 2", "abc"])
def test_parse_cycles_errors(bad):
    with pytest.raises(GroupError):
        parse_cycles(bad, 4)


@pytest.mark.parametrize("G,order", [
    (symmetric_group(3), 6), (symmetric_group(4), 24), (cyclic_group(5), 5),
    (dihedral_group(4), 8), (group_from_cycles(["(1 2)", "(3 4)"], 4), 4),
])
def test_orders_and_tables(G, order):
    assert G.order == order
    G.check_tables()
    assert G.label(0) == "()"


def test_group_axioms_spot(S4):
    rng = random.Random(1)
    for _ in range(200):
        a, b, c = (rng.randrange(24) for _ in range(3))
        assert S4.mul[S4.mul[a][b]][c] == S4.mul[a][S4.mul[b][c]]
        assert S4.mul[a][S4.inv[a]] == 0


def test_subgroup_counts_against_brute_force(S4):
    oracle = Oracle(["(1 2)", "(1 2 3 4)"], 4, 1)
    assert len(all_subgroups(S4)) == len(oracle.subgroups) == 30
    assert len(all_subgroups(S4, abelian_only=True)) == len(oracle.abelian) == 21
    assert len(abelian_subgroup_classes(S4)) == 7


def test_direct_product_layout():
    G, ea, eb = direct_product(cyclic_group(5), symmetric_group(3), "C5xS3")
    assert G.order == 30
    t = G.element_from_cycles("(6 7)")
    c = G.element_from_cycles("(1 2 3 4 5)")
    assert G.mul[t][c] == G.mul[c][t]
    assert len(centralizer(G, G.generate([c]))) == 30


def test_centralizer_normalizer(S4):
    V = S4.generate([S4.element_from_cycles("(1 2)(3 4)"), S4.element_from_cycles("(1 3)(2 4)")])
    assert len(centralizer(S4, V)) == 4
    assert len(normalizer(S4, V)) == 24
    t = S4.generate([S4.element_from_cycles("(1 2)")])
    assert len(centralizer(S4, t)) == 4
    assert len(normalizer(S4, t)) == 4


def test_conjugate_subgroup(S4):
    H = S4.generate([S4.element_from_cycles("(1 2)")])
    g = S4.element_from_cycles("(2 3)")
    K = conjugate_subgroup(S4, g, H)
    assert S4.element_from_cycles("(1 3)") in K


def test_intermediate_subgroups(S4):
    e = S4.trivial()
    assert len(intermediate_subgroups(e, S4.whole())) == 30
    H = S4.generate([S4.element_from_cycles("(1 2)")])
    C = centralizer(S4, H)
    assert {len(K) for K in intermediate_subgroups(H, C)} == {2, 4}


def test_subgroup_as_group(S4):
    H = S4.generate([S4.element_from_cycles("(1 2 3 4)")])
    C4, emb = subgroup_as_group(H)
    assert C4.order == 4
    for a, b in itertools.product(range(4), repeat=2):
        assert emb[C4.mul[a][b]] == S4.mul[emb[a]][emb[b]]


def test_characters_of_klein_four(S4):
    V = S4.generate([S4.element_from_cycles("(1 2)(3 4)"), S4.element_from_cycles("(1 3)(2 4)")])
    st = abelian_structure(V)
    chars = st.characters()
    assert len(chars) == 4
    assert st.invariant_factors == (2, 2)
    oracle = Oracle(["(1 2)", "(1 2 3 4)"], 4, 1)
    assert len(oracle.characters(frozenset(oracle.perm(S4.label(v)) for v in V.elements))) == 4
    # homomorphism property
    for b in chars:
        for x, y in itertools.product(V.elements, repeat=2):
            assert b.value(S4.mul[x][y]) == (b.value(x) + b.value(y)) % S4.exponent


def test_character_arithmetic():
    C6 = cyclic_group(6)
    st = abelian_structure(C6.whole())
    g = C6.element_from_cycles("(1 2 3 4 5 6)")
    b = st.character_from_values({g: 1})
    assert b.order() == 6
    assert (b * 6).is_zero()
    assert (b + (-b)).is_zero()
    assert len((b * 2).kernel()) == 2
    assert (b * 3).in_cyclic(b) and not b.in_cyclic(b * 2)
    assert b.restrict(C6.generate([C6.power(g, 2)])).order() == 3


def test_character_from_values_rejects_non_homomorphism():
    C4 = cyclic_group(4)
    st = abelian_structure(C4.whole())
    g = C4.element_from_cycles("(1 2 3 4)")
    with pytest.raises(GroupError):
        st.character_from_values({g: 1, C4.power(g, 2): 0})


def test_character_conjugation_convention(S4):
    H = S4.generate([S4.element_from_cycles("(1 2 3 4)")])
    g = S4.element_from_cycles("(1 3)")
    st = abelian_structure(H)
    b = st.character_from_values({S4.element_from_cycles("(1 2 3 4)"): 1})
    bg = b.conjugate(g)
    for x in H.elements:
        assert bg.value(S4.conj(g, x)) == b.value(x)


def test_characters_generate():
    G = group_from_cycles(["(1 2)", "(3 4)"], 4)
    st = abelian_structure(G.whole())
    a = G.element_from_cycles("(1 2)")
    c = G.element_from_cycles("(3 4)")
    b1 = st.character_from_values({a: 1, c: 0})
    b2 = st.character_from_values({a: 0, c: 1})
    assert characters_generate([b1, b2], G.whole())
    assert not characters_generate([b1, b1], G.whole())
    assert characters_generate([b1 + b2, b2], G.whole())
    assert characters_generate([], G.trivial())
