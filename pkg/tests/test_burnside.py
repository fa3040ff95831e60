import random

import pytest

from burnc.burnside import (
    BurnsideClass,
    Prefilter,
    ResourceLimitError,
    build_presentation,
    diagonal_product,
    fibration_class,
    indexed_push,
    prefilter_closed,
    prefilter_violations,
    product,
    product_group,
    project,
    restrict,
    restrict_along,
    subgroup_group,
)
from burnc.catalog import d4_example, d4_symbol_class, z5s3, z5s3_prefilter, z5s3_xi
from burnc.groups import GroupError, abelian_structure, cyclic_group, group_from_cycles, symmetric_group
from burnc.lattice import IntMatrix, quotient_structure
from burnc.symbols import enumerate_symbols, make_indexed, symbol
from reference_oracle import Oracle


def _cls(s, n, k=1):
    return BurnsideClass.from_symbol(s, n, k)


@pytest.fixture(scope="module")
def C2():
    return cyclic_group(2)


# -- classes -------------------------------------------------------------------


def test_class_arithmetic(C2):
    a, b, c = enumerate_symbols(C2, 1)
    x = _cls(a, 1) + _cls(b, 1) * 2
    y = _cls(b, 1) - _cls(c, 1)
    assert (x + y) - y == x
    assert -(-x) == x
    assert x * 0 == BurnsideClass(C2, 1)
    assert not (x - x)
    assert len(x + y) == 3
    assert [k for _, k in (x + y).terms()] == [1, 3, -1]


def test_class_group_mismatch(C2):
    other = cyclic_group(3)
    with pytest.raises((GroupError, ValueError)):
        BurnsideClass(C2, 1) + BurnsideClass(other, 1)


# -- presentations ---------------------------------------------------------------


@pytest.mark.parametrize("gens,degree,n", [
    (["(1 2)"], 2, 1),
    (["(1 2)"], 2, 2),
    (["(1 2)"], 2, 3),
    (["(1 2 3 4)"], 4, 1),
    (["(1 2 3 4)"], 4, 2),
    (["(1 2)", "(3 4)"], 4, 2),
    (["(1 2)", "(1 2 3)"], 3, 2),
    (["(1 2 3 4)", "(2 4)"], 4, 2),
    (["(1 2)", "(1 2 3 4)"], 4, 2),
])
def test_structure_against_oracle(gens, degree, n):
    G = group_from_cycles(gens, degree)
    pres = build_presentation(G, n)
    oracle = Oracle(gens, degree, n)
    s = pres.structure
    assert (s.free_rank, list(s.torsion)) == oracle.structure()
    assert len(pres.generators) == oracle.num_generators


def test_known_structures():
    S4 = symmetric_group(4)
    assert build_presentation(S4, 2).structure.describe() == "Z^11 (+) Z/2 (+) Z/2 (+) Z/2"
    assert build_presentation(S4, 2, b2_on_b1_pairs=False).structure.describe() == "Z^20"
    assert build_presentation(cyclic_group(4), 1).structure.describe() == "Z^7"


def test_presentation_cache_and_caps():
    G = symmetric_group(3)
    p = build_presentation(G, 2)
    assert build_presentation(G, 2) is p
    with pytest.raises(ResourceLimitError):
        build_presentation(G, 2, max_generators=3)
    with pytest.raises(ResourceLimitError):
        build_presentation(symmetric_group(4), 2, max_relations=2)


def test_reduce_and_coordinates():
    S4 = symmetric_group(4)
    p = build_presentation(S4, 2)
    for i in range(p.relations.nrows):
        r = p.relation_class(i)
        assert p.class_is_zero(r)
        assert not p.reduce(r)
    s = p.generators[5]
    c = _cls(s, 2)
    assert p.classes_equal(c + p.relation_class(0), c)
    assert p.coordinates(c + p.relation_class(3)) == p.coordinates(c)


def test_vector_rejects_foreign_class(C2):
    p = build_presentation(symmetric_group(3), 1)
    with pytest.raises(GroupError):
        p.vector(BurnsideClass(C2, 1))


# -- prefilters ------------------------------------------------------------------


def test_prefilter_conjugation_closed():
    S4 = symmetric_group(4)
    H = S4.generate([S4.element_from_cycles("(1 2)")])
    P = Prefilter(S4, [(H, H)])
    assert len(P) == 6
    K = S4.generate([S4.element_from_cycles("(3 4)")])
    assert P.contains(K, K)


def test_prefilter_validation():
    S4 = symmetric_group(4)
    with pytest.raises(GroupError):
        Prefilter(S4, [(S4.whole(), S4.whole())])


def test_prefilter_closure_check():
    ex = z5s3()
    assert prefilter_closed(ex.G, z5s3_prefilter(ex))
    S4 = symmetric_group(4)
    V = S4.generate([S4.element_from_cycles("(1 2)(3 4)"), S4.element_from_cycles("(1 3)(2 4)")])
    E = S4.generate([S4.element_from_cycles("(1 2)(3 4)")])
    P = Prefilter(S4, [(E, V)])
    assert not prefilter_closed(S4, P)
    assert prefilter_violations(P)
    # the fallback keeps every generator and kills the ones outside P
    pres = build_presentation(S4, 2, P)
    assert not pres.reduced
    assert len(pres.generators) == len(build_presentation(S4, 2).generators)


def test_project_trivial_cases():
    ex = z5s3()
    total = fibration_class(z5s3_xi(ex, 1))
    assert project(total, None) == total
    everything = Prefilter(ex.G, [(s.H, s.S) for s, _ in total.terms()])
    assert project(total, everything) == total
    S3 = ex.G.generate([ex.t, ex.r])
    nowhere = Prefilter(ex.G, [(ex.G.trivial(), S3)])
    assert not project(total, nowhere)


def test_reduced_presentation_matches_full_quotient():
    """With a closed prefilter the reduced presentation equals the full one with outside symbols killed."""
    ex = z5s3()
    P = z5s3_prefilter(ex)
    reduced = build_presentation(ex.G, 2, P)
    assert reduced.reduced
    full = build_presentation(ex.G, 2)
    rows = [dict(r) for r in full.relations.rows]
    for i, s in enumerate(full.generators):
        if not P.contains(s.H, s.S):
            rows.append({i: 1})
    q = quotient_structure(len(full.generators), IntMatrix(len(rows), len(full.generators), rows))
    assert q.describe() == reduced.structure.describe()
    rng = random.Random(2)
    for _ in range(50):
        c = BurnsideClass(ex.G, 2)
        for s in reduced.generators:
            c = c + _cls(s, 2, rng.randint(-2, 2))
        v = {full.index[s]: k for s, k in c.terms()}
        assert q.membership(v) == reduced.class_is_zero(c)


# -- restriction -----------------------------------------------------------------


def test_restrict_c2_to_trivial(C2):
    E = C2.trivial()
    free = symbol(E, C2.whole(), [])
    fixed = symbol(C2.whole(), C2.whole(), [abelian_structure(C2.whole()).character(1)])
    r = restrict(_cls(free, 1), E)
    (s, k), = r.terms()
    assert k == 1 and s.H.is_trivial() and s.S.is_trivial()
    assert not restrict(_cls(fixed, 1), E)


def test_restrict_to_whole_group_is_identity():
    S4 = symmetric_group(4)
    p = build_presentation(S4, 2)
    Gw, emb = subgroup_group(S4.whole())
    for s in p.generators:
        r = restrict(_cls(s, 2), S4.whole())
        (t, k), = r.terms()
        assert k == 1 and len(t.H) == len(s.H) and len(t.S) == len(s.S)


def test_restrict_transitive_on_d4_chain():
    ex = d4_example()
    D4 = ex.G
    C2 = D4.generate([D4.power(ex.rotation, 2)])
    C4g, emb = subgroup_group(ex.C4)
    inner = C4g.generate([emb.index(D4.power(ex.rotation, 2))])
    for s in build_presentation(D4, 1).generators:
        c = _cls(s, 1)
        two_step = restrict(restrict(c, ex.C4), inner)
        direct = restrict(c, C2)
        assert str(two_step) == str(direct)


@pytest.mark.parametrize("case", ["d4-c4", "c5s3-s3"])
def test_restriction_homomorphy(case):
    if case == "d4-c4":
        ex = d4_example()
        G, sub, n = ex.G, ex.C4, 1
        sub_is = [sub]
    else:
        ex = z5s3()
        G, n = ex.G, 2
        sub_is = [ex.G.generate([ex.t, ex.r]), ex.C5xC2]
    src = build_presentation(G, n)
    for sub in sub_is:
        dst = build_presentation(subgroup_group(sub)[0], n)
        for i in range(src.relations.nrows):
            assert dst.class_is_zero(restrict(src.relation_class(i), sub))


def test_restriction_example():
    ex = d4_example()
    r = restrict(d4_symbol_class(ex), ex.C4)
    assert sorted(b.coeffs for s, _ in r.terms() for b in s.beta) == [(1,), (3,)]


def test_restrict_along_identity():
    G = symmetric_group(3)
    c = sum((_cls(s, 2) for s in build_presentation(G, 2).generators), BurnsideClass(G, 2))
    assert restrict_along(c, G, list(range(G.order))) == c


# -- product ---------------------------------------------------------------------


def test_product_of_fixed_points(C2):
    fixed = symbol(C2.whole(), C2.whole(), [abelian_structure(C2.whole()).character(1)])
    P = product_group(C2, C2)
    out = product(_cls(fixed, 1), _cls(fixed, 1), P)
    (s, k), = out.terms()
    assert k == 1 and len(s.H) == 4 and len(s.S) == 4
    assert sorted(b.coeffs for b in s.beta) == [(0, 1), (1, 0)]
    assert out.n == 2


def test_product_with_trivial_group_point():
    S3 = symmetric_group(3)
    E = group_from_cycles([], 1, "1")
    pt = symbol(E.trivial(), E.whole(), [])
    for s in build_presentation(S3, 1).generators:
        out = product(_cls(s, 1), _cls(pt, 0))
        (t, k), = out.terms()
        assert k == 1 and len(t.H) == len(s.H) and len(t.S) == len(s.S) and len(t.beta) == len(s.beta)


def test_product_bilinear(C2):
    rng = random.Random(4)
    gens = build_presentation(C2, 1).generators
    P = product_group(C2, C2)

    def rand():
        return sum((_cls(s, 1, rng.randint(-3, 3)) for s in gens), BurnsideClass(C2, 1))

    for _ in range(20):
        a, b, c = rand(), rand(), rand()
        assert product(a + b, c, P) == product(a, c, P) + product(b, c, P)
        assert product(a, b + c, P) == product(a, b, P) + product(a, c, P)


def test_diagonal_product(C2):
    gens = build_presentation(C2, 1).generators
    point = symbol(C2.trivial(), C2.whole(), [])
    rng = random.Random(9)
    for s in gens:
        out = diagonal_product(_cls(s, 1), _cls(point, 0))
        assert all(t.H == s.H for t, _ in out.terms())
    assert not diagonal_product(BurnsideClass(C2, 1), BurnsideClass(C2, 1))

    def rand():
        return sum((_cls(s, 1, rng.randint(-3, 3)) for s in gens), BurnsideClass(C2, 1))

    for _ in range(20):
        a, b, c = rand(), rand(), rand()
        assert diagonal_product(a + b, c) == diagonal_product(a, c) + diagonal_product(b, c)


# -- fibrations and pushes -------------------------------------------------------


def test_fibration_singleton_index_set():
    S3 = symmetric_group(3)
    E = S3.trivial()
    st = abelian_structure(E)
    xi = [(1, make_indexed(E, E, S3.whole(), [], {0: st.zero()}, 1, projective=True))]
    out = fibration_class(xi)
    (s, k), = out.terms()
    assert k == 1 and s.H.is_trivial() and s.S == S3.whole()


def test_fibration_z5s3_terms():
    ex = z5s3()
    total = fibration_class(z5s3_xi(ex, 1))
    assert len(total) == 10
    hs = sorted(len(s.H) for s, _ in total.terms())
    assert hs == [1, 2, 5, 5, 10, 10, 10, 10, 15, 15]


def test_fibration_degenerate_bundle():
    """All gamma differences vanish on Hp: only the J = empty terms survive."""
    ex = z5s3()
    E = ex.G.trivial()
    st = abelian_structure(E)
    xi = [(1, make_indexed(E, E, ex.G.whole(), [], {0: st.zero(), 1: st.zero()}, 2, projective=True))]
    out = fibration_class(xi)
    (s, k), = out.terms()
    assert s.H.is_trivial() and k == 1


def test_indexed_push():
    ex = z5s3()
    st = abelian_structure(ex.C5)
    chi = st.character_from_values({ex.c5: 1})
    s = make_indexed(ex.C5, ex.C5, ex.G.whole(), [], {0: chi, 1: chi * 2}, 2)
    full = indexed_push([(1, s)], [0, 1])
    (t, k), = full.terms()
    assert len(t.beta) == 2
    # J empty: kernels of both characters meet in the trivial group
    empty = indexed_push([(1, s)], [])
    (t, k), = empty.terms()
    assert t.H.is_trivial() and t.S == ex.G.whole()
    assert not indexed_push([], [], ex.G, 2)
