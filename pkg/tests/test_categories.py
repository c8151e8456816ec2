"""Category instances: axioms, coproduct universal property, spec parsing."""

import itertools
import random

import pytest

from flowcat.categories import (
    CategoryError,
    FinSetSkeleton,
    MatCategory,
    Morphism,
    PosetCategory,
    chain,
    diamond,
    mat_identity,
    mat_inverse,
    mat_invertible,
    mat_mul,
    parse_category_spec,
)

from oracles import brute_force_supremum


# -- posets ----------------------------------------------------------------------


def test_chain_order():
    c = chain(3)
    assert c.objects() == (0, 1, 2)
    assert c.leq(0, 2) and c.leq(1, 1)
    assert not c.leq(2, 0)


def test_poset_closure_is_transitive():
    p = PosetCategory("abc", [("a", "b"), ("b", "c")])
    assert p.leq("a", "c")


def test_poset_rejects_cycles():
    with pytest.raises(CategoryError, match="antisymmetry"):
        PosetCategory("ab", [("a", "b"), ("b", "a")])


def test_poset_rejects_unknown_elements():
    with pytest.raises(CategoryError, match="unknown element"):
        PosetCategory("ab", [("a", "z")])


def test_poset_rejects_duplicates():
    with pytest.raises(CategoryError, match="distinct"):
        PosetCategory("aa", [])


def test_hom_sets_are_thin():
    d = diamond()
    assert len(d.hom("bot", "top")) == 1
    assert d.hom("left", "right") == []


def test_poset_iso_iff_equal():
    d = diamond()
    assert d.is_iso(d.identity("left"))
    assert not d.is_iso(Morphism("bot", "top"))


SMALL_POSETS = [
    chain(2),
    chain(3),
    chain(5),
    diamond(),
    PosetCategory("ab", []),  # antichain: no binary suprema
    PosetCategory("abt", [("a", "t"), ("b", "t")]),  # V-shape
]


@pytest.mark.parametrize("p", SMALL_POSETS, ids=lambda p: p.name)
def test_supremum_matches_brute_force(p):
    for size in (1, 2, 3):
        for family in itertools.product(p.elements, repeat=size):
            expected = brute_force_supremum(p.elements, p.leq, family)
            assert p.supremum(family) == expected


def test_diamond_suprema():
    d = diamond()
    assert d.supremum(["left", "right"]) == "top"
    assert d.supremum(["bot", "left"]) == "left"
    assert d.supremum(["bot"]) == "bot"


def test_antichain_has_no_binary_supremum():
    p = PosetCategory("ab", [])
    assert p.supremum(["a", "b"]) is None
    assert p.coproduct(["a", "b"]) is None


# -- finite set skeleton -----------------------------------------------------------


def test_finset_hom_counts():
    c = FinSetSkeleton(4)
    assert len(c.hom(2, 3)) == 9
    assert len(c.hom(0, 3)) == 1  # the empty map
    assert len(c.hom(3, 0)) == 0  # nothing maps into the empty set
    assert len(c.hom(0, 0)) == 1


def test_finset_compose_and_identity():
    c = FinSetSkeleton(4)
    f = Morphism(2, 3, (1, 2))
    g = Morphism(3, 2, (0, 0, 1))
    assert c.compose(g, f) == Morphism(2, 2, (0, 1))
    assert c.compose(f, c.identity(2)) == f
    assert c.compose(c.identity(3), f) == f


def test_finset_compose_type_error():
    c = FinSetSkeleton(4)
    with pytest.raises(CategoryError, match="cannot compose"):
        c.compose(Morphism(2, 3, (1, 2)), Morphism(2, 3, (1, 2)))


def test_finset_iso_and_inverse():
    c = FinSetSkeleton(4)
    swap = Morphism(2, 2, (1, 0))
    assert c.is_iso(swap)
    assert not c.is_iso(Morphism(2, 2, (0, 0)))
    assert not c.is_iso(Morphism(2, 3, (0, 1)))
    assert c.compose(c.inverse(swap), swap) == c.identity(2)
    for perm in c.isomorphisms(3, 3):
        assert c.compose(c.inverse(perm), perm) == c.identity(3)
        assert c.compose(perm, c.inverse(perm)) == c.identity(3)


def test_finset_isomorphism_counts_are_factorials():
    c = FinSetSkeleton(4)
    assert [len(c.isomorphisms(n, n)) for n in range(5)] == [1, 1, 2, 6, 24]
    assert c.isomorphisms(2, 3) == []


def test_finset_associativity_sampled():
    c = FinSetSkeleton(3)
    rng = random.Random(7)
    homs = {(a, b): c.hom(a, b) for a in range(4) for b in range(4)}
    for _ in range(200):
        a, b, d, e = (rng.randrange(4) for _ in range(4))
        if not (homs[(a, b)] and homs[(b, d)] and homs[(d, e)]):
            continue
        f = rng.choice(homs[(a, b)])
        g = rng.choice(homs[(b, d)])
        h = rng.choice(homs[(d, e)])
        assert c.compose(h, c.compose(g, f)) == c.compose(c.compose(h, g), f)


def test_finset_coproduct_blocks():
    c = FinSetSkeleton(4)
    cop = c.coproduct([1, 2])
    assert cop.apex == 3
    assert [inj.data for inj in cop.injections] == [(0,), (1, 2)]
    assert c.coproduct([3, 2]) is None  # exceeds the size bound


def test_finset_cotuple_recovers_legs():
    c = FinSetSkeleton(4)
    cop = c.coproduct([1, 2])
    legs = [Morphism(1, 2, (1,)), Morphism(2, 2, (0, 1))]
    m = c.cotuple(cop, legs)
    assert m == Morphism(3, 2, (1, 0, 1))
    for inj, leg in zip(cop.injections, legs):
        assert c.compose(m, inj) == leg


# -- matrices over a prime field ----------------------------------------------------


def test_mat_helpers():
    assert mat_identity(2) == ((1, 0), (0, 1))
    a = ((1, 1), (0, 1))
    b = ((1, 0), (1, 1))
    assert mat_mul(2, a, b, 2, 2) == ((0, 1), (1, 1))
    assert mat_invertible(2, a, 2)
    assert not mat_invertible(2, ((1, 1), (1, 1)), 2)
    assert mat_invertible(3, ((1, 1), (1, 2)), 2)
    inv = mat_inverse(3, ((1, 1), (1, 2)), 2)
    assert mat_mul(3, inv, ((1, 1), (1, 2)), 2, 2) == mat_identity(2)


def test_mat_requires_small_prime():
    with pytest.raises(CategoryError, match="prime"):
        MatCategory(4, 2)
    with pytest.raises(CategoryError, match="prime"):
        MatCategory(11, 2)


def test_mat_hom_enumeration():
    c = MatCategory(2, 3)
    assert sum(1 for _ in c.hom(1, 2)) == 4
    assert list(c.hom(0, 2)) == [Morphism(0, 2, ((), ()))]
    assert list(c.hom(2, 0)) == [Morphism(2, 0, ())]


def test_mat_compose_through_zero():
    c = MatCategory(2, 3)
    to0 = Morphism(2, 0, ())
    from0 = Morphism(0, 2, ((), ()))
    z = c.compose(from0, to0)
    assert z == Morphism(2, 2, ((0, 0), (0, 0)))
    assert c.is_iso(c.identity(0))


def test_general_linear_group_orders():
    # |GL(n, q)| = (q^n - 1)(q^n - q)...(q^n - q^(n-1))
    assert sum(1 for _ in MatCategory(2, 2).isomorphisms(2, 2)) == 6
    assert sum(1 for _ in MatCategory(3, 2).isomorphisms(2, 2)) == 48
    assert sum(1 for _ in MatCategory(2, 3).isomorphisms(3, 3)) == 168


def test_mat_inverse_round_trip():
    c = MatCategory(3, 2)
    for f in c.isomorphisms(2, 2):
        assert c.compose(c.inverse(f), f) == c.identity(2)
        assert c.compose(f, c.inverse(f)) == c.identity(2)


def test_mat_random_isomorphism_is_invertible():
    c = MatCategory(2, 3)
    rng = random.Random(11)
    for _ in range(25):
        f = c.random_isomorphism(3, rng)
        assert c.is_iso(f)


def test_mat_coproduct_direct_sum():
    c = MatCategory(2, 3)
    cop = c.coproduct([1, 2])
    assert cop.apex == 3
    assert cop.injections[0].data == ((1,), (0,), (0,))
    assert cop.injections[1].data == ((0, 0), (1, 0), (0, 1))
    legs = [Morphism(1, 2, ((1,), (0,))), Morphism(2, 2, ((1, 1), (0, 1)))]
    m = c.cotuple(cop, legs)
    assert m.data == ((1, 1, 1), (0, 0, 1))
    for inj, leg in zip(cop.injections, legs):
        assert c.compose(m, inj) == leg
    assert c.coproduct([2, 2]) is None


# -- coproduct universal property, exhaustively ---------------------------------------


def _families(objects, max_len):
    for size in range(1, max_len + 1):
        yield from itertools.product(objects, repeat=size)


def _audit_universal_property(cat, families, cones_for):
    """For every formed coproduct and every cone, exactly one mediating
    morphism through the apex makes all triangles commute."""
    audited = 0
    for family in families:
        cop = cat.coproduct(list(family))
        if cop is None:
            continue
        for y, legs in cones_for(family):
            mediating = [
                m
                for m in cat.hom(cop.apex, y)
                if all(
                    cat.compose(m, inj) == leg
                    for inj, leg in zip(cop.injections, legs)
                )
            ]
            assert len(mediating) == 1, (family, y, legs)
            audited += 1
    return audited


def test_universal_property_finset_exhaustive():
    cat = FinSetSkeleton(4)

    def cones(family):
        for y in cat.objects():
            for legs in itertools.product(*(cat.hom(x, y) for x in family)):
                yield y, legs

    audited = _audit_universal_property(cat, _families(cat.objects(), 3), cones)
    assert audited > 1000


@pytest.mark.parametrize(
    "cat",
    [chain(5), diamond(), PosetCategory("abt", [("a", "t"), ("b", "t")])],
    ids=lambda c: c.name,
)
def test_universal_property_posets_exhaustive(cat):
    def cones(family):
        for y in cat.objects():
            homs = [cat.hom(x, y) for x in family]
            if all(homs):
                yield y, [h[0] for h in homs]

    audited = _audit_universal_property(cat, _families(cat.objects(), 3), cones)
    assert audited > 0


def test_universal_property_mat_small():
    cat = MatCategory(2, 2)

    def cones(family):
        for y in cat.objects():
            for legs in itertools.product(*(cat.hom(x, y) for x in family)):
                yield y, legs

    audited = _audit_universal_property(cat, _families((0, 1, 2), 2), cones)
    assert audited > 50


# -- spec strings --------------------------------------------------------------------


def test_parse_category_specs():
    assert parse_category_spec("poset:chain4").name == "chain4"
    assert parse_category_spec("poset:diamond").name == "diamond"
    c = parse_category_spec("finset:5")
    assert isinstance(c, FinSetSkeleton) and c.max_size == 5
    m = parse_category_spec("mat:3:2")
    assert isinstance(m, MatCategory) and (m.q, m.max_dim) == (3, 2)


def test_parse_category_spec_errors():
    for bad in ("", "poset", "poset:chainx", "finset:two", "mat:2", "mat:9:2", "set:3"):
        with pytest.raises(CategoryError):
            parse_category_spec(bad)


def test_parse_category_spec_loader_hook():
    sentinel = object()
    assert parse_category_spec("poset:custom", lambda name: sentinel) is sentinel
