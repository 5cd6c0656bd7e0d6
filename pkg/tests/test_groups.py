import pytest

from pd3.groups import (
    GroupError,
    InvalidParameters,
    Tag,
    centralizer,
    classify_group,
    closure_of,
    conjugacy_classes,
    construct_catalog_group as C,
    expected_order,
    extend_hom,
    find_pq_subgroup,
    free_reduce,
    has_periodic_cohomology,
    normalizer,
    parse_tag,
    quotient,
    sylow,
    word_from_string,
    word_inverse,
    word_to_string,
)


@pytest.mark.parametrize("tag, order", [
    ("cyclic(1)", 1), ("cyclic(12)", 12), ("dihedral(6)", 6), ("dihedral(14)", 14),
    ("quaternionic(8)", 8), ("quaternionic(16)", 16), ("metacyclic(7,3,2)", 21),
    ("binary_tetrahedral(1)", 24), ("binary_icosahedral()", 120),
    ("product(dihedral(10),cyclic(3))", 30),
])
def test_catalog_orders(tag, order):
    G = C(tag)
    assert G.order == order == expected_order(parse_tag(tag))
    assert G.mul(0, 5 % order) == 5 % order


def test_presentations_hold():
    for tag in ("dihedral(10)", "quaternionic(16)", "metacyclic(5,4,2)", "binary_tetrahedral(1)"):
        G = C(tag)
        for r in G.presentation.relators:
            assert G.evaluate(r) == 0


def test_words_roundtrip():
    w = word_from_string("a b^-2 a^3")
    assert word_to_string(w) == "a b^-2 a^3"
    assert free_reduce(w + word_inverse(w)) == ()


def test_tag_parse_and_str():
    t = parse_tag("product(dihedral(10),cyclic(3))")
    assert str(t) == "product(dihedral(10),cyclic(3))"
    assert t.family == "product"


def test_bad_parameters():
    with pytest.raises(InvalidParameters):
        C("dihedral(8)")
    with pytest.raises(GroupError):
        C("nosuchgroup(3)")


def test_cap():
    with pytest.raises(InvalidParameters, match="cap"):
        C("cyclic(2000)")
    with pytest.raises(InvalidParameters):
        parse_tag("cyclic(3")


def test_subgroups_s3():
    S3 = C("dihedral(6)")
    b = S3.generator_element("b")
    rot = closure_of(S3, [b])
    assert len(rot) == 3
    assert len(normalizer(S3, rot)) == 6
    assert len(centralizer(S3, [b])) == 3
    assert len(sylow(S3, 2)) == 2
    assert sorted(len(c) for c in conjugacy_classes(S3)) == [1, 2, 3]


def test_quotient_by_center():
    Q = C("quaternionic(8)")
    H, proj = quotient(Q, Q.center())
    assert H.order == 4 and H.is_abelian


def test_extend_hom_rejects_non_hom():
    Z4, Z2 = C("cyclic(4)"), C("cyclic(2)")
    assert extend_hom(Z4, [1], Z2) is not None
    with pytest.raises(GroupError):
        extend_hom(Z2, [1], Z4)  # generator of order 2 to one of order 4


def test_classification():
    assert classify_group(C("quaternionic(8)")).period_divides_4 == "yes"
    assert classify_group(C("dihedral(6)")).is_dihedral_odd
    assert classify_group(C("metacyclic(7,3,2)")).period_divides_4 == "no"
    assert has_periodic_cohomology(C("cyclic(9)"))
    assert not has_periodic_cohomology(C("product(cyclic(2),cyclic(2))"))


def test_pq_witness():
    w = find_pq_subgroup(C("metacyclic(7,3,2)"))
    assert (w.p, w.q) == (7, 3)
    assert find_pq_subgroup(C("binary_tetrahedral(1)")) is None
