import pytest

from pd3.graphs import (
    BadEmbedding,
    BoundsTooLarge,
    CharacterInconsistent,
    Edge,
    GraphOfGroups,
    NotConnected,
    crisp_filter,
    enumerate_admissible,
    free_factor_scan,
    fundamental_presentation,
    structural_admissibility,
    validate_and_reduce,
)
from pd3.groups import construct_catalog_group as C, word_to_string
from pd3.rings import distinguished_involution as inv

S3, Z2, Z3, Z4, Q8 = (C(t) for t in ("dihedral(6)", "cyclic(2)", "cyclic(3)", "cyclic(4)", "quaternionic(8)"))


def z2_edge(name, o, t, Go, Gt):
    return Edge(name, o, t, Z2, (inv(Go),), (inv(Gt),))


def test_s3_amalgam_presentation():
    g = GraphOfGroups((S3, S3), (z2_edge("e", 0, 1, S3, S3),))
    P = fundamental_presentation(validate_and_reduce(g))
    assert len(P.generators) == 3 and len(P.relators) == 3
    assert P.balanced


def test_single_vertex_and_loop():
    assert fundamental_presentation(GraphOfGroups((Z4,))).render() == "< g | g^4 >"
    loop = GraphOfGroups((Z2,), (Edge("t", 0, 0, Z2, (1,), (1,)),))
    assert fundamental_presentation(loop).render() == "< g, t | g^2, t g t^-1 g^-1 >"


def test_reduction_contracts_filled_vertex():
    g = GraphOfGroups((Z2, S3, S3), (z2_edge("e", 0, 1, Z2, S3), z2_edge("f", 1, 2, S3, S3)))
    r = validate_and_reduce(g)
    assert len(r.vertices) == 2 and len(r.edges) == 1


def test_reduction_keeps_loops():
    loop = GraphOfGroups((Z2,), (Edge("t", 0, 0, Z2, (1,), (1,)),))
    r = validate_and_reduce(loop)
    assert len(r.edges) == 1 and r.loop_isomorphisms() == [0]


def test_errors():
    with pytest.raises(NotConnected):
        validate_and_reduce(GraphOfGroups((S3, S3)))
    with pytest.raises(BadEmbedding):
        validate_and_reduce(GraphOfGroups((S3, Z4), (Edge("e", 0, 1, Z2, (inv(S3),), (1,)),)))
    chars = ((("a", -1),), ())
    with pytest.raises(CharacterInconsistent):
        validate_and_reduce(GraphOfGroups((S3, Z4), (z2_edge("e", 0, 1, S3, Z4),), chars=chars))


def test_crisp_witnesses():
    b = S3.generator_element("b")
    g = GraphOfGroups((S3, S3), (Edge("e", 0, 1, Z3, (b,), (b,)),))
    w = crisp_filter(g)
    assert w is not None and w.prime == 3 and w.obstructs
    assert crisp_filter(GraphOfGroups((S3, S3), (z2_edge("e", 0, 1, S3, S3),))) is None


def test_crisp_allows_orientation_reversing_involution():
    V4 = C("product(cyclic(2),cyclic(2))")
    a = V4.generator_element("g")
    ab = V4.mul(a, V4.generator_element("g_2"))
    ch = (("g", -1),)
    loop = GraphOfGroups((V4,), (Edge("t", 0, 0, Z2, (a,), (ab,)),), chars=(ch,))
    assert crisp_filter(loop) is None


def test_free_factor_scan():
    T = C("cyclic(1)")
    assert free_factor_scan(GraphOfGroups((T,), (Edge("t", 0, 0, T, (), ()),))).kind == "pi is Z"
    g = GraphOfGroups((S3, Z4), (Edge("e", 0, 1, T, (), ()),))
    assert free_factor_scan(g).kind == "nontrivial free product"


def test_admissibility_rules():
    ok = structural_admissibility(GraphOfGroups((S3, Q8), (z2_edge("e", 0, 1, S3, Q8),)))
    assert ok.status == "admissible"
    two_non = GraphOfGroups((Z4, S3, Q8), (z2_edge("e", 0, 1, Z4, S3), z2_edge("f", 1, 2, S3, Q8)))
    rep = structural_admissibility(two_non)
    assert rep.status == "inadmissible"
    assert [r.rule for r in rep.failures()] == ["at most one non-dihedral vertex"]
    cyc = GraphOfGroups((S3, S3), (z2_edge("e", 0, 1, S3, S3), z2_edge("f", 1, 0, S3, S3)))
    assert any(r.rule == "graph is a tree" for r in structural_admissibility(cyc).failures())
    big = structural_admissibility(GraphOfGroups((C("metacyclic(7,3,2)"),)))
    assert big.status == "inadmissible"


def test_enumeration_small():
    graphs = enumerate_admissible(2, 8)
    names = {tuple(sorted(G.name for G in g.vertices)) for g in graphs}
    for want in [("dihedral(6)", "dihedral(6)"), ("cyclic(4)", "dihedral(6)"), ("dihedral(6)", "quaternionic(8)")]:
        assert want in names
    assert len(graphs) >= 3
    with pytest.raises(BoundsTooLarge):
        enumerate_admissible(5, 8)
    with pytest.raises(BoundsTooLarge):
        enumerate_admissible(2, 500)


def test_tree_substitution_records():
    g = GraphOfGroups((S3, S3, S3), (z2_edge("e", 0, 1, S3, S3), z2_edge("f", 1, 2, S3, S3)))
    P = fundamental_presentation(g)
    # both identified involutions eliminated; every relator uses surviving letters only
    assert len(P.substitutions) == 2
    used = {x for r in P.relators for x, _ in r}
    assert used <= set(P.generators)
    assert all(word_to_string(r) for r in P.relators)
