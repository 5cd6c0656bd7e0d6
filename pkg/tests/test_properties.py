"""Randomized algebraic identities (hypothesis, 200 cases per property)."""
from functools import lru_cache

from hypothesis import HealthCheck, given, settings, strategies as st

from pd3 import intlin as L
from pd3.dsl import graph_to_gog, load_graph, parse_gog, render_gog
from pd3.fox import FreeRingSum, fox_identity_residual
from pd3.graphs import enumerate_admissible, graph_fingerprint
from pd3.groups import construct_catalog_group as C
from pd3.modules import (
    FPModule,
    direct_sum,
    free_module,
    module_invariants,
    trivial_module,
    twisted_module,
)
from pd3.rings import (
    AmalgamElt,
    AmalgamGroup,
    CyclicGroup,
    RingMatrix,
    character_on_table,
    elt,
    table_group,
)

CASES = settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
GENS = ["a", "b", "c"]

letters = st.tuples(st.sampled_from(GENS), st.sampled_from([1, -1]))
words = st.lists(letters, max_size=10).map(tuple)


@CASES
@given(words)
def test_fox_fundamental_identity(w):
    assert fox_identity_residual(w, GENS) == FreeRingSum()


# group ring involution --------------------------------------------------

S3 = C("dihedral(6)")
Q8 = C("quaternionic(8)")
RINGS = [CyclicGroup(5), table_group(S3), table_group(Q8)]


def ring_elements(G):
    size = G.n if isinstance(G, CyclicGroup) else G.G.order
    return st.dictionaries(st.integers(0, size - 1), st.integers(-4, 4), max_size=5).map(lambda d: elt(G, d))


@st.composite
def ring_triple(draw):
    G = draw(st.sampled_from(RINGS))
    return G, draw(ring_elements(G)), draw(ring_elements(G))


@CASES
@given(ring_triple())
def test_involution_is_anti_automorphism(t):
    _, x, y = t
    assert (x * y).involute() == y.involute() * x.involute()
    assert (x + y).involute() == x.involute() + y.involute()
    assert x.involute().involute() == x
    assert x.involute().augmentation() == x.augmentation()


S3_SIGN = character_on_table(S3, {"a": -1, "b": 1})


@CASES
@given(ring_elements(table_group(S3)), ring_elements(table_group(S3)))
def test_twisted_involution_is_anti_automorphism(x, y):
    w = S3_SIGN.__getitem__
    assert (x * y).involute(w) == y.involute(w) * x.involute(w)
    assert x.involute(w).involute(w) == x


# amalgam normal forms --------------------------------------------------

AMALGAM = AmalgamGroup.with_dihedral_tails(C("cyclic(4)"), [3, 5])


@st.composite
def amalgam_elements(draw):
    x = AMALGAM.identity
    for _ in range(draw(st.integers(0, 6))):
        f = draw(st.integers(0, len(AMALGAM.factors) - 1))
        g = draw(st.integers(0, AMALGAM.factors[f].order - 1))
        x = AMALGAM.mul(x, AMALGAM.from_factor(f, g))
    return x


@CASES
@given(amalgam_elements(), amalgam_elements(), amalgam_elements())
def test_amalgam_associative(x, y, z):
    A = AMALGAM
    assert A.mul(A.mul(x, y), z) == A.mul(x, A.mul(y, z))
    for u in (x, y, A.mul(x, y)):
        assert A.is_normal(u)
    assert A.mul(x, A.inv(x)) == A.identity == A.mul(A.inv(x), x)
    assert A.mul(x, A.identity) == x


@st.composite
def factor_pair(draw):
    f = draw(st.integers(0, len(AMALGAM.factors) - 1))
    n = AMALGAM.factors[f].order
    return f, draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))


@CASES
@given(factor_pair())
def test_factor_embeddings_are_homomorphisms(t):
    f, g, h = t
    A, G = AMALGAM, AMALGAM.factors[f]
    assert A.from_factor(f, G.mul(g, h)) == A.mul(A.from_factor(f, g), A.from_factor(f, h))
    assert A.from_factor(f, A.involutions[f]) == AmalgamElt(1, ())


# Smith normal form -----------------------------------------------------

matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(st.lists(st.integers(-30, 30), min_size=n, max_size=n), min_size=m, max_size=m)))


@CASES
@given(matrices)
def test_smith_normal_form(A):
    D, U, V = L.smith_normal_form(A)
    assert L.matmul(L.matmul(U, A), V) == D
    assert abs(L.determinant(U)) == 1 and abs(L.determinant(V)) == 1
    d = L.diagonal(D)
    assert all(D[i][j] == 0 for i in range(len(D)) for j in range(len(D[0])) if i != j)
    assert all(x >= 0 for x in d)
    nz = [x for x in d if x]
    assert d[:len(nz)] == nz
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


# (alpha, beta, gamma) of Z[Z/2]-lattices ------------------------------------

Z2 = CyclicGroup(2)
scalars = st.lists(st.integers(-2, 2), min_size=2, max_size=2).map(lambda c: elt(Z2, {0: c[0], 1: c[1]}))


@st.composite
def lattice(draw):
    counts = (draw(st.integers(0, 2)), draw(st.integers(0, 2)), draw(st.integers(0, 2)))
    if not any(counts):
        counts = (0, 1, 0)
    parts = [free_module(2)] * counts[0] + [trivial_module(2)] * counts[1] + [twisted_module()] * counts[2]
    M = direct_sum(parts)
    k = M.generators
    # random elementary change of generators over Z[Z/2]
    U = RingMatrix.identity(Z2, k)
    for _ in range(draw(st.integers(0, 4))):
        i, j = draw(st.integers(0, k - 1)), draw(st.integers(0, k - 1))
        if i != j:
            U = U @ RingMatrix.identity(Z2, k).replace(i, j, draw(scalars))
    return counts, FPModule(2, U @ M.presentation)


@CASES
@given(lattice())
def test_zw_counts_roundtrip(case):
    counts, M = case
    inv = module_invariants(M)
    assert inv.zw_counts == counts
    assert inv.z_summand is (counts[1] > 0)
    assert inv.free_rank == 2 * counts[0] + counts[1] + counts[2]


# canonical rendering ---------------------------------------------------------


@lru_cache(maxsize=None)
def _small_graphs():
    return tuple(enumerate_admissible(3, 16))


@CASES
@given(st.integers(0, 10 ** 6))
def test_render_idempotent_on_enumerated(i):
    gs = _small_graphs()
    g = gs[i % len(gs)]
    text = graph_to_gog(g)
    once = render_gog(parse_gog(text))
    assert render_gog(parse_gog(once)) == once
    assert graph_fingerprint(load_graph(once)) == graph_fingerprint(g)
