"""Acceptance criteria 1-9, exact arithmetic throughout.

Each criterion records PASS or FAIL in RESULTS; conftest prints one line per
criterion at the end of the session.  Run standalone with
``python3 tests/test_acceptance.py``.
"""
import contextlib
import itertools
import sys
import time
from itertools import combinations_with_replacement

import pytest
from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_decomp

from pd3.dsl import load_graph
from pd3.engine import (
    OBSTRUCTED,
    REALIZABLE,
    CatalogManifold,
    NotSelfConjugate,
    decide,
    h3_invariant,
    klein_chain_presentation,
    pushforward_invariants,
    realize,
    semidirect_tree_presentation,
    w_pushforward,
    w_target,
)
from pd3.fox import Target, jacobian
from pd3.graphs import (
    crisp_filter,
    enumerate_admissible,
    free_factor_scan,
    fundamental_presentation,
    structural_admissibility,
    validate_and_reduce,
    _is_B_times_cyclic,
    _is_dihedral,
    _is_dihedral_times_z3,
)
from pd3.groups import construct_catalog_group as C
from pd3.modules import compare_IJ, direct_sum, module_from_columns, module_invariants, twisted_module
from pd3.rings import CyclicGroup, elt, nu, table_group

RESULTS: dict = {}
NAMES = {
    1: "Fox matrix of D_2m",
    2: "dihedral tail identity",
    3: "self-conjugacy and chain certificates",
    4: "torsion-action obstruction (p, q, r)",
    5: "Z[Z/2] tree and loop analysis",
    6: "exceptional nonorientable groups",
    7: "enumeration shape",
    8: "H3 tuples",
    9: "property suites",
}


@contextlib.contextmanager
def criterion(n, label=""):
    try:
        yield
    except BaseException as exc:
        RESULTS.setdefault(n, []).append((False, f"{label}: {type(exc).__name__}: {exc}".strip(": ")))
        raise
    RESULTS.setdefault(n, []).append((True, label))


def summary_lines():
    out = []
    for n in sorted(NAMES):
        recs = RESULTS.get(n)
        if not recs:
            out.append(f"criterion {n} ({NAMES[n]}): NOT RUN")
            continue
        bad = [msg for ok, msg in recs if not ok]
        out.append(f"criterion {n} ({NAMES[n]}): " + ("PASS" if not bad else "FAIL - " + "; ".join(bad)[:300]))
    return out


# 1 ----------------------------------------------------------------------


@pytest.mark.parametrize("m", [3, 5, 7])
def test_c1_dihedral_fox_matrix(m):
    with criterion(1, f"m={m}"):
        t0 = time.perf_counter()
        D = C(f"dihedral({2 * m})")
        s = (m - 1) // 2
        T = table_group(D)
        P = D.presentation
        from pd3.graphs import Presentation
        pres = Presentation(P.names, P.relators, (1, 1))
        J = jacobian(pres, Target(T, {x: D.generator_element(x) for x in P.names}))
        a, b = D.generator_element("a"), D.generator_element("b")
        one = elt(T, {T.identity: 1})
        A_, Bs = elt(T, {a: 1}), elt(T, {D.power(b, s): 1})
        expected = [[A_ + one, elt(T)],
                    [one + A_ * Bs, A_ * nu(T, b, s) - nu(T, b, s + 1)]]
        for i in range(2):
            for j in range(2):
                assert J[i, j] == expected[i][j], (i, j, str(J[i, j]), str(expected[i][j]))
        assert time.perf_counter() - t0 < 1.0


# 2 ----------------------------------------------------------------------


def test_c2_tail_identity():
    with criterion(2):
        for m in range(3, 22, 2):
            D = C(f"dihedral({2 * m})")
            T = table_group(D)
            s = (m - 1) // 2
            a, b = D.generator_element("a"), D.generator_element("b")
            one = elt(T, {T.identity: 1})
            A_, Bs = elt(T, {a: 1}), elt(T, {D.power(b, s): 1})
            c = one + A_ * Bs
            assert (c + (A_ * nu(T, b, s) - nu(T, b, s + 1)) * c).is_zero(), m


# 3 ----------------------------------------------------------------------

TAILS = [()] + [tuple(c) for k in (1, 2) for c in combinations_with_replacement((3, 5, 7), k)]


def _c3_rows(tags):
    for tag in tags:
        for ms in TAILS:
            cc = realize(C(tag), list(ms))
            checks = cc.verify()
            assert all(checks.values()), (tag, ms, checks)


def test_c3_cyclic_rows_and_six_cells():
    with criterion(3, "Z/2, Z/4, Z/8 rows"):
        t0 = time.perf_counter()
        _c3_rows(["cyclic(2)", "cyclic(4)", "cyclic(8)"])
        v = decide(load_graph("group A = dihedral(6)\ngroup B = cyclic(4)\n"
                              "edge e : cyclic(2) -> A(x |-> a), B(x |-> g^2)\n"))
        assert v.kind == REALIZABLE and v.certificate.ranks == (1, 2, 2, 1)
        assert v.certificate.ok
        assert time.perf_counter() - t0 < 10.0


@pytest.mark.xfail(strict=True, raises=NotSelfConjugate,
                   reason="no self-conjugate block found for quaternion G0 (see decisions ledger)")
@pytest.mark.parametrize("tag", ["quaternionic(8)", "quaternionic(16)"])
def test_c3_quaternion_rows(tag):
    with criterion(3, f"{tag} rows"):
        _c3_rows([tag])


# 4 ----------------------------------------------------------------------


def _flatten(rows, q):
    """Rows over Z[Z/q] (dicts exponent -> coefficient) -> Z-relations and the shift matrix."""
    k = len(rows[0])
    N = k * q
    rel = []
    for row in rows:
        for t in range(q):
            v = [0] * N
            for i, x in enumerate(row):
                for e, c in x.items():
                    v[i * q + (e + t) % q] += c
            rel.append(v)
    S = [[0] * N for _ in range(N)]
    for i in range(k):
        for e in range(q):
            S[i * q + e][i * q + (e + 1) % q] = 1
    return rel, S


def _oracle(rel, S, p):
    """Brute force: torsion orders and the eigenvalues of the shift on the p-torsion."""
    R = Matrix(rel)
    D, U, V = smith_normal_decomp(R)
    assert U * R * V == D
    N = R.shape[1]
    d = [D[i, i] if i < D.shape[0] else 0 for i in range(N)]
    Sp = V.inv() * Matrix(S) * V
    assert all(x.is_integer for x in Sp)
    gens = [i for i in range(N) if d[i] and d[i] % p == 0]
    torsion = sorted(abs(x) for x in d if abs(x) > 1)

    def is_zero(v):
        return all((v[j] % d[j] == 0) if d[j] else v[j] == 0 for j in range(N))

    eig = set()
    for coeffs in itertools.product(range(p), repeat=len(gens)):
        if not any(coeffs):
            continue
        v = Matrix([[0] * N])
        for c, i in zip(coeffs, gens):
            v[0, i] = c * (d[i] // p)
        w = v * Sp
        for lam in range(1, p):
            if is_zero(list(w - lam * v)):
                eig.add(lam)
    return torsion, sorted(eig)


def _hand_matrix(p, q, r, n):
    norm = {e: 1 for e in range(q)}
    rows = [[norm] + [{}] * n]
    for i in range(n):
        rows.append([{}] * (i + 1) + [{0: p}] + [{}] * (n - i - 1))
        rows.append([{}] * (i + 1) + [{1: 1, 0: -r}] + [{}] * (n - i - 1))
    return rows


def _bar_transpose(rows, q):
    return [[{(-e) % q: c for e, c in rows[i][j].items()} for i in range(len(rows))]
            for j in range(len(rows[0]))]


@pytest.mark.parametrize("p, q, r", [(7, 3, 2), (5, 4, 2), (13, 3, 3)])
@pytest.mark.parametrize("n", [1, 2])
def test_c4_torsion_action_obstruction(p, q, r, n):
    with criterion(4, f"({p},{q},{r}) n={n}"):
        t0 = time.perf_counter()
        P = semidirect_tree_presentation(p, q, r, n)
        t = Target(CyclicGroup(q), {x: (1 if x == "a" else 0) for x in P.generators})
        hand = _hand_matrix(p, q, r, n)
        A = jacobian(P, t)
        assert [[dict(A[i, j].terms) for j in range(A.ncols)] for i in range(A.nrows)] == \
               [[{e: c for e, c in x.items() if c} for x in row] for row in hand]
        I, J = pushforward_invariants(P, t)
        wit = compare_IJ(I, J)
        assert wit is not None and wit.kind == "torsion-action" and wit.prime == p
        rinv = pow(r, -1, p)
        assert rinv != r
        assert wit.detail["I_eigenvalues"] == [r]
        assert rinv in wit.detail["J_eigenvalues"]
        # independent oracle on the flattened integer systems
        ti, ei = _oracle(*_flatten(hand, q), p)
        tj, ej = _oracle(*_flatten(_bar_transpose(hand, q), q), p)
        assert ti == list(I.torsion) and tj == list(J.torsion)
        assert ei == [r] and ej == wit.detail["J_eigenvalues"]
        assert time.perf_counter() - t0 < 5.0


def test_c4_graph_verdict():
    with criterion(4, "graph verdict"):
        g = load_graph("group A = metacyclic(7,3,2)\ngroup B = metacyclic(7,3,2)\n"
                       "edge e : cyclic(3) -> A(x |-> a), B(x |-> a)\n")
        v = decide(g)
        assert v.kind == OBSTRUCTED and v.certificate.kind == "torsion-action"


# 5 ----------------------------------------------------------------------

LEMMA73_M = module_from_columns(2, [[[-2, 2]], [[1, -2, 1]]])  # R/(2(a-1), (a-1)^2)


@pytest.mark.parametrize("n", [1, 2])
def test_c5_tree(n):
    with criterion(5, f"tree n={n}"):
        P = klein_chain_presentation(n)
        I, J = pushforward_invariants(P, w_target(P), twisted=True)
        assert I.free_rank == 1 and I.zw_counts == (0, 0, 1)  # Z^w plus torsion
        assert I.torsion == (2,) * n
        assert not I.z_summand and J.z_summand
        assert compare_IJ(I, J).kind == "Z-summand"
        text = "".join(f"group V{i} = product(cyclic(2),cyclic(2))\nchar V{i}.g = -1\n" for i in range(1, n + 1))
        text += "".join(f"edge e{i} : cyclic(2) -> V{i}(x |-> g), V{i + 1}(x |-> g g_2)\n" for i in range(1, n))
        assert decide(load_graph(text)).kind == OBSTRUCTED


@pytest.mark.parametrize("n", [1, 2])
def test_c5_loop(n):
    with criterion(5, f"loop n={n}"):
        M = module_invariants(LEMMA73_M)
        assert M.free_rank == 1 and M.torsion == (2,) and not M.z_summand
        P = klein_chain_presentation(n, loop=True)
        I, J = pushforward_invariants(P, w_target(P), twisted=True)
        tors = [module_from_columns(2, [[[2]], [[-1, 1]]])] * (n - 1)
        model = module_invariants(direct_sum([twisted_module()] + tors + [LEMMA73_M]))
        assert (I.free_rank, I.torsion, I.zw_counts, I.z_summand) == \
               (model.free_rank, model.torsion, model.zw_counts, model.z_summand)
        assert I.torsion_action_profile == model.torsion_action_profile
        assert not I.z_summand and J.z_summand
    if n == 1:
        with criterion(5, "loop graph verdict"):
            g = load_graph("group V = product(cyclic(2),cyclic(2))\n"
                           "edge t : cyclic(2) -> V(x |-> g), V(x |-> g g_2)\nchar V.g = -1\n")
            assert decide(g).kind == OBSTRUCTED


# 6 ----------------------------------------------------------------------


@pytest.mark.parametrize("text, name", [
    ("group O = cyclic(1)\nedge t : cyclic(1) -> O(), O()\n", "S^1 x S^2"),
    ("group O = cyclic(1)\nedge t : cyclic(1) -> O(), O()\nchar t = -1\n", "S^1 x~ S^2"),
    ("group A = cyclic(2)\nedge t : cyclic(2) -> A(x |-> g), A(x |-> g)\nchar A.g = -1\n", "S^1 x RP^2"),
])
def test_c6_exceptional(text, name):
    with criterion(6, name):
        g = validate_and_reduce(load_graph(text))
        assert crisp_filter(g) is None
        if g.vertices[0].order > 1:
            assert free_factor_scan(g) is None
            assert structural_admissibility(g).admissible
            assert w_pushforward(fundamental_presentation(g)) is None
        v = decide(g)
        assert v.kind == REALIZABLE and v.exit_code == 0
        assert isinstance(v.certificate, CatalogManifold) and v.certificate.name == name


# 7 ----------------------------------------------------------------------


def test_c7_enumeration():
    with criterion(7):
        t0 = time.perf_counter()
        graphs = enumerate_admissible(3, 48)
        elapsed = time.perf_counter() - t0
        assert elapsed < 60.0
        names = set()
        for g in graphs:
            assert g.is_tree()
            deg = [0] * len(g.vertices)
            for e in g.edges:
                deg[e.o] += 1
                deg[e.t] += 1
            assert max(deg, default=0) <= 2
            orders = sorted(e.group.order for e in g.edges)
            nondihedral = [v for v, G in enumerate(g.vertices) if not _is_dihedral(G)]
            if all(o == 2 for o in orders):
                assert len(nondihedral) <= 1
            else:
                assert orders.count(6) == 1 and all(o in (2, 6) for o in orders)
                e = next(e for e in g.edges if e.group.order == 6)
                ends = {e.o, e.t}
                pair = [g.vertices[e.o], g.vertices[e.t]]
                assert any(_is_dihedral_times_z3(x) and _is_B_times_cyclic(y) for x, y in (pair, pair[::-1]))
                assert set(nondihedral) <= ends
            names.add(tuple(sorted(G.name for G in g.vertices)))
        for want in [("dihedral(6)", "dihedral(6)"), ("cyclic(4)", "dihedral(6)"),
                     ("dihedral(6)", "quaternionic(8)")]:
            assert want in names


# 8 ----------------------------------------------------------------------


def test_c8_h3():
    with criterion(8):
        assert h3_invariant(C("cyclic(4)"), [3]).orders == (4, 3)
        assert h3_invariant(C("cyclic(4)"), [3]).product == 12
        h = h3_invariant(C("cyclic(2)"), [3, 3])
        assert h.orders == (2, 3, 3) and h.product is None
        assert h3_invariant(C("cyclic(8)"), [5, 7]).product == 280
        assert h3_invariant(C("cyclic(4)"), [3, 5]).product == 60
        assert h3_invariant(C("cyclic(2)"), [3, 9]).product is None


# 9 ----------------------------------------------------------------------

SUITES = [
    "test_fox_fundamental_identity",
    "test_involution_is_anti_automorphism",
    "test_amalgam_associative",
    "test_smith_normal_form",
    "test_zw_counts_roundtrip",
]


@pytest.mark.parametrize("name", SUITES)
def test_c9_property_suites(name):
    with criterion(9, name):
        import test_properties as tp
        fn = getattr(tp, name)
        assert tp.CASES.max_examples >= 200
        fn()


if __name__ == "__main__":
    code = pytest.main([__file__, "-q", "-p", "no:cacheprovider"])
    sys.exit(code)
