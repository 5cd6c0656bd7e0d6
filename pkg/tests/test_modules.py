import pytest

from pd3.modules import (
    ModulusMismatch,
    WrongModulus,
    compare_IJ,
    cyclic_elt,
    cyclic_torsion_module,
    direct_sum,
    free_module,
    has_trivial_Z_summand,
    module_from_columns,
    module_invariants,
    trivial_module,
    twisted_module,
)


def test_torsion_module_eigenvalue():
    inv = module_invariants(cyclic_torsion_module(3, 7, 2))
    assert inv.free_rank == 0 and inv.torsion == (7,)
    assert inv.torsion_action_profile[7][2] == 0  # a - 2 kills it
    assert all(r == 1 for c, r in enumerate(inv.torsion_action_profile[7]) if c != 2)


@pytest.mark.parametrize("mod, counts, has_z", [
    (twisted_module(), (0, 0, 1), False),
    (trivial_module(2), (0, 1, 0), True),
    (free_module(2), (1, 0, 0), False),
])
def test_indecomposables_over_z2(mod, counts, has_z):
    inv = module_invariants(mod)
    assert inv.zw_counts == counts
    assert inv.z_summand is has_z


def test_nonsplit_module_has_no_z_summand():
    a1 = cyclic_elt(2, [-1, 1])
    M = module_from_columns(2, [[a1 * 2], [a1 * a1]])
    inv = module_invariants(M)
    assert inv.free_rank == 1 and inv.torsion == (2,)
    assert not inv.z_summand
    assert has_trivial_Z_summand(direct_sum([M, trivial_module(2)]))


def test_wrong_modulus():
    with pytest.raises(WrongModulus):
        has_trivial_Z_summand(trivial_module(3))
    with pytest.raises(ModulusMismatch):
        compare_IJ(module_invariants(trivial_module(2)), module_invariants(trivial_module(3)))


def test_compare_detects_action_mismatch():
    I = module_invariants(cyclic_torsion_module(3, 7, 2))
    J = module_invariants(cyclic_torsion_module(3, 7, 4))
    w = compare_IJ(I, J)
    assert w.kind == "torsion-action" and w.prime == 7
    assert w.detail["I_eigenvalues"] == [2] and w.detail["J_eigenvalues"] == [4]
    assert compare_IJ(I, I) is None


def test_render_and_dict():
    inv = module_invariants(direct_sum([twisted_module(), cyclic_torsion_module(2, 2, 1)]))
    assert "Z/2" in inv.render()
    assert inv.to_dict()["torsion"] == [2]


@pytest.mark.parametrize("p, q, r", [(7, 3, 2), (5, 4, 2), (13, 3, 3)])
def test_rho_sigma_identity(p, q, r):
    # rho = sum a^i r^i; (a^-1 - r) rho is divisible by p while rho is not
    rho = cyclic_elt(q, [r ** i for i in range(q)])
    lhs = (cyclic_elt(q, [0] * (q - 1) + [1]) - cyclic_elt(q, [r])) * rho
    assert all(c % p == 0 for c in lhs.terms.values())
    sigma = cyclic_elt(q, [lhs.terms.get(i, 0) // p for i in range(q)])
    assert sigma * cyclic_elt(q, [p]) == lhs
    assert any(c % p for c in rho.terms.values())
