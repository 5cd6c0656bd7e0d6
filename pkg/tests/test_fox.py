import pytest

from pd3.fox import (
    FreeRingSum,
    Target,
    UnknownGenerator,
    evaluate_sum,
    fox_derivative,
    fox_identity_residual,
    generator_column,
    jacobian,
)
from pd3.graphs import Presentation
from pd3.groups import construct_catalog_group as C, word_from_string as W
from pd3.rings import CyclicGroup, elt, table_group


def test_basic_derivatives():
    r = W("a b a^-1 b^-1")
    assert str(fox_derivative(r, "a")) == "1 - a b a^-1"
    assert str(fox_derivative(r, "b")) == "a - a b a^-1 b^-1"
    assert fox_derivative(W("a^3"), "a") == FreeRingSum({(): 1, (("a", 1),): 1, (("a", 1), ("a", 1)): 1})


def test_fundamental_identity_small():
    for s in ("a b a^-1 b^-1", "a^5", "x y^-2 x z", "b^-3 a b^2"):
        assert fox_identity_residual(W(s), ["a", "b", "x", "y", "z"]) == FreeRingSum()


def test_unknown_generator():
    with pytest.raises(UnknownGenerator):
        fox_derivative(W("a q"), "a", generators=["a"])
    P = Presentation(("a",), (W("a b"),), (1,))
    with pytest.raises(UnknownGenerator):
        jacobian(P, Target(CyclicGroup(2), {"a": 1, "b": 0}))


def test_jacobian_kills_generator_column():
    S3 = C("dihedral(6)")
    T = table_group(S3)
    P = Presentation(S3.presentation.names, S3.presentation.relators, (1, 1))
    t = Target(T, {x: S3.generator_element(x) for x in P.generators})
    assert (jacobian(P, t) @ generator_column(P, t)).is_zero()


def test_evaluate_sum_matches_jacobian_entry():
    P = Presentation(("g",), (W("g^4"),), (1,))
    t = Target(CyclicGroup(4), {"g": 1})
    s = fox_derivative(P.relators[0], "g")
    assert evaluate_sum(s, t) == jacobian(P, t)[0, 0]
    assert jacobian(P, t)[0, 0] == elt(CyclicGroup(4), {0: 1, 1: 1, 2: 1, 3: 1})
