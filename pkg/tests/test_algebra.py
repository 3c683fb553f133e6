from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from weilkit import (
    WeilPresentation,
    build_from_presentation,
    build_from_structure_constants,
    check_weil,
    compose_homs,
    hom_from_images,
    identity_hom,
    tensor,
    tensor_algebra,
)
from weilkit.algebra import augmentation_hom, float_version, ground_field, unit_hom
from weilkit.errors import (
    AlgebraMismatchError,
    DimensionError,
    HomError,
    ModeError,
    NotInvertibleError,
    PresentationError,
    RelationViolation,
)
from weilkit.functor import point, reassociate

F = Fraction


def pres(n, *rels):
    return build_from_presentation(WeilPresentation(n, [list(r) for r in rels]))


D = pres(1, (2,))
K3 = pres(1, (3,))
XY = pres(2, (2, 0), (0, 2))


def brute_table(p: WeilPresentation):
    """Multiply standard monomials by adding exponents; zero if the sum is in the ideal."""
    mons = p.standard_monomials()
    index = {m: i for i, m in enumerate(mons)}
    table = []
    for a in mons:
        row = []
        for b in mons:
            s = tuple(x + y for x, y in zip(a, b))
            vec = [F(0)] * len(mons)
            if s in index:
                vec[index[s]] = F(1)
            row.append(vec)
        table.append(row)
    return table


# -- presentations ------------------------------------------------------------

@pytest.mark.parametrize("n,rels,dim,nil", [
    (1, [(2,)], 2, 2),
    (0, [], 1, 1),
    (1, [(3,)], 3, 3),
    (2, [(2, 0), (0, 2)], 4, 3),
    (2, [(2, 0), (1, 1), (0, 2)], 3, 2),
    (1, [(6,)], 6, 6),
])
def test_presentation_dims(n, rels, dim, nil):
    w = pres(n, *rels)
    assert w.dim == dim
    assert w.nilpotency_index == nil
    assert check_weil(w).passed


def test_dual_numbers_table():
    assert D.basis == ((0,), (1,))
    assert D.structure_constants == [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]
    assert D.augmentation == (1, 0)
    assert D.unit_index == 0


def test_basis_is_grlex():
    assert XY.basis == ((0, 0), (1, 0), (0, 1), (1, 1))


@pytest.mark.parametrize("n,rels", [
    (1, [(2,)]), (1, [(4,)]), (2, [(2, 0), (0, 2)]), (2, [(3, 0), (1, 1), (0, 2)]),
    (3, [(2, 0, 0), (0, 2, 0), (0, 0, 2)]), (2, [(3, 0), (0, 3), (2, 1)]),
])
def test_structure_constants_match_brute_force(n, rels):
    p = WeilPresentation(n, [list(r) for r in rels])
    assert build_from_presentation(p).structure_constants == brute_table(p)


def test_missing_pure_power_rejected():
    with pytest.raises(PresentationError) as exc:
        WeilPresentation(2, [[2, 0]])
    assert exc.value.details["generator"] == 1


def test_unit_relation_rejected():
    with pytest.raises(PresentationError):
        WeilPresentation(1, [[0]])


def test_presentation_json_roundtrip():
    p = WeilPresentation(2, [[0, 2], [2, 0], [3, 0]])
    assert WeilPresentation.from_json(p.to_json()) == p
    assert p.name() == "k[x,y]/(x^2,y^2)"


# -- Weil checks ---------------------------------------------------------------

def test_hand_entered_dual_numbers_pass():
    w = build_from_structure_constants([[[1, 0], [0, 1]], [[0, 1], [0, 0]]], 0, [1, 0])
    report = check_weil(w)
    assert report.passed and report.nilpotency_index == 2
    assert w == D


def test_k_times_k_is_not_weil():
    # basis {1, e2} with e2^2 = e2: the augmentation ideal is idempotent
    w = build_from_structure_constants([[[1, 0], [0, 1]], [[0, 1], [0, 1]]], 0, [1, 0])
    report = check_weil(w)
    assert not report.passed
    assert report.laws["augmentation_ideal_nilpotent"] is False
    assert report.laws["commutative"] and report.laws["associative"]
    assert w.nilpotency_index is None


def test_one_dimensional_table_is_k():
    w = build_from_structure_constants([[[1]]], 0, [1])
    assert check_weil(w).passed and w.nilpotency_index == 1
    assert w == ground_field()


def test_noncommutative_table_fails():
    table = XY.structure_constants
    table[2][1] = [0, 0, 0, 0]  # y*x = 0 while x*y = xy
    w = build_from_structure_constants(table, 0, [1, 0, 0, 0])
    assert check_weil(w).laws["commutative"] is False


def test_bad_table_shape():
    with pytest.raises(DimensionError):
        build_from_structure_constants([[[1, 0]], [[0, 1]]], 0, [1, 0])


# -- elements ------------------------------------------------------------------

def test_element_products():
    e = D.element([0, 1])
    assert (e * e).is_zero()
    assert (D.element([1, 1]) * D.element([1, -1])) == D.unit()
    DD = tensor_algebra(D, D)
    a, b = DD.element([0, 0, 1, 0]), DD.element([0, 1, 0, 0])
    assert (a * b).coeffs == (0, 0, 0, 1)


def test_inverse():
    assert D.element([1, 1]).inverse().coeffs == (1, -1)
    assert D.element([2, 0]).inverse().coeffs == (F(1, 2), 0)
    with pytest.raises(NotInvertibleError):
        D.element([0, 1]).inverse()


def test_inverse_in_deeper_algebra():
    x = K3.element([2, 3, 5])
    assert x * x.inverse() == K3.unit()


def test_mode_mixing():
    fd = float_version(D)
    with pytest.raises(ModeError):
        D.element([1, 0]) + fd.element([1.0, 0.0])
    with pytest.raises(ModeError):
        D.element([1, 0]) * 0.5


def test_algebra_mismatch():
    with pytest.raises(AlgebraMismatchError):
        D.element([1, 0]) + K3.element([1, 0, 0])


def test_exact_reproducibility():
    a = pres(2, (3, 0), (0, 2))
    b = pres(2, (0, 2), (3, 0))
    assert a == b and a.id == b.id
    assert a.structure_constants == b.structure_constants


coef = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@settings(max_examples=50, deadline=None)
@given(st.lists(coef, min_size=12, max_size=12))
def test_ring_axioms_on_xy(cs):
    x, y, z = XY.element(cs[0:4]), XY.element(cs[4:8]), XY.element(cs[8:12])
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert (x * y).aug == x.aug * y.aug


# -- tensor products -----------------------------------------------------------

def test_tensor_dims_and_names():
    for a, b in product([D, K3, XY], repeat=2):
        w = tensor_algebra(a, b)
        assert w.dim == a.dim * b.dim
        assert check_weil(w).passed
    named = build_from_presentation(WeilPresentation(1, [[2]]), name="D")
    assert tensor_algebra(named, named).name == "D⊗D"
    assert tensor_algebra(tensor_algebra(named, named), named).name == "(D⊗D)⊗D"


def test_k_tensor_d_is_d_as_table():
    w = tensor_algebra(ground_field(), D)
    assert w.structure_constants == D.structure_constants


def test_tensor_inclusions_are_homs():
    w, i1, i2 = tensor(K3, D)
    assert not i1.violations() and not i2.violations()
    x = i1(K3.element([0, 1, 0])) * i2(D.element([0, 1]))
    assert sum(1 for c in x.coeffs if c) == 1


def test_d_tensor_d_is_xy():
    DD = tensor_algebra(D, D)
    # both have basis 1, e2, e1, e1e2 up to ordering; compare tables after relabeling
    perm = [0, 2, 1, 3]  # DD index -> XY index
    t1, t2 = DD.structure_constants, XY.structure_constants
    for i in range(4):
        for j in range(4):
            assert [t1[i][j][k] for k in range(4)] == [t2[perm[i]][perm[j]][perm[k]] for k in range(4)]


def test_tensor_associativity_via_reassociate():
    left = tensor_algebra(tensor_algebra(D, K3), D)
    right = tensor_algebra(D, tensor_algebra(K3, D))
    assert left.dim == right.dim == 12
    import random
    rng = random.Random(5)
    for _ in range(20):
        a = [F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(12)]
        b = [F(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(12)]
        pa, pb = point(left, [a]), point(left, [b])
        prod_left = point(left, [pa.coords[0] * pb.coords[0]])
        ra, rb = reassociate(pa, right), reassociate(pb, right)
        assert reassociate(prod_left, right) == point(right, [ra.coords[0] * rb.coords[0]])


# -- homomorphisms -------------------------------------------------------------

def test_identity_and_zero_hom():
    h = hom_from_images(D, D, [D.element([0, 0])])
    assert h(D.element([3, 5])).coeffs == (3, 0)
    assert identity_hom(D)(D.element([3, 5])).coeffs == (3, 5)


def test_eps_to_eps_tensor_eps():
    DD = tensor_algebra(D, D)
    h = hom_from_images(D, DD, [DD.element([0, 0, 0, 1])])
    assert h(D.element([2, 7])).coeffs == (2, 0, 0, 7)


def test_eps_to_sum_violates_relation():
    DD = tensor_algebra(D, D)
    with pytest.raises(RelationViolation) as exc:
        hom_from_images(D, DD, [DD.element([0, 1, 1, 0])])
    assert exc.value.details["relation"] == [2]


def test_image_with_unit_part_rejected():
    with pytest.raises(HomError):
        hom_from_images(D, D, [D.element([1, 1])])


def test_hom_into_k3():
    h = hom_from_images(D, K3, [K3.element([0, 0, 1])])
    assert h(D.element([1, 2])).coeffs == (1, 0, 2)
    with pytest.raises(RelationViolation):
        hom_from_images(D, K3, [K3.element([0, 1, 0])])


def test_compose():
    phi = hom_from_images(D, K3, [K3.element([0, 0, 1])])
    psi = hom_from_images(K3, D, [D.element([0, 0])])
    c = compose_homs(psi, phi)
    assert c.source == D and c.target == D
    x = D.element([4, 9])
    assert c(x) == psi(phi(x))
    with pytest.raises(AlgebraMismatchError):
        compose_homs(phi, phi)


def test_augmentation_and_unit_homs():
    eps = augmentation_hom(XY)
    eta = unit_hom(XY)
    x = XY.element([3, 1, 2, 5])
    assert eps(x).coeffs == (3,)
    assert compose_homs(eps, eta) == identity_hom(ground_field())
