"""Rees algebras: admissibility, canonical reductions, transported forms."""

import random

import pytest

from frobex.algcore import Element, gr_of
from frobex.errors import DomainError, UnsupportedStructure
from frobex.frobenius import ell_centre_extension, verify_frobenius
from frobex.grpdeg import GroupElement
from frobex.qas import quantum_weyl
from frobex.rees import (
    check_cone_freeness,
    check_reduction_tables,
    enumerate_admissible,
    reduce_canonical,
    rees_extension,
    rees_form,
    rees_of,
)


def g1(k):
    return GroupElement((k,))


@pytest.fixture(scope="module")
def weyl3():
    return quantum_weyl(3, 7)


@pytest.fixture(scope="module")
def rees3(weyl3):
    return rees_of(weyl3, g1(9))


def test_window_must_be_in_cone(weyl3):
    with pytest.raises(DomainError):
        rees_of(weyl3, g1(-1))


def test_unit_law(rees3):
    RAlg = rees3.algebra
    b = ((1, 1), g1(3))
    assert RAlg.mul_indices(RAlg.one, b) == RAlg.monomial(b)
    assert RAlg.mul_indices(b, RAlg.one) == RAlg.monomial(b)


def test_weyl_product_keeps_lower_term(rees3, weyl3):
    # (x, 1) * (y, 1) = q (yx, 2) + (1, 2): the unit survives in degree 2
    RAlg = rees3.algebra
    prod = RAlg.mul_indices(((0, 1), g1(1)), ((1, 0), g1(1)))
    q = weyl3.field.zeta
    assert prod == Element(weyl3.field, {((1, 1), g1(2)): q, ((0, 0), g1(2)): 1})


def test_admissibility_closure(rees3):
    # products of admissible pairs are again admissible
    RAlg = rees3.algebra
    rng = random.Random(4)
    indices = list(enumerate_admissible(rees3, g1(4)))
    base = rees3.base
    for _ in range(80):
        u = indices[rng.randrange(len(indices))]
        v = indices[rng.randrange(len(indices))]
        prod = RAlg.mul_indices(u, v)
        for (b, g) in prod.terms:
            assert base.degree_of(b) <= g


def test_degrees_are_the_cone_coordinate(rees3):
    RAlg = rees3.algebra
    assert RAlg.degree_of(((1, 1), g1(5))) == g1(5)
    assert RAlg.mode == "graded"


def test_cone_freeness_spot_check(rees3):
    check_cone_freeness(rees3, g1(6))


def test_reduction_tables_match(rees3):
    check_reduction_tables(rees3, "m0", g1(6))
    check_reduction_tables(rees3, "m1", g1(6))


def test_reduction_maps_unit_to_unit(rees3, weyl3):
    m0 = reduce_canonical(rees3, "m0")
    m1 = reduce_canonical(rees3, "m1")
    one = rees3.algebra.one_element()
    assert m0.map_element(one) == gr_of(weyl3).one_element()
    assert m1.map_element(one) == weyl3.one_element()
    with pytest.raises(DomainError):
        reduce_canonical(rees3, "m2")


def test_m0_recovers_quantum_plane_table(rees3, weyl3):
    # structure constants of the m0 quotient equal the graded table
    m0 = reduce_canonical(rees3, "m0")
    G = gr_of(weyl3)
    RAlg = rees3.algebra
    for a in range(3):
        for b in range(3):
            u = ((a, b), G.degree_of((a, b)))
            for c in range(3):
                for d in range(3):
                    v = ((c, d), G.degree_of((c, d)))
                    got = m0.map_element(RAlg.mul_indices(u, v))
                    want = G.mul_indices((a, b), (c, d))
                    assert got == want


def test_m1_recovers_weyl_table(rees3, weyl3):
    m1 = reduce_canonical(rees3, "m1")
    RAlg = rees3.algebra
    for a in range(3):
        for b in range(3):
            u = ((a, b), g1(a + b + 1))  # deliberately above the minimal degree
            for c in range(3):
                for d in range(3):
                    v = ((c, d), g1(c + d))
                    got = m1.map_element(RAlg.mul_indices(u, v))
                    want = weyl3.mul_indices((a, b), (c, d))
                    assert got == want


def test_rees_form_slot_example(weyl3, rees3):
    ell = 3
    ext = ell_centre_extension(weyl3, ell)
    d = g1(-2 * (ell - 1))
    phi = rees_form(rees3, ext.form, d)
    top = (ell - 1, ell - 1)
    val = phi(rees3.algebra.monomial((top, g1(4))))
    assert val == Element(weyl3.field, {((0, 0), g1(0)): 1})


def test_rees_form_homogeneity_random(weyl3, rees3):
    ell = 3
    ext = ell_centre_extension(weyl3, ell)
    d = g1(-2 * (ell - 1))
    phi = rees_form(rees3, ext.form, d)
    RAlg = rees3.algebra
    rng = random.Random(12)
    indices = [idx for idx in enumerate_admissible(rees3, g1(8))]
    checked = 0
    for _ in range(100):
        idx = indices[rng.randrange(len(indices))]
        val = phi(RAlg.monomial(idx))
        if val.is_zero():
            continue
        degrees = {RAlg.degree_of(t) for t in val.terms}
        assert degrees == {RAlg.degree_of(idx) + d}
        checked += 1
    assert checked > 0


def test_rees_form_detects_wrong_declared_degree(weyl3, rees3):
    ell = 3
    ext = ell_centre_extension(weyl3, ell)
    wrong = g1(-2 * (ell - 1) - 3)  # too negative: values escape the subring
    phi = rees_form(rees3, ext.form, wrong)
    top = (ell - 1, ell - 1)
    with pytest.raises(DomainError):
        phi(rees3.algebra.monomial((top, g1(2 * (ell - 1)))))


def test_rees_extension_verifies(weyl3):
    ell = 3
    ext = ell_centre_extension(weyl3, ell)
    base_cert = verify_frobenius(ext)
    RA, rext = rees_extension(ext)
    assert RA.window == g1(12)  # 3 x top basis degree 2(ell-1)
    cert = verify_frobenius(rext, rng=random.Random(0))
    assert cert.verdict == "frobenius"
    assert cert.rank == base_cert.rank == ell**2
    assert cert.phi_degree == base_cert.phi_degree
    # determinant is homogeneous of total degree zero, hence exact
    assert cert.gram_status.kind == "unit-determinant"
    assert cert.gram_status.method == "evaluation-homogeneous"


def test_rees_decomposition_round_trip(weyl3, rees3):
    ell = 3
    ext = ell_centre_extension(weyl3, ell)
    _, rext = rees_extension(ext, window=g1(9))
    RAlg = rext.ambient
    rng = random.Random(3)
    indices = list(enumerate_admissible(rees3, g1(7)))
    for _ in range(25):
        terms = {
            indices[rng.randrange(len(indices))]: rng.randrange(1, 7)
            for _ in range(rng.randrange(1, 3))
        }
        y = Element(weyl3.field, terms)
        assert rext.engine.decompose(y).reassemble() == y


def test_windowed_enumeration_needs_rank_one():
    from frobex.qas import make_qas

    A = make_qas(
        2, 2, 5,
        degrees=(GroupElement((1, 0)), GroupElement((0, 1))),
    ).algebra()
    RA = rees_of(A, GroupElement((2, 2)))
    with pytest.raises(UnsupportedStructure):
        list(enumerate_admissible(RA, GroupElement((2, 2))))


def test_generic_cone_reductions_are_homomorphisms(rees3):
    # the remaining maximal ideals of the cone line: send the parameter to
    # any nonzero scalar; the quotient table matches the base algebra table
    from frobex.rees import cone_reduction

    for c in (2, 3, 5):
        red = cone_reduction(rees3, c)
        assert red.target is rees3.base
        check_reduction_tables(rees3, red, g1(5))


def test_cone_reduction_scalar_powers(rees3, weyl3):
    from frobex.rees import cone_reduction

    red = cone_reduction(rees3, 3)
    # the cone exponent is the full degree: (y, 3) maps to 3^3 * y
    el = red.map_element(rees3.algebra.monomial(((1, 0), g1(3))))
    assert el == Element(weyl3.field, {(1, 0): pow(3, 3, 7)})


def test_cone_reduction_specializes_to_m0_m1(rees3):
    from frobex.rees import cone_reduction, reduce_canonical

    m0 = reduce_canonical(rees3, "m0")
    m1 = reduce_canonical(rees3, "m1")
    assert m0.scalar == 0 and cone_reduction(rees3, 0).target.mode == "graded"
    assert m1.scalar == 1 and m1.target is rees3.base
    idx = ((1, 1), g1(4))
    assert m0.map_element(rees3.algebra.monomial(idx)).is_zero()
    assert m1.map_element(rees3.algebra.monomial(idx)) == rees3.base.monomial((1, 1))
