"""Projection lattice laws, the left-projection annihilator property, and
the key isometry identity — property-tested over exact rational matrices."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from stardecomp import (
    EmptyFamilyError,
    PreconditionError,
    ProjectionBasis,
    RATIONAL,
    from_element,
    from_rows,
    identity,
    left_projection,
    proj_inf,
    proj_leq,
    proj_sup,
    right_annihilator_projection,
)
from stardecomp.fixtures import rational_orthogonal, random_ppi
from stardecomp.projections import key_identity_check, zero_projection

DIM = 4

entries = st.fractions(min_value=-3, max_value=3, max_denominator=5)


def elements(dim=DIM):
    return st.lists(
        st.lists(entries, min_size=dim, max_size=dim),
        min_size=dim, max_size=dim,
    ).map(lambda rows: from_rows(RATIONAL, rows))


def random_projection(rng):
    """Rational projection: conjugate a coordinate projection orthogonally."""
    q = rational_orthogonal(DIM, rng)
    diag = [[int(i == j and rng.integers(2)) for j in range(DIM)] for i in range(DIM)]
    return from_element(q @ from_rows(RATIONAL, diag) @ q.star())


@given(elements())
@settings(max_examples=40, deadline=None)
def test_left_projection_fixes_element(a):
    p = left_projection(a)
    assert (p.element @ a).equals(a)


@given(elements(), elements())
@settings(max_examples=40, deadline=None)
def test_annihilator_law(a, b):
    """b a = 0 iff b [a] = 0 — the defining property of the left projection."""
    p = left_projection(a)
    assert (b @ a).is_zero() == (b @ p.element).is_zero()


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=25, deadline=None)
def test_lattice_order_and_meet(seed):
    rng = np.random.default_rng(seed)
    p, q = random_projection(rng), random_projection(rng)
    m = proj_inf([p, q])
    assert proj_leq(m, p) and proj_leq(m, q)
    j = proj_sup([p, q])
    assert proj_leq(p, j) and proj_leq(q, j)
    # meet is the largest lower bound: any projection below both is below m
    below = proj_inf([m, p])
    assert below.equals(m)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=15, deadline=None)
def test_meet_join_rank_inequality(seed):
    rng = np.random.default_rng(seed)
    p, q = random_projection(rng), random_projection(rng)
    assert proj_inf([p, q]).rank + proj_sup([p, q]).rank == p.rank + q.rank


def test_proj_inf_empty_family_raises():
    with pytest.raises(EmptyFamilyError):
        proj_inf([])


def test_from_element_rejects_non_projection():
    with pytest.raises(PreconditionError):
        from_element(from_rows(RATIONAL, [[1, 1], [0, 1]]))


def test_complement():
    rng = np.random.default_rng(3)
    p = random_projection(rng)
    c = p.complement()
    assert (p.element @ c.element).is_zero()
    assert (p.element + c.element).equals(identity(RATIONAL, DIM))


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=20, deadline=None)
def test_key_identity_for_isometries(seed):
    """[x q] = x q x* whenever x is an isometry."""
    rng = np.random.default_rng(seed)
    x = rational_orthogonal(DIM, rng)
    q = random_projection(rng)
    assert key_identity_check(x, q)


def test_key_identity_requires_isometry():
    j = from_rows(RATIONAL, [[0, 0], [1, 0]])
    with pytest.raises(PreconditionError):
        key_identity_check(j, zero_projection(RATIONAL, 2))


@given(elements(), elements())
@settings(max_examples=30, deadline=None)
def test_right_annihilator(a, b):
    """R({a,b}) is generated by a projection: the Baer property, concretely."""
    p = right_annihilator_projection([a, b])
    assert (a @ p.element).is_zero() and (b @ p.element).is_zero()
    # and p is the largest such: any v killed by both lies under p
    comp = p.complement()
    stacked = np.concatenate([a.mat, b.mat], axis=0)
    from stardecomp.linalg import nullspace

    ker = nullspace(RATIONAL, stacked)
    for j in range(ker.shape[1]):
        v = ker[:, j]
        assert all(c == 0 for c in (comp.element.mat @ v))


def test_projection_basis_verify():
    rng = np.random.default_rng(5)
    p = random_projection(rng)
    basis = ProjectionBasis((("a", p), ("b", p.complement())))
    assert basis.verify()
    assert basis.residuals()["sum_to_one"] == 0.0


def test_projection_basis_detects_overlap():
    rng = np.random.default_rng(6)
    p = random_projection(rng)
    if p.rank == 0:
        p = p.complement()
    bad = ProjectionBasis((("a", p), ("b", identity_proj())))
    assert not bad.verify()


def identity_proj():
    return from_element(identity(RATIONAL, DIM))


def test_ppi_left_projections_commute_along_powers():
    """For a PPI, [x^n] and [x^{*m}] are projections with controlled ranks."""
    rng = np.random.default_rng(9)
    x = random_ppi(5, rng, unitary_rank=2)
    r_prev = left_projection(x).rank
    for n in range(2, 5):
        r = left_projection(x.power(n)).rank
        assert r <= r_prev
        r_prev = r
