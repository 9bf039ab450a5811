"""Finite-field ring construction, cone enumeration, rational positivity
and the order-axiom probes."""

from fractions import Fraction

import numpy as np
import pytest

from stardecomp import (
    EnumerationGuardError,
    ImproperInvolutionError,
    PreconditionError,
    RATIONAL,
    axiom_probe,
    construct_gf_ring,
    enumerate_ring,
    from_rows,
    is_positive,
    positivity_cone,
)
from stardecomp.fixtures import rational_orthogonal


def test_gf_requires_prime():
    with pytest.raises(PreconditionError):
        construct_gf_ring(4, 2)


def test_gf_improper_involution_rejected():
    # over F_5, 1^2 + 2^2 = 0, so the transpose involution on 2x2 is improper
    with pytest.raises(ImproperInvolutionError):
        construct_gf_ring(5, 2)
    # three squares sum to zero over F_3 (1+1+1)
    with pytest.raises(ImproperInvolutionError):
        construct_gf_ring(3, 3)


def test_gf_proper_cases():
    construct_gf_ring(3, 2)
    construct_gf_ring(7, 2)
    construct_gf_ring(5, 1)


def test_enumeration_guard():
    dom = construct_gf_ring(3, 2)
    assert len(list(enumerate_ring(dom))) == 3 ** 4
    big = construct_gf_ring(43, 2)
    with pytest.raises(EnumerationGuardError):
        list(enumerate_ring(big))


def test_cone_m2f3():
    dom = construct_gf_ring(3, 2)
    cone = positivity_cone(dom)
    # the cone strictly exceeds the squares: the ring is not smooth
    assert cone.squares < cone.members
    # every member is symmetric
    for key in cone.members:
        a, b, c, d = key
        assert b == c


def test_cone_membership_vs_is_positive():
    dom = construct_gf_ring(3, 2)
    cone = positivity_cone(dom)
    for e in enumerate_ring(dom):
        assert is_positive(e) == (e.equals(e.star()) and e in cone)


def test_baer_annihilator_spotcheck():
    """Right annihilators in M_2(F_3) are generated by projections."""
    from stardecomp.projections import right_annihilator_projection

    dom = construct_gf_ring(3, 2)
    rng = np.random.default_rng(0)
    elems = list(enumerate_ring(dom))
    for _ in range(25):
        a = elems[rng.integers(len(elems))]
        p = right_annihilator_projection([a])
        e = p.element
        assert e.equals(e.star()) and (e @ e).equals(e)
        assert (a @ e).is_zero()
        # generation: every annihilating b satisfies b = p b
        for b in elems[:30]:
            if (a @ b).is_zero():
                assert (e @ b).equals(b)


def test_rational_psd_positive_cases():
    rng = np.random.default_rng(1)
    for _ in range(10):
        m = rng.integers(-3, 4, size=(3, 3)).tolist()
        x = from_rows(RATIONAL, m)
        assert is_positive(x.star() @ x)


def test_rational_psd_negative_cases():
    assert not is_positive(from_rows(RATIONAL, [[-1, 0], [0, 1]]))
    assert not is_positive(from_rows(RATIONAL, [[0, 1], [1, 0]]))
    # non-self-adjoint is never positive
    assert not is_positive(from_rows(RATIONAL, [[1, 1], [0, 1]]))


def test_rational_psd_zero_diagonal_block():
    # PSD with a zero diagonal entry forces the whole row/column to vanish
    assert is_positive(from_rows(RATIONAL, [[0, 0], [0, 1]]))
    assert not is_positive(from_rows(RATIONAL, [[0, 1], [1, 1]]))


def test_rational_psd_congruence_invariant():
    rng = np.random.default_rng(2)
    q = rational_orthogonal(4, rng)
    d = from_rows(RATIONAL, [[2, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
    assert is_positive(q @ d @ q.star())


def test_axiom_probe_gf3():
    report = axiom_probe(construct_gf_ring(3, 2))
    assert report.proper
    assert not report.antisymmetric
    assert not report.smooth


def test_axiom_probe_gf7():
    # larger field, same qualitative picture
    report = axiom_probe(construct_gf_ring(7, 2))
    assert report.proper and not report.antisymmetric


def test_axiom_probe_rational():
    report = axiom_probe(RATIONAL, dim=1)
    assert report.proper and report.antisymmetric and not report.smooth
    report3 = axiom_probe(RATIONAL, dim=3)
    assert not report3.smooth


def test_smoothness_witness_is_not_a_square_dim1():
    """diag(2) is positive but not x^T x over the rationals (2 is a non-square)."""
    two = from_rows(RATIONAL, [[2]])
    assert is_positive(two)
    # directly: a 1x1 square is a square of a rational
    r = Fraction(2)
    num, den = r.numerator, r.denominator
    assert int(num * den) ** 0.5 % 1 != 0  # 2 is not a perfect square
