"""Pair decompositions: Słociński conditions, weak bi-shift, doubly
commuting / product-PPI splits, and the largest-projection constructions."""

import numpy as np
import pytest

from stardecomp import (
    EngineConfig,
    PreconditionError,
    RATIONAL,
    corollary_check,
    from_rows,
    hw_pair_doubly,
    hw_pair_product,
    largest_doubly_commuting,
    largest_product_ppi,
    maximality_probe,
    nfl_pair_doubly,
    pair_instances,
    reducing_fixpoint,
    slocinski,
    truncate,
    weak_bishift,
)
from stardecomp.elements import classify
from stardecomp.fixtures import (
    commuting_orthogonal_pair,
    random_contraction,
    random_ppi,
    rational_orthogonal,
)
from stardecomp.projections import from_element, identity_projection, proj_leq

J3 = from_rows(RATIONAL, [[0, 0, 0], [1, 0, 0], [0, 1, 0]])


def _truncated_pair(name, n, n_max):
    e1, e2 = pair_instances(name)
    t1 = truncate(e1, n, n_max=n_max)
    t2 = truncate(e2, n, n_max=n_max)
    return t1, t2, EngineConfig(n_max=n_max, window=t1.window)


# ------------------------------------------------------------- Słociński


def test_slocinski_requires_commuting():
    rng = np.random.default_rng(0)
    x1 = rational_orthogonal(3, rng)
    x2 = rational_orthogonal(3, rng)
    if (x1 @ x2).equals(x2 @ x1):  # astronomically unlikely, but be safe
        pytest.skip("random pair happened to commute")
    with pytest.raises(PreconditionError):
        slocinski(x1, x2)


@pytest.mark.parametrize("name,n,n_max", [
    ("grid", 8, 4),
    ("equal-shift", 20, 6),
    ("powers", 20, 6),
    ("unitary-pair", 16, 6),
    ("mixed", 20, 6),
])
def test_slocinski_catalog_consistent(name, n, n_max):
    t1, t2, cfg = _truncated_pair(name, n, n_max)
    rep = slocinski(t1.element, t2.element, cfg)
    assert rep.condition_vector == (True,) * 6
    assert rep.holds
    assert rep.basis.verify(1e-8 * t1.element.dim)


def test_slocinski_grid_all_ss():
    t1, t2, cfg = _truncated_pair("grid", 8, 4)
    rep = slocinski(t1.element, t2.element, cfg)
    assert rep.basis["ss"].rank == t1.element.dim


def test_slocinski_mixed_ranks():
    t1, t2, cfg = _truncated_pair("mixed", 20, 6)
    rep = slocinski(t1.element, t2.element, cfg)
    ranks = {l: p.rank for l, p in rep.basis.members}
    assert ranks["uu"] == 2 and ranks["us"] == 0 and ranks["su"] == 0
    assert ranks["ss"] == t1.element.dim - 2


def test_slocinski_exact_unitary_pair():
    rng = np.random.default_rng(1)
    x1, x2 = commuting_orthogonal_pair(4, rng)
    rep = slocinski(x1, x2)
    assert rep.holds and rep.basis["uu"].rank == 4
    assert rep.max_residual() == 0.0


def test_corollary_product_pairs():
    rng = np.random.default_rng(2)
    x1, x2 = commuting_orthogonal_pair(4, rng)
    assert corollary_check(x1, x2) is True


# ---------------------------------------------------------- weak bi-shift


def test_weak_bishift_grid_is_pure_ws():
    t1, t2, cfg = _truncated_pair("grid", 8, 4)
    rep = weak_bishift(t1.element, t2.element, cfg)
    w = t1.window.element.mat
    dev = np.abs(w @ (rep.basis["ws"].element.mat - np.eye(t1.element.dim)) @ w).max()
    assert dev < 1e-8
    for key in ("shift_product", "shift_x1_w_us", "shift_x2_w_su"):
        assert rep.certificates[key] < 1e-8


@pytest.mark.parametrize("name,n,n_max", [
    ("equal-shift", 20, 6),
    ("powers", 20, 6),
    ("unitary-pair", 16, 6),
    ("mixed", 20, 6),
])
def test_weak_bishift_catalog(name, n, n_max):
    t1, t2, cfg = _truncated_pair(name, n, n_max)
    rep = weak_bishift(t1.element, t2.element, cfg)
    assert rep.basis.verify(1e-8 * t1.element.dim)
    assert rep.max_residual() < 1e-8 * t1.element.dim


def test_weak_bishift_exact_unitaries():
    rng = np.random.default_rng(3)
    x1, x2 = commuting_orthogonal_pair(4, rng)
    rep = weak_bishift(x1, x2)
    assert rep.basis["uu"].rank == 4
    assert rep.max_residual() == 0.0


# ------------------------------------------------ doubly commuting pairs


def test_hw_pair_doubly_commuting_unitaries():
    rng = np.random.default_rng(4)
    x1, x2 = commuting_orthogonal_pair(4, rng)
    rep = hw_pair_doubly(x1, x2)
    assert rep.basis["u.u"].rank == 4
    assert rep.basis.verify()


def test_hw_pair_doubly_rejects_non_doubly():
    with pytest.raises(PreconditionError):
        hw_pair_doubly(J3, J3)


def test_nfl_pair_doubly():
    rng = np.random.default_rng(5)
    x1, x2 = commuting_orthogonal_pair(4, rng)
    half = from_rows(RATIONAL, [["1/2", 0, 0, 0], [0, "1/2", 0, 0],
                                [0, 0, "1/2", 0], [0, 0, 0, "1/2"]])
    rep = nfl_pair_doubly(x1 @ half, x2)
    assert rep.basis["uu"].rank == 0 and rep.basis["cu"].rank == 4
    assert rep.max_residual() == 0.0


# -------------------------------------------------------- product of PPIs


def test_hw_pair_product_power_pair():
    rng = np.random.default_rng(6)
    x = random_ppi(5, rng, unitary_rank=2)
    rep = hw_pair_product(x, x @ x)
    assert rep.basis["u"].rank == 2
    assert rep.basis["t"].rank == 3
    assert rep.max_residual() == 0.0
    # finite dimension: the unitary part is nonzero, so the literal join
    # comparison must come out false
    assert rep.extras["literal_sup_agrees"] is False


def test_hw_pair_product_lemma_identities_exact():
    rng = np.random.default_rng(7)
    x = random_ppi(6, rng, unitary_rank=3)
    rep = hw_pair_product(x, x.power(3))
    lemmas = {k: v for k, v in rep.certificates.items() if k.startswith("lemma")}
    assert lemmas and all(v == 0.0 for v in lemmas.values())


def test_largest_product_ppi_trivial_on_good_pairs():
    rng = np.random.default_rng(8)
    x = random_ppi(4, rng, unitary_rank=2)
    p = largest_product_ppi(x, x @ x)
    assert p.rank == 4


def test_largest_product_ppi_requires_commuting():
    rng = np.random.default_rng(9)
    x1 = random_ppi(4, rng, unitary_rank=0)
    x2 = random_ppi(4, rng, unitary_rank=4)
    if (x1 @ x2).equals(x2 @ x1):
        pytest.skip("random pair happened to commute")
    with pytest.raises(PreconditionError):
        largest_product_ppi(x1, x2)


# ----------------------------------------------- largest doubly commuting


def test_pd_j3_pair_is_zero():
    p = largest_doubly_commuting(J3, J3)
    assert p.rank == 0


def test_pd_doubly_commuting_pair_is_one():
    rng = np.random.default_rng(10)
    x1, x2 = commuting_orthogonal_pair(4, rng)
    p = largest_doubly_commuting(x1, x2)
    assert p.rank == 4


def test_reducing_fixpoint_shrinks_to_invariant_core():
    # seed with the full space; the fixpoint must commute with the operator
    p = reducing_fixpoint([J3], identity_projection(RATIONAL, 3))
    assert p.rank == 3  # whole space trivially reduces
    e = from_element(from_rows(RATIONAL, [[1, 0, 0], [0, 0, 0], [0, 0, 0]]))
    q = reducing_fixpoint([J3], e)
    assert q.rank == 0  # no reducing subspace inside span(e_0)


def test_maximality_probe_confirms_pd():
    rng = np.random.default_rng(11)
    p = largest_doubly_commuting(J3, J3)

    def pred(q):
        pe = q.element
        d1 = pe @ (J3 @ J3.star() - J3.star() @ J3) @ pe
        return d1.is_zero()

    assert maximality_probe(p, [J3, J3], pred, rng, tries=20) is True


def test_maximality_probe_detects_enlargeable():
    # probe a deliberately too-small projection: 0 under a unitary, where
    # every direction commutes and satisfies the (trivial) predicate
    rng = np.random.default_rng(12)
    from stardecomp import identity
    from stardecomp.projections import zero_projection

    one = identity(RATIONAL, 3)
    p0 = zero_projection(RATIONAL, 3)
    assert maximality_probe(p0, [one], lambda q: True, rng, tries=20) is False
