"""Randomised and enumerated test instances for the concrete rings.

Rational orthogonal matrices come from Givens rotations with Pythagorean-
triple cosines, so every entry stays an exact Fraction; conjugating a
block-diagonal model by one of these preserves the transpose involution
and therefore every *-identity of the model.
"""

from __future__ import annotations

from fractions import Fraction
import itertools

import numpy as np

from . import linalg
from .domains import RATIONAL, ScalarDomain, complex_domain
from .elements import Element, classify, identity, is_partial_isometry
from .errors import PreconditionError

_TRIPLES = ((3, 4, 5), (5, 12, 13), (8, 15, 17), (7, 24, 25), (20, 21, 29))


def _givens(dim: int, i: int, j: int, c: Fraction, s: Fraction) -> np.ndarray:
    g = linalg.eye(RATIONAL, dim)
    g[i, i] = c
    g[j, j] = c
    g[i, j] = -s
    g[j, i] = s
    return g


def rational_orthogonal(dim: int, rng, steps: int | None = None) -> Element:
    """Random special-orthogonal rational matrix (exact Q Q^T = 1)."""
    if dim < 1:
        raise PreconditionError("dim must be positive")
    q = linalg.eye(RATIONAL, dim)
    if dim == 1:
        if rng.integers(2):
            q[0, 0] = Fraction(-1)
        return Element(RATIONAL, q)
    for _ in range(steps if steps is not None else 2 * dim):
        a, b, c = _TRIPLES[rng.integers(len(_TRIPLES))]
        i, j = rng.choice(dim, size=2, replace=False)
        q = q @ _givens(dim, int(i), int(j), Fraction(a, c), Fraction(b, c))
    perm = rng.permutation(dim)
    signs = rng.integers(2, size=dim)
    pmat = linalg.zeros(RATIONAL, dim, dim)
    for col, row in enumerate(perm):
        pmat[int(row), col] = Fraction(-1 if signs[col] else 1)
    return Element(RATIONAL, linalg.normalize(RATIONAL, q @ pmat))


def _jordan_block(dim: int) -> np.ndarray:
    j = linalg.zeros(RATIONAL, dim, dim)
    for i in range(dim - 1):
        j[i + 1, i] = Fraction(1)
    return j


def _random_partition(total: int, rng, at_least_one_big: bool) -> list:
    parts = []
    left = total
    while left:
        hi = min(left, 3)
        lo = 2 if (at_least_one_big and not parts and left >= 2) else 1
        size = int(rng.integers(lo, hi + 1))
        parts.append(size)
        left -= size
    return parts


def random_ppi(dim: int, rng, unitary_rank: int | None = None) -> Element:
    """Random rational power partial isometry: unitary ⊕ chains, conjugated."""
    if unitary_rank is None:
        unitary_rank = int(rng.integers(0, dim + 1))
    if not 0 <= unitary_rank <= dim:
        raise PreconditionError("unitary_rank out of range")
    blocks = []
    if unitary_rank:
        blocks.append(rational_orthogonal(unitary_rank, rng).mat)
    for size in _random_partition(dim - unitary_rank, rng, at_least_one_big=False):
        blocks.append(_jordan_block(size))
    mat = linalg.zeros(RATIONAL, dim, dim)
    at = 0
    for b in blocks:
        d = b.shape[0]
        mat[at : at + d, at : at + d] = b
        at += d
    q = rational_orthogonal(dim, rng)
    return q @ Element(RATIONAL, mat) @ q.star()


def random_contraction(dim: int, rng, unitary_rank: int | None = None) -> Element:
    """Random rational contraction: unitary ⊕ strictly damped blocks."""
    if unitary_rank is None:
        unitary_rank = int(rng.integers(0, dim + 1))
    mat = linalg.zeros(RATIONAL, dim, dim)
    if unitary_rank:
        mat[:unitary_rank, :unitary_rank] = rational_orthogonal(unitary_rank, rng).mat
    at = unitary_rank
    while at < dim:
        size = int(rng.integers(1, min(dim - at, 3) + 1))
        damp = Fraction(int(rng.integers(0, 3)), 4)  # 0, 1/4 or 1/2
        block = rational_orthogonal(size, rng).mat * damp
        mat[at : at + size, at : at + size] = block
        at += size
    q = rational_orthogonal(dim, rng)
    return q @ Element(RATIONAL, linalg.normalize(RATIONAL, mat)) @ q.star()


def commuting_orthogonal_pair(dim: int, rng) -> tuple:
    """Two commuting rational orthogonal matrices (rotations in shared planes)."""
    if dim < 2:
        raise PreconditionError("need dim >= 2")
    q1 = linalg.eye(RATIONAL, dim)
    q2 = linalg.eye(RATIONAL, dim)
    for i in range(0, dim - 1, 2):
        a1, b1, c1 = _TRIPLES[rng.integers(len(_TRIPLES))]
        a2, b2, c2 = _TRIPLES[rng.integers(len(_TRIPLES))]
        q1 = q1 @ _givens(dim, i, i + 1, Fraction(a1, c1), Fraction(b1, c1))
        q2 = q2 @ _givens(dim, i, i + 1, Fraction(a2, c2), Fraction(b2, c2))
    q = rational_orthogonal(dim, rng)
    e1 = q @ Element(RATIONAL, linalg.normalize(RATIONAL, q1)) @ q.star()
    e2 = q @ Element(RATIONAL, linalg.normalize(RATIONAL, q2)) @ q.star()
    return e1, e2


def random_complex_unitary(dim: int, rng, tol=None) -> Element:
    """Haar-ish random unitary via QR with phase fixing."""
    domain = complex_domain(tol)
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    q = q @ np.diag(np.diag(r) / np.abs(np.diag(r)))
    return Element(domain, q)


def gf_signed_permutation(domain: ScalarDomain, rng) -> Element:
    """Random orthogonal element of M_dim(F_p) of signed-permutation form."""
    dim = domain.dim
    mat = linalg.zeros(domain, dim, dim)
    perm = rng.permutation(dim)
    for col, row in enumerate(perm):
        mat[int(row), col] = (-1 if rng.integers(2) else 1) % domain.p
    return Element(domain, mat)


# --------------------------------------------------- falsification searches


def search_non_slocinski(tries: int, rng, dims=(2, 3, 4)):
    """Hunt for a commuting isometry pair violating the fourfold conditions.

    In finite dimension every isometry is unitary, so the search also walks
    truncated constructor pairs.  Returns the first violating pair found,
    or None when the search space is exhausted without a hit.
    """
    from .engine import EngineConfig, slocinski
    from .shiftmodel import pair_instances, truncate

    for _ in range(tries):
        dim = int(rng.choice(dims))
        x1, x2 = commuting_orthogonal_pair(dim, rng)
        if not slocinski(x1, x2).holds:
            return x1, x2
    for name in ("grid", "equal-shift", "powers", "unitary-pair", "mixed"):
        e1, e2 = pair_instances(name)
        n = 24 if name != "grid" else 6
        n_max = 4
        t1 = truncate(e1, n, n_max=n_max)
        t2 = truncate(e2, n, n_max=n_max)
        cfg = EngineConfig(n_max=n_max, window=t1.window)
        if not slocinski(t1.element, t2.element, cfg).holds:
            return e1, e2
    return None


def search_non_ppi_product_pair(max_gf_dim: int = 2, rational_tries: int = 0, rng=None):
    """Hunt for commuting PPIs whose product is not a PPI.

    Exhausts M_dim(F_3) for dim <= max_gf_dim and optionally samples random
    rational pairs.  Returns the first witness pair, or None.
    """
    from .exactrings import construct_gf_ring, enumerate_ring

    def is_ppi(e: Element) -> bool:
        pw = e
        for _ in range(e.dim):
            if not is_partial_isometry(pw):
                return False
            pw = pw @ e
        return True

    for dim in range(2, max_gf_dim + 1):
        domain = construct_gf_ring(3, dim)
        ppis = [e for e in enumerate_ring(domain) if is_ppi(e)]
        for x1, x2 in itertools.product(ppis, repeat=2):
            if not (x1 @ x2).equals(x2 @ x1):
                continue
            if not is_ppi(x1 @ x2):
                return x1, x2
    if rational_tries and rng is not None:
        for _ in range(rational_tries):
            dim = int(rng.integers(2, 5))
            x1 = random_ppi(dim, rng)
            # commuting candidates: powers and adjoint powers of x1
            for x2 in (x1 @ x1, x1 @ x1 @ x1, x1.star()):
                if (x1 @ x2).equals(x2 @ x1) and is_ppi(x1) and is_ppi(x2):
                    if not is_ppi(x1 @ x2):
                        return x1, x2
    return None
