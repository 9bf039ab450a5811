"""Exact scalar domains: rational positivity and finite-field cone closure.

Rational positivity is decided by an exact symmetric factorisation (a PSD
rational matrix is a finite sum of rational v v^T, so PSD coincides with
the sum-of-squares cone).  Finite-field positivity is decided by literally
enumerating the additive closure of {x^T x}.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg
from .domains import DomainKind, ScalarDomain, TolerancePolicy
from .elements import Element, from_rows
from .errors import EnumerationGuardError, ImproperInvolutionError, PreconditionError

ENUMERATION_GUARD = 10**6


def construct_gf_ring(p: int, dim: int) -> ScalarDomain:
    """Domain for M_dim(F_p) with transpose involution.

    Rejects (p, dim) whenever the involution fails to be proper, i.e. some
    nonzero row vector v has v v^T = 0 (a vanishing sum of dim squares).
    """
    if p < 2 or any(p % k == 0 for k in range(2, int(p**0.5) + 1)):
        raise PreconditionError(f"{p} is not prime")
    if dim < 1:
        raise PreconditionError("dim must be positive")
    if p**dim > ENUMERATION_GUARD:
        raise EnumerationGuardError(f"properness check needs {p}**{dim} vectors")
    for v in itertools.product(range(p), repeat=dim):
        if any(v) and sum(c * c for c in v) % p == 0:
            raise ImproperInvolutionError(
                f"involution on M_{dim}(F_{p}) is improper: row {v} has v v^T = 0"
            )
    return ScalarDomain(DomainKind.GF, p=p, dim=dim)


def enumerate_ring(domain: ScalarDomain):
    """Yield every element of M_dim(F_p).  Guarded by p**(dim*dim) <= 1e6."""
    if domain.kind is not DomainKind.GF:
        raise PreconditionError("enumeration only makes sense for finite fields")
    p, d = domain.p, domain.dim
    if p ** (d * d) > ENUMERATION_GUARD:
        raise EnumerationGuardError(f"{p}**{d * d} elements exceed the enumeration guard")
    for entries in itertools.product(range(p), repeat=d * d):
        yield from_rows(domain, [entries[i * d : (i + 1) * d] for i in range(d)])


def _key(e: Element) -> tuple:
    return tuple(int(v) for v in e.mat.flat)


@dataclass(frozen=True)
class ConeTable:
    """The full positive cone of a finite matrix ring.

    members: canonical row-major entry tuples of every positive element.
    squares: the subset {x^T x}; the cone is its additive closure.
    """

    domain: ScalarDomain
    members: frozenset
    squares: frozenset

    def __contains__(self, e: Element) -> bool:
        return _key(e) in self.members


_cone_cache: dict = {}


def positivity_cone(domain: ScalarDomain) -> ConeTable:
    """Fixpoint of C0 = {x^T x} under C ∪ (C + C0)."""
    cached = _cone_cache.get((domain.p, domain.dim))
    if cached is not None:
        return cached
    squares = {}
    for x in enumerate_ring(domain):
        sq = x.star() @ x
        squares.setdefault(_key(sq), sq)
    cone = dict(squares)
    frontier = list(cone.values())
    while frontier:
        nxt = []
        for c in frontier:
            for s in squares.values():
                cand = c + s
                k = _key(cand)
                if k not in cone:
                    cone[k] = cand
                    nxt.append(cand)
        frontier = nxt
    table = ConeTable(domain, frozenset(cone), frozenset(squares))
    _cone_cache[(domain.p, domain.dim)] = table
    return table


def _rational_psd(e: Element) -> bool:
    """Exact PSD test by symmetric pivoting (Schur-complement elimination)."""
    m = e.mat.copy()
    idx = list(range(e.dim))
    while idx:
        pivot = next((i for i in idx if m[i, i] != 0), None)
        if pivot is None:
            # all remaining diagonal entries are zero: PSD forces the block to vanish
            return all(m[i, j] == 0 for i in idx for j in idx)
        if m[pivot, pivot] < 0:
            return False
        d = m[pivot, pivot]
        idx.remove(pivot)
        col = {i: m[i, pivot] for i in idx}
        for i in idx:
            for j in idx:
                m[i, j] = m[i, j] - col[i] * col[j] / d
    return True


def is_positive(a: Element) -> bool:
    """Membership in the positive cone {sum of x* x} of the exact domains."""
    if a.domain.kind is DomainKind.COMPLEX:
        raise PreconditionError("use floatring.is_positive_float for the complex domain")
    if not a.equals(a.star()):
        return False
    if a.domain.kind is DomainKind.RATIONAL:
        return _rational_psd(a)
    return a in positivity_cone(a.domain)


@dataclass(frozen=True)
class AxiomReport:
    proper: bool
    antisymmetric: bool
    smooth: bool


def _rational_smooth_witness(dim: int) -> Element:
    # diag(2,1,...,1) is PSD but not x^T x: its discriminant 2 is not a
    # rational square, so the form is not rationally congruent to I_dim.
    rows = [[2 if i == j == 0 else int(i == j) for j in range(dim)] for i in range(dim)]
    return from_rows(ScalarDomain(DomainKind.RATIONAL), rows)


def axiom_probe(domain: ScalarDomain, dim: int | None = None, rng=None) -> AxiomReport:
    """Report the order axioms of the positivity cone: proper / antisymmetric / smooth.

    Finite fields are decided by cone enumeration; the rational and float
    outcomes are analytic facts, spot-checked on random samples.
    """
    if domain.kind is DomainKind.GF:
        cone = positivity_cone(domain)
        anti = True
        for k in cone.members:
            if any(k) and tuple((-v) % domain.p for v in k) in cone.members:
                anti = False
                break
        return AxiomReport(proper=True, antisymmetric=anti, smooth=cone.members == cone.squares)
    if domain.kind is DomainKind.COMPLEX:
        # PSD cone is proper; every PSD matrix has a square root
        return AxiomReport(proper=True, antisymmetric=True, smooth=True)
    dim = dim or 1
    rng = rng or np.random.default_rng(0)
    witness = _rational_smooth_witness(dim)
    if not is_positive(witness):
        raise PreconditionError("smoothness witness failed its positivity spot-check")
    for _ in range(25):
        x = from_rows(domain, rng.integers(-3, 4, size=(dim, dim)).tolist())
        sq = x.star() @ x
        if sq.equals(witness):
            raise PreconditionError("smoothness witness spot-check failed")
        if not is_positive(sq):
            raise PreconditionError("antisymmetry spot-check failed: x^T x not positive")
        if not sq.is_zero() and is_positive(-sq):
            raise PreconditionError("antisymmetry spot-check failed: proper cone violated")
    return AxiomReport(proper=True, antisymmetric=True, smooth=False)
