"""The projection lattice: left projections, order, meet/join, invariance.

A projection carries its element together with a cached range basis; every
lattice operation goes through the subspace primitives so that exact and
floating domains share one code path.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import subspaces
from .domains import DomainKind, ScalarDomain
from .elements import Element, classify, identity
from .errors import EmptyFamilyError, PreconditionError


@dataclass(frozen=True)
class Projection:
    """A self-adjoint idempotent with a cached basis of its range."""

    element: Element
    range_basis: np.ndarray = field(repr=False)

    @property
    def domain(self) -> ScalarDomain:
        return self.element.domain

    @property
    def dim(self) -> int:
        return self.element.dim

    @property
    def rank(self) -> int:
        return self.range_basis.shape[1]

    def complement(self) -> "Projection":
        one = identity(self.domain, self.dim)
        return from_element(one - self.element)

    def equals(self, other: "Projection") -> bool:
        return self.element.equals(other.element)


def from_basis(domain: ScalarDomain, dim: int, basis: np.ndarray) -> Projection:
    mat = subspaces.proj_matrix(domain, basis)
    return Projection(Element(domain, mat), basis)


def from_element(e: Element) -> Projection:
    """Wrap an element that is already (close to) a projection."""
    p2 = e @ e
    if not (p2.equals(e) and e.star().equals(e)):
        raise PreconditionError("element is not a projection")
    basis = subspaces.orth(e.domain, e.mat)
    return Projection(e, basis)


def zero_projection(domain: ScalarDomain, dim: int) -> Projection:
    return from_basis(domain, dim, subspaces.empty_basis(domain, dim))


def identity_projection(domain: ScalarDomain, dim: int) -> Projection:
    return from_element(identity(domain, dim))


def left_projection(a: Element) -> Projection:
    """[a]: the smallest projection with [a] a = a (range projection).

    Satisfies the annihilator law  b a = 0  iff  b [a] = 0.
    """
    basis = subspaces.orth(a.domain, a.mat)
    return from_basis(a.domain, a.dim, basis)


def proj_leq(p: Projection, q: Projection) -> bool:
    """p <= q in the sense p q = p."""
    return (p.element @ q.element).equals(p.element)


def proj_inf(family: Sequence[Projection]) -> Projection:
    """Largest projection below every member (range intersection)."""
    family = list(family)
    if not family:
        raise EmptyFamilyError("proj_inf of an empty family")
    first = family[0]
    basis = first.range_basis
    for p in family[1:]:
        first.element._check(p.element)
        basis = subspaces.intersect(first.domain, basis, p.range_basis)
    return from_basis(first.domain, first.dim, basis)


def proj_sup(family: Sequence[Projection]) -> Projection:
    """Smallest projection above every member (span of the union)."""
    family = list(family)
    if not family:
        raise EmptyFamilyError("proj_sup of an empty family")
    first = family[0]
    for p in family[1:]:
        first.element._check(p.element)
    joined = np.concatenate([p.range_basis for p in family], axis=1)
    return from_basis(first.domain, first.dim, subspaces.orth(first.domain, joined))


def is_invariant(p: Projection, x: Element) -> bool:
    """x-invariance of p: x p = p x p."""
    xp = x @ p.element
    return xp.equals(p.element @ xp)


def commutes(a: Element, b: Element) -> bool:
    return (a @ b).equals(b @ a)


def doubly_commutes(a: Element, b: Element) -> bool:
    return commutes(a, b) and commutes(a, b.star())


def right_annihilator_projection(elements: Sequence[Element]) -> Projection:
    """The projection p with R(S) = p A, i.e. range(p) = ∩ ker(s)."""
    elements = list(elements)
    if not elements:
        raise EmptyFamilyError("annihilator of an empty set")
    domain, dim = elements[0].domain, elements[0].dim
    basis = subspaces.nullspace(domain, elements[0].mat)
    for s in elements[1:]:
        elements[0]._check(s)
        basis = subspaces.intersect(domain, basis, subspaces.nullspace(domain, s.mat))
    return from_basis(domain, dim, basis)


def key_identity_check(x: Element, q: Projection) -> bool:
    """[x q] = x q x* for an isometry x."""
    if not classify(x, 1).isometry:
        raise PreconditionError("key identity requires an isometry")
    lhs = left_projection(x @ q.element).element
    rhs = x @ q.element @ x.star()
    return lhs.equals(rhs)


@dataclass(frozen=True)
class ProjectionBasis:
    """A labelled, pairwise-orthogonal family of projections summing to 1."""

    members: tuple  # of (label, Projection)

    def labels(self):
        return [lbl for lbl, _ in self.members]

    def __getitem__(self, label: str) -> Projection:
        for lbl, p in self.members:
            if lbl == label:
                return p
        raise KeyError(label)

    def residuals(self) -> dict:
        """Orthogonality and sum-to-one residuals (Frobenius norms)."""
        out = {}
        items = list(self.members)
        total = None
        for i, (li, pi) in enumerate(items):
            total = pi.element if total is None else total + pi.element
            for lj, pj in items[i + 1 :]:
                out[f"orth[{li},{lj}]"] = (pi.element @ pj.element).norm()
        one = identity(items[0][1].domain, items[0][1].dim)
        out["sum_to_one"] = (total - one).norm()
        return out

    def verify(self, tol: float | None = None) -> bool:
        dom = self.members[0][1].domain
        if tol is None:
            tol = 0.0 if dom.exact else dom.tol.eps_eq * self.members[0][1].dim
        return all(v <= tol for v in self.residuals().values())
