"""Floating-point complex matrix domain: tolerance-governed projections
and positivity via eigenvalue bounds."""

from __future__ import annotations

import numpy as np

from . import subspaces
from .domains import DomainKind
from .elements import Element
from .errors import DomainMismatchError, PreconditionError
from .projections import Projection, from_basis


def _require_complex(e: Element):
    if e.domain.kind is not DomainKind.COMPLEX:
        raise PreconditionError("float-ring operation on a non-float element")


def range_projection_numeric(a: Element) -> Projection:
    """Projection onto the numerical column space at the eps_rank cutoff."""
    _require_complex(a)
    return from_basis(a.domain, a.dim, subspaces.orth(a.domain, a.mat))


def subspace_intersection(p: Projection, q: Projection) -> Projection:
    """Meet of two float projections via the stacked-complement null space."""
    _require_complex(p.element)
    if p.dim != q.dim:
        raise DomainMismatchError("dimension mismatch in subspace_intersection")
    n = p.dim
    stacked = np.concatenate(
        [np.eye(n) - p.element.mat, np.eye(n) - q.element.mat], axis=0
    )
    basis = subspaces.nullspace(p.domain, stacked)
    return from_basis(p.domain, n, basis)


def is_positive_float(a: Element) -> bool:
    """Self-adjoint within eps_eq and min eigenvalue >= -eps_psd (relative)."""
    _require_complex(a)
    tol = a.domain.tol
    scale = max(a.norm(), 1.0)
    if (a - a.star()).norm() > tol.eps_eq * scale:
        return False
    herm = (a.mat + a.mat.conj().T) / 2
    return float(np.linalg.eigvalsh(herm).min()) >= -tol.eps_psd * scale
