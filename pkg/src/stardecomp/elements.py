"""Elements of the concrete matrix *-rings and their classification."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .domains import DomainKind, ScalarDomain
from .errors import DomainMismatchError, MalformedElementError


@dataclass(frozen=True)
class Element:
    """A square matrix over a declared scalar domain.

    The adjoint is plain transpose for the exact domains and conjugate
    transpose for complex floats; in every implemented domain the involution
    is proper (a a* = 0 forces a = 0).
    """

    domain: ScalarDomain
    mat: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = self.mat
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
            raise MalformedElementError(f"expected a nonempty square matrix, got shape {m.shape}")
        if self.domain.kind is DomainKind.GF and self.domain.dim != m.shape[0]:
            raise MalformedElementError(
                f"GF domain is for {self.domain.dim}x{self.domain.dim} matrices, got {m.shape[0]}"
            )
        m.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def _wrap(self, mat: np.ndarray) -> "Element":
        if self.domain.exact:
            mat = linalg.normalize(self.domain, mat)
        return Element(self.domain, mat)

    def _check(self, other: "Element"):
        if self.domain != other.domain or self.dim != other.dim:
            raise DomainMismatchError(f"{self.domain}/{self.dim} vs {other.domain}/{other.dim}")

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        return self._wrap(self.mat + other.mat)

    def __sub__(self, other: "Element") -> "Element":
        self._check(other)
        return self._wrap(self.mat - other.mat)

    def __neg__(self) -> "Element":
        return self._wrap(-self.mat)

    def __matmul__(self, other: "Element") -> "Element":
        self._check(other)
        return self._wrap(self.mat @ other.mat)

    def scale(self, scalar) -> "Element":
        return self._wrap(self.mat * self.domain.coerce(scalar))

    def star(self) -> "Element":
        if self.domain.kind is DomainKind.COMPLEX:
            return Element(self.domain, self.mat.conj().T.copy())
        return Element(self.domain, self.mat.T.copy())

    def power(self, n: int) -> "Element":
        if n < 0:
            raise ValueError("negative powers are not defined")
        out = identity(self.domain, self.dim)
        base = self
        while n:
            if n & 1:
                out = out @ base
            n >>= 1
            if n:
                base = base @ base
        return out

    def is_zero(self) -> bool:
        if self.domain.exact:
            return bool(np.all(self.mat == self.domain.zero()))
        return self.norm() <= self.domain.tol.eps_eq * self.dim

    def norm(self) -> float:
        """Frobenius norm (floats of the entries for exact domains)."""
        if self.domain.kind is DomainKind.COMPLEX:
            return float(np.linalg.norm(self.mat))
        return float(np.sqrt(sum(float(v) ** 2 for v in self.mat.flat)))

    def equals(self, other: "Element") -> bool:
        self._check(other)
        return (self - other).is_zero()

    def to_float(self) -> np.ndarray:
        if self.domain.kind is DomainKind.COMPLEX:
            return self.mat
        return self.mat.astype(float)


def from_rows(domain: ScalarDomain, rows) -> Element:
    """Build an Element from nested scalars, coercing into the domain."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise MalformedElementError("rows of unequal length")
    if domain.kind is DomainKind.COMPLEX:
        mat = np.array([[complex(v) for v in r] for r in rows], dtype=complex)
    else:
        mat = np.empty((n, n), dtype=object)
        for i, r in enumerate(rows):
            for j, v in enumerate(r):
                mat[i, j] = domain.coerce(v)
    return Element(domain, mat)


def identity(domain: ScalarDomain, dim: int) -> Element:
    if domain.kind is DomainKind.COMPLEX:
        return Element(domain, np.eye(dim, dtype=complex))
    return Element(domain, linalg.eye(domain, dim))


def zero(domain: ScalarDomain, dim: int) -> Element:
    if domain.kind is DomainKind.COMPLEX:
        return Element(domain, np.zeros((dim, dim), dtype=complex))
    return Element(domain, linalg.zeros(domain, dim, dim))


@dataclass(frozen=True)
class ElementClass:
    """Truth values of the defining identities for one element."""

    projection: bool
    partial_isometry: bool
    isometry: bool
    co_isometry: bool
    unitary: bool
    power_partial_isometry: bool
    contraction: bool

    def flags(self) -> dict:
        return {
            "projection": self.projection,
            "partial-isometry": self.partial_isometry,
            "isometry": self.isometry,
            "co-isometry": self.co_isometry,
            "unitary": self.unitary,
            "power-partial-isometry": self.power_partial_isometry,
            "contraction": self.contraction,
        }


def is_partial_isometry(a: Element) -> bool:
    return (a @ a.star() @ a).equals(a)


def classify(a: Element, n_max: int) -> ElementClass:
    """Evaluate every classification identity, exactly or within tolerance.

    power-partial-isometry checks x^n (x^n)* x^n = x^n for 1 <= n <= n_max.
    """
    if n_max < 1:
        raise ValueError("n_max must be positive")
    one = identity(a.domain, a.dim)
    astar = a.star()
    proj = a.equals(astar) and (a @ a).equals(a)
    pi = is_partial_isometry(a)
    iso = (astar @ a).equals(one)
    coiso = (a @ astar).equals(one)
    ppi = pi
    if pi:
        pw = a
        for _ in range(2, n_max + 1):
            pw = pw @ a
            if not is_partial_isometry(pw):
                ppi = False
                break
    # positivity of 1 - x*x decides the contraction flag, per domain
    defect = one - astar @ a
    if a.domain.kind is DomainKind.COMPLEX:
        from .floatring import is_positive_float

        contraction = is_positive_float(defect)
    else:
        from .exactrings import is_positive

        contraction = is_positive(defect)
    return ElementClass(
        projection=proj,
        partial_isometry=pi,
        isometry=iso,
        co_isometry=coiso,
        unitary=iso and coiso,
        power_partial_isometry=ppi,
        contraction=contraction,
    )
