"""Scalar domains underlying the concrete matrix *-rings.

Three kinds are supported: exact rationals (transpose involution),
complex floats (conjugate-transpose involution, tolerance governed) and
prime fields F_p (transpose involution, validated at construction).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction


class DomainKind(enum.Enum):
    RATIONAL = "rational"
    COMPLEX = "complex-float"
    GF = "finite-field"


@dataclass(frozen=True)
class TolerancePolicy:
    """All floating-point cutoffs used by the complex domain.

    eps_rank: relative singular-value cutoff for rank decisions.
    eps_eq:   projection / element equality tolerance.
    eps_psd:  eigenvalue floor for the positivity test.
    """

    eps_rank: float = 1e-10
    eps_eq: float = 1e-8
    eps_psd: float = 1e-9

    def __post_init__(self):
        if not (self.eps_rank > 0 and self.eps_eq > 0 and self.eps_psd > 0):
            raise ValueError("all tolerances must be strictly positive")


@dataclass(frozen=True)
class ScalarDomain:
    """A scalar domain tag carried by every Element.

    For GF the matrix size is part of the domain because properness of the
    involution depends on it; use exactrings.construct_gf_ring to build one.
    Exact domains carry no tolerance.
    """

    kind: DomainKind
    p: int | None = None
    dim: int | None = None
    tol: TolerancePolicy | None = None

    @property
    def exact(self) -> bool:
        return self.kind is not DomainKind.COMPLEX

    def zero(self):
        if self.kind is DomainKind.RATIONAL:
            return Fraction(0)
        if self.kind is DomainKind.GF:
            return 0
        return 0j

    def one(self):
        if self.kind is DomainKind.RATIONAL:
            return Fraction(1)
        if self.kind is DomainKind.GF:
            return 1
        return 1 + 0j

    def coerce(self, value):
        """Normalise a raw scalar into this domain's representation."""
        if self.kind is DomainKind.RATIONAL:
            return Fraction(value)
        if self.kind is DomainKind.GF:
            return int(value) % self.p
        return complex(value)

    def inv(self, value):
        if self.kind is DomainKind.RATIONAL:
            return Fraction(1) / value
        if self.kind is DomainKind.GF:
            return pow(int(value), self.p - 2, self.p)
        return 1.0 / value

    def __repr__(self):  # keep reports readable
        if self.kind is DomainKind.GF:
            return f"gf({self.p},dim={self.dim})"
        if self.kind is DomainKind.RATIONAL:
            return "rational"
        return "complex-float"


def rational_domain() -> ScalarDomain:
    return ScalarDomain(DomainKind.RATIONAL)


def complex_domain(tol: TolerancePolicy | None = None) -> ScalarDomain:
    return ScalarDomain(DomainKind.COMPLEX, tol=tol or TolerancePolicy())


RATIONAL = rational_domain()
COMPLEX = complex_domain()
