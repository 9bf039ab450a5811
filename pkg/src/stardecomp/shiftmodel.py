"""Constructor algebra for the infinite-dimensional model operators.

Expressions are built from unitary blocks, unilateral/backward shifts,
truncated shifts, direct sums, compositions and the two quarter-plane grid
generators.  `truncate` realises an expression as a complex matrix; results
of downstream decompositions are trusted only on the probe window, because
truncation corrupts at most one tail coordinate per applied power.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .domains import ScalarDomain, complex_domain
from .elements import Element
from .errors import PreconditionError, TruncationTooSmallError
from .projections import Projection, from_element


@dataclass(frozen=True)
class Unitary:
    mat: tuple  # rows of complex entries, kept hashable

    def matrix(self) -> np.ndarray:
        return np.array(self.mat, dtype=complex)


@dataclass(frozen=True)
class Shift:
    mult: int = 1


@dataclass(frozen=True)
class BackShift:
    mult: int = 1


@dataclass(frozen=True)
class Trunc:
    n: int


@dataclass(frozen=True)
class DirectSum:
    terms: tuple


@dataclass(frozen=True)
class Compose:
    f: "OperatorExpr"
    g: "OperatorExpr"


@dataclass(frozen=True)
class Adjoint:
    inner: "OperatorExpr"


@dataclass(frozen=True)
class GridShift:
    axis: int  # 1 or 2


OperatorExpr = Union[Unitary, Shift, BackShift, Trunc, DirectSum, Compose, Adjoint, GridShift]


def unitary(rows) -> Unitary:
    u = np.array(rows, dtype=complex)
    if not np.allclose(u.conj().T @ u, np.eye(u.shape[0])):
        raise PreconditionError("Unitary block is not unitary")
    return Unitary(tuple(tuple(row) for row in u))


def direct_sum(*terms: OperatorExpr) -> DirectSum:
    return DirectSum(tuple(terms))


def compose(*factors: OperatorExpr) -> OperatorExpr:
    out = factors[0]
    for f in factors[1:]:
        out = Compose(out, f)
    return out


def shift_power(k: int, mult: int = 1) -> OperatorExpr:
    return compose(*([Shift(mult)] * k))


# segment kinds: ("finite", d) | ("tail", m) | ("grid",)


def space(e: OperatorExpr) -> tuple:
    if isinstance(e, Unitary):
        return (("finite", len(e.mat)),)
    if isinstance(e, Trunc):
        return (("finite", e.n),)
    if isinstance(e, (Shift, BackShift)):
        return (("tail", e.mult),)
    if isinstance(e, GridShift):
        return (("grid",),)
    if isinstance(e, DirectSum):
        return sum((space(t) for t in e.terms), ())
    if isinstance(e, Adjoint):
        return space(e.inner)
    if isinstance(e, Compose):
        sf, sg = space(e.f), space(e.g)
        if sf != sg:
            raise PreconditionError("Compose requires identical space descriptors")
        return sf
    raise PreconditionError(f"unknown expression node {e!r}")


def _segment_dim(seg: tuple, n: int) -> int:
    kind = seg[0]
    if kind == "finite":
        return seg[1]
    if kind == "tail":
        return seg[1] * n
    return n * n


def total_dim(e: OperatorExpr, n: int) -> int:
    return sum(_segment_dim(s, n) for s in space(e))


def _matrix(e: OperatorExpr, n: int) -> np.ndarray:
    if isinstance(e, Unitary):
        return e.matrix()
    if isinstance(e, Trunc):
        return np.eye(e.n, k=-1, dtype=complex)
    if isinstance(e, Shift):
        tail = np.eye(n, k=-1, dtype=complex)
        return _block_diag([tail] * e.mult)
    if isinstance(e, BackShift):
        tail = np.eye(n, k=1, dtype=complex)
        return _block_diag([tail] * e.mult)
    if isinstance(e, GridShift):
        m = np.zeros((n * n, n * n), dtype=complex)
        for i in range(n):
            for j in range(n):
                if e.axis == 1 and i + 1 < n:
                    m[(i + 1) * n + j, i * n + j] = 1
                if e.axis == 2 and j + 1 < n:
                    m[i * n + j + 1, i * n + j] = 1
        return m
    if isinstance(e, DirectSum):
        return _block_diag([_matrix(t, n) for t in e.terms])
    if isinstance(e, Compose):
        space(e)  # validates descriptors
        return _matrix(e.f, n) @ _matrix(e.g, n)
    if isinstance(e, Adjoint):
        return _matrix(e.inner, n).conj().T
    raise PreconditionError(f"unknown expression node {e!r}")


def _block_diag(blocks) -> np.ndarray:
    dim = sum(b.shape[0] for b in blocks)
    out = np.zeros((dim, dim), dtype=complex)
    at = 0
    for b in blocks:
        d = b.shape[0]
        out[at : at + d, at : at + d] = b
        at += d
    return out


def _window_indicator(segments: tuple, n: int, w: int) -> np.ndarray:
    flags = []
    for seg in segments:
        if seg[0] == "finite":
            flags.extend([1.0] * seg[1])
        elif seg[0] == "tail":
            for _ in range(seg[1]):
                flags.extend([1.0] * w + [0.0] * (n - w))
        else:
            for i in range(n):
                for j in range(n):
                    flags.append(1.0 if i < w and j < w else 0.0)
    return np.array(flags)


@dataclass(frozen=True)
class Truncation:
    element: Element
    window: Projection
    w: int
    n: int


def truncate(e: OperatorExpr, n: int, n_max: int = 16, window: int | None = None,
             domain: ScalarDomain | None = None) -> Truncation:
    """Numeric realisation on the truncated basis, with its probe window.

    Each shift tail keeps its first n coordinates and kills the last basis
    vector; the window spans the first w coordinates per tail, at most
    n - n_max (the region truncation cannot corrupt within n_max powers).
    """
    segs = space(e)
    finite_dims = [s[1] for s in segs if s[0] == "finite"]
    if finite_dims and n < 2 * max(finite_dims):
        raise TruncationTooSmallError(f"n={n} < twice the largest finite segment")
    w = window if window is not None else n - n_max
    if w < 1 or w > n - n_max:
        raise TruncationTooSmallError(f"window {w} outside the trusted range 1..{n - n_max}")
    domain = domain or complex_domain()
    elem = Element(domain, _matrix(e, n))
    wind = from_element(Element(domain, np.diag(_window_indicator(segs, n, w)).astype(complex)))
    return Truncation(element=elem, window=wind, w=w, n=n)


@dataclass(frozen=True)
class GroundTruth:
    """Exact segment-indicator projections for a constructor expression."""

    labels: tuple  # one label per segment
    projections: dict  # label -> Projection


def _wold_labels(e: OperatorExpr) -> tuple:
    if isinstance(e, Unitary):
        return ("u",)
    if isinstance(e, (Shift, GridShift)):
        return ("s",)
    if isinstance(e, DirectSum):
        return sum((_wold_labels(t) for t in e.terms), ())
    if isinstance(e, Compose):
        lf, lg = _wold_labels(e.f), _wold_labels(e.g)
        return tuple("u" if a == b == "u" else "s" for a, b in zip(lf, lg))
    if isinstance(e, Adjoint):
        inner = _wold_labels(e.inner)
        if any(l != "u" for l in inner):
            raise PreconditionError("adjoint of a non-unitary expression is not an isometry")
        return inner
    raise PreconditionError(f"{type(e).__name__} is not an isometry expression")


def _hw_labels(e: OperatorExpr) -> tuple:
    if isinstance(e, Unitary):
        return ("u",)
    if isinstance(e, (Shift, GridShift)):
        return ("s",)
    if isinstance(e, BackShift):
        return ("b",)
    if isinstance(e, Trunc):
        return ("t",)
    if isinstance(e, DirectSum):
        return sum((_hw_labels(t) for t in e.terms), ())
    if isinstance(e, Adjoint):
        swap = {"u": "u", "s": "b", "b": "s", "t": "t"}
        return tuple(swap[l] for l in _hw_labels(e.inner))
    if isinstance(e, Compose):
        lf, lg = _hw_labels(e.f), _hw_labels(e.g)
        if any(l in ("b", "t") for l in lf + lg):
            raise PreconditionError("composition ground truth only covers isometry segments")
        return tuple("u" if a == b == "u" else "s" for a, b in zip(lf, lg))
    raise PreconditionError(f"unknown expression node {e!r}")


def _indicator_truth(e: OperatorExpr, labels: tuple, label_set: tuple, n: int) -> GroundTruth:
    segs = space(e)
    dims = [_segment_dim(s, n) for s in segs]
    dom = complex_domain()
    total = sum(dims)
    projections = {}
    for lbl in label_set:
        diag = np.zeros(total)
        at = 0
        for seg_lbl, d in zip(labels, dims):
            if seg_lbl == lbl:
                diag[at : at + d] = 1.0
            at += d
        projections[lbl] = from_element(Element(dom, np.diag(diag).astype(complex)))
    return GroundTruth(labels=labels, projections=projections)


def ground_truth_wold(e: OperatorExpr, n: int) -> GroundTruth:
    """Exact Wold projections {u, s} as segment indicators (truncated layout)."""
    return _indicator_truth(e, _wold_labels(e), ("u", "s"), n)


def ground_truth_hw(e: OperatorExpr, n: int) -> GroundTruth:
    """Exact four-part projections {u, s, b, t} as segment indicators."""
    return _indicator_truth(e, _hw_labels(e), ("u", "s", "b", "t"), n)


_U1 = ((0.6 + 0.8j,),)
_U2 = ((0 + 1j,),)
_U2X2 = ((0.6 + 0.8j, 0), (0, -1))
_U2X2B = ((1j, 0), (0, 0.8 + 0.6j))


def pair_instances(name: str):
    """Documented catalog of commuting expression pairs."""
    catalog = {
        "grid": (GridShift(1), GridShift(2)),
        "equal-shift": (Shift(1), Shift(1)),
        "powers": (shift_power(2), shift_power(3)),
        "unitary-pair": (Unitary(_U2X2), Unitary(_U2X2B)),
        "mixed": (
            direct_sum(Unitary(_U2X2), Shift(1)),
            direct_sum(Unitary(_U2X2B), Shift(1)),
        ),
    }
    if name not in catalog:
        raise KeyError(f"unknown pair instance {name!r}; choose from {sorted(catalog)}")
    return catalog[name]


def embedding_indices(e: OperatorExpr, n_small: int, n_big: int):
    """Coordinate maps identifying the n_small layout inside the n_big one."""
    segs = space(e)
    idx_small, idx_big = [], []
    at_s = at_b = 0
    for seg in segs:
        ds, db = _segment_dim(seg, n_small), _segment_dim(seg, n_big)
        if seg[0] == "finite":
            for i in range(ds):
                idx_small.append(at_s + i)
                idx_big.append(at_b + i)
        elif seg[0] == "tail":
            for t in range(seg[1]):
                for i in range(n_small):
                    idx_small.append(at_s + t * n_small + i)
                    idx_big.append(at_b + t * n_big + i)
        else:
            for i in range(n_small):
                for j in range(n_small):
                    idx_small.append(at_s + i * n_small + j)
                    idx_big.append(at_b + i * n_big + j)
        at_s += ds
        at_b += db
    return np.array(idx_small), np.array(idx_big)
