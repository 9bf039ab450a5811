"""Spec-file parsing and report formatting.

Exact scalars travel as strings ("a/b" rationals, integers for field
elements, "re+im i" for complex entries) so JSON round-trips never lose
exactness.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction

from .domains import DomainKind, ScalarDomain, TolerancePolicy, complex_domain, rational_domain
from .elements import Element, from_rows
from .errors import SpecFileError
from . import shiftmodel

_NUM = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX_RE = re.compile(rf"^\s*({_NUM})\s*(?:([+-])\s*({_NUM})?\s*i)?\s*$")


def parse_scalar(domain: ScalarDomain, raw):
    """One scalar from its JSON representation into the domain."""
    try:
        if domain.kind is DomainKind.RATIONAL:
            return Fraction(raw) if isinstance(raw, str) else Fraction(int(raw))
        if domain.kind is DomainKind.GF:
            return int(raw) % domain.p
        if isinstance(raw, (int, float)):
            return complex(raw)
        m = _COMPLEX_RE.match(str(raw))
        if not m:
            raise ValueError(raw)
        real = float(m.group(1))
        imag = 0.0
        if m.group(2):
            mag = m.group(3)
            imag = float(mag) if mag else 1.0
            if m.group(2) == "-":
                imag = -imag
        return complex(real, imag)
    except (ValueError, ZeroDivisionError) as exc:
        raise SpecFileError(f"bad scalar {raw!r} for domain {domain}") from exc


def format_scalar(domain: ScalarDomain, value):
    if domain.kind is DomainKind.RATIONAL:
        return str(value)
    if domain.kind is DomainKind.GF:
        return int(value)
    v = complex(value)
    sign = "+" if v.imag >= 0 else "-"
    return f"{v.real:.17g}{sign}{abs(v.imag):.17g} i"


def parse_ring(obj) -> ScalarDomain:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise SpecFileError("ring section must be an object with a 'kind'")
    kind = obj["kind"]
    if kind == "rational":
        return rational_domain()
    if kind == "complex-float":
        tol = obj.get("tolerance")
        policy = TolerancePolicy(eps_eq=float(tol)) if tol is not None else None
        return complex_domain(policy)
    if kind == "gf":
        from .exactrings import construct_gf_ring

        if "p" not in obj or "dim" not in obj:
            raise SpecFileError("gf ring needs fields 'p' and 'dim'")
        return construct_gf_ring(int(obj["p"]), int(obj["dim"]))
    raise SpecFileError(f"unknown ring kind {kind!r}")


def parse_matrix(domain: ScalarDomain, rows) -> Element:
    if not isinstance(rows, list) or not rows:
        raise SpecFileError("matrix must be a nonempty list of rows")
    n = len(rows)
    parsed = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise SpecFileError(f"matrix row {i}: expected {n} entries")
        out = []
        for j, cell in enumerate(row):
            try:
                out.append(parse_scalar(domain, cell))
            except SpecFileError as exc:
                raise SpecFileError(f"matrix entry (row {i}, column {j}): {exc}") from exc
        parsed.append(out)
    return from_rows(domain, parsed)


def matrix_to_json(e: Element):
    return [[format_scalar(e.domain, v) for v in row] for row in e.mat.tolist()]


_EXPR_PARSERS = {}


def parse_expr(obj) -> shiftmodel.OperatorExpr:
    """Nested constructor object -> OperatorExpr."""
    if not isinstance(obj, dict) or "op" not in obj:
        raise SpecFileError("expr node must be an object with an 'op'")
    op = obj["op"]
    try:
        if op == "unitary":
            return shiftmodel.unitary(
                [[parse_scalar(complex_domain(), v) for v in row] for row in obj["rows"]]
            )
        if op == "shift":
            return shiftmodel.Shift(int(obj.get("mult", 1)))
        if op == "back-shift":
            return shiftmodel.BackShift(int(obj.get("mult", 1)))
        if op == "trunc":
            return shiftmodel.Trunc(int(obj["n"]))
        if op == "grid-shift":
            return shiftmodel.GridShift(int(obj["axis"]))
        if op == "direct-sum":
            return shiftmodel.DirectSum(tuple(parse_expr(t) for t in obj["terms"]))
        if op == "compose":
            return shiftmodel.compose(*[parse_expr(t) for t in obj["factors"]])
        if op == "adjoint":
            return shiftmodel.Adjoint(parse_expr(obj["inner"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecFileError(f"malformed {op!r} expr node: {exc}") from exc
    raise SpecFileError(f"unknown expr op {op!r}")


def expr_to_json(e: shiftmodel.OperatorExpr):
    if isinstance(e, shiftmodel.Unitary):
        dom = complex_domain()
        return {"op": "unitary", "rows": [[format_scalar(dom, v) for v in row] for row in e.mat]}
    if isinstance(e, shiftmodel.Shift):
        return {"op": "shift", "mult": e.mult}
    if isinstance(e, shiftmodel.BackShift):
        return {"op": "back-shift", "mult": e.mult}
    if isinstance(e, shiftmodel.Trunc):
        return {"op": "trunc", "n": e.n}
    if isinstance(e, shiftmodel.GridShift):
        return {"op": "grid-shift", "axis": e.axis}
    if isinstance(e, shiftmodel.DirectSum):
        return {"op": "direct-sum", "terms": [expr_to_json(t) for t in e.terms]}
    if isinstance(e, shiftmodel.Compose):
        factors = []
        node = e
        while isinstance(node, shiftmodel.Compose):
            factors.append(node.g)
            node = node.f
        factors.append(node)
        return {"op": "compose", "factors": [expr_to_json(t) for t in reversed(factors)]}
    if isinstance(e, shiftmodel.Adjoint):
        return {"op": "adjoint", "inner": expr_to_json(e.inner)}
    raise SpecFileError(f"unknown expr node {e!r}")


@dataclass
class OperatorSpec:
    """Parsed spec file: a ring, its operators, and an optional pair."""

    domain: ScalarDomain
    operators: list  # Element or OperatorExpr entries
    pair: tuple | None

    def realised(self, truncation: int | None, n_max: int):
        """Concrete Elements (truncating exprs), plus the shared window."""
        out = []
        window = None
        for op in self.operators:
            if isinstance(op, Element):
                out.append(op)
            else:
                if truncation is None:
                    raise SpecFileError("expr operators need --truncation")
                tr = shiftmodel.truncate(op, truncation, n_max=n_max)
                out.append(tr.element)
                window = tr.window
        return out, window

    def pair_operators(self, truncation: int | None, n_max: int):
        if self.pair is None:
            raise SpecFileError("this method needs a 'pair' declaration in the spec file")
        ops, window = self.realised(truncation, n_max)
        i, j = self.pair
        return ops[i], ops[j], window


def parse_spec(data) -> OperatorSpec:
    if not isinstance(data, dict):
        raise SpecFileError("spec file must be a JSON object")
    if "ring" not in data or "operators" not in data:
        raise SpecFileError("spec file needs 'ring' and 'operators' sections")
    domain = parse_ring(data["ring"])
    operators = []
    for k, op in enumerate(data["operators"]):
        if not isinstance(op, dict) or len(op.keys() & {"matrix", "expr"}) != 1:
            raise SpecFileError(f"operator {k}: exactly one of 'matrix' or 'expr' required")
        try:
            if "matrix" in op:
                operators.append(parse_matrix(domain, op["matrix"]))
            else:
                if domain.kind is not DomainKind.COMPLEX:
                    raise SpecFileError("expr operators require the complex-float ring")
                operators.append(parse_expr(op["expr"]))
        except SpecFileError as exc:
            raise SpecFileError(f"operator {k}: {exc}") from exc
    if not operators:
        raise SpecFileError("'operators' must be nonempty")
    pair = None
    if "pair" in data:
        pr = data["pair"]
        if (not isinstance(pr, list) or len(pr) != 2
                or any(not isinstance(i, int) or not 0 <= i < len(operators) for i in pr)):
            raise SpecFileError("'pair' must be two valid operator indices")
        pair = tuple(pr)
    return OperatorSpec(domain=domain, operators=operators, pair=pair)


def load_spec(path: str) -> OperatorSpec:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise SpecFileError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SpecFileError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    return parse_spec(data)


def report_to_json(report) -> dict:
    out = {
        "method": report.method,
        "block_classes": report.block_classes,
        "certificates": {k: float(v) for k, v in report.certificates.items()},
    }
    if report.basis is not None:
        out["labels"] = report.basis.labels()
        out["projections"] = {
            lbl: matrix_to_json(p.element) for lbl, p in report.basis.members
        }
        out["ranks"] = {lbl: p.rank for lbl, p in report.basis.members}
    if report.condition_vector is not None:
        out["condition_vector"] = [bool(c) for c in report.condition_vector]
    if report.holds is not None:
        out["holds"] = bool(report.holds)
    extras = {k: v for k, v in report.extras.items() if isinstance(v, (bool, int, float, str))}
    if extras:
        out["extras"] = extras
    return out


def report_to_text(report) -> str:
    lines = [f"method: {report.method}"]
    if report.condition_vector is not None:
        vec = " ".join(str(bool(c)).lower() for c in report.condition_vector)
        lines.append(f"condition vector: [{vec}]")
    if report.holds is not None:
        lines.append(f"holds: {report.holds}")
    if report.basis is not None:
        for lbl, p in report.basis.members:
            cls = report.block_classes.get(lbl, "")
            lines.append(f"block {lbl}: rank {p.rank}  {cls}")
    worst = max(report.certificates.values(), default=0.0)
    lines.append(f"certificates: {len(report.certificates)} checked, max residual {worst:.3e}")
    for k, v in sorted(report.certificates.items()):
        lines.append(f"  {k}: {float(v):.3e}")
    for k, v in report.extras.items():
        if isinstance(v, (bool, int, float, str)):
            lines.append(f"{k}: {v}")
    return "\n".join(lines)
