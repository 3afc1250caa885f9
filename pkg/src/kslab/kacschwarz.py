"""Exact verification of Kac-Schwarz relations on truncated bases.

Every check compares coefficients only where both sides are reliable (see
``ZSeries.tail_order``) and reports the first offending coefficients.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from .coeff import Scalar
from .laurent import ZSeries
from .models import (
    ModelId,
    build_basis,
    build_ks,
    build_phi,
    commutator_rhs,
    ladder_data,
)
from .qtorus import TorusOp, op_apply, op_commutator

__all__ = [
    "CheckReport",
    "check_annihilation",
    "check_ladder",
    "check_recursion",
    "check_commutator",
    "basis_reduce",
    "check_w_constraints",
    "perturb",
    "run_suite",
]

MAX_RESIDUAL_TERMS = 5


@dataclass
class CheckReport:
    check_name: str
    model: str
    params: dict = field(default_factory=dict)
    residual: list = field(default_factory=list)
    notes: str = ""

    @property
    def status(self) -> str:
        return "pass" if not self.residual else "fail"

    @property
    def passed(self) -> bool:
        return not self.residual

    def sort_key(self):
        return (self.check_name, self.model, json.dumps(self.params, sort_keys=True))

    def to_json(self) -> dict:
        out = {
            "check": self.check_name,
            "model": self.model,
            "params": self.params,
            "status": self.status,
            "residual": [[k, str(c)] for k, c in self.residual],
        }
        if self.notes:
            out["notes"] = self.notes
        return out


def _residual(lhs: ZSeries, rhs: ZSeries, limit=MAX_RESIDUAL_TERMS) -> list:
    """Nonzero coefficients of lhs - rhs on the common reliable range."""
    diff = lhs - rhs
    out = []
    for k in sorted(diff.coeffs, reverse=True):
        out.append((k, diff.coeffs[k]))
        if len(out) >= limit:
            break
    return out


def perturb(f: ZSeries, exponent: int, delta=1) -> ZSeries:
    """Copy of f with the z^exponent coefficient shifted by delta (mutation hook)."""
    coeffs = dict(f.coeffs)
    coeffs[exponent] = f[exponent] + delta
    return ZSeries(coeffs, f.tail_order)


def _basis(model, j_max, N, basis):
    if basis is None:
        return build_basis(model, j_max, N)
    if len(basis) < j_max + 1:
        raise ValueError(f"need {j_max + 1} basis vectors, got {len(basis)}")
    return list(basis)


def check_annihilation(model: ModelId, N: int = 40, basis: Sequence[ZSeries] | None = None) -> CheckReport:
    """P0 phi_0 == 0 on the reliable range."""
    if N < 1:
        raise ValueError("N must be at least 1")
    P, _ = build_ks(model)
    phi0 = _basis(model, 0, N, basis)[0]
    out = op_apply(P, phi0)
    zero = ZSeries({}, out.tail_order)
    return CheckReport(
        "annihilation", str(model), {"N": N, "certified_tail": out.tail_order}, _residual(out, zero)
    )


def check_ladder(
    model: ModelId, j_max: int = 8, N: int = 40, basis: Sequence[ZSeries] | None = None
) -> CheckReport:
    """Q0 phi_j == c_j phi_{j+1} for 0 <= j <= j_max."""
    _, Q0 = build_ks(model)
    B = _basis(model, j_max + 1, N, basis)
    residual = []
    for j in range(j_max + 1):
        c = ladder_data(model, j).ladder_constant
        res = _residual(op_apply(Q0, B[j]), B[j + 1].scale(c))
        if res:
            residual = [(k, v) for k, v in res]
            return CheckReport("ladder", str(model), {"j_max": j_max, "N": N, "failed_j": j}, residual)
    return CheckReport("ladder", str(model), {"j_max": j_max, "N": N}, residual)


def check_recursion(
    model: ModelId, j_max: int = 8, N: int = 40, basis: Sequence[ZSeries] | None = None
) -> CheckReport:
    """P0 phi_j == alpha_j phi_j + beta_j phi_{j-1} for 1 <= j <= j_max."""
    if j_max < 1:
        raise ValueError("j_max must be at least 1")
    P, _ = build_ks(model)
    B = _basis(model, j_max, N, basis)
    for j in range(1, j_max + 1):
        L = ladder_data(model, j)
        rhs = B[j].scale(L.alpha) + B[j - 1].scale(L.beta)
        res = _residual(op_apply(P, B[j]), rhs)
        if res:
            return CheckReport("recursion", str(model), {"j_max": j_max, "N": N, "failed_j": j}, res)
    return CheckReport("recursion", str(model), {"j_max": j_max, "N": N}, [])


def _op_residual(A: TorusOp, limit=MAX_RESIDUAL_TERMS) -> list:
    out = []
    for (m, n), c in sorted(A.atoms.items()):
        out.append((f"z^{m} E^{n}", c[0] if len(c) == 1 else c))
        if len(out) >= limit:
            break
    return out


def check_commutator(model: ModelId, j_max: int = 3, N: int = 12) -> CheckReport:
    """[P0, Q0] against the displayed right-hand side.

    Checked twice: as exact TorusOp equality, and on the basis by applying
    P0 Q0 - Q0 P0 - RHS to phi_j as separate series actions.
    """
    P, Q0 = build_ks(model)
    rhs = commutator_rhs(model)
    diff = op_commutator(P, Q0) - rhs
    params = {"operator_level": diff.is_zero(), "series_j_max": j_max, "N": N}
    if not diff.is_zero():
        residual = [(k, _text(v)) for k, v in _op_residual(diff)]
        return CheckReport("commutator", str(model), params, residual)
    for j in range(j_max + 1):
        phi = build_phi(model, j, N)
        lhs = op_apply(P, op_apply(Q0, phi)) - op_apply(Q0, op_apply(P, phi))
        res = _residual(lhs, op_apply(rhs, phi))
        if res:
            params["failed_j"] = j
            return CheckReport("commutator", str(model), params, res)
    return CheckReport("commutator", str(model), params, [])


def _text(v):
    if isinstance(v, Scalar):
        return v
    return "(" + ", ".join(str(x) for x in v) + ")"


def basis_reduce(f: ZSeries, basis: Sequence[ZSeries], N: int | None = None):
    """Triangular solve of f against an admissible basis.

    Returns ``(coeffs, residual)`` where ``f = sum coeffs[j] basis[j] + residual``
    and the residual only has exponents < 0.  The residual's tail_order is the
    certified range (optionally capped at ``N``).
    """
    top = f.top
    if top is not None and top >= len(basis):
        raise ValueError(f"f has degree {top}; need basis elements up to phi_{top}")
    coeffs = [Scalar(0)] * len(basis)
    rest = f
    for e in range(top if top is not None else -1, -1, -1):
        c = rest.coeffs.get(e)
        if c is None or c.is_zero():
            continue
        phi = basis[e]
        if phi.top != e or not phi[e].is_one():
            raise ValueError(f"basis element {e} is not of the form z^{e} + lower")
        coeffs[e] = c
        rest = rest - phi.scale(c)
    if N is not None and (rest.tail_order is None or rest.tail_order > N):
        rest = rest.truncate(N)
    return coeffs, rest


def check_w_constraints(
    model: ModelId,
    k_max: int = 3,
    l_max: int = 3,
    j_max: int = 4,
    N: int = 30,
    max_total: int | None = 3,
    basis: Sequence[ZSeries] | None = None,
) -> CheckReport:
    """P0^k Q0^l phi_j reduces against the basis with zero residual."""
    P, Q0 = build_ks(model)
    B = _basis(model, j_max + l_max, N, basis)
    tails = []
    for j in range(j_max + 1):
        for l in range(l_max + 1):
            g = B[j]
            for _ in range(l):
                g = op_apply(Q0, g)
            for k in range(k_max + 1):
                if max_total is not None and k + l > max_total:
                    break
                if k:
                    g = op_apply(P, g)
                _, res = basis_reduce(g, B)
                tails.append(res.tail_order)
                if not res.is_zero():
                    params = {"k": k, "l": l, "j": j, "N": N, "certified_tail": res.tail_order}
                    return CheckReport("w_constraints", str(model), params, _residual(res, ZSeries({})))
    params = {
        "k_max": k_max,
        "l_max": l_max,
        "j_max": j_max,
        "max_total": max_total,
        "N": N,
        "certified_tail": min(tails),
    }
    if min(tails) < 1:
        return CheckReport("w_constraints", str(model), params, [(0, "empty certified window")])
    return CheckReport("w_constraints", str(model), params, [])


def run_suite(model: ModelId, N: int = 40, j_max: int = 8) -> list[CheckReport]:
    reports = [
        check_annihilation(model, N),
        check_ladder(model, j_max, N),
        check_recursion(model, max(j_max, 1), N),
        check_commutator(model),
    ]
    return sorted(reports, key=CheckReport.sort_key)
