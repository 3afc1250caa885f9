"""Sato Grassmannian: Plucker coordinates, tau-functions and wave functions.

A point of the big cell is given by an admissible basis ``phi_j = z^j + lower``.
The Plucker coordinate of a partition lam is the minor of the coefficient
matrix ``M[k, j] = [z^k] phi_j`` with rows ``k_i = i - 1 - lam_i`` and columns
``0..n-1``; the tau-function is ``sum_lam pi_lam s_lam``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .boson import PPoly, schur_poly
from .coeff import ONE, ZERO, Scalar
from .laurent import ZSeries
from .partitions import Partition, partitions_upto

__all__ = [
    "AdmissibleBasis",
    "WindowError",
    "PLUCKER_CONVENTIONS",
    "plucker",
    "tau_from_basis",
    "sato_wave",
    "check_degeneration",
]

# "standard" is the frozen convention; the others exist for negative controls
PLUCKER_CONVENTIONS = ("standard", "conjugate", "reversed")


class WindowError(ValueError):
    """The basis is too short or too shallow for the requested minor."""


class AdmissibleBasis:
    """phi_0 .. phi_J sharing a certified tail order."""

    def __init__(self, elements: Sequence[ZSeries]):
        self.elements = list(elements)
        for j, phi in enumerate(self.elements):
            if phi.top != j or not phi[j].is_one():
                raise ValueError(f"phi_{j} is not of the form z^{j} + lower")
        tails = [phi.tail_order for phi in self.elements]
        self.tail_order = None if all(t is None for t in tails) else min(t for t in tails if t is not None)

    def __len__(self):
        return len(self.elements)

    def entry(self, k: int, j: int) -> Scalar:
        if j >= len(self.elements):
            raise WindowError(f"need phi_{j}; basis has {len(self.elements)} elements")
        phi = self.elements[j]
        if self.tail_order is not None and k < -self.tail_order:
            raise WindowError(f"need coefficients down to z^{k}; window is z^{-self.tail_order}")
        return phi.coeffs.get(k, ZERO)


def _det(rows: list[list[Scalar]]) -> Scalar:
    """Laplace expansion along rows, memoized over the remaining column set."""
    n = len(rows)

    @lru_cache(maxsize=None)
    def minor(r: int, cols: frozenset) -> Scalar:
        if r == n:
            return ONE
        acc = ZERO
        for pos, j in enumerate(sorted(cols)):
            a = rows[r][j]
            if a.is_zero():
                continue
            t = a * minor(r + 1, cols - {j})
            acc = acc - t if pos % 2 else acc + t
        return acc

    return minor(0, frozenset(range(n)))


def _as_basis(Vb) -> AdmissibleBasis:
    return Vb if isinstance(Vb, AdmissibleBasis) else AdmissibleBasis(Vb)


def plucker(Vb, lam, n: int | None = None, convention: str = "standard") -> Scalar:
    """The lam-Plucker coordinate using an n x n minor (n >= len(lam))."""
    if convention not in PLUCKER_CONVENTIONS:
        raise ValueError(f"convention must be one of {PLUCKER_CONVENTIONS}")
    Vb = _as_basis(Vb)
    lam = Partition(lam)
    if convention == "conjugate":
        lam = lam.conjugate()
    if n is None:
        n = len(lam)
    if n < len(lam):
        raise ValueError("minor size must be at least the length of lam")
    need_phi = n
    need_depth = lam[0] if lam else 0
    if len(Vb) < need_phi or (Vb.tail_order is not None and Vb.tail_order < need_depth):
        raise WindowError(
            f"partition {lam} needs phi_0..phi_{need_phi - 1} exact down to z^-{need_depth} "
            f"(window size {len(lam) + need_depth})"
        )
    row_exps = [i - (lam[i] if i < len(lam) else 0) for i in range(n)]
    if convention == "reversed":
        row_exps.reverse()
    rows = [[Vb.entry(k, j) for j in range(n)] for k in row_exps]
    return _det(rows)


def tau_from_basis(Vb, d_max: int, convention: str = "standard") -> PPoly:
    """sum_{|lam| <= d_max} plucker(Vb, lam) s_lam."""
    Vb = _as_basis(Vb)
    out = PPoly()
    for lam in partitions_upto(d_max):
        pi = plucker(Vb, lam, convention=convention)
        if not pi.is_zero():
            out = out + schur_poly(lam).scale(pi)
    return out


def sato_wave(tau: PPoly, N: int, tau_grade: int | None = None, shift_sign: int = 1) -> ZSeries:
    """Wave function at zero times from the Miwa shift of tau.

    Substitutes ``p_n -> shift_sign * z^{-n}`` and divides by ``tau(0)``.  With
    the Plucker/Schur conventions of this module ``shift_sign=+1`` reproduces
    ``phi_0``; ``-1`` is the sign in ``T_n -> T_n - xi^{-n}/n``.
    """
    if shift_sign not in (1, -1):
        raise ValueError("shift_sign must be +1 or -1")
    # tau_grade is the truncation grade of tau; None means tau is exact (e.g. tau = 1)
    if tau_grade is not None and tau_grade < N:
        raise WindowError(f"tau known to grade {tau_grade}, need {N}")
    t0 = tau.coeff(())
    if t0.is_zero():
        raise ZeroDivisionError("tau(0) vanishes")
    coeffs: dict[int, Scalar] = {}
    for mu, c in tau.terms.items():
        d = mu.size
        if d > N:
            continue
        v = -c if (shift_sign < 0 and len(mu) % 2) else c
        coeffs[-d] = coeffs[-d] + v if -d in coeffs else v
    inv = ONE if t0.is_one() else ONE / t0
    return ZSeries({k: v * inv for k, v in coeffs.items()}, N)


def _subs_T(f: ZSeries, value) -> ZSeries:
    return ZSeries({k: c.subs_T(value) for k, c in f.coeffs.items()}, f.tail_order)


def check_degeneration(a: int, j_max: int = 5, N: int = 20, d_max: int = 5):
    """conifold_i at T=0 against mv(r=a); conifold bases at T=1 against H_+."""
    from .kacschwarz import CheckReport
    from .models import MV_SIGN_CONVENTION, ModelId, build_basis, sign_twist

    residual = []
    coni = build_basis(ModelId("conifold_i", a), j_max, N)
    mv = build_basis(ModelId("mv", a), j_max, N)
    for j in range(j_max + 1):
        diff = sign_twist(_subs_T(coni[j], 0), j) - mv[j]
        if not diff.is_zero():
            k = max(diff.coeffs)
            residual.append((f"T=0 phi_{j} z^{k}", str(diff.coeffs[k])))
    for fam in ("conifold_i", "conifold_ii"):
        basis = [_subs_T(phi, 1) for phi in build_basis(ModelId(fam, a), max(j_max, d_max), N)]
        for j, phi in enumerate(basis):
            if phi != ZSeries.monomial(j, tail_order=N):
                residual.append((f"{fam} T=1 phi_{j}", "not z^j"))
        if tau_from_basis(basis, d_max) != PPoly.one():
            residual.append((f"{fam} T=1 tau", "not 1"))
    params = {"a": a, "j_max": j_max, "N": N, "d_max": d_max, "sign": "z -> -z on conifold_i at T=0"}
    return CheckReport("degeneration", f"coni:a={a}", params, residual[:5], MV_SIGN_CONVENTION)
