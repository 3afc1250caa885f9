"""Charge-0 semi-infinite wedges and the hat-action of z^l d^m/dz^m.

The basis state for a partition lam is ``z^{k_1} ^ z^{k_2} ^ ...`` with
``k_i = i - 1 - lam_i``; the vacuum is ``z^0 ^ z^1 ^ ...``.  Diagonal operators
(l = m) are regularized by subtracting their vacuum value slot by slot.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from . import boson
from .boson import PPoly, cut_join_eigenvalue
from .coeff import ONE, ZERO, Scalar
from .kacschwarz import CheckReport
from .partitions import EMPTY, Partition, partitions_of, partitions_upto

__all__ = [
    "FockVec",
    "hat_apply",
    "hat_apply_op",
    "bf_correspond",
    "operator_atoms",
    "cross_check_operator",
    "hat_commutator_check",
    "parse_opspec",
]


class FockVec:
    """Finite combination of charge-0 wedge states indexed by partitions."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for lam, c in (terms or {}).items():
            c = c if isinstance(c, Scalar) else Scalar(c)
            if not c.is_zero():
                clean[Partition(lam)] = c
        self.terms: dict[Partition, Scalar] = clean

    @classmethod
    def basis(cls, lam=()) -> "FockVec":
        return cls({Partition(lam): ONE})

    @classmethod
    def vacuum(cls) -> "FockVec":
        return cls.basis()

    def coeff(self, lam) -> Scalar:
        return self.terms.get(Partition(lam), ZERO)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "FockVec") -> "FockVec":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return FockVec(out)

    def __neg__(self):
        return FockVec({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "FockVec":
        return FockVec({k: c * s for k, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, FockVec):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        body = " + ".join(f"({c})|{lam}>" for lam, c in sorted(self.terms.items()))
        return f"FockVec({body or '0'})"


def _falling(k: int, m: int) -> int:
    out = 1
    for i in range(m):
        out *= k - i
    return out


def _exponents(lam: Partition, slots: int) -> list[int]:
    return [i - (lam[i] if i < len(lam) else 0) for i in range(slots)]


def _canonical(exps: list[int]):
    """Sort the explicit slots; return (sign, partition) or None on a repeat."""
    n = len(exps)
    if len(set(exps)) != n or (exps and max(exps) >= n):
        # a repeat, or a collision with the vacuum tail starting at exponent n
        return None
    order = sorted(range(n), key=exps.__getitem__)
    # parity of the sorting permutation via cycle count
    seen, cycles = [False] * n, 0
    for i in range(n):
        if not seen[i]:
            cycles += 1
            j = i
            while not seen[j]:
                seen[j] = True
                j = order[j]
    sign = -1 if (n - cycles) % 2 else 1
    srt = [exps[i] for i in order]
    return sign, Partition(p for p in (i - e for i, e in enumerate(srt)) if p)


def _hat_basis(l: int, m: int, lam: Partition) -> dict[Partition, int]:
    """(z^l d^m)^ on one basis state, with integer coefficients."""
    s = l - m
    if s == 0:
        # diagonal: the slot sum differs from the vacuum one only on the first len(lam) slots
        val = sum(
            _falling(k, m) - _falling(i, m) for i, k in enumerate(_exponents(lam, len(lam)))
        )
        return {lam: val} if val else {}
    slots = len(lam) + max(0, -s)
    exps = _exponents(lam, slots)
    out: dict[Partition, int] = {}
    for i, k in enumerate(exps):
        c = _falling(k, m)
        if not c:
            continue
        new = list(exps)
        new[i] = k + s
        res = _canonical(new)
        if res is None:
            continue
        sign, mu = res
        out[mu] = out.get(mu, 0) + sign * c
    return {k: v for k, v in out.items() if v}


_hat_basis_cached = lru_cache(maxsize=None)(_hat_basis)


def hat_apply(l: int, m: int, v: FockVec, D: int | None = None) -> FockVec:
    """Apply (z^l (d/dz)^m)^; states of grade > D are dropped."""
    if m < 0:
        raise ValueError("m must be non-negative")
    out: dict = {}
    for lam, c in v.terms.items():
        for mu, k in _hat_basis_cached(l, m, lam).items():
            if D is not None and mu.size > D:
                continue
            t = c * k
            out[mu] = out[mu] + t if mu in out else t
    return FockVec(out)


def hat_apply_op(atoms, v: FockVec, D: int | None = None) -> FockVec:
    """Apply a combination ``[(l, m, coeff), ...]`` of hatted atoms."""
    out = FockVec()
    for l, m, c in atoms:
        out = out + hat_apply(l, m, v, D).scale(c)
    return out


@lru_cache(maxsize=None)
def _stirling2(n: int, k: int) -> int:
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * _stirling2(n - 1, k) + _stirling2(n - 1, k - 1)


def _zpoly_atoms(shift: int, poly, scale=1) -> list:
    """z^shift * sum_k poly[k] D^k as atoms z^{shift+j} d^j, D^k = sum_j S(k,j) z^j d^j."""
    acc: dict[int, Fraction] = {}
    for k, ck in enumerate(poly):
        for j in range(k + 1):
            s = _stirling2(k, j)
            if s and ck:
                acc[j] = acc.get(j, Fraction(0)) + Fraction(ck) * s * scale
    return [(shift + j, j, Scalar(c)) for j, c in sorted(acc.items()) if c]


def parse_opspec(spec: str) -> tuple[str, int]:
    """``alpha(m)``, ``L(m)``, ``K(m)`` or ``K0``."""
    spec = spec.strip()
    if spec == "K0":
        return "K0", 0
    name, _, rest = spec.partition("(")
    if name not in ("alpha", "L", "K") or not rest.endswith(")"):
        raise ValueError(f"bad operator spec {spec!r}")
    return name, int(rest[:-1])


CONVENTIONS = ("wedge", "display")


def operator_atoms(spec: str, convention: str = "wedge") -> list:
    """Fermionic form of a bosonic operator as hatted z-differential atoms.

    With the wedge basis above and ``alpha_m = (z^m)^``::

        L_m = -(z^m (D + (m+1)/2))^
        K0  = 1/2 ((D + 1/2)^2)^
        K_m = 1/2 (z^m (D + (m+1)/2)^2)^ - (m^2 - 1)/24 (z^m)^

    ``convention="display"`` uses the shift ``(m-1)/2`` (and ``D - 1/2`` in K0)
    instead; that form does not intertwine with the bosonic operators here.
    """
    if convention not in CONVENTIONS:
        raise ValueError(f"convention must be one of {CONVENTIONS}")
    name, m = parse_opspec(spec)
    if name == "alpha":
        if m == 0:
            raise ValueError("alpha(0) is excluded")
        return [(m, 0, ONE)]
    h = Fraction(m + 1, 2) if convention == "wedge" else Fraction(m - 1, 2)
    if name == "L":
        return _zpoly_atoms(m, [h, 1], -1)
    if name == "K0":
        h = Fraction(1, 2) if convention == "wedge" else Fraction(-1, 2)
        return _zpoly_atoms(0, [h * h, 2 * h, 1], Fraction(1, 2))
    atoms = _zpoly_atoms(m, [h * h, 2 * h, 1], Fraction(1, 2))
    if m and m * m != 1:
        atoms.append((m, 0, Scalar(Fraction(1 - m * m, 24))))
    return atoms


def _boson_apply(spec: str, f: PPoly, d_max: int) -> PPoly:
    name, m = parse_opspec(spec)
    if name == "alpha":
        return boson.alpha_apply(m, f).truncate(d_max)
    if name == "K0":
        return boson.cut_join_apply(f)
    return boson.virasoro_w_apply((name, m), f, d_max)


def _vacuum_pairing(word, lam: Partition) -> int:
    """<0| alpha_{w_1} ... alpha_{w_n} |lam> for positive modes."""
    v = {lam: 1}
    for n in reversed(word):
        nxt: dict = {}
        for mu, c in v.items():
            for nu, k in _hat_basis_cached(n, 0, mu).items():
                nxt[nu] = nxt.get(nu, 0) + c * k
        v = {k: c for k, c in nxt.items() if c}
    return v.get(EMPTY, 0)


@lru_cache(maxsize=None)
def _bf_basis(lam: Partition) -> PPoly:
    """<0| exp(sum p_n alpha_n / n) |lam> = sum_mu p_mu <0|alpha_mu|lam> / z_mu."""
    terms = {}
    for mu in partitions_of(lam.size):
        c = _vacuum_pairing(tuple(mu), lam)
        if c:
            terms[mu] = Fraction(c, mu.z)
    return PPoly(terms)


def bf_correspond(v: FockVec, d_max: int | None = None) -> PPoly:
    out = PPoly()
    for lam, c in v.terms.items():
        if d_max is not None and lam.size > d_max:
            raise ValueError(f"state {lam} exceeds grade bound {d_max}")
        out = out + _bf_basis(lam).scale(c)
    return out


def cross_check_operator(opspec: str, d_max: int = 5, convention: str = "wedge") -> CheckReport:
    """bf o hat(op) == boson(op) o bf on every basis state of grade <= d_max."""
    atoms = operator_atoms(opspec, convention)
    residual = []
    notes = ""
    for lam in partitions_upto(d_max):
        state = FockVec.basis(lam)
        lhs = bf_correspond(hat_apply_op(atoms, state, d_max), d_max)
        rhs = _boson_apply(opspec, bf_correspond(state), d_max).truncate(d_max)
        diff = lhs - rhs
        if not diff.is_zero():
            mu = next(iter(sorted(diff.terms)))
            residual.append((str(lam), f"{mu}: {diff.terms[mu]}"))
        if opspec.strip() == "K0":
            img = hat_apply_op(atoms, state, d_max)
            ev = cut_join_eigenvalue(lam)
            if not (img - state.scale(ev)).is_zero():
                residual.append((str(lam), f"not diagonal with eigenvalue {ev}"))
        if len(residual) >= 5:
            break
    if opspec.strip() == "K0" and not residual:
        notes = "fermionic K0 diagonal; eigenvalues equal cut_join_eigenvalue"
    params = {"d_max": d_max, "convention": convention}
    return CheckReport("bf_cross_check", opspec.strip(), params, residual, notes)


def hat_commutator_check(m: int, d_max: int = 5) -> CheckReport:
    """[alpha_m, alpha_{-m}] == m on grade <= d_max, computed with hat_apply."""
    D = d_max + abs(m)
    residual = []
    for lam in partitions_upto(d_max):
        v = FockVec.basis(lam)
        ab = hat_apply(m, 0, hat_apply(-m, 0, v, D), D)
        ba = hat_apply(-m, 0, hat_apply(m, 0, v, D), D)
        diff = ab - ba - v.scale(m)
        if not diff.is_zero():
            residual.append((str(lam), repr(diff)))
    return CheckReport("hat_commutator", f"alpha({m})", {"d_max": d_max}, residual)
