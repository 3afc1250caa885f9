"""Admissible bases and Kac-Schwarz pairs for the four model families.

Every family shares the shift operator ``E = q^{z d/dz}``; for Hurwitz numbers
``E = e^{lambda z d/dz}`` and ``q`` stands for ``e^lambda`` (``u = e^{lambda/2}``
is the half power ``Q``).

Closed forms of the basis vectors (coefficient of ``z^{j-n}``)::

    hurwitz      q^{n(n-2j-1)/2} / n!
    mv(r)        q^{(r+1)n(n-2j-1)/2 + n/2} / (q;q)_n
    conifold_i   (-1)^n q^{(a+1)n(n-2j-1)/2 + n/2} (T;q)_n / (q;q)_n
    conifold_ii  q^{a n(n-2j-1)/2 + n/2} prod_{k=1}^n (T - q^{k-1}) / (q;q)_n

The mv sign is the one for which ``P0 phi_0 = 0`` with ``P0`` as displayed for
that family; the product/exponential form carries an extra ``(-1)^n``
(see :func:`phi_exponential_form` and :data:`MV_SIGN_CONVENTION`).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .coeff import ONE, ONE_MINUS_TQ, T_MINUS_Q, ZERO, Scalar
from .laurent import ZSeries, exp_series
from .qtorus import TorusOp

__all__ = [
    "ModelId",
    "LadderData",
    "parse_model",
    "build_phi",
    "build_basis",
    "build_ks",
    "ladder_data",
    "commutator_rhs",
    "sign_twist",
    "phi_exponential_form",
    "MV_SIGN_CONVENTION",
    "FAMILIES",
]

FAMILIES = ("hurwitz", "mv", "conifold_i", "conifold_ii")

MV_SIGN_CONVENTION = (
    "mv basis taken without (-1)^n: coefficient q^{(r+1)n(n-2j-1)/2+n/2}/(q;q)_n. "
    "This is the sign for which P0 = 1 - E^-1 - q^(1/2) z^-1 E^-(r+1) annihilates phi_0. "
    "The exponential form (and conifold_i at T=0) equals it after z -> -z, "
    "i.e. an extra (-1)^n on the coefficient of z^{j-n}."
)


@dataclass(frozen=True, order=True)
class ModelId:
    family: str
    framing: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown model family {self.family!r}")
        if (self.family == "hurwitz") != (self.framing is None):
            raise ValueError("framing is required exactly for non-Hurwitz families")

    def __str__(self):
        if self.family == "hurwitz":
            return "hurwitz"
        tag = {"mv": "mv:r", "conifold_i": "coni:a", "conifold_ii": "conii:a"}[self.family]
        return f"{tag}={self.framing}"


_SELECTOR = re.compile(r"^(hurwitz)$|^(mv):r=(-?\d+)$|^(coni|conii):a=(-?\d+)$")


def parse_model(text: str) -> ModelId:
    """Parse ``hurwitz``, ``mv:r=<int>``, ``coni:a=<int>`` or ``conii:a=<int>``."""
    m = _SELECTOR.match(text.strip())
    if not m:
        raise ValueError(f"bad model selector {text!r}")
    if m.group(1):
        return ModelId("hurwitz")
    if m.group(2):
        return ModelId("mv", int(m.group(3)))
    fam = "conifold_i" if m.group(4) == "coni" else "conifold_ii"
    return ModelId(fam, int(m.group(5)))


@dataclass(frozen=True)
class LadderData:
    """Q0 phi_j = ladder_constant * phi_{j+1};  P0 phi_j = alpha phi_j + beta phi_{j-1}."""

    j: int
    ladder_constant: Scalar
    alpha: Scalar
    beta: Scalar

    @property
    def eigen_pair(self) -> tuple[Scalar, Scalar]:
        return self.alpha, self.beta


def _inv_qfact(n: int) -> Scalar:
    return Scalar._build(_one_poly(), 0, None, {k: 1 for k in range(1, n + 1)})


def _one_poly():
    return ONE._p


def phi_coefficient(model: ModelId, j: int, n: int) -> Scalar:
    """Coefficient of z^{j-n} in phi_j."""
    fam = model.family
    twist = n * (n - 2 * j - 1)  # always even
    if fam == "hurwitz":
        return Scalar.qpow(twist // 2) * Fraction(1, factorial(n))
    den = {k: 1 for k in range(1, n + 1)}
    if fam == "mv":
        r = model.framing
        return Scalar._build(_one_poly(), (r + 1) * twist + n, None, den)
    a = model.framing
    if fam == "conifold_i":
        num = {(ONE_MINUS_TQ, k - 1): 1 for k in range(1, n + 1)}
        c = Scalar._build(_one_poly(), (a + 1) * twist + n, num, den)
        return -c if n % 2 else c
    num = {(T_MINUS_Q, k - 1): 1 for k in range(1, n + 1)}
    return Scalar._build(_one_poly(), a * twist + n, num, den)


def build_phi(model: ModelId, j: int, N: int) -> ZSeries:
    """phi_j exact down to z^{-N}."""
    if j < 0 or N < 0:
        raise ValueError("need j >= 0 and N >= 0")
    coeffs = {j - n: phi_coefficient(model, j, n) for n in range(j + N + 1)}
    return ZSeries(coeffs, N)


def build_basis(model: ModelId, j_max: int, N: int) -> list[ZSeries]:
    return [build_phi(model, j, N) for j in range(j_max + 1)]


def build_ks(model: ModelId) -> tuple[TorusOp, TorusOp]:
    """The pair (P0, Q0) as displayed for the family."""
    half = Scalar.qpow(Fraction(1, 2))
    T = Scalar.T()
    one, Einv = TorusOp.identity(), TorusOp.E(-1)
    fam = model.family
    if fam == "hurwitz":
        return TorusOp.D() + TorusOp.atom(-1, -1), TorusOp.atom(1, 1)
    if fam == "mv":
        r = model.framing
        P = one - Einv - TorusOp.atom(-1, -(r + 1), half)
        return P, TorusOp.atom(1, r + 1)
    a = model.framing
    if fam == "conifold_i":
        P = one - Einv + TorusOp.atom(-1, -(a + 1), half) - TorusOp.atom(-1, -(a + 2), half * T)
        return P, TorusOp.atom(1, a + 1)
    P = one - Einv + TorusOp.atom(-1, -(a + 1), half) - TorusOp.atom(-1, -a, half * T)
    return P, TorusOp.atom(1, a)


def ladder_data(model: ModelId, j: int) -> LadderData:
    if j < 0:
        raise ValueError("j must be non-negative")
    fam = model.family
    if fam == "hurwitz":
        return LadderData(j, Scalar.qpow(j), Scalar(j), ZERO)
    alpha = Scalar.one_minus_q(-j)
    if fam == "mv":
        r = model.framing
        c = Scalar.qpow((r + 1) * j)
        beta = -Scalar.qpow(Fraction(1, 2) - (r + 1) * j) * alpha
    elif fam == "conifold_i":
        a = model.framing
        c = Scalar.qpow((a + 1) * j)
        beta = Scalar.qpow(Fraction(1, 2) - (a + 1) * j) * alpha
    else:
        a = model.framing
        c = Scalar.qpow(a * j)
        beta = -Scalar.T() * Scalar.qpow(Fraction(1, 2) - a * j) * alpha
    return LadderData(j, c, alpha, beta)


def commutator_rhs(model: ModelId) -> TorusOp:
    """Right-hand side of [P0, Q0] as displayed for the family."""
    fam = model.family
    _, Q0 = build_ks(model)
    if fam == "hurwitz":
        return Q0
    c = Scalar.one_minus_q(-1)
    if fam == "mv":
        return TorusOp.atom(1, model.framing, c)
    a = model.framing
    if fam == "conifold_i":
        return TorusOp.atom(1, a, c) + TorusOp.atom(
            0, -1, c * Scalar.T() * Scalar.qpow(Fraction(-1, 2) - a)
        )
    return TorusOp.atom(1, a - 1, c) - TorusOp.atom(0, -1, c * Scalar.qpow(Fraction(1, 2) - a))


# ---------------------------------------------------------------------------
# exponential form: diagonal twist applied to exp(sum c_n z^-n / n) z^j
# ---------------------------------------------------------------------------


def _inv_bracket(n: int) -> Scalar:
    """1 / (q^{n/2} - q^{-n/2}) = -q^{n/2} / (1 - q^n)."""
    return -Scalar.Qpow(n) * Scalar.inv_one_minus_q(n)


def _log_tail(model: ModelId, n: int) -> Scalar:
    """Coefficient of z^{-n} in the exponent of the tail series."""
    fam = model.family
    if fam == "hurwitz":
        return ONE if n == 1 else ZERO
    if fam == "mv":
        return _inv_bracket(n) * Fraction((-1) ** (n - 1), n)
    one_minus_Tn = ONE - Scalar.T(n)
    if fam == "conifold_i":
        return _inv_bracket(n) * one_minus_Tn * Fraction((-1) ** (n - 1), n)
    return _inv_bracket(n) * one_minus_Tn * Fraction(1, n)


def _twist_rate(model: ModelId) -> int:
    if model.family == "hurwitz":
        return 1
    if model.family == "conifold_ii":
        return model.framing
    return model.framing + 1


def phi_exponential_form(model: ModelId, j: int, N: int) -> ZSeries:
    """phi_j from its defining exponential form.

    Expands ``exp(sum_n c_n z^{-n}) z^j`` via the power-series exponential and
    applies ``exp(c[(D+1/2)^2 - (j+1/2)^2])``, which multiplies the z^{j-n}
    coefficient by ``q^{rate * n(n-2j-1)/2}``.
    """
    order = j + N
    tail = exp_series({n: _log_tail(model, n) for n in range(1, order + 1)}, order)
    rate = _twist_rate(model)
    coeffs = {}
    for k, c in tail.coeffs.items():
        n = -k
        coeffs[j - n] = c * Scalar.qpow(rate * n * (n - 2 * j - 1) // 2)
    return ZSeries(coeffs, N)


def sign_twist(f: ZSeries, j: int) -> ZSeries:
    """Multiply the coefficient of z^{j-n} by (-1)^n (that is, z -> -z up to (-1)^j)."""
    return ZSeries(
        {k: (-c if (j - k) % 2 else c) for k, c in f.coeffs.items()}, f.tail_order
    )

