"""Indefinite binary quadratic forms and class numbers of real quadratic fields."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from . import _kernels
from .cf_pell import discriminant_of, fundamental_unit
from .intbase import factorize, is_square, isqrt, kronecker


class SplittingType(str, enum.Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"


@dataclass(frozen=True)
class QuadForm:
    A: int
    B: int
    C: int

    def __post_init__(self):
        D = self.discriminant
        if D <= 0 or is_square(D):
            raise ValueError(f"{self} has discriminant {D}, need positive non-square")

    @property
    def discriminant(self) -> int:
        return self.B * self.B - 4 * self.A * self.C

    def __iter__(self):
        return iter((self.A, self.B, self.C))


@dataclass(frozen=True)
class ClassGroupSummary:
    d: int
    delta: int
    h_plus: int
    h: int
    unit_norm: int
    genus_rank: int

    def __post_init__(self):
        if self.h_plus != (self.h if self.unit_norm == -1 else 2 * self.h):
            raise ArithmeticError(f"narrow/wide mismatch in {self}")
        if self.h_plus % (1 << self.genus_rank):
            raise ArithmeticError(f"2^genus_rank does not divide h+ in {self}")


@dataclass(frozen=True)
class RDClassification:
    is_rd: bool
    m: int = 0
    r: int = 0
    branch: str = ""


def is_reduced(f: QuadForm) -> bool:
    A, B, _ = f
    D = f.discriminant
    if B <= 0 or B * B >= D:
        return False
    lo = 2 * abs(A) + B
    hi = 2 * abs(A) - B
    return lo * lo > D and (hi <= 0 or hi * hi < D)


def rho(f: QuadForm) -> QuadForm:
    """One step of the reduction cycle."""
    if not is_reduced(f):
        raise ValueError(f"{f} is not reduced")
    D = f.discriminant
    r = isqrt(D)
    c2 = 2 * abs(f.C)
    B1 = r - (r + f.B) % c2
    return QuadForm(f.C, B1, (B1 * B1 - D) // (4 * f.C))


def reduced_forms(delta: int) -> list[QuadForm]:
    return [QuadForm(*t) for t in _kernels.reduced_forms(delta)]


def form_cycles(delta: int, order=None) -> list[list[tuple[int, int, int]]]:
    forms = _kernels.reduced_forms(delta) if order is None else list(order)
    return _kernels.rho_cycles(forms, delta)


def narrow_class_number(delta: int) -> int:
    if delta <= 0 or is_square(delta):
        raise ValueError(f"delta={delta} must be a positive non-square")
    return len(form_cycles(delta))


def genus_rank(delta: int) -> int:
    return len(factorize(delta)) - 1


def wide_class_number(d: int) -> ClassGroupSummary:
    delta = discriminant_of(d)
    h_plus = narrow_class_number(delta)
    norm = fundamental_unit(d).norm
    h = h_plus if norm == -1 else h_plus // 2
    return ClassGroupSummary(d, delta, h_plus, h, norm, genus_rank(delta))


def splitting_type(d: int, q: int) -> SplittingType:
    delta = discriminant_of(d)
    if delta % q == 0:
        return SplittingType.RAMIFIED
    return SplittingType.SPLIT if kronecker(delta, q) == 1 else SplittingType.INERT


def analytic_class_number(delta: int, samples_precision: int = 30) -> int:
    """Wide class number from the real-character sum over log-sines.

    Used only as an independent cross-check of the cycle count.
    """
    import mpmath

    d = delta if delta % 4 == 1 else delta // 4
    unit = fundamental_unit(d)
    with mpmath.workdps(samples_precision):
        total = mpmath.mpf(0)
        for a in range(1, delta):
            chi = kronecker(delta, a)
            if chi:
                total += chi * mpmath.log(mpmath.sin(mpmath.pi * a / delta))
        value = -total / (2 * unit.log(samples_precision))
        h = int(mpmath.nint(value))
        if abs(value - h) > mpmath.mpf("0.49") or h < 1:
            raise ArithmeticError(f"precision too low for delta={delta}: got {value}")
    return h


def classify_rd(d: int) -> RDClassification:
    """Decompose d = m^2 + r with r | 4m and -m < r <= m, or r = +-4m/3."""
    root = isqrt(d)
    for m in range(max(1, root - 2), root + 3):
        r = d - m * m
        if r == 0:
            continue
        if (4 * m) % r == 0 and -m < r <= m:
            return RDClassification(True, m, r, "standard")
        if m % 3 == 0 and abs(r) == 4 * m // 3:
            return RDClassification(True, m, r, "four-thirds")
    return RDClassification(False)
