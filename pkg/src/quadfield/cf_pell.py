"""Continued fractions of quadratic surds, fundamental units and the norm-form
equation x^2 - d*y^2 = N.

Everything here is integer-exact. The equation solver is a complete decision
procedure: it either returns the solution with the least y >= 0 or proves that
no integer solution exists.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterator, Optional

from . import _kernels
from .intbase import BudgetExceeded, is_prime, is_square, is_squarefree, isqrt

# Scan y directly when the per-class bound on y is at most this; otherwise
# enumerate solution classes with continued fractions.
SCAN_LIMIT = 200_000
MAX_NORM = 10**6


@dataclass(frozen=True)
class QuadSurd:
    """The real number (P + sqrt(D)) / Q, kept with Q | (D - P^2)."""

    P: int
    Q: int
    D: int

    def __post_init__(self):
        if self.Q == 0:
            raise ValueError("Q must be nonzero")
        if self.D <= 0 or is_square(self.D):
            raise ValueError(f"D={self.D} must be a positive non-square")
        if (self.D - self.P * self.P) % self.Q:
            q = abs(self.Q)
            object.__setattr__(self, "P", self.P * q)
            object.__setattr__(self, "D", self.D * q * q)
            object.__setattr__(self, "Q", self.Q * q)

    @classmethod
    def sqrt(cls, d: int) -> "QuadSurd":
        return cls(0, 1, d)


@dataclass(frozen=True)
class CFExpansion:
    """Expansion [a0; preperiod..., period, period, ...].

    ``trace[i]`` is the (P, Q) state that produced the i-th partial quotient;
    ``trace[period_start + len(period)] == trace[period_start]``.
    """

    a0: int
    preperiod: tuple[int, ...]
    period: tuple[int, ...]
    trace: tuple[tuple[int, int], ...]

    @property
    def period_start(self) -> int:
        return 1 + len(self.preperiod)

    def partial_quotients(self) -> Iterator[int]:
        yield self.a0
        yield from self.preperiod
        while True:
            yield from self.period


def cf_expand(s: QuadSurd) -> CFExpansion:
    partials, states, first = _kernels.cf_cycle(s.P, s.Q, s.D)
    j = len(partials)
    # a purely periodic expansion still reports a0 separately; rotate by one
    start = max(first, 1)
    length = j - first
    seq = partials + partials[first:first + 1] if first == 0 else partials
    trace = states if first else states + [states[1]]
    return CFExpansion(
        a0=partials[0],
        preperiod=tuple(seq[1:start]),
        period=tuple(seq[start:start + length]),
        trace=tuple(trace[: start + length + 1]),
    )


def convergents(cf: CFExpansion, k: int) -> list[tuple[int, int]]:
    if k < 0:
        raise ValueError("k must be nonnegative")
    out = []
    h2, h1, k2, k1 = 0, 1, 1, 0
    for i, a in enumerate(cf.partial_quotients()):
        if i > k:
            break
        h2, h1 = h1, a * h1 + h2
        k2, k1 = k1, a * k1 + k2
        out.append((h1, k1))
    return out


def _pqa_first(P0: int, Q0: int, D: int, accept) -> Optional[tuple[int, int, int, int]]:
    """Walk the (P, Q) recurrence for (P0 + sqrt D)/Q0 over its preperiod and
    one full period. Returns (i, Q_i, G_{i-1}, B_{i-1}) for the first i >= 1 with
    ``accept(Q_i)``, where G_{i-1}^2 - D*B_{i-1}^2 = (-1)^i * Q_i * Q0.
    """
    partials, states, _ = _kernels.cf_cycle(P0, Q0, D)
    G2, G1 = -P0, Q0
    B2, B1 = 1, 0
    for i in range(1, len(states)):
        a = partials[i - 1]
        G2, G1 = G1, a * G1 + G2
        B2, B1 = B1, a * B1 + B2
        Qi = states[i][1]
        if accept(Qi):
            return i, Qi, G1, B1
    return None


@dataclass(frozen=True)
class FundUnit:
    """Fundamental unit (t + u*sqrt(delta))/2 with integer brackets e_lo <= value <= e_hi."""

    delta: int
    t: int
    u: int
    norm: int
    e_lo: int
    e_hi: int

    def __post_init__(self):
        if self.t * self.t - self.delta * self.u * self.u != 4 * self.norm:
            raise ArithmeticError(f"{self} is not a unit")

    def log(self, dps: int = 30):
        import mpmath

        with mpmath.workdps(dps + len(str(self.t))):
            return mpmath.log((self.t + self.u * mpmath.sqrt(self.delta)) / 2)

    def in_d_coordinates(self) -> tuple[int, int]:
        """The unit as (s, v) with value (s + v*sqrt(d))/2."""
        if self.delta % 4:
            return self.t, self.u
        return self.t, 2 * self.u


def discriminant_of(d: int) -> int:
    if d < 2 or not is_squarefree(d):
        raise ValueError(f"d={d} must be a squarefree integer > 1")
    return d if d % 4 == 1 else 4 * d


@functools.lru_cache(maxsize=4096)
def fundamental_unit(d: int) -> FundUnit:
    delta = discriminant_of(d)
    hit = _pqa_first(delta % 2, 2, delta, lambda q: q == 2)
    i, _, G, B = hit
    t, u = abs(G), B
    norm = 1 if i % 2 == 0 else -1
    s = isqrt(delta * u * u)
    return FundUnit(delta, t, u, norm, e_lo=(t + s) // 2, e_hi=(t + s + 2) // 2)


@dataclass(frozen=True)
class PellWitness:
    d: int
    N: int
    x: int
    y: int

    def __post_init__(self):
        if self.x * self.x - self.d * self.y * self.y != self.N:
            raise ArithmeticError(f"({self.x}, {self.y}) does not solve x^2 - {self.d}y^2 = {self.N}")

    def pair(self) -> tuple[int, int]:
        return self.x, self.y


@dataclass(frozen=True)
class Representation:
    """Solutions of x^2 - d*y^2 = +4p and -4p."""

    d: int
    p: int
    plus: Optional[PellWitness]
    minus: Optional[PellWitness]

    @property
    def found(self) -> bool:
        return self.plus is not None or self.minus is not None

    def witnesses(self) -> list[PellWitness]:
        return [w for w in (self.plus, self.minus) if w is not None]


def _mul(a, b, d):
    return a[0] * b[0] + d * a[1] * b[1], a[0] * b[1] + a[1] * b[0]


@functools.lru_cache(maxsize=4096)
def zd_units(d: int) -> tuple[tuple[int, int], Optional[tuple[int, int]]]:
    """Units of Z[sqrt d]: the fundamental norm +1 unit and, if one exists,
    the fundamental norm -1 unit, each as (x, y) meaning x + y*sqrt(d)."""
    s, v = fundamental_unit(d).in_d_coordinates()
    cur = (s, v)
    for _ in range(6):
        if cur[0] % 2 == 0 and cur[1] % 2 == 0:
            break
        # (s1 + v1 r)/2 * (s + v r)/2 stays an algebraic integer
        cur = ((cur[0] * s + d * cur[1] * v) // 2, (cur[0] * v + cur[1] * s) // 2)
    else:
        raise ArithmeticError(f"no power of the unit lies in Z[sqrt {d}]")
    zeta = (cur[0] // 2, cur[1] // 2)
    if zeta[0] ** 2 - d * zeta[1] ** 2 == -1:
        return _mul(zeta, zeta, d), zeta
    return zeta, None


def class_bound(d: int, N: int) -> int:
    """Every class of solutions of x^2 - d*y^2 = N has a member with 0 <= y <= this."""
    x1, y1 = zd_units(d)[0]
    den = 2 * (x1 + 1) if N > 0 else 2 * (x1 - 1)
    return isqrt(y1 * y1 * abs(N) // den)


def _sqrt_classes(d: int, m: int) -> list[int]:
    am = abs(m)
    lo = -((am - 1) // 2)
    return [z for z in range(lo, lo + am) if (z * z - d) % am == 0]


def class_representatives(d: int, N: int) -> list[tuple[int, int]]:
    """One solution from each class of x^2 - d*y^2 = N (continued-fraction method)."""
    eta_minus = zd_units(d)[1]
    reps = []
    f = 1
    while f * f <= abs(N):
        if N % (f * f) == 0:
            m = N // (f * f)
            for z in _sqrt_classes(d, m):
                hit = _pqa_first(z, abs(m), d, lambda q: q in (1, -1))
                if hit is None:
                    continue
                r, s = hit[2], hit[3]
                val = r * r - d * s * s
                if val == m:
                    reps.append((f * r, f * s))
                elif val == -m and eta_minus is not None:
                    r, s = _mul((r, s), eta_minus, d)
                    reps.append((f * r, f * s))
        f += 1
    return reps


def _least_y_in_class(rep: tuple[int, int], d: int) -> int:
    eta = zd_units(d)[0]
    eta_inv = (eta[0], -eta[1])
    best = abs(rep[1])
    for step in (eta, eta_inv):
        cur = rep
        cur_y = abs(rep[1])
        while True:
            nxt = _mul(cur, step, d)
            if abs(nxt[1]) >= cur_y:
                break
            cur, cur_y = nxt, abs(nxt[1])
        best = min(best, cur_y)
    return best


def _check_args(d: int, N: int, max_norm: int):
    if d < 2 or not is_squarefree(d):
        raise ValueError(f"d={d} must be a squarefree integer > 1")
    if N == 0:
        raise ValueError("N must be nonzero")
    if abs(N) > max_norm:
        raise BudgetExceeded(f"budget exceeded: |N|={abs(N)} > {max_norm}")


def solve_norm_form(
    d: int,
    N: int,
    *,
    method: str = "auto",
    scan_limit: int = SCAN_LIMIT,
    max_norm: int = MAX_NORM,
) -> Optional[PellWitness]:
    """Least-y nonnegative solution of x^2 - d*y^2 = N, or None if unsolvable.

    ``method`` is ``"scan"`` (test y = 0..class_bound for squareness),
    ``"classes"`` (continued-fraction class representatives, then the least
    |y| in each unit orbit) or ``"auto"`` (scan when the bound is small).
    """
    _check_args(d, N, max_norm)
    if method == "auto":
        method = "scan" if class_bound(d, N) <= scan_limit else "classes"
    if method == "scan":
        y = _kernels.first_square_y(d, N, 0, class_bound(d, N))
        if y < 0:
            return None
    elif method == "classes":
        reps = class_representatives(d, N)
        if not reps:
            return None
        y = min(_least_y_in_class(r, d) for r in reps)
    else:
        raise ValueError(f"unknown method {method!r}")
    return PellWitness(d, N, isqrt(d * y * y + N), y)


def is_representable(d: int, p: int, **kw) -> Representation:
    if p < 3 or not is_prime(p):
        raise ValueError(f"p={p} must be an odd prime")
    return Representation(d, p, solve_norm_form(d, 4 * p, **kw), solve_norm_form(d, -4 * p, **kw))
