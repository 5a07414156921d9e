# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops. Each entry point drops to exact Python integers when
its operands could overflow 64 bits, so results always match _pykernels."""

from libc.math cimport sqrt
from . import _pykernels

cdef long long LIMIT = 1LL << 62
cdef long long SMALL = 1LL << 30


cdef inline long long isqrt64(long long n):
    cdef long long r = <long long>sqrt(<double>n)
    while r * r > n:
        r -= 1
    while (r + 1) * (r + 1) <= n:
        r += 1
    return r


cdef inline long long floordiv(long long a, long long b):
    cdef long long q = a / b
    if (a % b != 0) and ((a < 0) != (b < 0)):
        q -= 1
    return q


cdef inline long long pymod(long long a, long long b):
    cdef long long m = a % b
    if m != 0 and ((m < 0) != (b < 0)):
        m += b
    return m


def first_square_y(d, N, y_lo, y_hi):
    if y_lo > y_hi:
        return -1
    if d <= 0 or y_lo < 0 or y_hi >= SMALL or d >= SMALL or abs(N) >= SMALL \
            or d * y_hi * y_hi + abs(N) + 2 * d * (y_hi + 1) >= LIMIT:
        return _pykernels.first_square_y(d, N, y_lo, y_hi)
    cdef long long dd = d, NN = N, y = y_lo, yh = y_hi
    cdef long long v = dd * y * y + NN
    cdef long long r
    while y <= yh:
        if v >= 0:
            r = isqrt64(v)
            if r * r == v:
                return y
        v += dd * (2 * y + 1)
        y += 1
    return -1


def cf_cycle(P, Q, D):
    if not (0 < D < SMALL and abs(P) < SMALL and 0 < abs(Q) < SMALL):
        return _pykernels.cf_cycle(P, Q, D)
    cdef long long p = P, q = Q, dd = D, a
    cdef long long r = isqrt64(dd)
    seen = {}
    partials = []
    states = []
    while True:
        key = (p, q)
        if key in seen:
            break
        seen[key] = len(states)
        states.append(key)
        if q > 0:
            a = floordiv(p + r, q)
        else:
            a = floordiv(p + r + 1, q)
        partials.append(a)
        p = a * q - p
        q = (dd - p * p) / q
    states.append((p, q))
    return partials, states, seen[(p, q)]


def reduced_forms(delta):
    if not (0 < delta < LIMIT):
        return _pykernels.reduced_forms(delta)
    cdef long long D = delta, r = isqrt64(D), B, n, a, A, lo, hi
    cdef int s
    out = []
    B = 2 - D % 2
    while B <= r:
        n = (D - B * B) / 4
        a = 1
        while a * a <= n:
            if n % a == 0:
                A = a
                while True:
                    lo = 2 * A + B
                    hi = 2 * A - B
                    if A <= r and lo * lo > D and (hi <= 0 or hi * hi < D):
                        out.append((A, B, -(n / A)))
                        out.append((-A, B, n / A))
                    if A == n / a:
                        break
                    A = n / a
            a += 1
        B += 2
    out.sort()
    return out


def rho_cycles(forms, delta):
    if not (0 < delta < LIMIT):
        return _pykernels.rho_cycles(forms, delta)
    cdef long long D = delta, r = isqrt64(D), A, B, C, c2, B1
    remaining = set(forms)
    cycles = []
    for f in forms:
        if f not in remaining:
            continue
        cyc = []
        A, B, C = f
        while True:
            g = (A, B, C)
            remaining.discard(g)
            cyc.append(g)
            c2 = 2 * (C if C > 0 else -C)
            B1 = r - pymod(r + B, c2)
            A, B, C = C, B1, floordiv(B1 * B1 - D, 4 * C)
            g = (A, B, C)
            if g == f:
                break
            if g not in remaining:
                raise ArithmeticError(f"rho left the reduced set at {g} (delta={delta})")
        cycles.append(cyc)
    return cycles
