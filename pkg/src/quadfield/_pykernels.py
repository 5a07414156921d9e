"""Pure-Python hot loops. Semantics must match ``_ckernels.pyx`` exactly."""

from math import isqrt


def first_square_y(d, N, y_lo, y_hi):
    """Smallest y in [y_lo, y_hi] with d*y*y + N a perfect square, else -1."""
    if y_lo > y_hi:
        return -1
    y = y_lo
    v = d * y * y + N
    while y <= y_hi:
        if v >= 0:
            r = isqrt(v)
            if r * r == v:
                return y
        v += d * (2 * y + 1)
        y += 1
    return -1


def cf_cycle(P, Q, D):
    """Run the (P, Q) recurrence for (P + sqrt D)/Q until a state repeats.

    Returns ``(partials, states, first)`` where ``states[j]`` is the first
    repeated state, ``first`` the index of its earlier occurrence and
    ``partials[i]`` the quotient produced from ``states[i]`` for i < j.
    """
    r = isqrt(D)
    seen = {}
    partials = []
    states = []
    while (P, Q) not in seen:
        seen[(P, Q)] = len(states)
        states.append((P, Q))
        if Q > 0:
            a = (P + r) // Q
        else:
            a = (P + r + 1) // Q
        partials.append(a)
        P = a * Q - P
        Q = (D - P * P) // Q
    states.append((P, Q))
    return partials, states, seen[(P, Q)]


def reduced_forms(delta):
    """All reduced forms (A, B, C) of discriminant delta, sorted."""
    r = isqrt(delta)
    out = []
    B = 2 - delta % 2
    while B <= r:
        n = (delta - B * B) // 4
        a = 1
        while a * a <= n:
            if n % a == 0:
                for A in {a, n // a}:
                    for s in (1, -1):
                        sA = s * A
                        # sqrt(delta) - B < 2|A| < sqrt(delta) + B
                        lo = 2 * A + B
                        hi = 2 * A - B
                        if A <= r and lo * lo > delta and (hi <= 0 or hi * hi < delta):
                            out.append((sA, B, -n // sA))
            a += 1
        B += 2
    out.sort()
    return out


def rho(A, B, C, delta, r):
    c2 = 2 * abs(C)
    B1 = r - (r + B) % c2
    return C, B1, (B1 * B1 - delta) // (4 * C)


def rho_cycles(forms, delta):
    """Partition reduced forms into rho-orbits, preserving first-seen order."""
    r = isqrt(delta)
    remaining = set(forms)
    cycles = []
    for f in forms:
        if f not in remaining:
            continue
        cyc = []
        g = f
        while True:
            remaining.discard(g)
            cyc.append(g)
            g = rho(g[0], g[1], g[2], delta, r)
            if g == f:
                break
            if g not in remaining:
                raise ArithmeticError(f"rho left the reduced set at {g} (delta={delta})")
        cycles.append(cyc)
    return cycles
