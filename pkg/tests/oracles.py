"""Number-theoretic facts about Z_n used as independent references."""

from math import gcd


def divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def prime_factors(n):
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def units(n):
    return tuple(x for x in range(n) if gcd(x, n) == 1) if n > 1 else (0,)


def ideal(n, d):
    """dZ_n as a sorted tuple."""
    g = gcd(d, n)
    return tuple(range(0, n, g)) if g else (0,)


def ideals(n):
    return sorted((ideal(n, d) for d in divisors(n)), key=lambda i: (len(i), i))


def radical(n, d):
    """sqrt(dZ_n) = rad(gcd(d, n)) Z_n."""
    g = gcd(d, n)
    r = 1
    for p in prime_factors(g if g else n):
        r *= p
    return ideal(n, r)


def quasilocal(n):
    return n > 1 and len(prime_factors(n)) == 1
