"""Small exact number-theory helpers shared across the package.

Everything here works on plain Python integers, so all results are exact
at any magnitude.
"""

from math import gcd, isqrt


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: return (g, x, y) with g = gcd(a, b) >= 0 and a*x + b*y = g.

    >>> xgcd(12, 18)
    (6, -1, 1)
    >>> xgcd(-4, 2)
    (2, 0, 1)
    """
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int] | None:
    """Intersect the cosets r1 + m1*Z and r2 + m2*Z.

    Returns (r, lcm(m1, m2)) with 0 <= r < lcm, or None when the cosets are
    disjoint (r1 and r2 differ modulo gcd(m1, m2)).

    >>> crt_pair(1, 3, 2, 5)
    (7, 15)
    >>> crt_pair(0, 2, 1, 2) is None
    True
    """
    g, x, _ = xgcd(m1, m2)
    if (r2 - r1) % g != 0:
        return None
    lcm = m1 // g * m2
    r = (r1 + m1 * ((r2 - r1) // g) * x) % lcm
    return r, lcm


def crt_list(pairs: list[tuple[int, int]]) -> tuple[int, int] | None:
    """Intersect a list of cosets (residue, modulus); None when empty."""
    r, m = 0, 1
    for r2, m2 in pairs:
        sol = crt_pair(r, m, r2, m2)
        if sol is None:
            return None
        r, m = sol
    return r, m


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division; fine at desk scale.

    >>> factorize(360)
    {2: 3, 3: 2, 5: 1}
    """
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        f += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def prime_divisors(n: int) -> tuple[int, ...]:
    """Sorted primes dividing n."""
    return tuple(sorted(factorize(n)))


def divisors(n: int) -> list[int]:
    """All positive divisors of n, ascending."""
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def strip_primes(n: int, primes) -> int:
    """Remove from n every prime factor lying in `primes`."""
    for p in primes:
        while n % p == 0:
            n //= p
    return n


__all__ = [
    "gcd",
    "xgcd",
    "crt_pair",
    "crt_list",
    "factorize",
    "prime_divisors",
    "divisors",
    "strip_primes",
]
