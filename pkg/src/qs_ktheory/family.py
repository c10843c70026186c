"""Validated input families of pairwise relatively prime integers.

A family carries its derived data: the gcd g of {p - 1 : p in the family},
the set of primes dividing some member, and a display label for their
formal product.
"""

from dataclasses import dataclass
from math import gcd, prod

from .arith import prime_divisors


class FamilyError(ValueError):
    """Invalid input family; the message names the offending element/pair."""


@dataclass(frozen=True)
class PrimeFamily:
    """A sorted tuple of pairwise relatively prime integers >= 2.

    >>> fam = PrimeFamily.from_elements([5, 3])
    >>> fam.s, fam.g, sorted(fam.p_set)
    ((3, 5), 2, [3, 5])
    """

    s: tuple[int, ...]
    g: int
    p_set: frozenset[int]
    d_label: str

    @classmethod
    def from_elements(cls, elements) -> "PrimeFamily":
        elems = list(elements)
        if not elems:
            raise FamilyError("family must be nonempty")
        for x in elems:
            if not isinstance(x, int) or isinstance(x, bool):
                raise FamilyError(f"element {x!r} is not an integer")
            if x < 2:
                raise FamilyError(f"element {x} is < 2")
        elems.sort()
        for i in range(len(elems)):
            for j in range(i + 1, len(elems)):
                d = gcd(elems[i], elems[j])
                if d != 1:
                    raise FamilyError(
                        f"gcd({elems[i]},{elems[j]})={d}: family must be pairwise relatively prime"
                    )
        s = tuple(elems)
        g = gcd(*(p - 1 for p in s))
        primes = frozenset(q for p in s for q in prime_divisors(p))
        d_label = "*".join(str(q) for q in sorted(primes))
        return cls(s=s, g=g, p_set=primes, d_label=d_label)

    @property
    def k(self) -> int:
        return len(self.s)

    @property
    def d(self) -> int:
        """Product of the primes dividing some member."""
        return prod(sorted(self.p_set))

    def subfamily(self, k: int) -> "PrimeFamily":
        """Family of the k smallest members (their own derived data)."""
        if not 1 <= k <= len(self.s):
            raise FamilyError(f"subset size {k} out of range 1..{len(self.s)}")
        return PrimeFamily.from_elements(self.s[:k])

    def __str__(self) -> str:
        return "{" + ", ".join(str(p) for p in self.s) + "}"


def g_of_subset(fam: PrimeFamily, k: int) -> int:
    """gcd of {p - 1} over the k smallest members."""
    if not 1 <= k <= fam.k:
        raise FamilyError(f"subset size {k} out of range 1..{fam.k}")
    return gcd(*(p - 1 for p in fam.s[:k]))


__all__ = ["PrimeFamily", "FamilyError", "g_of_subset"]
