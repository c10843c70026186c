"""Exact arithmetic in the affine monoids over a family.

Elements (m, h) multiply by (m, h)(n, h') = (m + h*n, h*h').  Three ambient
monoids share this rule and differ in the allowed translation part:

  ZxH   m ranges over all integers
  NxH   m >= 0
  U     0 <= m <= h - 1      (one representative per residue class)

Principal right ideals intersect in principal ideals or not at all; the
representative is found by the Chinese remainder theorem.  Foundation sets
and their accurate refinements are decided through residue covering.
"""

from dataclasses import dataclass
from math import lcm

from .arith import crt_pair
from .family import PrimeFamily

AMBIENTS = ("ZxH", "NxH", "U")


@dataclass(frozen=True)
class SgElem:
    """Monoid element (m, h) tagged with its ambient monoid.

    The multiplier h is assumed to lie in the free abelian monoid generated
    by the family; `element` is the validating constructor for user input,
    and products of valid elements stay valid.
    """

    m: int
    h: int
    ambient: str = "U"

    def __post_init__(self):
        if self.ambient not in AMBIENTS:
            raise ValueError(f"unknown ambient {self.ambient!r}")
        if self.h < 1:
            raise ValueError(f"multiplier must be >= 1, got {self.h}")
        if self.ambient == "NxH" and self.m < 0:
            raise ValueError(f"({self.m},{self.h}) has negative translation")
        if self.ambient == "U" and not 0 <= self.m <= self.h - 1:
            raise ValueError(f"({self.m},{self.h}) violates 0 <= m <= h-1")

    def __str__(self) -> str:
        return f"({self.m},{self.h})"


def h_plus_membership(h: int, fam: PrimeFamily) -> tuple[int, ...] | None:
    """Exponent vector of h over the family members, or None.

    >>> fam = PrimeFamily.from_elements([3, 5])
    >>> h_plus_membership(45, fam)
    (2, 1)
    >>> h_plus_membership(6, fam) is None
    True
    """
    if h < 1:
        raise ValueError(f"h must be >= 1, got {h}")
    exps = []
    for p in fam.s:
        e = 0
        while h % p == 0:
            h //= p
            e += 1
        exps.append(e)
    return tuple(exps) if h == 1 else None


def element(fam: PrimeFamily, m: int, h: int, ambient: str = "U") -> SgElem:
    """Validated constructor: checks h against the family's monoid."""
    if h_plus_membership(h, fam) is None:
        raise ValueError(f"{h} does not factor over {fam}")
    return SgElem(m, h, ambient)


def compose(x: SgElem, y: SgElem) -> SgElem:
    """Monoid product (m + h*n, h*h'); the U constraint is preserved.

    >>> compose(SgElem(1, 3), SgElem(2, 5))
    SgElem(m=7, h=15, ambient='U')
    """
    if x.ambient != y.ambient:
        raise ValueError(f"ambient mismatch: {x.ambient} vs {y.ambient}")
    return SgElem(x.m + x.h * y.m, x.h * y.h, x.ambient)


def right_lcm(x: SgElem, y: SgElem) -> SgElem | None:
    """Generator of xT n yT, or None when the ideals are disjoint.

    The ideal of (m, h) consists of pairs whose translation part is
    congruent to m mod h (and reachable: >= m for NxH, any residue
    representative for U), so the intersection is governed by CRT on the
    translation parts.  Representatives are canonical: least residue for
    ZxH and U, least admissible value for NxH.
    """
    if x.ambient != y.ambient:
        raise ValueError(f"ambient mismatch: {x.ambient} vs {y.ambient}")
    sol = crt_pair(x.m, x.h, y.m, y.h)
    if sol is None:
        return None
    r, big = sol
    if x.ambient == "NxH" and r < max(x.m, y.m):
        # least admissible representative: translations in the ideal of
        # (m, h) are bounded below by m
        r += -((r - max(x.m, y.m)) // big) * big
    return SgElem(r, big, x.ambient)


def zappa_szep(x: SgElem) -> tuple[SgElem, int]:
    """Action and restriction of the additive generator on a U element.

    The generator steps the translation part cyclically; the restriction
    records the carry.

    >>> zappa_szep(SgElem(0, 3))
    (SgElem(m=1, h=3, ambient='U'), 0)
    >>> zappa_szep(SgElem(2, 3))
    (SgElem(m=0, h=3, ambient='U'), 1)
    """
    if x.ambient != "U":
        raise ValueError("action is defined on U")
    if x.m < x.h - 1:
        return SgElem(x.m + 1, x.h, "U"), 0
    return SgElem(0, x.h, "U"), 1


def is_foundation_set(f) -> bool:
    """Whether every principal right ideal of U meets one of the given ideals.

    It suffices to test the elements (r, L) for L = lcm of the multipliers
    and 0 <= r < L: an arbitrary (x, h') meets (m_i, h_i)U exactly when
    x = m_i mod gcd(h', h_i), which only depends on x mod h_i, and every
    residue pattern mod L is realized by some (r, L).  Hence f is a
    foundation set iff the classes m_i + h_i Z cover Z/L.

    >>> is_foundation_set([SgElem(0, 2), SgElem(1, 2)])
    True
    >>> is_foundation_set([SgElem(0, 2)])
    False
    """
    elems = list(f)
    if not elems:
        raise ValueError("foundation sets are nonempty")
    if any(e.ambient != "U" for e in elems):
        raise ValueError("foundation sets live in U")
    big = lcm(*(e.h for e in elems))
    return all(
        any((r - e.m) % e.h == 0 for e in elems) for r in range(big)
    )


def accurate_refinement(f) -> list[SgElem]:
    """The full slice {(m, L) : 0 <= m < L} at L = lcm of the multipliers.

    Its ideals are pairwise disjoint, they cover every principal ideal, and
    each lies inside some input ideal (the input covers all residues, being
    a foundation set).

    >>> [str(e) for e in accurate_refinement([SgElem(0, 2), SgElem(1, 2)])]
    ['(0,2)', '(1,2)']
    """
    elems = list(f)
    if not is_foundation_set(elems):
        raise ValueError("input is not a foundation set")
    big = lcm(*(e.h for e in elems))
    return [SgElem(m, big, "U") for m in range(big)]


__all__ = [
    "AMBIENTS",
    "SgElem",
    "h_plus_membership",
    "element",
    "compose",
    "right_lcm",
    "zappa_szep",
    "is_foundation_set",
    "accurate_refinement",
]
