"""Exterior powers of Z^k and the weighted insertion differential.

For a family p_1 < ... < p_k the degree-p differential sends a basis
element e of the p-th exterior power to sum_l (p_l - 1) e_l ^ e.  Its
matrix in the lexicographic wedge bases is the combinatorial input for all
cohomology computations downstream.
"""

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .family import PrimeFamily
from .intlinalg import IntMatrix


@dataclass(frozen=True)
class ExtBasis:
    """Lexicographically ordered basis of the p-th exterior power of Z^k.

    Elements are strictly increasing tuples of 1-based indices.
    """

    k: int
    p: int
    elements: tuple[tuple[int, ...], ...]

    def index(self, t: tuple[int, ...]) -> int:
        return self.elements.index(t)


def ext_basis(k: int, p: int) -> ExtBasis:
    """All strictly increasing p-tuples from 1..k, lexicographic.

    >>> ext_basis(3, 2).elements
    ((1, 2), (1, 3), (2, 3))
    """
    if not 0 <= p <= k:
        raise ValueError(f"degree {p} out of range 0..{k}")
    return ExtBasis(k, p, tuple(combinations(range(1, k + 1), p)))


def wedge_insert(ell: int, t: tuple[int, ...]) -> tuple[int, tuple[int, ...]] | None:
    """Sorted insertion of index ell into the increasing tuple t.

    Returns (sign, tuple) where sign = (-1)**(number of entries below ell),
    or None when ell already occurs (the wedge vanishes).

    >>> wedge_insert(2, (1, 3))
    (-1, (1, 2, 3))
    >>> wedge_insert(1, (2, 3))
    (1, (1, 2, 3))
    >>> wedge_insert(2, (2, 5)) is None
    True
    """
    if ell in t:
        return None
    below = sum(1 for x in t if x < ell)
    sign = -1 if below % 2 else 1
    return sign, tuple(sorted(t + (ell,)))


def differential_matrix(fam: PrimeFamily, p: int) -> IntMatrix:
    """Matrix of the degree-p differential, wedge basis to wedge basis.

    Shape C(k, p+1) x C(k, p); the top degree p = k yields the empty
    0 x 1 matrix since the (k+1)-st exterior power vanishes.

    >>> fam = PrimeFamily.from_elements([3, 5])
    >>> differential_matrix(fam, 0).to_rows()
    [[2], [4]]
    >>> differential_matrix(fam, 1).to_rows()
    [[-4, 2]]
    """
    k = fam.k
    if not 0 <= p <= k:
        raise ValueError(f"degree {p} out of range 0..{k}")
    source = ext_basis(k, p)
    if p == k:
        return IntMatrix(0, 1, ())
    target = ext_basis(k, p + 1)
    pos = {t: i for i, t in enumerate(target.elements)}
    rows = [[0] * comb(k, p) for _ in range(comb(k, p + 1))]
    for j, e in enumerate(source.elements):
        for ell, weight in zip(range(1, k + 1), (q - 1 for q in fam.s)):
            ins = wedge_insert(ell, e)
            if ins is None:
                continue
            sign, wedge = ins
            rows[pos[wedge]][j] += sign * weight
    return IntMatrix.from_rows(rows, cols=comb(k, p))


def koszul_complex(fam: PrimeFamily) -> list[IntMatrix]:
    """The full chain of differential matrices A_0, ..., A_k.

    Consecutive products vanish: A_{p+1} @ A_p = 0.
    """
    return [differential_matrix(fam, p) for p in range(fam.k + 1)]


__all__ = ["ExtBasis", "ext_basis", "wedge_insert", "differential_matrix", "koszul_complex"]
