"""Colored loop paths with carry-style factorization rules.

Every member p of the family contributes p loops at a single vertex,
labelled 0..p-1.  A two-colored path factors both ways; the rule theta
swaps adjacent colors while preserving the evaluation m + p*n, which is
exactly base arithmetic with a carry.  Paths of a given color multiset
biject with the pairs (m, h), h the product of the colors, which makes
every categorical axiom an exact statement about integers.
"""

from dataclasses import dataclass
from math import prod

from .family import PrimeFamily
from .intlinalg import FgAbGroup, tensor, tor


@dataclass(frozen=True)
class Edge:
    """A loop of color p with label 0 <= m <= p-1."""

    color: int
    label: int

    def __post_init__(self):
        if self.color < 2:
            raise ValueError(f"color must be >= 2, got {self.color}")
        if not 0 <= self.label <= self.color - 1:
            raise ValueError(f"label {self.label} out of range for color {self.color}")


@dataclass(frozen=True)
class Path:
    """A finite word of edges, composed left to right."""

    edges: tuple[Edge, ...]

    @classmethod
    def of(cls, *pairs: tuple[int, int]) -> "Path":
        """Build from (color, label) pairs."""
        return cls(tuple(Edge(c, m) for c, m in pairs))

    def degree(self) -> dict[int, int]:
        deg: dict[int, int] = {}
        for e in self.edges:
            deg[e.color] = deg.get(e.color, 0) + 1
        return deg

    def value(self) -> tuple[int, int]:
        """Evaluate to (m, h) by iterated (m,p)(n,q) = (m + p*n, p*q).

        >>> Path.of((3, 1), (5, 2)).value()
        (7, 15)
        """
        m, h = 0, 1
        for e in self.edges:
            m, h = m + h * e.label, h * e.color
        return m, h


def theta(p: int, q: int, m: int, n: int) -> tuple[int, int]:
    """Factorization rule: the unique (n', m') with n' + q*m' = m + p*n.

    >>> theta(3, 5, 1, 2)
    (2, 1)
    >>> theta(2, 3, 1, 2)
    (2, 1)
    """
    if p == q:
        raise ValueError("rule applies to distinct colors")
    if not (0 <= m < p and 0 <= n < q):
        raise ValueError(f"labels ({m},{n}) out of range for colors ({p},{q})")
    v = m + p * n
    return v % q, v // q


def flip(p: int, q: int, m: int, n: int) -> tuple[int, int]:
    """The label-preserving rule (m, n) -> (n, m); same skeleton, no carry."""
    if not (0 <= m < p and 0 <= n < q):
        raise ValueError(f"labels ({m},{n}) out of range for colors ({p},{q})")
    return n, m


def verify_bijection(p: int, q: int) -> bool:
    """Exhaustively check that the rule permutes the p*q label pairs."""
    seen = set()
    for m in range(p):
        for n in range(q):
            nn, mm = theta(p, q, m, n)
            if not (0 <= nn < q and 0 <= mm < p):
                return False
            if nn + q * mm != m + p * n:
                return False
            seen.add((nn, mm))
    return len(seen) == p * q


def verify_hexagon(p: int, q: int, r: int, m_p: int, m_q: int, m_r: int) -> bool:
    """Associativity of the rules on a three-colored path.

    Walks the six-step rewriting chain of m_p + p*(m_q + q*m_r) through all
    adjacent transpositions and checks the labels return to the start.

    >>> verify_hexagon(2, 3, 5, 1, 2, 4)
    True
    """
    total = m_p + p * (m_q + q * m_r)
    r1, q1 = theta(q, r, m_q, m_r)
    r2, p1 = theta(p, r, m_p, r1)
    q2, p2 = theta(p, q, p1, q1)
    q3, r3 = theta(r, q, r2, q2)
    p3, r4 = theta(r, p, r3, p2)
    p4, q4 = theta(q, p, q3, p3)
    assert p4 + p * (q4 + q * r4) == total
    return (p4, q4, r4) == (m_p, m_q, m_r)


def normalize_path(path: Path, color_order, rule=theta) -> Path:
    """Rewrite adjacent out-of-order pairs until colors follow color_order.

    Each rewrite swaps the leftmost inverted adjacent pair via the rule;
    the inversion count drops by one per step, so this terminates, and
    theta-rewrites preserve the path's value.

    >>> normalize_path(Path.of((3, 1), (5, 2)), color_order=(5, 3)).edges
    (Edge(color=5, label=2), Edge(color=3, label=1))
    """
    rank = {c: i for i, c in enumerate(color_order)}
    edges = list(path.edges)
    while True:
        for i in range(len(edges) - 1):
            a, b = edges[i], edges[i + 1]
            if rank[a.color] > rank[b.color]:
                n2, m2 = rule(a.color, b.color, a.label, b.label)
                edges[i] = Edge(b.color, n2)
                edges[i + 1] = Edge(a.color, m2)
                break
        else:
            return Path(tuple(edges))


def path_count(fam: PrimeFamily, degree: dict[int, int]) -> int:
    """Number of paths of the given color multiset: the product of colors.

    >>> path_count(PrimeFamily.from_elements([2, 3]), {2: 2, 3: 1})
    12
    """
    for c, e in degree.items():
        if c not in fam.s:
            raise ValueError(f"color {c} not in family {fam}")
        if e < 0:
            raise ValueError("degree exponents must be >= 0")
    return prod(c**e for c, e in degree.items())


def enumerate_paths(fam: PrimeFamily, degree: dict[int, int]):
    """All paths with colors in family order (normal form), as an iterator."""
    colors = []
    for c in fam.s:
        colors.extend([c] * degree.get(c, 0))

    def backtrack(i, acc):
        if i == len(colors):
            yield Path(tuple(acc))
            return
        for label in range(colors[i]):
            acc.append(Edge(colors[i], label))
            yield from backtrack(i + 1, acc)
            acc.pop()

    yield from backtrack(0, [])


def kunneth_oracle(p: int, q: int) -> tuple[FgAbGroup, FgAbGroup]:
    """Degree-wise K-groups of the two-color algebra via the product formula.

    Both tensor factors have even part Z/(n-1) and trivial odd part, so the
    even degree is the tensor of the even parts and the odd degree is their
    Tor; both come out cyclic of order gcd(p-1, q-1).

    >>> tuple(str(g) for g in kunneth_oracle(3, 5))
    ('Z/2', 'Z/2')
    >>> tuple(str(g) for g in kunneth_oracle(2, 3))
    ('0', '0')
    """
    if p == q:
        raise ValueError("the two colors must be distinct")
    even_p, even_q = FgAbGroup.cyclic(p - 1), FgAbGroup.cyclic(q - 1)
    return tensor(even_p, even_q), tor(even_p, even_q)


__all__ = [
    "Edge",
    "Path",
    "theta",
    "flip",
    "verify_bijection",
    "verify_hexagon",
    "normalize_path",
    "path_count",
    "enumerate_paths",
    "kunneth_oracle",
]
