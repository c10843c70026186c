"""Exact integer linear algebra.

Dense matrices over Z with arbitrary-precision entries, Smith normal form
with accumulated unimodular transforms, integer kernel lattices, cohomology
of two-step complexes, and finitely generated abelian groups in
invariant-factor normal form together with their tensor/Tor calculus.

All values are immutable; every operation is a pure function, so concurrent
use on distinct inputs is safe.
"""

from dataclasses import dataclass
from itertools import combinations
from math import gcd, prod

from .arith import factorize, xgcd


# --------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class IntMatrix:
    """Dense integer matrix, entries in row-major order.

    Zero-row and zero-column shapes are allowed; they show up naturally as
    the empty top differential of an exterior-algebra complex.

    >>> IntMatrix.from_rows([[2], [4]]).shape
    (2, 1)
    """

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimension")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: list[list[int]], cols: int | None = None) -> "IntMatrix":
        """Build from a list of rows; `cols` disambiguates the 0-row case."""
        m = len(rows)
        if m == 0:
            return cls(0, 0 if cols is None else cols, ())
        n = len(rows[0])
        if any(len(r) != n for r in rows):
            raise ValueError("ragged rows")
        if cols is not None and cols != n:
            raise ValueError("cols mismatch")
        return cls(m, n, tuple(x for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def zero(cls, m: int, n: int) -> "IntMatrix":
        return cls(m, n, (0,) * (m * n))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def at(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> tuple[int, ...]:
        return self.entries[j :: self.cols] if self.cols else ()

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols,
            self.rows,
            tuple(self.at(i, j) for j in range(self.cols) for i in range(self.rows)),
        )

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} * {other.shape}")
        a, b = self.to_rows(), other.to_rows()
        out = []
        for i in range(self.rows):
            ai = a[i]
            for j in range(other.cols):
                out.append(sum(ai[k] * b[k][j] for k in range(self.cols)))
        return IntMatrix(self.rows, other.cols, tuple(out))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        return self.mul(other)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)

    def column_submatrix(self, indices: list[int]) -> "IntMatrix":
        ent = tuple(self.at(i, j) for i in range(self.rows) for j in indices)
        return IntMatrix(self.rows, len(indices), ent)

    def __str__(self) -> str:
        return format_matrix(self)


def parse_matrix(text: str) -> IntMatrix:
    """Parse the plain text format: first line "rows cols", then the rows."""
    tokens = text.split()
    if len(tokens) < 2:
        raise ValueError("matrix text must start with 'rows cols'")
    try:
        m, n = int(tokens[0]), int(tokens[1])
        body = [int(t) for t in tokens[2:]]
    except ValueError as exc:
        raise ValueError(f"non-integer token in matrix text: {exc}") from None
    if m < 0 or n < 0 or len(body) != m * n:
        raise ValueError(f"expected {m}x{n} = {m*n} entries, got {len(body)}")
    return IntMatrix(m, n, tuple(body))


def format_matrix(a: IntMatrix) -> str:
    """Inverse of parse_matrix."""
    lines = [f"{a.rows} {a.cols}"]
    lines += [" ".join(str(x) for x in a.row(i)) for i in range(a.rows)]
    return "\n".join(lines)


def determinant(a: IntMatrix) -> int:
    """Exact determinant via fraction-free (Bareiss) elimination.

    >>> determinant(IntMatrix.from_rows([[2, 0], [7, 3]]))
    6
    """
    if a.rows != a.cols:
        raise ValueError("determinant of non-square matrix")
    n = a.rows
    if n == 0:
        return 1
    m = a.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (pivot * m[i][j] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


# --------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SnfResult:
    """Smith normal form data: s @ a @ t == d with |det s| = |det t| = 1.

    `divisors` are the positive diagonal entries of d (the divisibility
    chain); zero diagonal entries trail.
    """

    s: IntMatrix
    t: IntMatrix
    d: IntMatrix
    divisors: tuple[int, ...]


def snf(a: IntMatrix) -> SnfResult:
    """Smith normal form by row/column reduction.

    Pivots on a minimal-absolute-value entry and accumulates the two
    unimodular transforms explicitly.  The zero matrix yields identity
    transforms and no divisors.

    >>> snf(IntMatrix.from_rows([[2], [4]])).divisors
    (2,)
    >>> snf(IntMatrix.from_rows([[2, 4], [4, 8]])).divisors
    (2,)
    """
    m, n = a.rows, a.cols
    d = a.to_rows()
    s = IntMatrix.identity(m).to_rows()
    t = IntMatrix.identity(n).to_rows()

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        s[i], s[j] = s[j], s[i]

    def swap_cols(i, j):
        for r in d:
            r[i], r[j] = r[j], r[i]
        for r in t:
            r[i], r[j] = r[j], r[i]

    def clear_rows(k, i):
        # make d[i][k] = 0 by a unimodular transform of rows k and i;
        # Bezout rotation keeps entry growth tame when the pivot does not divide
        a_, b_ = d[k][k], d[i][k]
        if b_ == 0:
            return
        if b_ % a_ == 0:
            q = b_ // a_
            for row in (d, s):
                rk, ri = row[k], row[i]
                for j in range(len(ri)):
                    ri[j] -= q * rk[j]
            return
        g, x, y = xgcd(a_, b_)
        u, v = -(b_ // g), a_ // g
        for row in (d, s):
            rk, ri = row[k], row[i]
            for j in range(len(ri)):
                rk[j], ri[j] = x * rk[j] + y * ri[j], u * rk[j] + v * ri[j]

    def clear_cols(k, j):
        a_, b_ = d[k][k], d[k][j]
        if b_ == 0:
            return
        if b_ % a_ == 0:
            q = b_ // a_
            for mat in (d, t):
                for row in mat:
                    row[j] -= q * row[k]
            return
        g, x, y = xgcd(a_, b_)
        u, v = -(b_ // g), a_ // g
        for mat in (d, t):
            for row in mat:
                row[k], row[j] = x * row[k] + y * row[j], u * row[k] + v * row[j]

    def negate_row(i):
        d[i] = [-x for x in d[i]]
        s[i] = [-x for x in s[i]]

    rank = 0
    for k in range(min(m, n)):
        # pivot on a minimal-absolute-value entry of the trailing block
        pivot = None
        best = None
        for i in range(k, m):
            for j in range(k, n):
                v = abs(d[i][j])
                if v and (best is None or v < best):
                    pivot, best = (i, j), v
        if pivot is None:
            break
        rank = k + 1
        swap_rows(k, pivot[0])
        if pivot[1] != k:
            swap_cols(k, pivot[1])
        if d[k][k] < 0:
            negate_row(k)

        while True:
            for i in range(k + 1, m):
                clear_rows(k, i)
            for j in range(k + 1, n):
                clear_cols(k, j)
            # column transforms may repopulate column k; |pivot| shrinks with
            # every Bezout step, so this settles
            if any(d[i][k] for i in range(k + 1, m)):
                continue
            if d[k][k] < 0:
                negate_row(k)
            # force the divisibility chain: fold an offending row into row k
            # and resume; the next Bezout pass strictly shrinks the pivot
            offender = None
            for i in range(k + 1, m):
                if any(d[i][j] % d[k][k] for j in range(k + 1, n)):
                    offender = i
                    break
            if offender is None:
                break
            for row in (d, s):
                rk, ri = row[k], row[offender]
                for j in range(len(rk)):
                    rk[j] += ri[j]

    divisors = tuple(d[i][i] for i in range(rank))
    assert all(x > 0 for x in divisors)
    assert all(divisors[i + 1] % divisors[i] == 0 for i in range(rank - 1))
    return SnfResult(
        s=IntMatrix.from_rows(s, cols=m),
        t=IntMatrix.from_rows(t, cols=n),
        d=IntMatrix.from_rows(d, cols=n),
        divisors=divisors,
    )


def determinant_divisors(a: IntMatrix) -> tuple[int, ...]:
    """gcd of all i x i minors, for i = 1 .. min(rows, cols).

    Independent of snf(): minors are expanded directly, so this acts as an
    oracle for the elementary divisors via the quotients d_i / d_{i-1}.
    Entry i is 0 when every i x i minor vanishes.

    >>> determinant_divisors(IntMatrix.from_rows([[2], [4]]))
    (2,)
    >>> determinant_divisors(IntMatrix.zero(2, 2))
    (0, 0)
    """
    r = min(a.rows, a.cols)
    rows = a.to_rows()
    out: list[int] = []
    prev = 1
    for size in range(1, r + 1):
        if prev == 0:
            out.append(0)
            continue
        g = 0
        for rsel in combinations(range(a.rows), size):
            for csel in combinations(range(a.cols), size):
                minor = IntMatrix.from_rows(
                    [[rows[i][j] for j in csel] for i in rsel]
                )
                g = gcd(g, determinant(minor))
                if g == prev:
                    break
            if g == prev:
                break
        out.append(g)
        prev = g
    return tuple(out)


def kernel_basis(a: IntMatrix) -> IntMatrix:
    """Basis of the integer kernel lattice {x : a @ x = 0}, as columns.

    The kernel of a is carried to the kernel of d = s@a@t by t^{-1}; the
    kernel of d is spanned by the coordinate vectors past the nonzero
    diagonal, so the trailing columns of t form a basis.  Columns are
    sign-normalized (first nonzero entry positive) for deterministic output.

    >>> kernel_basis(IntMatrix.from_rows([[-4, 2]])).to_rows()
    [[1], [2]]
    """
    res = snf(a)
    r = len(res.divisors)
    cols = []
    for j in range(r, a.cols):
        col = list(res.t.col(j))
        lead = next((x for x in col if x != 0), 0)
        if lead < 0:
            col = [-x for x in col]
        cols.append(col)
    ent = tuple(cols[j][i] for i in range(a.cols) for j in range(len(cols)))
    return IntMatrix(a.cols, len(cols), ent)


def solve_in_lattice(basis: IntMatrix, target: tuple[int, ...]) -> tuple[int, ...]:
    """Coordinates of `target` in the lattice spanned by the basis columns.

    The basis must have full column rank and the target must lie in the
    lattice; violations indicate an internal bug, not bad user input.
    """
    res = snf(basis)
    r = len(res.divisors)
    assert r == basis.cols, "basis columns are dependent"
    w = res.s.mul(IntMatrix(basis.rows, 1, tuple(target)))
    z = []
    for i in range(basis.rows):
        wi = w.at(i, 0)
        if i < r:
            assert wi % res.divisors[i] == 0, "target outside lattice"
            z.append(wi // res.divisors[i])
        else:
            assert wi == 0, "target outside lattice"
    x = res.t.mul(IntMatrix(basis.cols, 1, tuple(z[: basis.cols])))
    return tuple(x.col(0))


# --------------------------------------------------------------------------
# finitely generated abelian groups


@dataclass(frozen=True)
class FgAbGroup:
    """Finitely generated abelian group Z^r (+) Z/t_1 (+) ... (+) Z/t_s
    in invariant-factor normal form: t_i >= 2 and t_i | t_{i+1}.

    The normal form is unique, so structural equality decides isomorphism.

    >>> FgAbGroup.from_cyclic_factors(0, [2, 3]) == FgAbGroup.cyclic(6)
    True
    """

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        prev = 1
        for t in self.torsion:
            if t < 2:
                raise ValueError("invariant factors must be >= 2")
            if t % prev:
                raise ValueError("invariant factors must form a divisibility chain")
            prev = t

    @classmethod
    def trivial(cls) -> "FgAbGroup":
        return cls(0, ())

    @classmethod
    def free(cls, rank: int) -> "FgAbGroup":
        return cls(rank, ())

    @classmethod
    def cyclic(cls, n: int) -> "FgAbGroup":
        """Z/n, with Z/0 = Z and Z/1 trivial."""
        if n == 0:
            return cls(1, ())
        n = abs(n)
        return cls(0, ()) if n == 1 else cls(0, (n,))

    @classmethod
    def from_cyclic_factors(cls, free_rank: int, factors) -> "FgAbGroup":
        """Normalize an arbitrary list of cyclic orders into invariant factors.

        Factors equal to 0 count toward the free rank; factors equal to 1
        are dropped.  The rest are merged prime-by-prime.
        """
        primes: dict[int, list[int]] = {}
        for f in factors:
            f = abs(f)
            if f == 0:
                free_rank += 1
                continue
            if f == 1:
                continue
            for p, e in factorize(f).items():
                primes.setdefault(p, []).append(e)
        depth = max((len(v) for v in primes.values()), default=0)
        invariants = []
        for slot in range(depth):
            # slot 0 collects the largest exponent of each prime, giving the
            # last (largest) invariant factor; build descending then reverse
            inv = 1
            for p, exps in primes.items():
                exps_sorted = sorted(exps, reverse=True)
                if slot < len(exps_sorted):
                    inv *= p ** exps_sorted[slot]
            invariants.append(inv)
        return cls(free_rank, tuple(reversed(invariants)))

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def torsion_order(self) -> int:
        return prod(self.torsion)

    def direct_sum(self, *others: "FgAbGroup") -> "FgAbGroup":
        rank = self.free_rank + sum(g.free_rank for g in others)
        factors = list(self.torsion)
        for g in others:
            factors.extend(g.torsion)
        return FgAbGroup.from_cyclic_factors(rank, factors)

    def power(self, n: int) -> "FgAbGroup":
        """n-fold direct sum with itself."""
        return FgAbGroup.from_cyclic_factors(self.free_rank * n, self.torsion * n)

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"


def tensor(g: FgAbGroup, h: FgAbGroup) -> FgAbGroup:
    """Tensor product over Z, expanded bilinearly over the normal forms.

    Z (x) G = G and Z/a (x) Z/b = Z/gcd(a, b).

    >>> str(tensor(FgAbGroup.cyclic(2), FgAbGroup.cyclic(4)))
    'Z/2'
    """
    rank = g.free_rank * h.free_rank
    factors = []
    factors += list(g.torsion) * h.free_rank
    factors += list(h.torsion) * g.free_rank
    factors += [gcd(a, b) for a in g.torsion for b in h.torsion]
    return FgAbGroup.from_cyclic_factors(rank, factors)


def tor(g: FgAbGroup, h: FgAbGroup) -> FgAbGroup:
    """Tor_1 over Z: free parts contribute nothing, Tor(Z/a, Z/b) = Z/gcd(a, b).

    >>> str(tor(FgAbGroup.cyclic(2), FgAbGroup.cyclic(4)))
    'Z/2'
    """
    factors = [gcd(a, b) for a in g.torsion for b in h.torsion]
    return FgAbGroup.from_cyclic_factors(0, factors)


def cohomology(d_out: IntMatrix, d_in: IntMatrix) -> FgAbGroup:
    """ker(d_out) / im(d_in) for a two-step complex d_in then d_out.

    Requires d_out @ d_in = 0.  The image is rewritten in coordinates of a
    kernel-lattice basis and the quotient read off one Smith normal form.

    >>> d_out = IntMatrix.from_rows([[-4, 2]])
    >>> d_in = IntMatrix.from_rows([[2], [4]])
    >>> str(cohomology(d_out, d_in))
    'Z/2'
    """
    if d_out.cols != d_in.rows:
        raise ValueError(
            f"chain mismatch: d_out has {d_out.cols} columns, d_in {d_in.rows} rows"
        )
    if not d_out.mul(d_in).is_zero():
        raise ValueError("not a complex: d_out @ d_in != 0")
    kernel = kernel_basis(d_out)
    coords = [
        solve_in_lattice(kernel, d_in.col(j)) for j in range(d_in.cols)
    ]
    rel = IntMatrix(
        kernel.cols,
        len(coords),
        tuple(coords[j][i] for i in range(kernel.cols) for j in range(len(coords))),
    )
    div = snf(rel).divisors if rel.cols else ()
    free = kernel.cols - len(div)
    return FgAbGroup.from_cyclic_factors(free, div)


__all__ = [
    "IntMatrix",
    "SnfResult",
    "FgAbGroup",
    "snf",
    "determinant",
    "determinant_divisors",
    "kernel_basis",
    "solve_in_lattice",
    "cohomology",
    "tensor",
    "tor",
    "parse_matrix",
    "format_matrix",
]
