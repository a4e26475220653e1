"""Dense exact matrices over a :class:`~ephi.rings.Ring`.

Entries are stored as payloads in a tuple of row tuples.  Indices in this
module are 0-based; the word and generator layers use the 1-based
convention of the literature.
"""

from __future__ import annotations

from typing import Any, Callable, Iterable, Sequence

from .errors import DimensionMismatch, NotAlternating, NotInvertible, UnitTestUnsupported
from .rings import Ring, RingElement

MAX_SIZE = 16


class Matrix:
    __slots__ = ("ring", "nrows", "ncols", "rows")

    def __init__(self, ring: Ring, rows: Sequence[Sequence[Any]]):
        rows = tuple(tuple(r) for r in rows)
        if not rows or not rows[0]:
            raise DimensionMismatch("matrices must have at least one row and column")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatch("ragged rows")
        self.ring = ring
        self.nrows = len(rows)
        self.ncols = ncols
        self.rows = rows

    # -- construction ---------------------------------------------------
    @classmethod
    def from_rows(cls, ring: Ring, rows: Iterable[Iterable[Any]]) -> "Matrix":
        """Build from ints, strings or RingElements."""
        return cls(ring, [[ring.convert(v) for v in row] for row in rows])

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "Matrix":
        z, o = ring.zero(), ring.one()
        return cls(ring, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, ring: Ring, nrows: int, ncols: int | None = None) -> "Matrix":
        z = ring.zero()
        return cls(ring, [[z] * (nrows if ncols is None else ncols) for _ in range(nrows)])

    @classmethod
    def row_vector(cls, ring: Ring, values: Iterable[Any]) -> "Matrix":
        return cls.from_rows(ring, [list(values)])

    @classmethod
    def unit_vector(cls, ring: Ring, length: int, index: int, scale: Any = 1) -> "Matrix":
        """Row vector with ``scale`` at 1-based position ``index``."""
        z = ring.zero()
        row = [z] * length
        row[index - 1] = ring.convert(scale)
        return cls(ring, [row])

    # -- access -----------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, idx) -> RingElement:
        i, j = idx
        return RingElement(self.ring, self.rows[i][j])

    def entry(self, i: int, j: int):
        return self.rows[i][j]

    def elements(self) -> list[list[RingElement]]:
        return [[RingElement(self.ring, v) for v in row] for row in self.rows]

    def vector(self) -> list[RingElement]:
        """Entries of a row vector."""
        if self.nrows != 1:
            raise DimensionMismatch("not a row vector")
        return [RingElement(self.ring, v) for v in self.rows[0]]

    # -- arithmetic -------------------------------------------------------
    def _check_ring(self, other: "Matrix"):
        if other.ring != self.ring:
            raise DimensionMismatch(f"ring mismatch: {self.ring.name()} vs {other.ring.name()}")

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check_ring(other)
        if self.ncols != other.nrows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        R = self.ring
        add, mul, is_zero, zero = R.add, R.mul, R.is_zero, R.zero()
        cols = list(zip(*other.rows))
        out = []
        for row in self.rows:
            nz = [(k, a) for k, a in enumerate(row) if not is_zero(a)]
            new_row = []
            for col in cols:
                acc = zero
                for k, a in nz:
                    b = col[k]
                    if not is_zero(b):
                        acc = add(acc, mul(a, b))
                new_row.append(acc)
            out.append(new_row)
        return Matrix(R, out)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_ring(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        add = self.ring.add
        return Matrix(self.ring, [[add(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_ring(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot subtract {self.shape} and {other.shape}")
        sub = self.ring.sub
        return Matrix(self.ring, [[sub(a, b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> "Matrix":
        neg = self.ring.neg
        return Matrix(self.ring, [[neg(a) for a in r] for r in self.rows])

    def scale(self, c: Any) -> "Matrix":
        c = self.ring.convert(c)
        mul = self.ring.mul
        return Matrix(self.ring, [[mul(c, a) for a in r] for r in self.rows])

    @property
    def T(self) -> "Matrix":
        return Matrix(self.ring, list(zip(*self.rows)))

    def transpose(self) -> "Matrix":
        return self.T

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix) or other.shape != self.shape or other.ring != self.ring:
            return False
        eq = self.ring.eq
        return all(eq(a, b) for r, s in zip(self.rows, other.rows) for a, b in zip(r, s))

    __hash__ = None

    def is_identity(self) -> bool:
        return self.is_square and self == Matrix.identity(self.ring, self.nrows)

    def is_zero(self) -> bool:
        return all(self.ring.is_zero(a) for r in self.rows for a in r)

    def map(self, fn: Callable[[Any], Any], ring: Ring | None = None) -> "Matrix":
        """Apply ``fn`` to every payload, landing in ``ring``."""
        return Matrix(ring or self.ring, [[fn(a) for a in r] for r in self.rows])

    def coerce(self, ring: Ring) -> "Matrix":
        """Image along the natural map into ``ring``."""
        src = self.ring
        return self.map(lambda a: ring.coerce(a, src), ring)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix(self.ring, [[self.rows[i][j] for j in cols] for i in rows])

    def with_entry(self, i: int, j: int, value) -> "Matrix":
        rows = [list(r) for r in self.rows]
        rows[i][j] = value
        return Matrix(self.ring, rows)

    def det(self) -> RingElement:
        return determinant(self)

    def pfaffian(self) -> RingElement:
        return pfaffian(self)

    def inverse(self) -> "Matrix":
        return try_inverse(self)

    def is_alternating(self) -> bool:
        return is_alternating(self)

    def to_strings(self) -> list[list[str]]:
        s = self.ring.to_str
        return [[s(a) for a in r] for r in self.rows]

    def __repr__(self):
        body = "; ".join(", ".join(r) for r in self.to_strings())
        return f"Matrix({self.ring.name()}, [{body}])"

    def __str__(self):
        strs = self.to_strings()
        width = max(len(x) for r in strs for x in r)
        return "\n".join("[" + "  ".join(x.rjust(width) for x in r) + "]" for r in strs)


def identity(ring: Ring, n: int) -> Matrix:
    return Matrix.identity(ring, n)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    return a @ b


def transpose(a: Matrix) -> Matrix:
    return a.T


def block_diag(a: Matrix, b: Matrix) -> Matrix:
    """Orthogonal sum ``a ⊥ b``."""
    a._check_ring(b)
    z = a.ring.zero()
    rows = [list(r) + [z] * b.ncols for r in a.rows]
    rows += [[z] * a.ncols + list(r) for r in b.rows]
    return Matrix(a.ring, rows)


def one_perp(m: Matrix) -> Matrix:
    """``1 ⊥ m``."""
    return block_diag(Matrix.identity(m.ring, 1), m)


def block_compose(tl: Matrix, tr: Matrix, bl: Matrix, br: Matrix) -> Matrix:
    """Assemble ``(tl tr; bl br)``."""
    if tl.nrows != tr.nrows or bl.nrows != br.nrows or tl.ncols != bl.ncols or tr.ncols != br.ncols:
        raise DimensionMismatch("incompatible blocks")
    rows = [list(a) + list(b) for a, b in zip(tl.rows, tr.rows)]
    rows += [list(a) + list(b) for a, b in zip(bl.rows, br.rows)]
    return Matrix(tl.ring, rows)


def congruence(b: Matrix, a: Matrix) -> Matrix:
    """``bᵗ a b``."""
    if not a.is_square or b.nrows != a.nrows:
        raise DimensionMismatch(f"cannot form congruence of {a.shape} by {b.shape}")
    return b.T @ a @ b


def is_alternating(m: Matrix) -> bool:
    """Skew-symmetric with an explicitly zero diagonal."""
    if not m.is_square:
        return False
    R = m.ring
    n = m.nrows
    for i in range(n):
        if not R.is_zero(m.rows[i][i]):
            return False
        for j in range(i + 1, n):
            if not R.is_zero(R.add(m.rows[i][j], m.rows[j][i])):
                return False
    return True


def psi(ring: Ring, n: int) -> Matrix:
    """The standard symplectic form: ``n`` diagonal copies of ``(0 1; -1 0)``."""
    m = [[ring.zero()] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        m[2 * i][2 * i + 1] = ring.one()
        m[2 * i + 1][2 * i] = ring.neg(ring.one())
    return Matrix(ring, m)


def determinant(m: Matrix) -> RingElement:
    """Exact determinant.

    Fraction-free Bareiss elimination where the ring supports exact
    division; otherwise Laplace expansion along rows with the minors
    memoized on their column sets.
    """
    if not m.is_square:
        raise DimensionMismatch("determinant of a non-square matrix")
    R = m.ring
    if R.bareiss_ok:
        return RingElement(R, _det_bareiss(R, [list(r) for r in m.rows]))
    return RingElement(R, _det_laplace(R, m.rows))


def _det_bareiss(R: Ring, a: list[list]):
    n = len(a)
    sign = False
    prev = R.one()
    for k in range(n - 1):
        if R.is_zero(a[k][k]):
            for i in range(k + 1, n):
                if not R.is_zero(a[i][k]):
                    a[k], a[i] = a[i], a[k]
                    sign = not sign
                    break
            else:
                return R.zero()
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                num = R.sub(R.mul(akk, a[i][j]), R.mul(aik, a[k][j]))
                q = R.exact_div(num, prev)
                if q is None:
                    raise ArithmeticError("Bareiss division was not exact")
                a[i][j] = q
        prev = akk
    d = a[n - 1][n - 1]
    return R.neg(d) if sign else d


def _det_laplace(R: Ring, rows):
    n = len(rows)
    memo: dict[int, Any] = {}

    def minor(k: int, cols: int):
        # determinant of rows k.. with columns in bitmask ``cols``
        if k == n:
            return R.one()
        if cols in memo:
            return memo[cols]
        acc = R.zero()
        pos = 0
        for j in range(n):
            if cols >> j & 1:
                a = rows[k][j]
                if not R.is_zero(a):
                    t = R.mul(a, minor(k + 1, cols & ~(1 << j)))
                    acc = R.sub(acc, t) if pos & 1 else R.add(acc, t)
                pos += 1
        memo[cols] = acc
        return acc

    return minor(0, (1 << n) - 1)


def pfaffian(m: Matrix) -> RingElement:
    """Pfaffian by first-row expansion, normalized so that ``Pf(psi_n) = 1``.

    ``Pf(m) = sum_{j>=2} (-1)^j m[1][j] Pf(m without rows/cols 1, j)`` with
    1-based ``j`` and ``Pf`` of the empty matrix equal to 1.
    """
    if not is_alternating(m):
        raise NotAlternating("Pfaffian needs an alternating matrix")
    R = m.ring
    n = m.nrows
    if n % 2:
        return RingElement(R, R.zero())
    rows = m.rows
    memo: dict[int, Any] = {}

    def pf(mask: int):
        if mask == 0:
            return R.one()
        if mask in memo:
            return memo[mask]
        idx = [i for i in range(n) if mask >> i & 1]
        first = idx[0]
        acc = R.zero()
        for pos, j in enumerate(idx[1:], start=2):
            a = rows[first][j]
            if R.is_zero(a):
                continue
            t = R.mul(a, pf(mask & ~(1 << first) & ~(1 << j)))
            acc = R.add(acc, t) if pos % 2 == 0 else R.sub(acc, t)
        memo[mask] = acc
        return acc

    return RingElement(R, pf((1 << n) - 1))


def adjugate(m: Matrix) -> Matrix:
    n = m.nrows
    R = m.ring
    if n == 1:
        return Matrix.identity(R, 1)
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = m.submatrix([r for r in range(n) if r != i], [c for c in range(n) if c != j])
            d = determinant(minor).value
            out[j][i] = R.neg(d) if (i + j) % 2 else d
    return Matrix(R, out)


def try_inverse(m: Matrix) -> Matrix:
    """Inverse via adjugate times the inverse of the determinant."""
    if not m.is_square:
        raise DimensionMismatch("inverse of a non-square matrix")
    R = m.ring
    d = determinant(m)
    try:
        dinv = R.unit_inverse(d.value)
    except UnitTestUnsupported as exc:
        raise NotInvertible(f"cannot decide whether det = {d} is a unit: {exc}") from exc
    if dinv is None:
        raise NotInvertible(f"determinant {d} is not a unit in {R.name()}")
    return adjugate(m).scale(RingElement(R, dinv))
