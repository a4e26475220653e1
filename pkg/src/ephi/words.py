"""Generator atoms and words for elementary and symplectic groups.

A :class:`GeneratorWord` stores atoms right-to-left: the atom list
``[e1, e2, ..., er]`` evaluates to the matrix product ``er ... e2 e1``.
All indices here are 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence

from .errors import DimensionMismatch, UndecidableIdeal, UnsupportedAtom
from .forms import AlternatingForm, alpha_matrix, beta_matrix
from .matrix import Matrix, block_compose
from .rings import (
    Integers,
    IntegersMod,
    PolynomialRing,
    Rationals,
    Ring,
    RingElement,
)

MAX_WORD_LENGTH = 512


def sigma(i: int) -> int:
    """The involution pairing ``2k-1 <-> 2k``."""
    return i - 1 if i % 2 == 0 else i + 1


def se_generator(n: int, i: int, j: int, z: RingElement) -> Matrix:
    """Elementary symplectic matrix ``se_ij(z)`` of size ``2n``."""
    size = 2 * n
    if not (1 <= i <= size and 1 <= j <= size) or i == j:
        raise IndexError(f"se_{i}{j} is not defined for size {size}")
    R = z.ring
    rows = [list(r) for r in Matrix.identity(R, size).rows]
    rows[i - 1][j - 1] = z.value
    if i != sigma(j):
        si, sj = sigma(i), sigma(j)
        term = z.value if (i + j) % 2 else R.neg(z.value)
        rows[sj - 1][si - 1] = R.add(rows[sj - 1][si - 1], term)
    return Matrix(R, rows)


def _as_vector(ring: Ring, v) -> Matrix:
    if isinstance(v, Matrix):
        if v.nrows != 1:
            raise DimensionMismatch("expected a row vector")
        return v if v.ring == ring else v.coerce(ring)
    return Matrix.row_vector(ring, v)


class Atom:
    """Base class of generator atoms."""

    def size_ok(self, size: int) -> bool:
        return True

    def evaluate(self, size: int, ring: Ring) -> Matrix:
        raise NotImplementedError

    def apply_left(self, m: Matrix) -> Matrix:
        return self.evaluate(m.nrows, m.ring) @ m

    def inverse(self) -> "Atom":
        raise NotImplementedError

    def core_params(self) -> list[RingElement]:
        raise NotImplementedError


@dataclass(frozen=True, eq=False)
class Elem(Atom):
    """``E_ij(value) = I + value * e_ij``."""

    i: int
    j: int
    value: RingElement

    def size_ok(self, size):
        return self.i != self.j and 1 <= self.i <= size and 1 <= self.j <= size

    def evaluate(self, size, ring):
        rows = [list(r) for r in Matrix.identity(ring, size).rows]
        rows[self.i - 1][self.j - 1] = ring.convert(self.value)
        return Matrix(ring, rows)

    def apply_left(self, m):
        R = m.ring
        lam = R.convert(self.value)
        if R.is_zero(lam):
            return m
        rows = list(m.rows)
        src = rows[self.j - 1]
        rows[self.i - 1] = tuple(R.add(a, R.mul(lam, b)) for a, b in zip(rows[self.i - 1], src))
        return Matrix(R, rows)

    def inverse(self):
        return Elem(self.i, self.j, -self.value)

    def core_params(self):
        return [self.value]

    def __repr__(self):
        return f"E{self.i},{self.j}({self.value})"


@dataclass(frozen=True, eq=False)
class RowBlock(Atom):
    """``(1 v; 0 I)``."""

    vector: Matrix

    def size_ok(self, size):
        return self.vector.ncols == size - 1

    def evaluate(self, size, ring):
        k = size - 1
        return block_compose(Matrix.identity(ring, 1), self.vector.coerce(ring), Matrix.zeros(ring, k, 1), Matrix.identity(ring, k))

    def inverse(self):
        return RowBlock(-self.vector)

    def core_params(self):
        return self.vector.vector()

    def __repr__(self):
        return f"Row({', '.join(map(str, self.vector.vector()))})"


@dataclass(frozen=True, eq=False)
class ColBlock(Atom):
    """``(1 0; v^t I)``."""

    vector: Matrix

    def size_ok(self, size):
        return self.vector.ncols == size - 1

    def evaluate(self, size, ring):
        k = size - 1
        return block_compose(Matrix.identity(ring, 1), Matrix.zeros(ring, 1, k), self.vector.coerce(ring).T, Matrix.identity(ring, k))

    def inverse(self):
        return ColBlock(-self.vector)

    def core_params(self):
        return self.vector.vector()

    def __repr__(self):
        return f"Col({', '.join(map(str, self.vector.vector()))})"


@dataclass(frozen=True, eq=False)
class Alpha(Atom):
    """Vaserstein generator ``alpha_phi(v) = I + d^t v nu``."""

    form: AlternatingForm
    vector: Matrix

    def size_ok(self, size):
        return size == 2 * self.form.n - 1 and self.vector.ncols == size

    def evaluate(self, size, ring):
        return alpha_matrix(self.form, self.vector)

    def inverse(self):
        return Alpha(self.form, -self.vector)

    def core_params(self):
        return self.vector.vector()

    def __repr__(self):
        return f"alpha({', '.join(map(str, self.vector.vector()))})"


@dataclass(frozen=True, eq=False)
class Beta(Atom):
    """Vaserstein generator ``beta_phi(v) = I + mu v^t c``."""

    form: AlternatingForm
    vector: Matrix

    def size_ok(self, size):
        return size == 2 * self.form.n - 1 and self.vector.ncols == size

    def evaluate(self, size, ring):
        return beta_matrix(self.form, self.vector)

    def inverse(self):
        return Beta(self.form, -self.vector)

    def core_params(self):
        return self.vector.vector()

    def __repr__(self):
        return f"beta({', '.join(map(str, self.vector.vector()))})"


@dataclass(frozen=True, eq=False)
class SymplElem(Atom):
    """Elementary symplectic generator ``se_ij(value)`` for ``psi_n``."""

    i: int
    j: int
    value: RingElement

    def size_ok(self, size):
        return size % 2 == 0 and self.i != self.j and 1 <= self.i <= size and 1 <= self.j <= size

    def evaluate(self, size, ring):
        return se_generator(size // 2, self.i, self.j, ring(self.value))

    def inverse(self):
        return SymplElem(self.i, self.j, -self.value)

    def core_params(self):
        return [self.value]

    def __repr__(self):
        return f"se{self.i},{self.j}({self.value})"


@dataclass(frozen=True, eq=False)
class Conjugated(Atom):
    """``outer * inner * outer^-1``."""

    outer: "GeneratorWord"
    inner: Atom

    def size_ok(self, size):
        return self.outer.size == size and self.inner.size_ok(size)

    def evaluate(self, size, ring):
        return self.outer.matrix @ self.inner.evaluate(size, ring) @ self.outer.inverse().matrix

    def inverse(self):
        return Conjugated(self.outer, self.inner.inverse())

    def core_params(self):
        return self.inner.core_params()

    def __repr__(self):
        return f"[{self.outer!r}]{self.inner!r}[...]^-1"


@dataclass(frozen=True, eq=False)
class Inverse(Atom):
    atom: Atom

    def size_ok(self, size):
        return self.atom.size_ok(size)

    def evaluate(self, size, ring):
        return self.atom.inverse().evaluate(size, ring)

    def apply_left(self, m):
        return self.atom.inverse().apply_left(m)

    def inverse(self):
        return self.atom

    def core_params(self):
        return self.atom.core_params()

    def __repr__(self):
        return f"({self.atom!r})^-1"


@dataclass(frozen=True, eq=False)
class GeneratorWord:
    size: int
    ring: Ring
    atoms: tuple[Atom, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(self.atoms))
        if len(self.atoms) > MAX_WORD_LENGTH:
            raise DimensionMismatch(f"word length {len(self.atoms)} exceeds {MAX_WORD_LENGTH}")
        for a in self.atoms:
            if not a.size_ok(self.size):
                raise DimensionMismatch(f"atom {a!r} does not fit size {self.size}")

    @classmethod
    def from_product(cls, size: int, ring: Ring, factors: Iterable[Atom]) -> "GeneratorWord":
        """Word for the left-to-right product ``f1 f2 ... fr``."""
        return cls(size, ring, tuple(reversed(list(factors))))

    def __len__(self):
        return len(self.atoms)

    def __iter__(self):
        return iter(self.atoms)

    def __mul__(self, other: "GeneratorWord") -> "GeneratorWord":
        """Word evaluating to ``self.matrix @ other.matrix``."""
        if other.size != self.size or other.ring != self.ring:
            raise DimensionMismatch("words of different size or ring")
        return GeneratorWord(self.size, self.ring, other.atoms + self.atoms)

    @cached_property
    def matrix(self) -> Matrix:
        m = Matrix.identity(self.ring, self.size)
        for a in self.atoms:
            m = a.apply_left(m)
        return m

    def evaluate(self) -> Matrix:
        return self.matrix

    def inverse(self) -> "GeneratorWord":
        return GeneratorWord(self.size, self.ring, tuple(a.inverse() for a in reversed(self.atoms)))

    def product_factors(self) -> list[Atom]:
        """Atoms in left-to-right product order."""
        return list(reversed(self.atoms))

    def __repr__(self):
        return f"GeneratorWord({self.size}, {self.ring.name()}, {list(self.atoms)!r})"


def evaluate_word(w: GeneratorWord) -> Matrix:
    return w.matrix


def word_inverse(w: GeneratorWord) -> GeneratorWord:
    return w.inverse()


def elem_word(size: int, ring: Ring, triples: Iterable[tuple[int, int, object]]) -> GeneratorWord:
    """Word from ``(i, j, value)`` triples listed in left-to-right product order."""
    return GeneratorWord.from_product(size, ring, [Elem(i, j, ring(v)) for i, j, v in triples])


def elem_commutator(i: int, j: int, lam: RingElement) -> list[Elem]:
    """``E_ij(lam) = E_i1(lam) E_1j(1) E_i1(-lam) E_1j(-1)`` for ``i, j != 1``."""
    one = RingElement(lam.ring, lam.ring.one())
    return [Elem(i, 1, lam), Elem(1, j, one), Elem(i, 1, -lam), Elem(1, j, -one)]


def decompose_elem_to_rowcol(w: GeneratorWord) -> GeneratorWord:
    """Rewrite a word of ``Elem`` atoms into row/column block generators."""
    R = w.ring
    k = w.size - 1
    factors: list[Atom] = []
    for atom in w.product_factors():
        if not isinstance(atom, Elem):
            raise UnsupportedAtom(f"expected Elem atoms, got {atom!r}")
        pieces = [atom] if atom.i == 1 or atom.j == 1 else elem_commutator(atom.i, atom.j, atom.value)
        for e in pieces:
            if e.i == 1:
                factors.append(RowBlock(Matrix.unit_vector(R, k, e.j - 1, e.value)))
            else:
                factors.append(ColBlock(Matrix.unit_vector(R, k, e.i - 1, e.value)))
    return GeneratorWord.from_product(w.size, R, factors)


def conjugation_normal_form(
    pairs: Sequence[tuple[GeneratorWord, GeneratorWord]],
) -> tuple[GeneratorWord, GeneratorWord]:
    """Rewrite ``prod a_i b_i`` as ``(prod r_i b_i r_i^-1) (prod a_i)``.

    Here ``r_i = a_1 ... a_i``.  Returns the conjugated part (as
    :class:`Conjugated` atoms) and the plain part.
    """
    if not pairs:
        raise ValueError("need at least one pair")
    size, ring = pairs[0][0].size, pairs[0][0].ring
    r = GeneratorWord(size, ring)
    conj_factors: list[Atom] = []
    for a, b in pairs:
        if a.size != size or b.size != size:
            raise DimensionMismatch("pairs of different size")
        r = r * a
        conj_factors.extend(Conjugated(r, atom) for atom in b.product_factors())
    plain = GeneratorWord(size, ring)
    for a, _ in pairs:
        plain = plain * a
    return GeneratorWord.from_product(size, ring, conj_factors), plain


@dataclass(frozen=True)
class IdealSpec:
    """An ideal given by generators, with membership where decidable."""

    ring: Ring
    generators: tuple[RingElement, ...]

    def __init__(self, ring: Ring, generators: Iterable[object]):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "generators", tuple(ring(g) for g in generators))

    def contains(self, x: RingElement) -> bool:
        R = self.ring
        x = R(x)
        gens = [g for g in self.generators if not g.is_zero()]
        if not gens:
            return x.is_zero()
        if isinstance(R, Integers):
            g = 0
            for y in gens:
                g = gcd(g, y.value)
            return x.value % g == 0
        if isinstance(R, Rationals):
            return True
        if isinstance(R, IntegersMod):
            g = R.modulus
            for y in gens:
                g = gcd(g, y.value)
            return x.value % g == 0
        if isinstance(R, PolynomialRing):
            return self._poly_contains(R, x, gens)
        raise UndecidableIdeal(f"ideal membership in {R.name()} is not implemented")

    def _poly_contains(self, R: PolynomialRing, x: RingElement, gens):
        if all(R.is_constant(g.value) for g in gens):
            base_ideal = IdealSpec(R.base, [RingElement(R.base, R.constant_term(g.value)) for g in gens])
            return all(base_ideal.contains(RingElement(R.base, c)) for c in x.value.values())
        monos = []
        for g in gens:
            if len(g.value) != 1:
                break
            (e, c), = g.value.items()
            if R.base.unit_inverse(c) is None:
                break
            monos.append(e)
        else:
            return all(
                any(all(a >= b for a, b in zip(e, m)) for m in monos) for e in x.value
            )
        raise UndecidableIdeal("only monomial ideals and extended base ideals are decidable")


def relative_word_check(w: GeneratorWord, ideal: IdealSpec) -> bool:
    """Every core atom of ``w`` has its parameters in ``ideal``."""
    if ideal.ring != w.ring:
        raise DimensionMismatch("ideal and word live in different rings")
    for atom in w.atoms:
        core = atom
        while isinstance(core, (Conjugated, Inverse)):
            core = core.inner if isinstance(core, Conjugated) else core.atom
        if not isinstance(core, (Elem, RowBlock, ColBlock, Alpha, Beta, SymplElem)):
            raise UnsupportedAtom(f"unsupported core atom {core!r}")
        if not all(ideal.contains(p) for p in core.core_params()):
            return False
    return True
