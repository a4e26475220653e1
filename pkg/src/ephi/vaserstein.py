"""Vaserstein's generators of ``E_phi(R)`` and how they move between forms.

For an invertible alternating ``phi`` of size ``2n`` and ``v`` of length
``2n-1``::

    alpha_phi(v) = I + d^t v nu          C_phi(v) = (1      0    )
    beta_phi(v)  = I + mu v^t c                     (v^t  alpha  )

                                         R_phi(v) = (1  v   )
                                                    (0  beta)

``alpha`` and ``beta`` are additive in ``v``; ``C`` and ``R`` are symplectic
for ``phi``.
"""

from __future__ import annotations

from typing import Sequence

from .errors import DimensionMismatch, FormMismatch, UnsupportedAtom, UnsupportedIndex
from .forms import AlternatingForm, alpha_matrix, beta_matrix, standard_form
from .matrix import Matrix, block_compose, congruence, one_perp
from .rings import Ring, RingElement
from .words import (
    Alpha,
    Atom,
    Beta,
    Elem,
    GeneratorWord,
    SymplElem,
    elem_commutator,
)


def _vec(form: AlternatingForm, v) -> Matrix:
    if isinstance(v, Matrix):
        if v.ring != form.ring:
            v = v.coerce(form.ring)
    else:
        v = Matrix.row_vector(form.ring, v)
    if v.shape != (1, 2 * form.n - 1):
        raise DimensionMismatch(f"expected a row vector of length {2 * form.n - 1}")
    return v


def alpha(form: AlternatingForm, v) -> Matrix:
    return alpha_matrix(form, _vec(form, v))


def beta(form: AlternatingForm, v) -> Matrix:
    return beta_matrix(form, _vec(form, v))


def c_mat(form: AlternatingForm, v) -> Matrix:
    """``C_phi(v) = (1 0; v^t alpha_phi(v))``."""
    v = _vec(form, v)
    R = form.ring
    return block_compose(Matrix.identity(R, 1), Matrix.zeros(R, 1, v.ncols), v.T, alpha_matrix(form, v))


def r_mat(form: AlternatingForm, v) -> Matrix:
    """``R_phi(v) = (1 v; 0 beta_phi(v))``."""
    v = _vec(form, v)
    R = form.ring
    return block_compose(Matrix.identity(R, 1), v, Matrix.zeros(R, v.ncols, 1), beta_matrix(form, v))


def _pair_correction(entries: Sequence[RingElement]) -> RingElement:
    # sum over the sigma-pairs (2k-1, 2k), k >= 2, of a_{2k-2} a_{2k-1}
    acc = entries[0] - entries[0]
    for k in range(2, len(entries) // 2 + 2):
        acc = acc + entries[2 * k - 3] * entries[2 * k - 2]
    return acc


def c_witness(n: int, v: Matrix) -> list[SymplElem]:
    """``se`` factors, in left-to-right order, whose product is ``C_psi(v)``.

    ``se_21(a_1 + s) se_31(a_2) ... se_{2n,1}(a_{2n-1})`` where ``s`` sums
    ``a_{2k-2} a_{2k-1}`` over ``k = 2..n``; the correction compensates for
    the non-commuting pairs ``se_{2k-1,1}``, ``se_{2k,1}``.
    """
    a = v.vector()
    first = SymplElem(2, 1, a[0] + _pair_correction(a))
    return [first] + [SymplElem(i, 1, a[i - 2]) for i in range(3, 2 * n + 1)]


def r_witness(n: int, v: Matrix) -> list[SymplElem]:
    """``se_12(a_1 - s) se_13(a_2) ... se_{1,2n}(a_{2n-1})`` equals ``R_psi(v)``."""
    a = v.vector()
    first = SymplElem(1, 2, a[0] - _pair_correction(a))
    return [first] + [SymplElem(1, i, a[i - 2]) for i in range(3, 2 * n + 1)]


def translate_elem(n: int, i: int, j: int, a, ring: Ring | None = None) -> GeneratorWord:
    """Single ``alpha``/``beta`` atom over ``psi_n`` equal to ``E_ij(a)``.

    Only first-row and first-column transvections have a direct
    translation; route others through :func:`elem_word_to_alphabeta`.
    """
    if isinstance(a, RingElement):
        ring = ring or a.ring
    if ring is None:
        raise TypeError("a ring is needed when the parameter is not a RingElement")
    a = ring(a)
    k = 2 * n - 1
    if n < 2:
        raise UnsupportedIndex("translation needs n >= 2")
    if i == j or not (1 <= i <= k and 1 <= j <= k):
        raise UnsupportedIndex(f"E_{i}{j} is not a transvection of size {k}")
    if i != 1 and j != 1:
        raise UnsupportedIndex(f"E_{i}{j} is not in the first row or column")
    form = standard_form(ring, n)
    if i == 1:
        atom = Alpha(form, _table_vector(ring, k, j, a))
    else:
        atom = Beta(form, _table_vector(ring, k, i, a))
    return GeneratorWord(k, ring, (atom,))


def _table_vector(ring: Ring, k: int, idx: int, a: RingElement) -> Matrix:
    if idx == 2:
        return Matrix.unit_vector(ring, k, 3, a)
    if idx % 2 == 0:
        return Matrix.unit_vector(ring, k, idx + 1, a)
    return Matrix.unit_vector(ring, k, idx - 1, -a)


def elem_word_to_alphabeta(w: GeneratorWord) -> GeneratorWord:
    """Rewrite a transvection word of odd size ``2n-1`` in ``alpha``/``beta`` over ``psi_n``."""
    if w.size % 2 == 0 or w.size < 3:
        raise DimensionMismatch(f"size must be odd and >= 3, got {w.size}")
    n = (w.size + 1) // 2
    factors: list[Atom] = []
    for atom in w.product_factors():
        if not isinstance(atom, Elem):
            raise UnsupportedAtom(f"expected Elem atoms, got {atom!r}")
        pieces = [atom] if atom.i == 1 or atom.j == 1 else elem_commutator(atom.i, atom.j, atom.value)
        for e in pieces:
            factors.extend(translate_elem(n, e.i, e.j, e.value, w.ring).atoms)
    return GeneratorWord.from_product(w.size, w.ring, factors)


def check_congruent(phi: AlternatingForm, eps: GeneratorWord, phi_star: AlternatingForm):
    """Raise :class:`FormMismatch` unless ``phi = (1 ⊥ eps)^t phi* (1 ⊥ eps)``."""
    if eps.size != 2 * phi_star.n - 1 or phi.n != phi_star.n:
        raise FormMismatch("sizes of eps and the forms do not match")
    if congruence(one_perp(eps.matrix), phi_star.phi) != phi.phi:
        raise FormMismatch("phi is not (1 ⊥ eps)^t phi* (1 ⊥ eps)")


def transport_generator(
    eps: GeneratorWord, phi_star: AlternatingForm, atom: Alpha | Beta, *, check: bool = True
) -> GeneratorWord:
    """Express a generator over ``phi`` through generators over ``phi*``.

    ``alpha_phi(v) = eps^-1 alpha_phi*(v eps^t) eps`` and
    ``beta_phi(v) = eps^-1 beta_phi*(v eps^-1) eps``, returned as one
    :class:`Conjugated` atom.
    """
    from .words import Conjugated

    if not isinstance(atom, (Alpha, Beta)):
        raise UnsupportedAtom(f"expected an alpha or beta atom, got {atom!r}")
    if check:
        check_congruent(atom.form, eps, phi_star)
    inv = eps.inverse()
    if isinstance(atom, Alpha):
        inner: Atom = Alpha(phi_star, atom.vector @ eps.matrix.T)
    else:
        inner = Beta(phi_star, atom.vector @ inv.matrix)
    return GeneratorWord(eps.size, eps.ring, (Conjugated(inv, inner),))


def transport_back(
    eps: GeneratorWord, phi: AlternatingForm, atom: Alpha | Beta, *, check: bool = True
) -> Alpha | Beta:
    """The generator over ``phi`` equal to ``eps^-1 atom eps`` for ``atom`` over ``phi*``.

    ``eps^-1 alpha_phi*(w) eps = alpha_phi(w eps^-t)`` and
    ``eps^-1 beta_phi*(w) eps = beta_phi(w eps)``.
    """
    if not isinstance(atom, (Alpha, Beta)):
        raise UnsupportedAtom(f"expected an alpha or beta atom, got {atom!r}")
    if check:
        check_congruent(phi, eps, atom.form)
    if isinstance(atom, Alpha):
        return Alpha(phi, atom.vector @ eps.inverse().matrix.T)
    return Beta(phi, atom.vector @ eps.matrix)
