"""Rao–Swan symplectization of elementary words.

Given ``eps = eps_r ... eps_1`` with every ``eps_k`` a row or column block
generator of size ``2n``, build ``rho`` in ``E_psi`` (size ``2n-1``) with
``(1 ⊥ rho) eps`` a product of symplectic elementary matrices.

The induction is run iteratively.  For the current first atom with vector
``v`` take ``gamma = alpha_psi(v)`` (column type) or ``beta_psi(v)`` (row
type); then ``(1 ⊥ gamma) eps_1`` is ``C_psi(v)`` or ``R_psi(v)``, which has
an explicit ``se`` factorization.  The remaining atoms are conjugated by
``(1 ⊥ gamma)``, which keeps them in block form::

    Col(u) -> Col(u gamma^t)        Row(u) -> Row(u gamma^-1)

Unwinding gives ``rho = gamma_r' ... gamma_1`` — i.e. ``rho = delta gamma``
with ``delta`` the part built for the rest of the word.  The certificate
checks the result rather than trusting the order.
"""

from __future__ import annotations

from .certificates import Certificate, Check, certify, equality, register
from .errors import DimensionMismatch, UnsupportedAtom
from .forms import is_in_sp, standard_form
from .matrix import Matrix, congruence, one_perp, psi
from .vaserstein import c_witness, r_witness
from .words import (
    Alpha,
    Atom,
    Beta,
    ColBlock,
    GeneratorWord,
    Inverse,
    RowBlock,
    SymplElem,
    decompose_elem_to_rowcol,
)

COMPOSITION_ORDER = "rho = delta * gamma (gamma_1 acts first)"


def _block(atom: Atom) -> tuple[str, Matrix]:
    if isinstance(atom, Inverse):
        atom = atom.atom.inverse()
    if isinstance(atom, ColBlock):
        return "col", atom.vector
    if isinstance(atom, RowBlock):
        return "row", atom.vector
    raise UnsupportedAtom(f"expected row/column block generators, got {atom!r}")


def _is_block(atom: Atom) -> bool:
    try:
        _block(atom)
    except UnsupportedAtom:
        return False
    return True


def _check_size(size: int) -> int:
    if size % 2 or size < 4:
        raise DimensionMismatch(f"symplectization needs even size 2n with n >= 2, got {size}")
    return size // 2


def symplectize_word(w: GeneratorWord) -> tuple[GeneratorWord, GeneratorWord]:
    """Return ``(rho, esp_witness)`` for a block-generator word, unverified."""
    n = _check_size(w.size)
    R = w.ring
    form = standard_form(R, n)
    k = w.size - 1
    pending = [_block(a) for a in w.atoms]
    rho_atoms: list[Atom] = []
    esp_atoms: list[Atom] = []
    for idx, (kind, v) in enumerate(pending):
        if kind == "col":
            gamma: Atom = Alpha(form, v)
            factors = c_witness(n, v)
        else:
            gamma = Beta(form, v)
            factors = r_witness(n, v)
        rho_atoms.append(gamma)
        # the step's se-product is the next (leftward) factor of the witness
        esp_atoms.extend(reversed(factors))
        if idx + 1 == len(pending):
            break
        g = gamma.evaluate(k, R)
        g_t = g.T
        g_inv = gamma.inverse().evaluate(k, R)
        pending[idx + 1 :] = [
            (kd, u @ g_t if kd == "col" else u @ g_inv) for kd, u in pending[idx + 1 :]
        ]
    return GeneratorWord(k, R, rho_atoms), GeneratorWord(w.size, R, esp_atoms)


def _over_psi(word: GeneratorWord, n: int) -> bool:
    form = standard_form(word.ring, n)
    return all(isinstance(a, (Alpha, Beta)) and a.form.same_as(form) for a in word.atoms)


@register("Symplectization")
def _verify_symplectization(inputs: dict, witnesses: dict) -> list[Check]:
    w: GeneratorWord = inputs["word"]
    rho: GeneratorWord = witnesses["rho"]
    esp: GeneratorWord = witnesses["esp_witness"]
    n = _check_size(w.size)
    checks = [
        Check("input atoms are block generators", all(_is_block(a) for a in w.atoms)),
        Check("rho is a word in alpha/beta over psi_n", rho.size == w.size - 1 and _over_psi(rho, n)),
        Check("witness is a word in se_ij", esp.size == w.size and all(isinstance(a, SymplElem) for a in esp.atoms)),
    ]
    if not all(c.holds for c in checks):
        return checks
    lhs = one_perp(rho.matrix) @ w.matrix
    checks.append(Check("(1 ⊥ rho) eps is in Sp_psi", is_in_sp(psi(w.ring, n), lhs)))
    checks.append(equality("(1 ⊥ rho) eps = se-witness", lhs, esp.matrix, COMPOSITION_ORDER))
    return checks


def rao_swan_symplectize(w: GeneratorWord) -> Certificate:
    """Certificate with witnesses ``rho`` and ``esp_witness`` for a block word."""
    rho, esp = symplectize_word(w)
    return certify("Symplectization", {"word": w}, {"rho": rho, "esp_witness": esp})


@register("Congruence")
def _verify_congruence(inputs: dict, witnesses: dict) -> list[Check]:
    eps: GeneratorWord = inputs["word"]
    eps0: GeneratorWord = witnesses["eps0"]
    n = _check_size(eps.size)
    p = psi(eps.ring, n)
    lifted = one_perp(eps0.matrix)
    checks = [Check("eps0 is a word in alpha/beta over psi_n", eps0.size == eps.size - 1 and _over_psi(eps0, n))]
    if not checks[0].holds:
        return checks
    checks.append(
        equality("eps^t psi eps = (1 ⊥ eps0)^t psi (1 ⊥ eps0)", congruence(eps.matrix, p), congruence(lifted, p))
    )
    esp = witnesses.get("esp_witness")
    if esp is not None:
        checks.append(Check("witness is a word in se_ij", all(isinstance(a, SymplElem) for a in esp.atoms)))
        checks.append(equality("(1 ⊥ eps0) eps^-1 = se-witness", lifted @ eps.inverse().matrix, esp.matrix))
    return checks


def rao_swan_congruate(w: GeneratorWord) -> Certificate:
    """``eps0`` with ``eps^t psi eps = (1 ⊥ eps0)^t psi (1 ⊥ eps0)``.

    ``eps0`` is the symplectizing ``rho`` of ``eps^-1`` rewritten in block
    generators, so ``(1 ⊥ eps0) eps^-1`` is elementary symplectic.
    """
    _check_size(w.size)
    rho, esp = symplectize_word(decompose_elem_to_rowcol(w.inverse()))
    return certify("Congruence", {"word": w}, {"eps0": rho, "esp_witness": esp})
