"""Constructive reductions over rings where unit pivots can be found.

* :func:`alternating_reduce` — symplectic Gram–Schmidt by elementary
  congruences, bringing an invertible alternating ``phi`` to ``psi_n``
  (or ``u psi_1 ⊥ psi_{n-1}`` when the Pfaffian ``u`` is not 1).
* :func:`gauss_factor` — a determinant-one matrix as a word in
  transvections.
* :func:`express_in_ephi` — an element of ``E_{2n-1}`` as a word in the
  Vaserstein generators ``alpha_phi``/``beta_phi``.

All three need a unit among the candidate pivots at every stage, which is
guaranteed over fields and local rings such as ``Z/p^k``; elsewhere they may
raise :class:`NoUnitPivot`.
"""

from __future__ import annotations

from .certificates import Certificate, Check, certify, equality, register
from .errors import (
    DimensionMismatch,
    NoUnitPivot,
    NotAlternating,
    NotDetOne,
    PfaffianNotOne,
    UnsupportedAtom,
)
from .forms import AlternatingForm, form_decompose
from .matrix import MAX_SIZE, Matrix, block_diag, congruence, determinant, is_alternating, one_perp, pfaffian, psi
from .raoswan import rao_swan_congruate
from .rings import Ring, RingElement
from .vaserstein import elem_word_to_alphabeta, transport_back
from .words import Alpha, Beta, Elem, GeneratorWord


def whitehead_factors(i: int, j: int, u: RingElement) -> list[Elem]:
    """Transvections, left to right, whose product is ``u`` at ``(i,i)`` and ``u^-1`` at ``(j,j)``.

    ``diag(u, u^-1) = E_ij(u) E_ji(-u^-1) E_ij(u) E_ij(-1) E_ji(1) E_ij(-1)``.
    """
    one = u.ring(1)
    v = u.inverse()
    return [Elem(i, j, u), Elem(j, i, -v), Elem(i, j, u), Elem(i, j, -one), Elem(j, i, one), Elem(i, j, -one)]


def _unit(R: Ring, x):
    return None if R.is_zero(x) else R.unit_inverse(x)


def _congruence_step(R: Ring, rows: list[list], i: int, j: int, lam) -> None:
    """``phi <- E^t phi E`` for ``E = E_ij(lam)`` (0-based): column j += lam col i, then row j += lam row i."""
    for r in rows:
        r[j] = R.add(r[j], R.mul(lam, r[i]))
    rows[j] = [R.add(a, R.mul(lam, b)) for a, b in zip(rows[j], rows[i])]


def _target_form(u: RingElement, n: int) -> Matrix:
    R = u.ring
    head = Matrix(R, [[R.zero(), u.value], [R.neg(u.value), R.zero()]])
    return head if n == 1 else block_diag(head, psi(R, n - 1))


def _reduce_steps(phi: Matrix) -> tuple[list[Elem], RingElement]:
    R = phi.ring
    size = phi.nrows
    rows = [list(r) for r in phi.rows]
    steps: list[Elem] = []

    def apply(i: int, j: int, lam) -> None:
        _congruence_step(R, rows, i, j, lam)
        steps.append(Elem(i + 1, j + 1, RingElement(R, lam)))

    units = []
    for p in range(0, size, 2):
        q = p + 1
        if _unit(R, rows[p][q]) is None:
            for j in range(q + 1, size):
                if _unit(R, rows[p][j]) is not None:
                    apply(j, q, R.one())
                    break
            if _unit(R, rows[p][q]) is None:
                raise NoUnitPivot(f"no unit pivot in row {p + 1} of the working form")
        u = rows[p][q]
        u_inv = R.unit_inverse(u)
        for j in range(q + 1, size):
            if not R.is_zero(rows[p][j]):
                apply(q, j, R.neg(R.mul(rows[p][j], u_inv)))
        for j in range(q + 1, size):
            if not R.is_zero(rows[q][j]):
                apply(p, j, R.mul(rows[q][j], u_inv))
        units.append(RingElement(R, u))
    # sweep each block's unit into its left neighbour: congruence by
    # diag(u_b) at coordinate 2b-1 and u_b^-1 at 2b+1 (1-based 2b, 2b+2)
    for b in range(len(units) - 1, 0, -1):
        u = units[b]
        if u == R(1):
            continue
        for e in whitehead_factors(2 * b, 2 * b + 2, u):
            apply(e.i - 1, e.j - 1, e.value.value)
        units[b - 1] = units[b - 1] * u
        units[b] = R(1)
    return steps, units[0]


def _replay_pfaffians(phi: Matrix, eps: GeneratorWord) -> tuple[bool, Matrix]:
    """Re-run the recorded congruence steps on ``phi``; Pf must stay constant."""
    R = phi.ring
    rows = [list(r) for r in phi.rows]
    pf0 = pfaffian(phi)
    ok = True
    for atom in eps.atoms:
        step = atom.inverse()
        _congruence_step(R, rows, step.i - 1, step.j - 1, R.convert(step.value))
        ok = ok and pfaffian(Matrix(R, rows)) == pf0
    return ok, Matrix(R, rows)


@register("FormReduction")
def _verify_reduction(inputs: dict, witnesses: dict) -> list[Check]:
    phi: Matrix = inputs["form"]
    eps: GeneratorWord = witnesses["eps"]
    u: RingElement = witnesses["unit"]
    n = phi.nrows // 2
    checks = [
        Check("form is alternating", is_alternating(phi)),
        Check("eps is a word in transvections of size 2n", eps.size == phi.nrows and all(isinstance(a, Elem) for a in eps.atoms)),
    ]
    if not all(c.holds for c in checks):
        return checks
    if inputs.get("strict", False):
        checks.append(equality("residual unit is 1", u, phi.ring(1)))
    target = _target_form(u, n)
    checks.append(equality("Pf(phi) = residual unit", pfaffian(phi), u))
    preserved, end = _replay_pfaffians(phi, eps)
    checks.append(Check("Pf preserved along every step", preserved))
    checks.append(equality("steps end at u psi_1 ⊥ psi_(n-1)", end, target))
    checks.append(equality("eps^t (u psi_1 ⊥ psi_(n-1)) eps = phi", congruence(eps.matrix, target), phi))
    return checks


def alternating_reduce(phi: Matrix, *, strict: bool = False) -> Certificate:
    """Elementary ``eps`` with ``eps^t (u psi_1 ⊥ psi_(n-1)) eps = phi``.

    ``u`` is the Pfaffian of ``phi``; with ``strict`` it must be 1, so the
    target is ``psi_n``.
    """
    if not phi.is_square or phi.nrows % 2 or phi.nrows == 0:
        raise DimensionMismatch(f"alternating form must be square of even size, got {phi.shape}")
    if phi.nrows > MAX_SIZE:
        raise DimensionMismatch(f"size {phi.nrows} exceeds the guard {MAX_SIZE}")
    if not is_alternating(phi):
        raise NotAlternating("phi must be skew-symmetric with zero diagonal")
    R = phi.ring
    if strict and pfaffian(phi) != R(1):
        raise PfaffianNotOne(f"Pfaffian is {pfaffian(phi)}, strict mode requires 1")
    steps, u = _reduce_steps(phi)
    eps = GeneratorWord(phi.nrows, R, tuple(e.inverse() for e in steps))
    return certify("FormReduction", {"form": phi, "strict": strict}, {"eps": eps, "unit": u})


def gauss_factor(m: Matrix) -> GeneratorWord:
    """Factor a determinant-one matrix into transvections by unit-pivot elimination."""
    if not m.is_square:
        raise DimensionMismatch(f"square matrix expected, got {m.shape}")
    R = m.ring
    N = m.nrows
    if determinant(m) != R(1):
        raise NotDetOne("gauss_factor needs determinant 1")
    a = [list(r) for r in m.rows]
    left: list[Elem] = []  # applied on the left, in order
    right: list[Elem] = []  # applied on the right, in order

    def row_op(i, j, lam):  # a <- E_ij(lam) a
        a[i] = [R.add(x, R.mul(lam, y)) for x, y in zip(a[i], a[j])]
        left.append(Elem(i + 1, j + 1, RingElement(R, lam)))

    def col_op(i, j, lam):  # a <- a E_ij(lam): column j += lam column i
        for r in a:
            r[j] = R.add(r[j], R.mul(lam, r[i]))
        right.append(Elem(i + 1, j + 1, RingElement(R, lam)))

    for k in range(N):
        if _unit(R, a[k][k]) is None:
            for i in range(k + 1, N):
                if _unit(R, a[i][k]) is not None:
                    row_op(k, i, R.one())
                    break
            else:
                for j in range(k + 1, N):
                    if _unit(R, a[k][j]) is not None:
                        col_op(j, k, R.one())
                        break
            if _unit(R, a[k][k]) is None:
                raise NoUnitPivot(f"no unit pivot for column {k + 1}")
        u_inv = R.unit_inverse(a[k][k])
        for i in range(k + 1, N):
            if not R.is_zero(a[i][k]):
                row_op(i, k, R.neg(R.mul(a[i][k], u_inv)))
        for j in range(k + 1, N):
            if not R.is_zero(a[k][j]):
                col_op(k, j, R.neg(R.mul(a[k][j], u_inv)))
    # m = left^-1 · D · right^-1 with D = diag(d_1..d_N), prod d = 1, and
    # D = prod_k diag at (k, k+1) of (p_k, p_k^-1), p_k = d_1 ... d_k
    diag_factors: list[Elem] = []
    p = R(1)
    for k in range(N - 1):
        p = p * RingElement(R, a[k][k])
        if p != R(1):
            diag_factors.extend(whitehead_factors(k + 1, k + 2, p))
    factors = [e.inverse() for e in left] + diag_factors + [e.inverse() for e in reversed(right)]
    return GeneratorWord.from_product(N, R, factors)


def _as_form(phi) -> AlternatingForm:
    return phi if isinstance(phi, AlternatingForm) else form_decompose(phi)


@register("ExpressionInEphi")
def _verify_expression(inputs: dict, witnesses: dict) -> list[Check]:
    target: GeneratorWord = inputs["target"]
    phi: Matrix = inputs["form"]
    word: GeneratorWord = witnesses["word"]
    n = phi.nrows // 2
    checks = [
        Check(
            "word is in alpha_phi/beta_phi atoms",
            word.size == 2 * n - 1
            and all(isinstance(a, (Alpha, Beta)) and a.form.phi == phi for a in word.atoms),
        ),
        Check("target is a word in transvections", all(isinstance(a, Elem) for a in target.atoms)),
    ]
    if not all(c.holds for c in checks):
        return checks
    eps0 = witnesses.get("eps0")
    if eps0 is not None:
        lifted = one_perp(eps0.matrix)
        checks.append(equality("phi = (1 ⊥ eps0)^t psi (1 ⊥ eps0)", congruence(lifted, psi(phi.ring, n)), phi))
    checks.append(equality("word evaluates to the target", word.matrix, target.matrix))
    return checks


def express_in_ephi(target: GeneratorWord, phi) -> Certificate:
    """Rewrite a transvection word of size ``2n-1`` in ``alpha_phi``/``beta_phi``.

    Pipeline: reduce ``phi`` to ``psi_n`` by an elementary ``eps``; the
    congruence step replaces ``eps`` by ``1 ⊥ eps0``; factor
    ``eps0 T eps0^-1`` into transvections, translate to generators over
    ``psi_n``, and conjugate back through ``eps0`` onto ``phi``.
    """
    form = _as_form(phi)
    n = form.n
    if target.size != 2 * n - 1:
        raise DimensionMismatch(f"target has size {target.size}, form needs {2 * n - 1}")
    if not all(isinstance(a, Elem) for a in target.atoms):
        raise UnsupportedAtom("target must be a word in transvections")
    R = form.ring
    reduction = alternating_reduce(form.phi, strict=True)
    eps = reduction.witnesses["eps"]
    cong = rao_swan_congruate(eps)
    eps0 = cong.witnesses["eps0"]
    e0 = eps0.matrix
    m = e0 @ target.matrix @ eps0.inverse().matrix
    over_psi = elem_word_to_alphabeta(gauss_factor(m))
    atoms = [transport_back(eps0, form, a, check=False) for a in over_psi.atoms]
    word = GeneratorWord(target.size, R, atoms)
    return certify("ExpressionInEphi", {"target": target, "form": form.phi}, {"word": word, "eps0": eps0})


__all__ = [
    "alternating_reduce",
    "express_in_ephi",
    "gauss_factor",
    "whitehead_factors",
]
