"""Invertible alternating forms and their block data.

An invertible alternating ``phi`` of size ``2n`` is split as::

    phi     = (  0   -c )        phi^-1 = (  0    d )
              ( c^t   nu)                 ( -d^t  mu)

with ``c, d`` rows of length ``2n-1``.  The identity ``phi @ phi^-1 = I``
forces ``c d^t = 1``, ``c mu = 0``, ``nu d^t = 0`` and ``c^t d + nu mu = I``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import (
    DimensionMismatch,
    NotAlternating,
    NotInvertible,
    PfaffianNotOne,
    PfaffianNotUnit,
    UnitTestUnsupported,
)
from .matrix import MAX_SIZE, Matrix, is_alternating, pfaffian, psi, try_inverse
from .rings import Ring, RingElement


@dataclass(frozen=True, eq=False)
class AlternatingForm:
    phi: Matrix
    n: int
    c: Matrix
    nu: Matrix
    d: Matrix
    mu: Matrix
    pf: RingElement
    phi_inv: Matrix = field(repr=False)

    @property
    def ring(self) -> Ring:
        return self.phi.ring

    @property
    def size(self) -> int:
        return 2 * self.n

    def same_as(self, other: "AlternatingForm") -> bool:
        return self is other or (self.ring == other.ring and self.phi == other.phi)

    def block_identities(self) -> dict[str, bool]:
        R = self.ring
        k = 2 * self.n - 1
        return {
            "c*d^t = 1": (self.c @ self.d.T) == Matrix.identity(R, 1),
            "c*mu = 0": (self.c @ self.mu).is_zero(),
            "nu*d^t = 0": (self.nu @ self.d.T).is_zero(),
            "c^t*d + nu*mu = I": (self.c.T @ self.d + self.nu @ self.mu) == Matrix.identity(R, k),
        }


def form_decompose(phi: Matrix, *, strict: bool = False, inverse: Matrix | None = None) -> AlternatingForm:
    """Read off ``c, nu`` from ``phi`` and ``d, mu`` from its inverse.

    ``inverse`` may be supplied when it is already known (it is checked);
    otherwise it is computed by adjugate.  With ``strict`` the Pfaffian must
    equal 1, else it only has to be a unit.
    """
    if not phi.is_square or phi.nrows % 2 or phi.nrows < 4:
        raise DimensionMismatch(f"alternating form must be square of even size >= 4, got {phi.shape}")
    if phi.nrows > MAX_SIZE:
        raise DimensionMismatch(f"size {phi.nrows} exceeds the guard {MAX_SIZE}")
    if not is_alternating(phi):
        raise NotAlternating("phi must be skew-symmetric with zero diagonal")
    R = phi.ring
    pf = pfaffian(phi)
    if strict and not R.eq(pf.value, R.one()):
        raise PfaffianNotOne(f"Pfaffian is {pf}, strict mode requires 1")
    try:
        pf_inv = R.unit_inverse(pf.value)
    except UnitTestUnsupported as exc:
        raise NotInvertible(f"cannot decide invertibility of phi: {exc}") from exc
    if pf_inv is None:
        raise PfaffianNotUnit(f"Pfaffian {pf} is not a unit, phi is not invertible")
    if inverse is None:
        inverse = try_inverse(phi)
    elif not (phi @ inverse).is_identity():
        raise NotInvertible("supplied inverse does not invert phi")
    k = phi.nrows
    rest = range(1, k)
    c = -phi.submatrix([0], rest)
    nu = phi.submatrix(rest, rest)
    d = inverse.submatrix([0], rest)
    mu = inverse.submatrix(rest, rest)
    form = AlternatingForm(phi=phi, n=k // 2, c=c, nu=nu, d=d, mu=mu, pf=pf, phi_inv=inverse)
    bad = [name for name, ok in form.block_identities().items() if not ok]
    if bad:
        raise AssertionError(f"block identities failed: {bad}")
    return form


@lru_cache(maxsize=None)
def standard_form(ring: Ring, n: int) -> AlternatingForm:
    """``psi_n`` as an :class:`AlternatingForm`; its inverse is ``-psi_n``."""
    p = psi(ring, n)
    return form_decompose(p, inverse=-p)


def is_in_sp(phi: AlternatingForm | Matrix, m: Matrix) -> bool:
    """``mᵗ phi m == phi``."""
    p = phi.phi if isinstance(phi, AlternatingForm) else phi
    if m.shape != p.shape:
        raise DimensionMismatch(f"matrix {m.shape} vs form {p.shape}")
    return m.T @ p @ m == p


def _check_vector(form: AlternatingForm, v: Matrix):
    if v.shape != (1, 2 * form.n - 1):
        raise DimensionMismatch(f"vector must be 1x{2 * form.n - 1}, got {v.shape}")


def alpha_matrix(form: AlternatingForm, v: Matrix) -> Matrix:
    """``I + d^t v nu``."""
    _check_vector(form, v)
    return Matrix.identity(form.ring, v.ncols) + form.d.T @ (v @ form.nu)


def beta_matrix(form: AlternatingForm, v: Matrix) -> Matrix:
    """``I + mu v^t c``."""
    _check_vector(form, v)
    return Matrix.identity(form.ring, v.ncols) + (form.mu @ v.T) @ form.c
