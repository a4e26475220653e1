"""Exact verifiers for the local–global machinery.

* Quillen patching: for a cover ``sum c_i a_i^d = 1`` put ``b_i = c_i a_i^d``,
  ``T_i = (b_{i+1} + ... + b_k) X`` and ``gamma(X, Y) = theta(X+Y) theta(Y)^-1``.
  Then ``gamma(b_1 X, T_1) ... gamma(b_k X, T_k) = theta(X)`` because the
  product telescopes (``T_{i-1} = b_i X + T_i``, ``T_0 = X``, ``T_k = 0``).
* Swan–Weibel homogenization ``a_0 + a_1 + a_2 + ... -> a_0 + a_1 T + a_2 T^2 + ...``.
* Dilation certificates: ``theta*(X)`` over ``R[X]`` localizes to
  ``theta(bX)`` over ``R_a[X]``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence

from .certificates import Certificate, Check, certify, equality, register
from .errors import CoverInvalid, DescriptorMismatch, NotIdentityAtZero, UndecidableDivisibility, UndecidableIdeal
from .matrix import Matrix
from .rings import LocalizedRing, PolynomialRing, Ring, RingElement, substitute_payload
from .words import GeneratorWord, IdealSpec


@dataclass(frozen=True)
class CoverSpec:
    """Elements ``a_i`` and coefficients ``c_i`` with ``sum c_i a_i^d = 1``."""

    elements: tuple[RingElement, ...]
    coefficients: tuple[RingElement, ...]
    exponent: int = 1

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        object.__setattr__(self, "coefficients", tuple(self.coefficients))

    @classmethod
    def build(cls, ring: Ring, elements: Sequence, coefficients: Sequence, exponent: int = 1) -> "CoverSpec":
        return cls(tuple(ring(a) for a in elements), tuple(ring(c) for c in coefficients), exponent)

    @property
    def ring(self) -> Ring:
        return self.elements[0].ring

    def weights(self) -> list[RingElement]:
        """``b_i = c_i a_i^d``."""
        return [c * a**self.exponent for a, c in zip(self.elements, self.coefficients)]

    def is_valid(self) -> bool:
        if not self.elements or len(self.elements) != len(self.coefficients) or self.exponent < 1:
            return False
        R = self.ring
        if any(x.ring != R for x in self.elements + self.coefficients):
            return False
        total = R(0)
        for b in self.weights():
            total = total + b
        return total == R(1)

    def validate(self) -> None:
        if not self.is_valid():
            raise CoverInvalid("cover must satisfy sum c_i a_i^d = 1 with matching lengths and d >= 1")


def _fresh(name: str, taken: Sequence[str]) -> str:
    while name in taken:
        name += "_"
    return name


def _subst(m: Matrix, images: Sequence, target: Ring) -> Matrix:
    """Substitute payload ``images`` for the variables of ``m``'s polynomial ring."""
    R = m.ring
    return Matrix(target, [[substitute_payload(R, x, images, target) for x in row] for row in m.rows])


def _variable_index(P: PolynomialRing, variable: str | None) -> int:
    if variable is None:
        if P.nvars != 1:
            raise DescriptorMismatch(f"{P.name()} has several variables; name the patching variable")
        return 0
    return P.variables.index(variable)


def _poly_ring(w: GeneratorWord) -> PolynomialRing:
    if not isinstance(w.ring, PolynomialRing):
        raise DescriptorMismatch(f"expected a word over a polynomial ring, got {w.ring.name()}")
    return w.ring


def at_zero(m: Matrix, idx: int) -> Matrix:
    """Set variable ``idx`` to 0."""
    P = m.ring
    images = [P.var(k) if k != idx else P.zero() for k in range(P.nvars)]
    return _subst(m, images, P)


def patching_factors(theta: GeneratorWord, cover: CoverSpec, variable: str | None = None) -> list[Matrix]:
    """The matrices ``gamma(b_i X, T_i)`` over ``R[X]``, in product order."""
    P = _poly_ring(theta)
    x = _variable_index(P, variable)
    y_name = _fresh("Y", P.variables)
    Q = PolynomialRing(P.base, P.variables + (y_name,))
    X, Y = Q.var(x), Q.var(P.nvars)
    keep = [Q.var(k) for k in range(P.nvars)]
    # gamma(X, Y) = theta(X + Y) theta(Y)^-1 over R[X, Y]
    shifted = list(keep)
    shifted[x] = Q.add(X, Y)
    at_y = list(keep)
    at_y[x] = Y
    gamma = _subst(theta.matrix, shifted, Q) @ _subst(theta.inverse().matrix, at_y, Q)
    b = [P.constant(P.base.convert(w)) for w in cover.weights()]
    Xp = P.var(x)
    factors = []
    for i in range(len(b)):
        tail = P.zero()
        for bj in b[i + 1 :]:
            tail = P.add(tail, bj)
        images = [P.var(k) for k in range(P.nvars)] + [P.mul(tail, Xp)]
        images[x] = P.mul(b[i], Xp)
        factors.append(_subst(gamma, images, P))
    return factors


@register("PatchingIdentity")
def _verify_patching(inputs: dict, witnesses: dict) -> list[Check]:
    theta: GeneratorWord = inputs["theta"]
    cover: CoverSpec = inputs["cover"]
    variable = inputs.get("variable")
    P = _poly_ring(theta)
    x = _variable_index(P, variable)
    checks = [Check("sum c_i a_i^d = 1", cover.is_valid())]
    if not checks[0].holds:
        return checks
    checks.append(Check("theta(0) = I", at_zero(theta.matrix, x).is_identity()))
    factors = patching_factors(theta, cover, variable)
    supplied = witnesses.get("factors")
    if supplied is not None:
        checks.append(Check("supplied factors match gamma(b_i X, T_i)", len(supplied) == len(factors) and all(s == f for s, f in zip(supplied, factors))))
    product = Matrix.identity(P, theta.size)
    for f in factors:
        product = product @ f
    checks.append(equality("prod gamma(b_i X, T_i) = theta(X)", product, theta.matrix))
    return checks


def quillen_patch_verify(theta: GeneratorWord, cover: CoverSpec, variable: str | None = None) -> Certificate:
    """Verify the patching product identity for ``theta`` along ``cover``."""
    cover.validate()
    P = _poly_ring(theta)
    if cover.ring != P.base:
        raise DescriptorMismatch(f"cover lives in {cover.ring.name()}, theta over {P.name()}")
    if not at_zero(theta.matrix, _variable_index(P, variable)).is_identity():
        raise NotIdentityAtZero("theta(0) must be the identity")
    inputs = {"theta": theta, "cover": cover}
    if variable is not None:
        inputs["variable"] = variable
    return certify("PatchingIdentity", inputs, {"factors": patching_factors(theta, cover, variable)})


def swan_weibel_homogenize(theta: Matrix, t_name: str = "T") -> Matrix:
    """Multiply each entry's degree-``k`` homogeneous part by ``T^k``.

    The result lives over ``R[X_1..X_t][T]``.  Setting ``T = 1`` gives back
    ``theta``; ``T = 0`` gives ``theta(0, ..., 0)``.
    """
    P = theta.ring
    if not isinstance(P, PolynomialRing):
        raise DescriptorMismatch(f"expected a matrix over a polynomial ring, got {P.name()}")
    S = PolynomialRing(P, (_fresh(t_name, P.variables),))

    def lift(p: dict) -> dict:
        graded: dict[tuple[int], dict] = {}
        for e, c in p.items():
            graded.setdefault((sum(e),), {})[e] = c
        return graded

    return Matrix(S, [[lift(x) for x in row] for row in theta.rows])


def specialize_t(m: Matrix, value: int) -> Matrix:
    """Substitute ``T = value`` in a homogenized matrix."""
    S = m.ring
    return _subst(m, [S.base.from_int(value)], S.base)


# -- dilation -----------------------------------------------------------------


def _localize_poly_matrix(m: Matrix, target: PolynomialRing) -> Matrix:
    src = m.ring
    images = [target.var(v) for v in src.variables]
    return _subst(m, images, target)


@register("DilationLocalization")
def _verify_dilation(inputs: dict, witnesses: dict) -> list[Check]:
    theta_star: GeneratorWord = inputs["theta_star"]
    theta: GeneratorWord = inputs["theta"]
    a: RingElement = inputs["a"]
    b: RingElement = inputs["b"]
    d: int = inputs.get("d", 1)
    Pstar, Ploc = _poly_ring(theta_star), _poly_ring(theta)
    loc = Ploc.base
    checks = [
        Check(
            "theta* over R[X], theta over R_a[X]",
            isinstance(loc, LocalizedRing)
            and loc.base == Pstar.base
            and Pstar.base.eq(loc.a, a.value)
            and Pstar.variables == Ploc.variables
            and theta.size == theta_star.size,
        )
    ]
    if not checks[0].holds:
        return checks
    x = _variable_index(Pstar, inputs.get("variable"))
    checks.append(Check("theta*(0) = I", at_zero(theta_star.matrix, x).is_identity()))
    checks.append(Check("theta(0) = I", at_zero(theta.matrix, x).is_identity()))
    try:
        divisible = IdealSpec(Pstar.base, [a**d]).contains(b)
        checks.append(Check(f"b in (a^{d})", divisible))
    except UndecidableIdeal as exc:
        warnings.warn(UndecidableDivisibility(f"cannot decide b in (a^{d}): {exc}"))
        checks.append(Check(f"b in (a^{d})", True, note="skipped: divisibility undecidable"))
    images = [Ploc.var(k) for k in range(Ploc.nvars)]
    images[x] = Ploc.mul(Ploc.constant(loc.localize(b.value)), Ploc.var(x))
    dilated = _subst(theta.matrix, images, Ploc)
    checks.append(equality("theta*(X) localizes to theta(bX)", _localize_poly_matrix(theta_star.matrix, Ploc), dilated))
    return checks


def dilation_verify(
    theta_star: GeneratorWord,
    theta: GeneratorWord,
    a: RingElement,
    b: RingElement,
    d: int = 1,
    variable: str | None = None,
) -> Certificate:
    """Check that ``theta*(X)`` localizes to ``theta(bX)`` with ``b`` in ``(a^d)``."""
    Pstar, Ploc = _poly_ring(theta_star), _poly_ring(theta)
    x = _variable_index(Pstar, variable)
    if not at_zero(theta_star.matrix, x).is_identity() or not at_zero(theta.matrix, x).is_identity():
        raise NotIdentityAtZero("theta*(0) and theta(0) must be the identity")
    inputs = {"theta_star": theta_star, "theta": theta, "a": a, "b": b, "d": d}
    if variable is not None:
        inputs["variable"] = variable
    return certify("DilationLocalization", inputs, {})
