"""Seeded random generators for rings elements, words and forms.

Everything takes an explicit :class:`random.Random` so test suites and the
``selftest`` command are reproducible.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .matrix import Matrix, congruence, psi
from .rings import IntegersMod, PolynomialRing, Rationals, Ring, RingElement
from .words import ColBlock, Elem, GeneratorWord, RowBlock


def random_element(rng: random.Random, ring: Ring, bound: int = 3, degree: int = 2) -> RingElement:
    """Small random element: integers in ``[-bound, bound]``, polynomials of degree <= ``degree``."""
    if isinstance(ring, IntegersMod):
        return ring(rng.randrange(ring.modulus))
    if isinstance(ring, Rationals):
        return ring(str(Fraction(rng.randint(-bound, bound), rng.randint(1, bound))))
    if isinstance(ring, PolynomialRing):
        acc = ring(0)
        for _ in range(rng.randint(0, 3)):
            exps = [0] * ring.nvars
            for _ in range(rng.randint(0, degree)):
                exps[rng.randrange(ring.nvars)] += 1
            c = random_element(rng, ring.base, bound, degree)
            acc = acc + RingElement(ring, ring.monomial(exps, c.value))
        return acc
    return ring(rng.randint(-bound, bound))


def random_vector(rng: random.Random, ring: Ring, length: int, **kw) -> Matrix:
    return Matrix(ring, [[random_element(rng, ring, **kw).value for _ in range(length)]])


def random_elem_word(rng: random.Random, size: int, ring: Ring, length: int, param=None) -> GeneratorWord:
    """Word of ``length`` random transvections; ``param(rng)`` draws the parameters."""
    draw = param or (lambda r: random_element(r, ring))
    atoms = []
    for _ in range(length):
        i, j = rng.sample(range(1, size + 1), 2)
        atoms.append(Elem(i, j, ring(draw(rng))))
    return GeneratorWord(size, ring, atoms)


def random_block_word(rng: random.Random, n: int, ring: Ring, length: int, **kw) -> GeneratorWord:
    """Word of row/column block generators of size ``2n``."""
    atoms = [
        rng.choice((RowBlock, ColBlock))(random_vector(rng, ring, 2 * n - 1, **kw)) for _ in range(length)
    ]
    return GeneratorWord(2 * n, ring, atoms)


def random_form(rng: random.Random, ring: Ring, n: int, length: int = 4, **kw) -> tuple[Matrix, GeneratorWord]:
    """``phi = eps^t psi_n eps`` for a random elementary ``eps``; returns ``(phi, eps)``."""
    eps = random_elem_word(rng, 2 * n, ring, length, param=lambda r: random_element(r, ring, **kw))
    return congruence(eps.matrix, psi(ring, n)), eps


def random_alternating(rng: random.Random, ring: Ring, size: int, **kw) -> Matrix:
    """Random alternating matrix (zero diagonal, skew)."""
    z = ring.zero()
    rows = [[z] * size for _ in range(size)]
    for i in range(size):
        for j in range(i + 1, size):
            x = random_element(rng, ring, **kw).value
            rows[i][j] = x
            rows[j][i] = ring.neg(x)
    return Matrix(ring, rows)


def random_theta(rng: random.Random, ring: PolynomialRing, size: int, length: int, variable: int = 0) -> GeneratorWord:
    """Random transvection word over ``R[X]`` with ``theta(0) = I``.

    Each parameter is ``X`` times a random polynomial, so it vanishes at ``X = 0``.
    """
    x = RingElement(ring, ring.var(variable))
    return random_elem_word(rng, size, ring, length, param=lambda r: x * random_element(r, ring, degree=1))
