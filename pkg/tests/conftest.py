"""Shared fixtures and independent oracles for the test-suite."""

from __future__ import annotations

import itertools
import random

import pytest
import sympy

from ephi.matrix import Matrix
from ephi.rings import QQ, ZZ, IntegersMod, PolynomialRing

F5 = IntegersMod(5)
F7 = IntegersMod(7)
Z49 = IntegersMod(49)


@pytest.fixture
def rng():
    return random.Random(20240611)


def to_sympy(m: Matrix) -> sympy.Matrix:
    """Independent representation of a matrix over ZZ, QQ or ZZ[vars] in sympy."""
    def conv(s: str):
        return sympy.sympify(s.replace("^", "**"))

    return sympy.Matrix([[conv(x) for x in row] for row in m.to_strings()])


def perfect_matching_pfaffian(rows, mul, add, neg, zero, one):
    """Pfaffian as a signed sum over perfect matchings (no recursion shared with the library)."""
    n = len(rows)
    total = zero
    for perm in itertools.permutations(range(n)):
        # canonical matchings only: pairs increasing and ordered by first element
        pairs = [(perm[2 * k], perm[2 * k + 1]) for k in range(n // 2)]
        if any(a > b for a, b in pairs) or any(pairs[k][0] > pairs[k + 1][0] for k in range(len(pairs) - 1)):
            continue
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = one
        for a, b in pairs:
            term = mul(term, rows[a][b])
        total = add(total, neg(term) if inversions % 2 else term)
    return total


def poly_ring(*names, base=ZZ):
    return PolynomialRing(base, names)


__all__ = ["F5", "F7", "Z49", "QQ", "ZZ", "perfect_matching_pfaffian", "poly_ring", "to_sympy"]
