import pytest
import sympy

from conftest import F7, perfect_matching_pfaffian, poly_ring, to_sympy
from ephi.errors import DimensionMismatch, NotAlternating, NotInvertible, PfaffianNotOne, PfaffianNotUnit
from ephi.forms import form_decompose, is_in_sp, standard_form
from ephi.matrix import (
    Matrix,
    block_compose,
    block_diag,
    congruence,
    determinant,
    is_alternating,
    one_perp,
    pfaffian,
    psi,
    try_inverse,
)
from ephi.rings import QQ, ZZ, IntegersMod, LocalizedRing
from ephi.sampling import random_alternating, random_elem_word, random_form


def M(ring, rows):
    return Matrix.from_rows(ring, rows)


def random_matrix(rng, ring, n, bound=4):
    return Matrix.from_rows(ring, [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)])


class TestBasics:
    def test_identity_is_neutral(self, rng):
        m = random_matrix(rng, ZZ, 3)
        assert Matrix.identity(ZZ, 3) @ m == m
        assert m @ Matrix.identity(ZZ, 3) == m

    def test_transpose(self):
        assert M(ZZ, [[0, 1], [-1, 0]]).T == M(ZZ, [[0, -1], [1, 0]])

    def test_double_transpose(self, rng):
        m = Matrix.from_rows(ZZ, [[rng.randint(-5, 5) for _ in range(4)] for _ in range(2)])
        assert m.T.T == m

    def test_one_perp(self):
        eps = M(ZZ, [[1, 2], [0, 1]])
        out = one_perp(eps)
        assert out == M(ZZ, [[1, 0, 0], [0, 1, 2], [0, 0, 1]])
        assert out == block_compose(Matrix.identity(ZZ, 1), Matrix.zeros(ZZ, 1, 2), Matrix.zeros(ZZ, 2, 1), eps)

    def test_dimension_checks(self):
        with pytest.raises(DimensionMismatch):
            Matrix.identity(ZZ, 2) @ Matrix.identity(ZZ, 3)
        with pytest.raises(DimensionMismatch):
            Matrix.identity(ZZ, 2) + Matrix.identity(F7, 2)
        with pytest.raises(DimensionMismatch):
            congruence(Matrix.identity(ZZ, 3), Matrix.identity(ZZ, 2))

    def test_scalar_and_add(self):
        m = M(ZZ, [[1, 2], [3, 4]])
        assert m.scale(ZZ(2)) == m + m


class TestDeterminant:
    def test_psi2(self):
        assert determinant(psi(ZZ, 2)) == ZZ(1)
        assert to_sympy(psi(ZZ, 2)).det() == 1

    def test_symbolic_transvection(self):
        R = poly_ring("lam")
        m = M(R, [[1, "lam", 0], [0, 1, 0], [0, 0, 1]])
        assert determinant(m) == R(1)

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_against_sympy(self, rng, n):
        for _ in range(10):
            m = random_matrix(rng, ZZ, n)
            assert determinant(m).value == to_sympy(m).det()

    def test_polynomial_against_sympy(self, rng):
        R = poly_ring("x", "y")
        for _ in range(5):
            m = Matrix.from_rows(R, [[rng.choice(["x", "y", "x*y - 1", "2", "0", "x^2"]) for _ in range(3)] for _ in range(3)])
            assert sympy.expand(to_sympy(m).det() - sympy.sympify(str(determinant(m)).replace("^", "**"))) == 0

    @pytest.mark.parametrize("ring", [IntegersMod(12), IntegersMod(49), LocalizedRing(IntegersMod(12), 2)], ids=lambda r: r.name())
    def test_non_domain_matches_integer_det(self, rng, ring):
        # the determinant is a polynomial in the entries, so reduction commutes with it
        for _ in range(10):
            rows = [[rng.randint(-6, 6) for _ in range(4)] for _ in range(4)]
            expected = ring(int(sympy.Matrix(rows).det()))
            assert determinant(Matrix.from_rows(ring, rows)) == expected

    @pytest.mark.parametrize("ring", [ZZ, F7, IntegersMod(12), QQ], ids=lambda r: r.name())
    def test_multiplicative(self, rng, ring):
        for _ in range(10):
            a, b = random_matrix(rng, ring, 4), random_matrix(rng, ring, 4)
            assert determinant(a @ b) == determinant(a) * determinant(b)


class TestPfaffian:
    def test_two_by_two_symbolic(self):
        R = poly_ring("b")
        assert pfaffian(M(R, [[0, "b"], ["-b", 0]])) == R("b")

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_psi(self, n):
        assert pfaffian(psi(ZZ, n)) == ZZ(1)
        assert determinant(psi(ZZ, n)) == ZZ(1)

    @pytest.mark.parametrize("size", [2, 4, 6])
    def test_against_matching_sum(self, rng, size):
        for _ in range(10):
            m = random_alternating(rng, ZZ, size)
            ref = perfect_matching_pfaffian(m.rows, lambda a, b: a * b, lambda a, b: a + b, lambda a: -a, 0, 1)
            assert pfaffian(m).value == ref

    @pytest.mark.parametrize("ring", [ZZ, F7], ids=lambda r: r.name())
    @pytest.mark.parametrize("size", [2, 4, 6, 8])
    def test_square_is_det(self, rng, ring, size):
        for _ in range(5):
            m = random_alternating(rng, ring, size)
            assert pfaffian(m) ** 2 == determinant(m)

    def test_congruence_by_elementary(self, rng):
        for _ in range(10):
            phi, _ = random_form(rng, ZZ, 2)
            assert pfaffian(phi) == ZZ(1)

    def test_congruence_scales_by_det(self, rng):
        for _ in range(10):
            m = random_alternating(rng, ZZ, 4)
            b = random_matrix(rng, ZZ, 4, bound=3)
            assert pfaffian(congruence(b, m)).value == int(to_sympy(b).det()) * pfaffian(m).value

    def test_not_alternating(self):
        with pytest.raises(NotAlternating):
            pfaffian(M(ZZ, [[1, 1], [-1, 0]]))
        with pytest.raises(NotAlternating):
            pfaffian(M(ZZ, [[0, 1], [1, 0]]))

    def test_characteristic_two_needs_zero_diagonal(self):
        F2 = IntegersMod(2)
        skew = M(F2, [[1, 1], [1, 1]])  # skew-symmetric mod 2 but not alternating
        assert not is_alternating(skew)
        assert is_alternating(M(F2, [[0, 1], [1, 0]]))


class TestInverse:
    def test_identity(self):
        assert try_inverse(Matrix.identity(ZZ, 3)).is_identity()

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_psi(self, n):
        assert try_inverse(psi(ZZ, n)) == -psi(ZZ, n)

    def test_transvection(self):
        R = poly_ring("lam")
        e = M(R, [[1, "lam"], [0, 1]])
        assert try_inverse(e) == M(R, [[1, "-lam"], [0, 1]])

    def test_random_product_identity(self, rng):
        for ring in (F7, IntegersMod(12), QQ):
            for _ in range(5):
                m = random_elem_word(rng, 4, ring, 5).matrix
                assert try_inverse(m) @ m == Matrix.identity(ring, 4)

    def test_not_invertible(self):
        with pytest.raises(NotInvertible):
            try_inverse(M(ZZ, [[2, 0], [0, 1]]))


class TestCongruence:
    def test_identity(self, rng):
        a = random_alternating(rng, ZZ, 4)
        assert congruence(Matrix.identity(ZZ, 4), a) == a

    def test_preserves_alternation(self, rng):
        for ring in (ZZ, F7, IntegersMod(2)):
            for _ in range(10):
                a = random_alternating(rng, ring, 4)
                b = random_matrix(rng, ring, 4)
                assert is_alternating(congruence(b, a))


class TestFormDecompose:
    def test_psi2_blocks(self):
        f = standard_form(ZZ, 2)
        # reading the blocks off phi = (0 -c; c^t nu), phi^-1 = (0 d; -d^t mu)
        assert f.c == M(ZZ, [[-1, 0, 0]])
        assert f.d == M(ZZ, [[-1, 0, 0]])
        assert f.nu == M(ZZ, [[0, 0, 0], [0, 0, 1], [0, -1, 0]])
        assert (f.c @ f.d.T).is_identity()

    def test_computed_inverse_matches(self):
        assert form_decompose(psi(ZZ, 3)).phi_inv == -psi(ZZ, 3)

    @pytest.mark.parametrize("ring", [ZZ, F7, QQ], ids=lambda r: r.name())
    @pytest.mark.parametrize("n", [2, 3])
    def test_block_identities(self, rng, ring, n):
        for _ in range(5):
            f = form_decompose(random_form(rng, ring, n)[0])
            assert all(f.block_identities().values())
            assert f.pf ** 2 == determinant(f.phi)
            assert is_alternating(f.nu) and is_alternating(f.mu)

    def test_not_invertible(self):
        phi = M(ZZ, [[0, 2, 0, 0], [-2, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]])
        with pytest.raises(NotInvertible):
            form_decompose(phi)
        with pytest.raises(PfaffianNotUnit):
            form_decompose(phi)

    def test_strict_pfaffian(self):
        phi = M(F7, [[0, 3, 0, 0], [-3, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]])
        assert form_decompose(phi).pf == F7(3)
        with pytest.raises(PfaffianNotOne):
            form_decompose(phi, strict=True)

    def test_rejects_small_or_odd(self):
        with pytest.raises(DimensionMismatch):
            form_decompose(psi(ZZ, 1))
        with pytest.raises(NotAlternating):
            form_decompose(M(ZZ, [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]))


class TestSymplecticMembership:
    def test_identity(self):
        assert is_in_sp(psi(ZZ, 2), Matrix.identity(ZZ, 4))

    def test_size_mismatch(self):
        with pytest.raises(DimensionMismatch):
            is_in_sp(psi(ZZ, 2), Matrix.identity(ZZ, 3))

    def test_block_diag_of_sl2(self):
        g = M(ZZ, [[2, 1], [1, 1]])
        assert is_in_sp(psi(ZZ, 2), block_diag(g, Matrix.identity(ZZ, 2)))
