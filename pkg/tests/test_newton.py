"""
Newton Polynomial Tests for mmm_calc
Tests the recursion, the shift identities and the uniqueness kernel
"""

from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import pytest

from mmm_calc.newton import (
    NewtonCache, check_homogenized_identity, check_shift_property, get_newton_cache, newton_coefficients,
    newton_poly, newton_sequence, shift_images, shift_kernel_matrix, shifted_image, uniqueness_kernel_check, x_table,
)
from mmm_calc.polycore import GradedPoly, partitions, substitute
from mmm_calc.validation import ValidationError

GOLDEN = Path(__file__).parent / 'golden'

# f_6 as listed term by term in the classical table
F6_COEFFICIENTS = {
    (6, 0, 0, 0, 0, 0): 1,
    (4, 1, 0, 0, 0, 0): -6,
    (3, 0, 1, 0, 0, 0): 6,
    (2, 2, 0, 0, 0, 0): 9,
    (2, 0, 0, 1, 0, 0): -6,
    (1, 0, 0, 0, 1, 0): 6,
    (1, 1, 1, 0, 0, 0): -12,
    (0, 3, 0, 0, 0, 0): -2,
    (0, 1, 0, 1, 0, 0): 6,
    (0, 0, 2, 0, 0, 0): 3,
    (0, 0, 0, 0, 0, 1): -6,
}


class TestNewtonPoly:
    """Test the recursion against known polynomials"""

    @pytest.mark.parametrize('n', range(1, 7))
    def test_golden(self, n):
        """f_1..f_6 match the golden serializations byte for byte"""
        expected = (GOLDEN / f"f{n}.txt").read_text(encoding='utf-8').strip()
        assert newton_poly(n).to_text() == expected

    def test_small_cases(self):
        """f_1, f_2, f_4"""
        assert newton_poly(1).to_text() == "x1"
        assert newton_poly(2).to_text() == "x1^2 - 2*x2"
        assert newton_poly(4).to_text() == "x1^4 - 4*x1^2*x2 + 4*x1*x3 + 2*x2^2 - 4*x4"

    def test_f6_coefficient_map(self):
        """f_6 as a coefficient map, independent of listing order"""
        assert dict(newton_poly(6).poly.terms) == F6_COEFFICIENTS

    def test_invalid_degree(self):
        """n must be a positive integer"""
        with pytest.raises(ValidationError):
            newton_poly(0)
        with pytest.raises(ValidationError):
            newton_poly(-3)
        with pytest.raises(ValidationError):
            newton_poly(True)

    def test_table_and_homogeneity(self):
        """f_n lives over x1..xn and is homogeneous of degree n"""
        for n in range(1, 13):
            f = newton_poly(n)
            assert f.poly.table == x_table(n)
            assert f.poly.is_homogeneous(n)
            assert set(f.poly.terms) <= set(partitions(n))

    def test_extreme_coefficients(self):
        """x1^n has coefficient 1 and x_n has (-1)^(n-1) n"""
        for n in range(1, 21):
            poly = newton_poly(n).poly
            assert poly.coefficient((n,) + (0,) * (n - 1)) == 1
            assert poly.coefficient((0,) * (n - 1) + (1,)) == (-1) ** (n - 1) * n

    def test_sequence(self):
        """newton_sequence returns f_1..f_n in order"""
        sequence = newton_sequence(4)
        assert [f.n for f in sequence] == [1, 2, 3, 4]
        assert sequence[1].to_text() == "x1^2 - 2*x2"


class TestShiftIdentities:
    """Test the shift property and its homogenized form"""

    def test_shift_n1(self):
        """f_1(1 + x1) = 1 + x1"""
        assert shifted_image(1).to_text() == "x1 + 1"

    def test_shift_n2(self):
        """(1 + x1)^2 - 2(x1 + x2)"""
        assert shifted_image(2).to_text() == "x1^2 - 2*x2 + 1"

    @pytest.mark.parametrize('n', range(1, 21))
    def test_shift_property(self, n):
        """Holds for every n"""
        assert check_shift_property(n)

    @pytest.mark.parametrize('n', range(1, 21))
    def test_homogenized_identity(self, n):
        """Holds for every n with weight(t) = 1"""
        assert check_homogenized_identity(n)

    def test_perturbed_polynomial_fails(self):
        """Changing one coefficient breaks the shift property"""
        f = newton_poly(3).poly
        table = f.table
        bumped = f + GradedPoly.monomial(table, (1, 1, 0))
        assert substitute(bumped, shift_images(table, 3)) != bumped + 1


class TestCoefficients:
    """Test the a_J coefficient map"""

    def test_f2(self):
        """{x1^2: 1, x2: -2}"""
        assert newton_coefficients(2) == {(2, 0): 1, (0, 1): -2}

    def test_f6_entry(self):
        """Coefficient of x1^2 x2^2 in f_6"""
        assert newton_coefficients(6)[(2, 2, 0, 0, 0, 0)] == 9

    def test_f5_absolute_sum(self):
        """1 + 5 + 5 + 5 + 5 + 5 + 5 = 31"""
        assert sum(abs(a) for a in newton_coefficients(5).values()) == 31

    def test_every_partition_present(self):
        """Zeros are included for partitions that do not occur"""
        for n in range(1, 9):
            assert list(newton_coefficients(n)) == partitions(n)


class TestUniqueness:
    """Test the shift-difference kernel"""

    def test_degree_one_matrix(self):
        """x1 -> (1 + x1) - x1 = 1"""
        basis, columns, matrix = shift_kernel_matrix(1)
        assert basis == [(1,)]
        assert columns == [(0,)]
        assert matrix == [[1]]

    @pytest.mark.parametrize('n', range(1, 11))
    def test_injective(self, n):
        """Only the zero polynomial is fixed by the shift"""
        assert uniqueness_kernel_check(n)

    def test_matrix_shape(self):
        """One row per partition of 4"""
        basis, columns, matrix = shift_kernel_matrix(4)
        assert len(basis) == 5
        assert len(matrix) == 5
        assert all(len(row) == len(columns) for row in matrix)


class TestNewtonCache:
    """Test the compute-once cache"""

    def test_hit_after_fill(self):
        """A second request is a cache hit"""
        cache = NewtonCache()
        first = cache.get(5)
        assert cache.size() == 5
        assert cache.get(5) == first
        assert cache.stats['hits'] == 1

    def test_smaller_after_larger(self):
        """Smaller n are restricted to their own table"""
        cache = NewtonCache()
        cache.get(7)
        f3 = cache.get(3)
        assert f3.table == x_table(3)
        assert f3 == newton_poly(3).poly

    def test_clear(self):
        """clear empties the cache"""
        cache = NewtonCache()
        cache.get(4)
        cache.clear()
        assert cache.size() == 0
        assert cache.get(2).to_text() == "x1^2 - 2*x2"

    def test_rejects_nonpositive_degree(self):
        """n <= 0 never indexes from the end of the cache"""
        cache = get_newton_cache()
        cache.get(5)
        for n in (0, -1, True):
            with pytest.raises(ValidationError):
                cache.get(n)

    def test_concurrent_use(self):
        """Threads racing on fills see the same polynomials"""
        cache = NewtonCache()
        requests = [12, 3, 9, 12, 1, 7, 10, 5] * 4
        with ThreadPoolExecutor(max_workers=8) as pool:
            results = list(pool.map(cache.get, requests))
        for n, poly in zip(requests, results):
            assert poly == newton_poly(n).poly
