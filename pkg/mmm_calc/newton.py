#!/usr/bin/env python3
"""
Newton polynomials for mmm_calc
Builds f_n by its recursion and checks the identities it satisfies
"""

import logging
import threading
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Tuple

from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix

from .polycore import GradedPoly, Partition, StructureError, VarTable, partitions, substitute
from .validation import InputValidator

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NewtonPoly:
    """f_n over x1..xn, weight(xi) = i"""
    n: int
    poly: GradedPoly

    def __post_init__(self):
        if not self.poly.is_homogeneous(self.n):
            raise StructureError(f"f_{self.n} is not homogeneous of degree {self.n}")

    def to_text(self) -> str:
        return self.poly.to_text()


def x_table(n: int) -> VarTable:
    return VarTable.indexed('x', n)


class NewtonCache:
    """Compute-once store for f_1, f_2, ... over a growing table"""

    def __init__(self):
        self._lock = threading.RLock()
        # Stored over the table of the largest n computed so far.
        self._polys: List[GradedPoly] = []
        self._table = x_table(0)
        self.stats = {'hits': 0, 'fills': 0}

    def _regrow(self, n: int):
        table = x_table(n)
        self._polys = [p.embed(table) for p in self._polys]
        self._table = table

    def _fill(self, n: int):
        if n > len(self._table):
            self._regrow(n)
        table = self._table
        xs = [GradedPoly.variable(table, name) for name in table.names]
        for m in range(len(self._polys) + 1, n + 1):
            poly = GradedPoly.zero(table)
            for k in range(1, m):
                term = xs[k - 1] * self._polys[m - k - 1]
                poly = poly + (term if k % 2 == 1 else -term)
            last = xs[m - 1].scale(m)
            poly = poly + (last if m % 2 == 1 else -last)
            self._polys.append(poly)
            logger.debug(f"Computed f_{m} with {len(poly)} terms")
        self.stats['fills'] += 1

    def get(self, n: int) -> GradedPoly:
        """f_n over x1..xn"""
        n = InputValidator.validate_positive_int('n', n)
        with self._lock:
            if n <= len(self._polys):
                self.stats['hits'] += 1
            else:
                self._fill(n)
            poly = self._polys[n - 1]
            if len(self._table) == n:
                return poly
            return _restrict(poly, x_table(n))

    def size(self) -> int:
        with self._lock:
            return len(self._polys)

    def clear(self):
        with self._lock:
            self._polys = []
            self._table = x_table(0)
            logger.info("Newton cache cleared")


def _restrict(poly: GradedPoly, table: VarTable) -> GradedPoly:
    width = len(table)
    return GradedPoly(table, {m[:width]: c for m, c in poly.terms.items()})


_cache = NewtonCache()


def get_newton_cache() -> NewtonCache:
    return _cache


def newton_poly(n: int) -> NewtonPoly:
    """
    The Newton polynomial f_n

    f_n = sum_{k=1}^{n-1} (-1)^(k-1) x_k f_{n-k} + (-1)^(n-1) n x_n

    Args:
        n: Positive degree

    Returns:
        NewtonPoly; f_1..f_{n-1} are cached as a byproduct
    """
    n = InputValidator.validate_positive_int('n', n)
    return NewtonPoly(n, _cache.get(n))


def newton_sequence(n: int) -> Tuple[NewtonPoly, ...]:
    n = InputValidator.validate_positive_int('n', n)
    _cache.get(n)
    return tuple(NewtonPoly(m, _cache.get(m)) for m in range(1, n + 1))


def shift_images(table: VarTable, n: int, t: Optional[GradedPoly] = None) -> Dict[str, GradedPoly]:
    """x_i -> t * x_{i-1} + x_i with x_0 = 1 (t = 1 unless given)"""
    images = {}
    for i in range(1, n + 1):
        previous = GradedPoly.one(table) if i == 1 else GradedPoly.variable(table, f"x{i - 1}")
        if t is not None:
            previous = t * previous
        images[f"x{i}"] = previous + GradedPoly.variable(table, f"x{i}")
    return images


def shifted_image(n: int) -> GradedPoly:
    """f_n(1 + x1, x1 + x2, ..., x_{n-1} + x_n)"""
    f = newton_poly(n).poly
    return substitute(f, shift_images(f.table, n))


def check_shift_property(n: int) -> bool:
    """f_n(1+x1, ..., x_{n-1}+x_n) == 1 + f_n"""
    f = newton_poly(n).poly
    ok = shifted_image(n) == f + 1
    logger.debug(f"shift property n={n}: {ok}")
    return ok


def check_homogenized_identity(n: int) -> bool:
    """f_n(t+x1, t*x1+x2, ..., t*x_{n-1}+x_n) == t^n + f_n, weight(t) = 1"""
    f = newton_poly(n).poly
    table = f.table.extend(('t',), (1,))
    t = GradedPoly.variable(table, 't')
    image = substitute(f, shift_images(table, n, t))
    ok = image == t ** n + f.embed(table)
    logger.debug(f"homogenized identity n={n}: {ok}")
    return ok


def newton_coefficients(n: int) -> Dict[Partition, int]:
    """a_J for every partition J of n, zeros included"""
    f = newton_poly(n).poly
    return {J: f.coefficient(J) for J in partitions(n)}


def shift_kernel_matrix(n: int) -> Tuple[List[Partition], List[Tuple[int, ...]], List[List[int]]]:
    """
    Matrix of h -> h(1+x1, ..., x_{n-1}+x_n) - h on degree-n monomials

    Rows are partitions of n, columns are the lower-degree monomials hit.
    """
    n = InputValidator.validate_positive_int('n', n)
    table = x_table(n)
    images = shift_images(table, n)
    basis = partitions(n)
    rows: List[Mapping] = []
    columns = set()
    for J in basis:
        monomial = GradedPoly.monomial(table, J)
        difference = substitute(monomial, images) - monomial
        rows.append(difference.terms)
        columns.update(difference.terms)
    ordered_columns = sorted(columns, key=lambda m: (-table.degree(m), tuple(-e for e in m)))
    matrix = [[row.get(column, 0) for column in ordered_columns] for row in rows]
    return basis, ordered_columns, matrix


def uniqueness_kernel_check(n: int) -> bool:
    """True iff the shift-difference map is injective on degree-n polynomials"""
    basis, columns, matrix = shift_kernel_matrix(n)
    if not columns:
        return False
    dm = DomainMatrix([[ZZ(v) for v in row] for row in matrix], (len(basis), len(columns)), ZZ)
    rank = dm.rank()
    logger.debug(f"shift kernel n={n}: rank {rank} of {len(basis)}")
    return rank == len(basis)
