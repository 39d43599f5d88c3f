#!/usr/bin/env python3
"""
Symmetric-function oracles for mmm_calc
Brute-force checks of Newton's identity and of the fibered tangent-bundle splitting
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Tuple

from .charnum import Flavor
from .newton import newton_poly
from .polycore import GradedPoly, VarTable, substitute
from .validation import InputValidator, ValidationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SymmetricWorkspace:
    """Ground ring Z[y1..ym], every yi of weight 1"""
    m: int

    def __post_init__(self):
        InputValidator.validate_positive_int('m', self.m)

    @property
    def table(self) -> VarTable:
        return VarTable.indexed('y', self.m, weight=1)


def elementary_symmetric(i: int, w: SymmetricWorkspace) -> GradedPoly:
    """e_i(y1..ym); e_0 = 1 and e_i = 0 for i > m"""
    i = InputValidator.validate_positive_int('i', i, minimum=0)
    table = w.table
    if i > w.m:
        return GradedPoly.zero(table)
    terms = {}
    for chosen in combinations(range(w.m), i):
        exps = [0] * w.m
        for index in chosen:
            exps[index] = 1
        terms[tuple(exps)] = 1
    return GradedPoly(table, terms)


def power_sum(n: int, w: SymmetricWorkspace) -> GradedPoly:
    n = InputValidator.validate_positive_int('n', n)
    terms = {}
    for index in range(w.m):
        exps = [0] * w.m
        exps[index] = n
        terms[tuple(exps)] = 1
    return GradedPoly(w.table, terms)


def is_symmetric(p: GradedPoly, w: SymmetricWorkspace) -> bool:
    """Invariant under swapping y1, y2 and under the cycle y1 -> y2 -> ... -> ym"""
    if p.table != w.table:
        raise ValidationError('p', 'polynomial is not over the workspace variables')
    if w.m == 1:
        return True
    swapped = {(m[1], m[0]) + m[2:]: c for m, c in p.terms.items()}
    cycled = {m[-1:] + m[:-1]: c for m, c in p.terms.items()}
    return swapped == dict(p.terms) and cycled == dict(p.terms)


def verify_newton_identity(n: int, m: int) -> bool:
    """f_n(e_1, ..., e_n) == y1^n + ... + ym^n over m >= n variables"""
    n = InputValidator.validate_positive_int('n', n)
    m = InputValidator.validate_positive_int('m', m)
    if m < n:
        raise ValidationError('m', f'needs at least n={n} ground variables', m)
    w = SymmetricWorkspace(m)
    f = newton_poly(n).poly
    images = {f"x{i}": elementary_symmetric(i, w) for i in range(1, n + 1)}
    ok = substitute(f, images) == power_sum(n, w)
    logger.debug(f"Newton identity n={n} m={m}: {ok}")
    return ok


@dataclass(frozen=True)
class FiberModel:
    """
    Cohomology model of TE = T(pi) + pi*TM

    pontryagin: p_i(TE) = e^2 b_{i-1} + b_i, b_0 = 1, with b_1..b_n
    chern:      c_i(TX) = e c_{i-1} + c_i,    c_0 = 1, with c_1..c_{n+1}
    e has weight 1; base class i has weight i.
    """
    kind: Flavor
    n: int

    def __post_init__(self):
        object.__setattr__(self, 'kind', Flavor(self.kind))
        InputValidator.validate_positive_int('n', self.n)

    @property
    def degree(self) -> int:
        """Index of the Newton polynomial used"""
        return self.n if self.kind is Flavor.PONTRYAGIN else self.n + 1

    @property
    def base_prefix(self) -> str:
        return 'b' if self.kind is Flavor.PONTRYAGIN else 'c'

    @property
    def fiber_power(self) -> int:
        """Exponent of e in the leading target term"""
        return 2 * self.n if self.kind is Flavor.PONTRYAGIN else self.n + 1

    @property
    def table(self) -> VarTable:
        base = VarTable.indexed(self.base_prefix, self.degree)
        return VarTable(('e',) + base.names, (1,) + base.weights)

    def fiber_class(self) -> GradedPoly:
        e = GradedPoly.variable(self.table, 'e')
        return e * e if self.kind is Flavor.PONTRYAGIN else e

    def split_images(self) -> Dict[str, GradedPoly]:
        """x_i -> (fiber class) * base_{i-1} + base_i"""
        table = self.table
        fiber = self.fiber_class()
        images = {}
        for i in range(1, self.degree + 1):
            below = GradedPoly.one(table) if i == 1 else GradedPoly.variable(table, f"{self.base_prefix}{i - 1}")
            images[f"x{i}"] = fiber * below + GradedPoly.variable(table, f"{self.base_prefix}{i}")
        return images

    def base_images(self) -> Dict[str, GradedPoly]:
        table = self.table
        return {f"x{i}": GradedPoly.variable(table, f"{self.base_prefix}{i}")
                for i in range(1, self.degree + 1)}


def _split(model: FiberModel) -> Tuple[GradedPoly, GradedPoly, GradedPoly]:
    f = newton_poly(model.degree).poly
    image = substitute(f, model.split_images())
    leading = GradedPoly.variable(model.table, 'e') ** model.fiber_power
    return image, leading, substitute(f, model.base_images())


def fiber_residual(model: FiberModel) -> GradedPoly:
    """f(split classes) minus the pure fiber term e^(2n) or e^(n+1)"""
    image, leading, _ = _split(model)
    return image - leading


def verify_fiber_substitution(model: FiberModel) -> bool:
    """
    Check f(split classes) == e^k + f(base classes) with a pure-base residual

    The residual must contain no e and have base degree exactly model.degree,
    so it vanishes on a base of too small a dimension.
    """
    image, leading, base_part = _split(model)
    if image != leading + base_part:
        logger.warning(f"Fiber substitution mismatch for {model.kind.value} n={model.n}")
        return False
    residual = image - leading
    table = model.table
    for monomial in residual.terms:
        if monomial[0] != 0 or table.degree(monomial) != model.degree:
            logger.warning(f"Residual term {monomial} is not pure base degree {model.degree}")
            return False
    return True
