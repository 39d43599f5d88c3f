#!/usr/bin/env python3
"""
Atiyah-Kodaira invariants for mmm_calc
Enumerative data of the cyclic branched cover of S-hat x S and its two fiberings
"""

import logging
from dataclasses import asdict, dataclass, fields
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional

from .charnum import CharNumberVector, Flavor, evaluate, expand_odd_mmm, min_genus_bound, signature_to_e1
from .validation import InputValidator, ValidationError

logger = logging.getLogger(__name__)

SIGNATURE_FORMULA_NOTE = (
    "signature uses the k-fold cyclic branched cover formula "
    "sigma = -((k^2-1)/(3k)) [Delta]^2 and [Delta_i]^2 = deg(f_i o pi) * chi(S); "
    "both are classical results supplied externally, anchored by e1# = 96 at (g_S, k) = (2, 2)"
)


class BranchingError(ValueError):
    """Raised for branching data no cover can realize"""


@dataclass(frozen=True)
class AKParams:
    """Genus of S and number of sheets k"""
    g_S: int
    k: int

    def __post_init__(self):
        InputValidator.validate_positive_int('g_S', self.g_S, minimum=2)
        InputValidator.validate_positive_int('k', self.k, minimum=2)


@dataclass(frozen=True)
class AKReport:
    cover_degree: int
    genus_hat: int
    branch_points_on_S: int
    branch_points_on_hat: int
    fiber_genus_over_hat: int
    fiber_genus_over_S: int
    delta_self_intersection: int
    signature: int
    e1_number: int
    genus_bound: Optional[int]
    euler_characteristic: int

    def to_dict(self) -> Dict[str, Any]:
        """Field order is the declaration order"""
        return asdict(self)

    @classmethod
    def field_names(cls) -> List[str]:
        return [f.name for f in fields(cls)]

    def pontryagin_numbers(self) -> CharNumberVector:
        """p_1^# = 3 sigma"""
        return CharNumberVector(Flavor.PONTRYAGIN, 1, {(1,): 3 * self.signature})


def riemann_hurwitz_genus(sheets: int, base_genus: int, simple_branch_points: int) -> int:
    """
    Genus of a cyclic cover totally ramified over each branch point

    chi = sheets * (2 - 2 base_genus) - (sheets - 1) * branch points, genus = 1 - chi/2
    """
    sheets = InputValidator.validate_positive_int('sheets', sheets)
    base_genus = InputValidator.validate_positive_int('base_genus', base_genus, minimum=0)
    simple_branch_points = InputValidator.validate_positive_int(
        'simple_branch_points', simple_branch_points, minimum=0
    )
    chi = sheets * (2 - 2 * base_genus) - (sheets - 1) * simple_branch_points
    if chi % 2:
        raise BranchingError(f"Euler characteristic {chi} is odd for sheets={sheets}, "
                             f"base genus={base_genus}, branch points={simple_branch_points}")
    genus = 1 - chi // 2
    if genus < 0:
        raise BranchingError(f"Branching data gives negative genus {genus}")
    return genus


def _exact_int(value: Fraction, name: str) -> int:
    if value.denominator != 1:
        raise BranchingError(f"{name} is not integral: {value}")
    return value.numerator


def ak_report(p: AKParams) -> AKReport:
    if not isinstance(p, AKParams):
        raise ValidationError('params', 'expected AKParams', p)
    g_S, k = p.g_S, p.k
    chi_S = 2 - 2 * g_S

    cover_degree = k ** (2 * g_S)
    genus_hat = riemann_hurwitz_genus(cover_degree, g_S, 0)
    chi_hat = 2 - 2 * genus_hat

    branch_on_S = k
    branch_on_hat = k ** (2 * g_S + 1)
    h = riemann_hurwitz_genus(k, g_S, branch_on_S)
    g = riemann_hurwitz_genus(k, genus_hat, branch_on_hat)

    # k disjoint graphs, each of self-intersection deg(f_i o pi) * chi(S)
    delta_squared = k * (cover_degree * chi_S)
    signature = _exact_int(-Fraction(k * k - 1, 3 * k) * delta_squared, 'signature')
    e1_number = signature_to_e1(signature)

    # chi(Delta) = k * chi(S-hat)
    euler = k * chi_hat * chi_S - (k - 1) * k * chi_hat

    report = AKReport(
        cover_degree=cover_degree,
        genus_hat=genus_hat,
        branch_points_on_S=branch_on_S,
        branch_points_on_hat=branch_on_hat,
        fiber_genus_over_hat=h,
        fiber_genus_over_S=g,
        delta_self_intersection=delta_squared,
        signature=signature,
        e1_number=e1_number,
        genus_bound=min_genus_bound(1, e1_number),
        euler_characteristic=euler,
    )
    logger.debug(f"AK report for g_S={g_S}, k={k}: {report}")
    return report


def ak_consistency_check(p: AKParams) -> bool:
    """Cross-check the two fiberings against the signature and genus obstruction"""
    report = ak_report(p)
    h, g = report.fiber_genus_over_hat, report.fiber_genus_over_S

    checks = {
        'e1 = 3 sigma': report.e1_number == 3 * report.signature,
        'e1 = p1#': evaluate(expand_odd_mmm(1), report.pontryagin_numbers()) == report.e1_number,
        'genus bound': (report.e1_number == 0
                        or (report.genus_bound is not None and report.genus_bound <= min(h, g))),
        'euler over S-hat': report.euler_characteristic == (2 - 2 * h) * (2 - 2 * report.genus_hat),
        'euler over S': report.euler_characteristic == (2 - 2 * g) * (2 - 2 * p.g_S),
        'signature integral': isinstance(report.signature, int),
    }
    failed = [name for name, ok in checks.items() if not ok]
    if failed:
        logger.warning(f"AK consistency failed for g_S={p.g_S}, k={p.k}: {', '.join(failed)}")
        return False
    return True


def ak_grid(genera: Iterable[int], sheets: Iterable[int]) -> List[AKReport]:
    """Reports for every (g_S, k) pair, g_S outer"""
    sheets = list(sheets)
    return [ak_report(AKParams(g_S, k)) for g_S in genera for k in sheets]
