#!/usr/bin/env python3
"""
Characteristic-number calculators for mmm_calc
Expresses MMM numbers of surface bundles through Pontryagin or Chern numbers
"""

import json
import logging
from dataclasses import dataclass
from enum import Enum
from types import MappingProxyType
from typing import Any, Dict, Mapping, Optional

from .newton import newton_coefficients, x_table
from .polycore import GradedPoly, Partition, VarTable, partitions
from .validation import InputValidator, ValidationError

logger = logging.getLogger(__name__)


class Flavor(Enum):
    """Which characteristic numbers an expansion is written in"""
    PONTRYAGIN = "pontryagin"
    CHERN = "chern"

    @property
    def prefix(self) -> str:
        return 'p' if self is Flavor.PONTRYAGIN else 'c'


class CharNumberError(ValueError):
    """Raised when an expansion and a number vector do not match"""


def partition_key(partition: Partition) -> str:
    """[j1,...,jn] with no spaces"""
    return "[" + ",".join(str(j) for j in partition) + "]"


def parse_partition_key(key: str) -> Partition:
    try:
        values = json.loads(key)
    except (TypeError, json.JSONDecodeError):
        raise ValidationError('partition', 'not a [j1,...,jn] list', key) from None
    if (not isinstance(values, list) or not values
            or any(isinstance(v, bool) or not isinstance(v, int) or v < 0 for v in values)):
        raise ValidationError('partition', 'must be a nonempty list of nonnegative integers', key)
    return tuple(values)


def _monomial_table(flavor: Flavor, degree: int) -> VarTable:
    """x1..xn renamed to p1..pn or c1..cn"""
    return x_table(degree).renamed(lambda name: flavor.prefix + name[1:])


@dataclass(frozen=True)
class CharNumberExpansion:
    """Integer linear functional sum_J a_J (number)_J"""
    n: int
    flavor: Flavor
    terms: Mapping[Partition, int]

    def __post_init__(self):
        object.__setattr__(self, 'flavor', Flavor(self.flavor))
        object.__setattr__(self, 'terms', MappingProxyType(dict(self.terms)))
        if set(self.terms) != set(partitions(self.degree)):
            raise CharNumberError(f"Expansion terms must range over the partitions of {self.degree}")

    @property
    def degree(self) -> int:
        return self.n if self.flavor is Flavor.PONTRYAGIN else self.n + 1

    @property
    def class_name(self) -> str:
        """e_{2n-1} for pontryagin, e_n for chern"""
        index = 2 * self.n - 1 if self.flavor is Flavor.PONTRYAGIN else self.n
        return f"e{index}"

    def as_polynomial(self) -> GradedPoly:
        """The expansion as a polynomial in p_i or c_i"""
        return GradedPoly(_monomial_table(self.flavor, self.degree), dict(self.terms))

    def ordered_terms(self):
        """(partition, coefficient) in canonical partition order"""
        return [(J, self.terms[J]) for J in partitions(self.degree)]

    def monomial_label(self, partition: Partition) -> str:
        return GradedPoly.monomial(_monomial_table(self.flavor, self.degree), partition).to_text()


@dataclass(frozen=True)
class CharNumberVector:
    """Values p_J^# or c_J^# for every partition J of degree"""
    flavor: Flavor
    degree: int
    values: Mapping[Partition, int]

    def __post_init__(self):
        object.__setattr__(self, 'flavor', Flavor(self.flavor))
        InputValidator.validate_positive_int('degree', self.degree)
        values = {tuple(J): InputValidator.validate_integer_value(partition_key(J), v)
                  for J, v in self.values.items()}
        expected = set(partitions(self.degree))
        missing = expected - set(values)
        extra = set(values) - expected
        if missing:
            raise CharNumberError(
                f"Missing numbers for {', '.join(partition_key(J) for J in sorted(missing, reverse=True))}"
            )
        if extra:
            raise CharNumberError(
                f"Not partitions of {self.degree}: {', '.join(partition_key(J) for J in sorted(extra, reverse=True))}"
            )
        object.__setattr__(self, 'values', MappingProxyType(values))

    @classmethod
    def from_mapping(cls, flavor: Flavor, degree: int, mapping: Mapping[str, Any]) -> 'CharNumberVector':
        """Build from decoded JSON: partition keys to ints or decimal strings"""
        if not isinstance(mapping, Mapping):
            raise ValidationError('numbers', 'must be a JSON object', mapping)
        values: Dict[Partition, int] = {}
        for key, value in mapping.items():
            J = parse_partition_key(key)
            if J in values:
                raise ValidationError('numbers', 'duplicate partition key', key)
            values[J] = InputValidator.validate_integer_value(key, value)
        return cls(Flavor(flavor), degree, values)

    def __add__(self, other: 'CharNumberVector') -> 'CharNumberVector':
        if (self.flavor, self.degree) != (other.flavor, other.degree):
            raise CharNumberError("Cannot add number vectors of different flavor or degree")
        return CharNumberVector(self.flavor, self.degree,
                                {J: v + other.values[J] for J, v in self.values.items()})


def _expansion(flavor: Flavor, n: int) -> CharNumberExpansion:
    n = InputValidator.validate_positive_int('n', n)
    degree = n if flavor is Flavor.PONTRYAGIN else n + 1
    return CharNumberExpansion(n, flavor, newton_coefficients(degree))


def expand_odd_mmm(n: int) -> CharNumberExpansion:
    """e_{2n-1}^# = sum_J a_J p_J^#(E), a_J the coefficients of f_n"""
    return _expansion(Flavor.PONTRYAGIN, n)


def expand_complex_mmm(n: int) -> CharNumberExpansion:
    """e_n^# = sum_J a_J c_J^#(X), a_J the coefficients of f_{n+1}"""
    return _expansion(Flavor.CHERN, n)


def evaluate(exp: CharNumberExpansion, v: CharNumberVector) -> int:
    if exp.flavor is not v.flavor:
        raise CharNumberError(f"Expansion is {exp.flavor.value}, numbers are {v.flavor.value}")
    if exp.degree != v.degree:
        raise CharNumberError(f"Expansion has degree {exp.degree}, numbers have degree {v.degree}")
    missing = [J for J in exp.terms if J not in v.values]
    if missing:
        raise CharNumberError(f"Missing number for {partition_key(missing[0])}")
    return sum(a * v.values[J] for J, a in exp.terms.items())


def mmm_vanishes(total_degree: int, genus: int) -> bool:
    """
    Whether a degree-d polynomial in MMM classes vanishes rationally for genus g

    Holds when d >= g - 1 (g >= 2).
    """
    total_degree = InputValidator.validate_positive_int('total_degree', total_degree)
    genus = InputValidator.validate_positive_int('genus', genus, minimum=2)
    return total_degree >= genus - 1


def _least_nonvanishing_genus(total_degree: int) -> int:
    genus = 2
    while mmm_vanishes(total_degree, genus):
        genus += 1
    return genus


def min_genus_bound(n: int, value: int) -> Optional[int]:
    """
    Least fiber genus compatible with e_{2n-1}^# = value

    A nonzero value forces every fibering to have g > 2n, so 2n + 1 is
    returned; zero gives no bound (None).
    """
    n = InputValidator.validate_positive_int('n', n)
    value = InputValidator.validate_integer_value('value', value)
    if value == 0:
        return None
    return _least_nonvanishing_genus(2 * n - 1)


def min_genus_bound_complex(n: int, value: int) -> Optional[int]:
    """Same obstruction for holomorphic fibrations: e_n^# != 0 forces g > n + 1"""
    n = InputValidator.validate_positive_int('n', n)
    value = InputValidator.validate_integer_value('value', value)
    if value == 0:
        return None
    return _least_nonvanishing_genus(n)


def signature_to_e1(sigma: int) -> int:
    """e_1^# = 3 sigma for a surface bundle over a surface"""
    return 3 * InputValidator.validate_integer_value('sigma', sigma)
