#!/usr/bin/env python3
"""
Exact weighted polynomial arithmetic for mmm_calc
Integer-coefficient multivariate polynomials over a fixed, graded variable table
"""

import re
import logging
from operator import add
from dataclasses import dataclass
from types import MappingProxyType
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]
Partition = Tuple[int, ...]

# Indicative only; nothing enforces it.
SOFT_LIMIT_N = 30


class StructureError(ValueError):
    """Raised when polynomials or tables do not fit together"""


class PolyParseError(ValueError):
    """Raised when text does not follow the polynomial serialization grammar"""

    def __init__(self, text: str, reason: str):
        self.text = text
        self.reason = reason
        super().__init__(f"Cannot parse polynomial {text!r}: {reason}")


@dataclass(frozen=True)
class VarTable:
    """Ordered variable names with positive integer weights"""
    names: Tuple[str, ...]
    weights: Tuple[int, ...]

    def __post_init__(self):
        names = tuple(self.names)
        weights = tuple(self.weights)
        object.__setattr__(self, 'names', names)
        object.__setattr__(self, 'weights', weights)

        if len(names) != len(weights):
            raise StructureError(f"{len(names)} names but {len(weights)} weights")
        if len(set(names)) != len(names):
            raise StructureError(f"Variable names must be unique: {names}")
        for name, weight in zip(names, weights):
            if not isinstance(weight, int) or isinstance(weight, bool) or weight < 1:
                raise StructureError(f"Weight of {name} must be a positive integer, got {weight!r}")
            if not re.fullmatch(r'[A-Za-z][A-Za-z_]*[0-9]*', name):
                raise StructureError(f"Invalid variable name: {name!r}")

    @classmethod
    def indexed(cls, prefix: str, count: int, weight: Optional[int] = None) -> 'VarTable':
        """Variables prefix1..prefixN; weight i for the i-th unless a fixed weight is given"""
        return cls(
            tuple(f"{prefix}{i}" for i in range(1, count + 1)),
            tuple(weight if weight is not None else i for i in range(1, count + 1)),
        )

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise StructureError(f"Unknown variable {name!r}") from None

    def weight(self, name: str) -> int:
        return self.weights[self.index(name)]

    def degree(self, monomial: Monomial) -> int:
        """Weighted degree of an exponent vector"""
        return sum(e * w for e, w in zip(monomial, self.weights))

    def unit(self, name: str) -> Monomial:
        exps = [0] * len(self.names)
        exps[self.index(name)] = 1
        return tuple(exps)

    def extend(self, names: Sequence[str], weights: Sequence[int]) -> 'VarTable':
        """New table with extra variables appended"""
        return VarTable(self.names + tuple(names), self.weights + tuple(weights))

    def renamed(self, rename: Callable[[str], str]) -> 'VarTable':
        """Same weights and order, new names"""
        return VarTable(tuple(rename(n) for n in self.names), self.weights)


def _exact_int(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise StructureError(f"{what} must be an integer, got {value!r}")
    return value


def pseudo_degree(monomial: Monomial) -> int:
    """Degree with every variable counted once"""
    return sum(monomial)


def _sort_key(table: VarTable):
    def key(item):
        monomial = item[0]
        return (-table.degree(monomial), tuple(-e for e in monomial))
    return key


class GradedPoly:
    """
    Immutable polynomial with exact integer coefficients

    Terms map exponent vectors (parallel to the table) to nonzero ints.
    """

    __slots__ = ('_table', '_terms', '_hash')

    def __init__(self, table: VarTable, terms: Optional[Mapping[Monomial, int]] = None):
        self._table = table
        clean: Dict[Monomial, int] = {}
        for monomial, coeff in (terms or {}).items():
            monomial = tuple(monomial)
            if len(monomial) != len(table):
                raise StructureError(
                    f"Monomial {monomial} has {len(monomial)} exponents, table has {len(table)} variables"
                )
            if any(isinstance(e, bool) or not isinstance(e, int) or e < 0 for e in monomial):
                raise StructureError(f"Exponents must be nonnegative integers: {monomial}")
            coeff = _exact_int(coeff, f"Coefficient of {monomial}")
            if coeff:
                clean[monomial] = clean.get(monomial, 0) + coeff
        self._terms = {m: c for m, c in clean.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, table: VarTable, terms: Dict[Monomial, int]) -> 'GradedPoly':
        # Caller guarantees canonical terms.
        poly = cls.__new__(cls)
        poly._table = table
        poly._terms = terms
        poly._hash = None
        return poly

    # Constructors

    @classmethod
    def zero(cls, table: VarTable) -> 'GradedPoly':
        return cls._raw(table, {})

    @classmethod
    def constant(cls, table: VarTable, value: int) -> 'GradedPoly':
        value = _exact_int(value, "Constant")
        if not value:
            return cls.zero(table)
        return cls._raw(table, {(0,) * len(table): value})

    @classmethod
    def one(cls, table: VarTable) -> 'GradedPoly':
        return cls.constant(table, 1)

    @classmethod
    def variable(cls, table: VarTable, name: str) -> 'GradedPoly':
        return cls._raw(table, {table.unit(name): 1})

    @classmethod
    def monomial(cls, table: VarTable, exponents: Sequence[int], coeff: int = 1) -> 'GradedPoly':
        return cls(table, {tuple(exponents): coeff})

    # Accessors

    @property
    def table(self) -> VarTable:
        return self._table

    @property
    def terms(self) -> Mapping[Monomial, int]:
        return MappingProxyType(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, monomial: Sequence[int]) -> int:
        return self._terms.get(tuple(monomial), 0)

    def sorted_terms(self) -> List[Tuple[Monomial, int]]:
        """Terms in canonical order: descending weighted degree, then descending lex"""
        return sorted(self._terms.items(), key=_sort_key(self._table))

    def degrees(self) -> List[int]:
        return sorted({self._table.degree(m) for m in self._terms})

    def weighted_degree(self) -> Optional[int]:
        """Largest weighted degree of a term, None for the zero polynomial"""
        if not self._terms:
            return None
        return max(self._table.degree(m) for m in self._terms)

    def is_homogeneous(self, degree: Optional[int] = None) -> bool:
        found = self.degrees()
        if not found:
            return True
        if len(found) != 1:
            return False
        return degree is None or found[0] == degree

    # Arithmetic

    def _coerce(self, other) -> 'GradedPoly':
        if isinstance(other, GradedPoly):
            if other._table != self._table:
                raise StructureError(
                    f"VarTable mismatch: {self._table.names} vs {other._table.names}"
                )
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return GradedPoly.constant(self._table, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        result = dict(self._terms)
        for monomial, coeff in other._terms.items():
            total = result.get(monomial, 0) + coeff
            if total:
                result[monomial] = total
            else:
                result.pop(monomial, None)
        return GradedPoly._raw(self._table, result)

    __radd__ = __add__

    def __neg__(self) -> 'GradedPoly':
        return GradedPoly._raw(self._table, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        result: Dict[Monomial, int] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                key = tuple(map(add, m1, m2))
                result[key] = result.get(key, 0) + c1 * c2
        return GradedPoly._raw(self._table, {m: c for m, c in result.items() if c})

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> 'GradedPoly':
        if not isinstance(exponent, int) or exponent < 0:
            raise StructureError(f"Exponent must be a nonnegative integer, got {exponent!r}")
        result = GradedPoly.one(self._table)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def scale(self, factor: int) -> 'GradedPoly':
        factor = _exact_int(factor, "Scale factor")
        if not factor:
            return GradedPoly.zero(self._table)
        return GradedPoly._raw(self._table, {m: c * factor for m, c in self._terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and not isinstance(other, bool):
            other = GradedPoly.constant(self._table, other)
        if not isinstance(other, GradedPoly):
            return NotImplemented
        return self._table == other._table and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._table, frozenset(self._terms.items())))
        return self._hash

    # Structural operations

    def homogeneous_component(self, degree: int) -> 'GradedPoly':
        table = self._table
        return GradedPoly._raw(
            table, {m: c for m, c in self._terms.items() if table.degree(m) == degree}
        )

    def embed(self, table: VarTable) -> 'GradedPoly':
        """Move into a larger table that contains every variable of this one"""
        positions = [table.index(name) for name in self._table.names]
        result = {}
        for monomial, coeff in self._terms.items():
            exps = [0] * len(table)
            for pos, e in zip(positions, monomial):
                exps[pos] = e
            result[tuple(exps)] = coeff
        return GradedPoly._raw(table, result)

    def used_variables(self) -> List[str]:
        used = set()
        for monomial in self._terms:
            used.update(i for i, e in enumerate(monomial) if e)
        return [self._table.names[i] for i in sorted(used)]

    def substitute(self, images: Mapping[str, Union['GradedPoly', int]],
                   target: Optional[VarTable] = None) -> 'GradedPoly':
        """Ring-homomorphism image sending each variable to its image"""
        return substitute(self, images, target)

    # Serialization

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for position, (monomial, coeff) in enumerate(self.sorted_terms()):
            body = _monomial_text(self._table, monomial)
            magnitude = abs(coeff)
            if not body:
                term = str(magnitude)
            elif magnitude == 1:
                term = body
            else:
                term = f"{magnitude}*{body}"
            if position == 0:
                pieces.append(f"-{term}" if coeff < 0 else term)
            else:
                pieces.append(f" - {term}" if coeff < 0 else f" + {term}")
        return "".join(pieces)

    @classmethod
    def parse(cls, text: str, table: VarTable) -> 'GradedPoly':
        return parse_poly(text, table)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"GradedPoly({self.to_text()!r})"


def _monomial_text(table: VarTable, monomial: Monomial) -> str:
    factors = []
    for name, e in zip(table.names, monomial):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    return "*".join(factors)


_FACTOR_RE = re.compile(r'([A-Za-z][A-Za-z_]*[0-9]*)(?:\^([0-9]+))?')


def _parse_term(body: str, table: VarTable, text: str) -> Tuple[Monomial, int]:
    factors = body.split('*')
    coeff = 1
    if re.fullmatch(r'[0-9]+', factors[0]):
        coeff = int(factors[0])
        factors = factors[1:]
        if coeff == 0:
            raise PolyParseError(text, "zero coefficient")
        if not factors:
            return (0,) * len(table), coeff
    elif not factors[0]:
        raise PolyParseError(text, "empty term")

    exps = [0] * len(table)
    for factor in factors:
        match = _FACTOR_RE.fullmatch(factor)
        if not match:
            raise PolyParseError(text, f"bad factor {factor!r}")
        name, power = match.group(1), match.group(2)
        if name not in table.names:
            raise PolyParseError(text, f"unknown variable {name!r}")
        exponent = int(power) if power is not None else 1
        if exponent < 2 and power is not None:
            raise PolyParseError(text, f"exponent {exponent} must be written implicitly")
        index = table.names.index(name)
        if exps[index]:
            raise PolyParseError(text, f"variable {name!r} repeated in a term")
        exps[index] = exponent
    return tuple(exps), coeff


def parse_poly(text: str, table: VarTable) -> GradedPoly:
    """Inverse of GradedPoly.to_text"""
    if not isinstance(text, str):
        raise PolyParseError(repr(text), "not a string")
    stripped = text.strip()
    if stripped == "0":
        return GradedPoly.zero(table)
    if not stripped:
        raise PolyParseError(text, "empty input")

    parts = re.split(r' ([+-]) ', stripped)
    first = parts[0]
    sign = 1
    if first.startswith('-'):
        sign, first = -1, first[1:]
    signed_bodies = [(sign, first)]
    for op, body in zip(parts[1::2], parts[2::2]):
        signed_bodies.append((1 if op == '+' else -1, body))

    terms: Dict[Monomial, int] = {}
    for sign, body in signed_bodies:
        if not body or body != body.strip():
            raise PolyParseError(text, "misplaced whitespace")
        monomial, coeff = _parse_term(body, table, text)
        if monomial in terms:
            raise PolyParseError(text, "repeated monomial")
        terms[monomial] = sign * coeff
    return GradedPoly(table, terms)


def poly_add(a: GradedPoly, b: GradedPoly) -> GradedPoly:
    if a.table != b.table:
        raise StructureError(f"VarTable mismatch: {a.table.names} vs {b.table.names}")
    return a + b


def poly_mul(a: GradedPoly, b: GradedPoly) -> GradedPoly:
    if a.table != b.table:
        raise StructureError(f"VarTable mismatch: {a.table.names} vs {b.table.names}")
    return a * b


def substitute(p: GradedPoly, images: Mapping[str, Union[GradedPoly, int]],
               target: Optional[VarTable] = None) -> GradedPoly:
    """
    Evaluate p with each used variable replaced by its image

    Args:
        p: Polynomial to transform
        images: Variable name -> GradedPoly (all over one table) or int constant
        target: Target table; required only when every image is an int

    Returns:
        The exact homomorphic image of p
    """
    tables = {img.table for img in images.values() if isinstance(img, GradedPoly)}
    if len(tables) > 1:
        raise StructureError("Substitution images live on different VarTables")
    if tables:
        table = tables.pop()
        if target is not None and target != table:
            raise StructureError("Substitution images do not live on the target VarTable")
    elif target is not None:
        table = target
    else:
        table = p.table

    missing = [name for name in p.used_variables() if name not in images]
    if missing:
        raise StructureError(f"No substitution image for {', '.join(missing)}")

    image_polys = []
    for name in p.table.names:
        image = images.get(name)
        if image is None:
            image_polys.append(None)
        elif isinstance(image, GradedPoly):
            image_polys.append(image)
        else:
            image_polys.append(GradedPoly.constant(table, image))

    power_cache: Dict[Tuple[int, int], GradedPoly] = {}

    def power(index: int, exponent: int) -> GradedPoly:
        key = (index, exponent)
        if key not in power_cache:
            if exponent == 1:
                power_cache[key] = image_polys[index]
            else:
                power_cache[key] = power(index, exponent - 1) * image_polys[index]
        return power_cache[key]

    result: Dict[Monomial, int] = {}
    for monomial, coeff in p.terms.items():
        product = GradedPoly.constant(table, coeff)
        for index, e in enumerate(monomial):
            if e:
                product = product * power(index, e)
        for m, c in product.terms.items():
            result[m] = result.get(m, 0) + c
    return GradedPoly._raw(table, {m: c for m, c in result.items() if c})


def homogeneous_component(p: GradedPoly, d: int) -> GradedPoly:
    return p.homogeneous_component(d)


def _fill_partition(index: int, top: int, remaining: int) -> Iterator[Partition]:
    if index == top:
        if remaining % top == 0:
            yield (remaining // top,)
        return
    for j in range(remaining // index, -1, -1):
        for tail in _fill_partition(index + 1, top, remaining - index * j):
            yield (j,) + tail


def partitions(n: int) -> List[Partition]:
    """
    All exponent sequences J = (j1..jn) with sum(i * ji) = n

    Ordered descending lexicographically on J, so the partition with the
    most 1-parts (x1^n) comes first and (0,..,0,1) comes last.
    """
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise StructureError(f"Partitions need a nonnegative integer, got {n!r}")
    if n == 0:
        return [()]
    return list(_fill_partition(1, n, n))


def partition_degree(partition: Iterable[int]) -> int:
    return sum(i * j for i, j in enumerate(partition, start=1))
