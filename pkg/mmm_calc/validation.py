"""
Input Validation Module for mmm_calc
Checks user-supplied parameters before they reach the algebra
"""

import re
from typing import Any, Iterable


class ValidationError(ValueError):
    """Exception raised for validation errors"""
    def __init__(self, field: str, message: str, value: Any = None):
        self.field = field
        self.message = message
        self.value = value
        super().__init__(f"Validation error for {field}: {message}")


class InputValidator:
    """Parameter validation shared by the library and the CLI"""

    # Decimal integers carried as JSON strings when they exceed native ranges
    INTEGER_STRING_PATTERN = re.compile(r'^[+-]?\d+$')

    @classmethod
    def validate_positive_int(cls, field: str, value: Any, minimum: int = 1) -> int:
        """Integer >= minimum; bools and floats are rejected"""
        if isinstance(value, bool) or not isinstance(value, int):
            raise ValidationError(field, f'must be an integer, got {type(value).__name__}', value)
        if value < minimum:
            raise ValidationError(field, f'must be >= {minimum}', value)
        return value

    @classmethod
    def validate_choice(cls, field: str, value: Any, allowed: Iterable[str]) -> str:
        allowed = list(allowed)
        if value not in allowed:
            raise ValidationError(field, f"must be one of {', '.join(allowed)}", value)
        return value

    @classmethod
    def validate_integer_value(cls, field: str, value: Any) -> int:
        """JSON integer, or a decimal string for values beyond native range"""
        if isinstance(value, bool):
            raise ValidationError(field, 'booleans are not integers', value)
        if isinstance(value, int):
            return value
        if isinstance(value, str) and cls.INTEGER_STRING_PATTERN.match(value.strip()):
            return int(value.strip())
        raise ValidationError(field, 'must be an integer', value)
