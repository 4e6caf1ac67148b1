"""Global size caps for the symbolic engine.

Expansion weight (total number of letters, counted with multiplicity inside
brackets) and surjection grade both grow combinatorially: the number of
surjections of grade n is 1, 3, 13, 75, 541, 4683, ... so products above
grade 6 get expensive fast.  The caps below bound what the high-level
operations will attempt; callers that need more can raise them explicitly.
"""

from __future__ import annotations

DEFAULT_WEIGHT_CAP = 8
DEFAULT_GRADE_CAP = 6

_weight_cap = DEFAULT_WEIGHT_CAP
_grade_cap = DEFAULT_GRADE_CAP


class CapExceeded(ValueError):
    """Raised when an operation would exceed the configured size caps."""


def weight_cap() -> int:
    return _weight_cap


def grade_cap() -> int:
    return _grade_cap


def set_weight_cap(value: int) -> int:
    """Set the word-weight cap and return the previous value."""
    global _weight_cap
    if value < 1:
        raise ValueError("weight cap must be positive")
    old, _weight_cap = _weight_cap, int(value)
    return old


def set_grade_cap(value: int) -> int:
    """Set the surjection-grade cap and return the previous value."""
    global _grade_cap
    if value < 1:
        raise ValueError("grade cap must be positive")
    old, _grade_cap = _grade_cap, int(value)
    return old


def check_weight(weight: int) -> None:
    if weight > _weight_cap:
        raise CapExceeded(
            f"word weight {weight} exceeds cap {_weight_cap}; "
            "raise it with itoflow.set_weight_cap"
        )


def check_grade(grade: int) -> None:
    if grade > _grade_cap:
        raise CapExceeded(
            f"surjection grade {grade} exceeds cap {_grade_cap}; "
            "raise it with itoflow.set_grade_cap"
        )
