"""
Input validation utilities for engine parameters and run configuration
"""

import math
from typing import Any

from src.errors import EngineError, SingularSystemError


# Largest Fourier truncation order the harmonic-balance system accepts
MAX_HARMONICS = 12


class ValidationError(Exception):
    """Engine parameter, detuning grid or run setting outside its accepted range"""
    pass


class StepSizeError(ValidationError):
    """Time step too coarse for the generator being integrated"""
    pass


def validate_number(value: Any, name: str) -> float:
    """
    Validate that a value is a finite real number

    Args:
        value: The value to validate
        name: Field name used in the error message

    Returns:
        The value as float

    Raises:
        ValidationError: If the value is not a finite number
    """
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(f"{name} must be a number (got {value!r})")

    value = float(value)
    if not math.isfinite(value):
        raise ValidationError(f"{name} must be finite (got {value})")

    return value


def validate_positive(value: Any, name: str) -> float:
    """
    Validate a strictly positive quantity (temperatures, transition frequencies)

    Args:
        value: The value to validate
        name: Field name used in the error message

    Returns:
        The validated value

    Raises:
        ValidationError: If the value is not > 0
    """
    value = validate_number(value, name)
    if value <= 0:
        raise ValidationError(f"{name} must be positive (got {value})")
    return value


def validate_non_negative(value: Any, name: str) -> float:
    """
    Validate a non-negative quantity (rates, Rabi magnitudes, sideband strength)

    Args:
        value: The value to validate
        name: Field name used in the error message

    Returns:
        The validated value

    Raises:
        ValidationError: If the value is negative
    """
    value = validate_number(value, name)
    if value < 0:
        raise ValidationError(f"{name} cannot be negative (got {value})")
    return value


def validate_choice(value: Any, name: str, choices: set[str]) -> str:
    """
    Validate a string option

    Args:
        value: The option to validate
        name: Field name used in the error message
        choices: Accepted values

    Returns:
        The validated option, stripped

    Raises:
        ValidationError: If the option is not one of the choices
    """
    if not isinstance(value, str):
        raise ValidationError(f"{name} must be a string")

    value = value.strip()
    if value not in choices:
        raise ValidationError(
            f"{name} must be one of {', '.join(sorted(choices))} (got '{value}')"
        )
    return value


def validate_order(order: Any, name: str = "harmonics", max_val: int = MAX_HARMONICS) -> int:
    """
    Validate a Fourier truncation order

    Args:
        order: The truncation order
        name: Field name used in the error message
        max_val: Largest accepted order (default: MAX_HARMONICS)

    Returns:
        The validated order

    Raises:
        ValidationError: If the order is not an integer in [0, max_val]
    """
    if isinstance(order, bool) or not isinstance(order, int):
        raise ValidationError(f"{name} must be an integer")

    if order < 0:
        raise ValidationError(f"{name} must be at least 0")

    if order > max_val:
        raise ValidationError(f"{name} cannot exceed {max_val}")

    return order


def validate_grid(minimum: Any, maximum: Any, points: Any) -> tuple[float, float, int]:
    """
    Validate a probe detuning grid

    Args:
        minimum: Lower edge in 2π·MHz
        maximum: Upper edge in 2π·MHz
        points: Number of grid points

    Returns:
        Tuple (minimum, maximum, points)

    Raises:
        ValidationError: If the edges are not ordered or fewer than 3 points
    """
    minimum = validate_number(minimum, "grid_min")
    maximum = validate_number(maximum, "grid_max")

    if minimum >= maximum:
        raise ValidationError(f"grid_min must be below grid_max (got {minimum} >= {maximum})")

    if isinstance(points, bool) or not isinstance(points, int):
        raise ValidationError("grid_points must be an integer")

    if points < 3:
        raise ValidationError(f"grid_points must be at least 3 (got {points})")

    return minimum, maximum, points


def parse_grid(text: str) -> tuple[float, float, int]:
    """
    Parse a "min:max:points" grid string

    Raises:
        ValidationError: If the text is malformed
    """
    parts = text.split(":")
    if len(parts) != 3:
        raise ValidationError(f"grid must look like min:max:points (got '{text}')")
    try:
        minimum, maximum, points = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise ValidationError(f"grid must look like min:max:points (got '{text}')")
    return validate_grid(minimum, maximum, points)


def exit_code_for(error: Exception) -> int:
    """Command line status: 1 for a rejected configuration, 2 for a numerical failure"""
    if isinstance(error, ValidationError):
        return 1
    return 2


def error_report(error: Exception, command: str) -> dict[str, Any]:
    """
    Summarise a failed command for the log

    Configuration problems name the offending setting in the message;
    numerical failures carry the engine error class, and a rank-deficient
    harmonic system also names the component dominating its zero mode.

    Args:
        error: The exception that stopped the command
        command: Sub-command that was running

    Returns:
        Dictionary with command, category, kind, message and exit_code
    """
    if isinstance(error, ValidationError):
        category = "configuration"
    elif isinstance(error, EngineError):
        category = "numerical"
    else:
        category = "internal"

    report = {
        "command": command,
        "category": category,
        "kind": type(error).__name__,
        "message": str(error),
        "exit_code": exit_code_for(error),
    }
    if isinstance(error, SingularSystemError) and error.zero_mode:
        report["zero_mode"] = error.zero_mode
    return report
