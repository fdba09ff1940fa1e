########################
#  Input Validation    #
########################

from dataclasses import dataclass
from typing import Any

from app.exceptions import ValidationError
from app.syntax import Effect
from app.teq_config import TeqConfig

_EFFECT_NAMES = {
    "!": Effect.TOTAL,
    "↓": Effect.TOTAL,
    "total": Effect.TOTAL,
    "?": Effect.GENERAL,
    "general": Effect.GENERAL,
}


@dataclass
class InputValidator:
    """Validates and converts command-line inputs."""

    @staticmethod
    def validate_fuel(value: Any, config: TeqConfig) -> int:
        """
        Validate and convert a fuel setting.

        Args:
            value: An int, a digit string, or None for the configured default.
            config: Toolchain configuration.

        Returns:
            int: The fuel, at least 0.

        Raises:
            ValidationError: If the value is not a non-negative integer.
        """
        if value is None:
            return config.fuel
        if isinstance(value, bool):
            raise ValidationError(f"Invalid fuel: {value}")
        if isinstance(value, str):
            value = value.strip()
            if not value.isdigit():
                raise ValidationError(f"Invalid fuel: {value!r}")
            return int(value)
        if not isinstance(value, int):
            raise ValidationError(f"Invalid fuel: {value!r}")
        if value < 0:
            raise ValidationError(f"Fuel must be non-negative, got {value}")
        return value

    @staticmethod
    def validate_effect(value: Any) -> Effect:
        """
        Convert an effect name.

        Accepts ``!``, ``↓`` and ``total`` for the total effect and ``?`` and
        ``general`` for the general one, case-insensitively.

        Raises:
            ValidationError: For any other value.
        """
        if isinstance(value, Effect):
            return value
        effect = _EFFECT_NAMES.get(str(value).strip().lower())
        if effect is None:
            raise ValidationError(f"Unknown effect: {value!r}")
        return effect
