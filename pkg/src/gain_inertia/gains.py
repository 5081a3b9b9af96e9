"""Unit-modulus edge gains with an exact fast path for fourth roots of unity.

A gain is a complex number of modulus 1 attached to an oriented edge;
traversing the edge backwards conjugates it.  Gains equal to one of
1, -1, i, -i additionally carry an exact token so that downstream exact
integer arithmetic never sees floating-point error.  The token group is
closed under multiplication and conjugation, so products of exact gains
stay exact.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

#: Accepted modulus error of raw input before normalization.
MODULUS_TOLERANCE = 1e-9

#: Modulus error guaranteed after construction.
NORMALIZED_TOLERANCE = 1e-12

#: Exact token -> (re, im) as integers.
_TOKEN_VALUES = {
    "+1": (1, 0),
    "-1": (-1, 0),
    "+i": (0, 1),
    "-i": (0, -1),
}

_VALUE_TOKENS = {v: k for k, v in _TOKEN_VALUES.items()}

#: Spellings accepted on input, normalized to the canonical token.
_TOKEN_ALIASES = {
    "1": "+1",
    "+1": "+1",
    "-1": "-1",
    "i": "+i",
    "+i": "+i",
    "-i": "-i",
}


class GainModulusError(ValueError):
    """Raised when a requested gain is not on the unit circle."""


@dataclass(frozen=True)
class Gain:
    """A unit-modulus complex gain, exact when it is a fourth root of unity.

    ``token`` is one of ``+1 -1 +i -i`` when the gain is exactly that root
    of unity, and ``None`` for general floating gains.  Use the ``from_*``
    constructors or :meth:`coerce`; the raw constructor performs no
    validation.
    """

    re: float
    im: float
    token: str | None = None

    @classmethod
    def from_token(cls, token: str) -> "Gain":
        canonical = _TOKEN_ALIASES.get(token.strip())
        if canonical is None:
            raise GainModulusError(f"unknown exact gain token {token!r}")
        re, im = _TOKEN_VALUES[canonical]
        return cls(float(re), float(im), canonical)

    @classmethod
    def from_complex(cls, re: float, im: float) -> "Gain":
        """Build from a complex pair, normalizing onto the unit circle.

        Rejects input whose modulus differs from 1 by more than
        ``MODULUS_TOLERANCE``; values that land exactly on a fourth root
        of unity after normalization get the exact token.
        """
        modulus = math.hypot(re, im)
        if abs(modulus - 1.0) > MODULUS_TOLERANCE:
            raise GainModulusError(
                f"gain modulus {modulus!r} differs from 1 by more than {MODULUS_TOLERANCE}"
            )
        re, im = re / modulus, im / modulus
        token = _VALUE_TOKENS.get((int(re), int(im))) if re in (1.0, -1.0, 0.0) and im in (1.0, -1.0, 0.0) else None
        return cls(re, im, token)

    @classmethod
    def from_angle_degrees(cls, degrees: float) -> "Gain":
        theta = math.radians(degrees)
        return cls.from_complex(math.cos(theta), math.sin(theta))

    @classmethod
    def coerce(cls, spec: "Gain | complex | str | tuple[float, float] | int | float") -> "Gain":
        """Accept the gain-spec forms used by graph construction.

        Understood forms: a ``Gain``; an exact token string; a string
        ``angle:<degrees>``; a complex number; an ``(re, im)`` pair; the
        integers/floats ``1`` and ``-1``.
        """
        if isinstance(spec, Gain):
            return spec
        if isinstance(spec, str):
            if spec.startswith("angle:"):
                return cls.from_angle_degrees(float(spec[len("angle:"):]))
            return cls.from_token(spec)
        if isinstance(spec, complex):
            return cls.from_complex(spec.real, spec.imag)
        if isinstance(spec, tuple):
            re, im = spec
            return cls.from_complex(float(re), float(im))
        if isinstance(spec, (int, float)):
            return cls.from_complex(float(spec), 0.0)
        raise TypeError(f"cannot interpret {spec!r} as a gain")

    @property
    def value(self) -> complex:
        return complex(self.re, self.im)

    @property
    def is_exact(self) -> bool:
        return self.token is not None

    @property
    def exact_pair(self) -> tuple[int, int]:
        """The gain as exact Gaussian-integer components; exact gains only."""
        if self.token is None:
            raise ValueError("gain is not an exact fourth root of unity")
        return _TOKEN_VALUES[self.token]

    def conjugate(self) -> "Gain":
        if self.token is not None:
            re, im = _TOKEN_VALUES[self.token]
            return Gain(float(re), float(-im), _VALUE_TOKENS[(re, -im)])
        return Gain(self.re, -self.im, None)

    def __mul__(self, other: "Gain") -> "Gain":
        if self.token is not None and other.token is not None:
            a, b = _TOKEN_VALUES[self.token]
            c, d = _TOKEN_VALUES[other.token]
            re, im = a * c - b * d, a * d + b * c
            return Gain(float(re), float(im), _VALUE_TOKENS[(re, im)])
        product = self.value * other.value
        # Unit-modulus factors keep the product within normalization tolerance.
        modulus = abs(product)
        return Gain(product.real / modulus, product.imag / modulus, None)

    def approx_eq(self, other: "Gain", tol: float = NORMALIZED_TOLERANCE) -> bool:
        return abs(self.value - other.value) <= tol

    def __repr__(self) -> str:
        if self.token is not None:
            return f"Gain({self.token})"
        return f"Gain({self.re!r}, {self.im!r})"


#: The identity gain, by far the most common value.
ONE = Gain.from_token("+1")


def angle_gain(radians: float) -> Gain:
    return Gain.from_complex(math.cos(radians), math.sin(radians))


def cycle_gain_product(gains: "list[Gain]") -> Gain:
    """Product of gains along a traversal; exact when all factors are exact."""
    result = ONE
    for g in gains:
        result = result * g
    if result.token is None:
        # Re-normalize accumulated floating drift.
        value = cmath.rect(1.0, cmath.phase(result.value))
        return Gain(value.real, value.imag, None)
    return result
