"""Bias-angle policy and the success-amplitude feasibility inequality.

After the Hadamard layer and the full bias cascade, the amplitude left on
``|0>`` is

    (cos^N t + sin t * sum_{i<N} cos^i t) / sqrt(2)^n,    N = 2^n - 1,

and the compiled circuit outputs the right answer with probability greater
than 1/2 exactly when this amplitude exceeds 1/sqrt(2). The sum is evaluated in
closed form, so n = 26 costs the same as n = 2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import RangeError


def divisor(n: int) -> int:
    """Power of two ``f(n)`` with ``theta = pi / f(n)``."""
    if n < 1:
        raise RangeError(f"bit width must be >= 1, got {n}")
    half = n // 2 if n % 2 == 0 else (n - 1) // 2
    return 2 ** (half + 1)


@dataclass(frozen=True)
class ThetaPolicy:
    n: int
    divisor: int
    theta: float

    @classmethod
    def for_width(cls, n: int) -> ThetaPolicy:
        d = divisor(n)
        return cls(n, d, math.pi / d)


def _check_open(theta: float) -> None:
    if not 0.0 < theta < math.pi / 2:
        raise RangeError(f"theta {theta!r} outside the open interval (0, pi/2)")


def eq3_lhs(n: int, theta: float) -> float:
    """Amplitude on ``|0>`` after the Hadamard layer and the bias cascade."""
    if n < 1:
        raise RangeError(f"bit width must be >= 1, got {n}")
    _check_open(theta)
    terms = 2**n - 1
    # 1 - cos t = 2 sin^2(t/2) avoids cancellation at small t
    one_minus_cos = 2.0 * math.sin(theta / 2) ** 2
    log_cos_pow = terms * math.log1p(-one_minus_cos)
    cos_pow = math.exp(log_cos_pow)
    one_minus_cos_pow = -math.expm1(log_cos_pow)
    geometric = one_minus_cos_pow / one_minus_cos
    return (cos_pow + math.sin(theta) * geometric) / math.sqrt(2.0) ** n


def check_eq3(n: int, theta: float) -> bool:
    """True iff the cascade amplitude strictly exceeds 1/sqrt(2).

    The closed endpoints 0 and pi/2 are accepted and return False: the
    inequality is only meaningful for angles inside the open interval, and at
    pi/2 the amplitude equals 1/sqrt(2) exactly for n = 1.
    """
    if n < 1:
        raise RangeError(f"bit width must be >= 1, got {n}")
    if theta == 0.0 or theta == math.pi / 2:
        return False
    return eq3_lhs(n, theta) > 1.0 / math.sqrt(2.0)
