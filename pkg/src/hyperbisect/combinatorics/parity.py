"""2-adic valuations, odd multinomial coefficients and the cohomological measure bound."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

from hyperbisect.combinatorics.partitions import validate_sizes
from hyperbisect.errors import PreconditionError


@dataclass(frozen=True)
class ParityCertificate:
    n: int
    D: int
    two_adic_valuation: int
    parity: Literal["odd", "even"]

    def __post_init__(self) -> None:
        if self.two_adic_valuation < 0:
            raise ValueError("valuation must be nonnegative")
        if (self.parity == "odd") != (self.two_adic_valuation == 0):
            raise ValueError("parity must be odd exactly when the valuation is zero")


def legendre_valuation(m: int, p: int = 2) -> int:
    """v_p(m!) = sum_k floor(m / p^k)."""

    if m < 0:
        raise PreconditionError("m must be nonnegative")
    total = 0
    power = p
    while power <= m:
        total += m // power
        power *= p
    return total


def partition_parity(n: int, D: int) -> ParityCertificate:
    validate_sizes(n, D)
    valuation = legendre_valuation(n * D) - legendre_valuation(D) - D * legendre_valuation(n)
    parity = "odd" if valuation == 0 else "even"
    return ParityCertificate(n=n, D=D, two_adic_valuation=valuation, parity=parity)


def _binomial_is_odd(top: int, bottom: int) -> bool:
    # Kummer: C(top, bottom) is odd iff adding bottom and top - bottom in base 2 never carries.
    return bottom & (top - bottom) == 0


def is_multinomial_odd(k: int, parts: Sequence[int]) -> bool:
    """Parity of C(k, k_1) C(k - k_1, k_2) ... C(k - k_1 - ... - k_{D-1}, k_D)."""

    if k < 1:
        raise PreconditionError(f"k must be positive, got {k}")
    if any(part < 0 for part in parts):
        raise PreconditionError("parts must be nonnegative")
    if sum(parts) > k:
        raise PreconditionError(f"parts sum to {sum(parts)} > k = {k}")
    remaining = k
    for part in parts:
        if not _binomial_is_odd(remaining, part):
            return False
        remaining -= part
    return True


def max_measures_cohomological(n: int) -> int:
    """2^(m+1) - 1 with 2^m the largest power of two not exceeding n."""

    if n < 1:
        raise PreconditionError(f"n must be positive, got {n}")
    m = n.bit_length() - 1
    return 2 ** (m + 1) - 1


def odd_multinomial_witness(n: int, D: int) -> tuple[int, ...]:
    """Carry-free parts k_1..k_D, each at most n, summing to 2^(m+1) - 1."""

    if n < 1:
        raise PreconditionError(f"n must be positive, got {n}")
    if D < 2:
        raise PreconditionError("The carry-free witness needs at least two hyperplanes")
    m = n.bit_length() - 1
    if D <= m + 2:
        parts = [2 ** (m - i) for i in range(D - 1)]
        parts.append(2 ** (m - D + 2) - 1)
    else:
        parts = [2 ** (m - i) for i in range(m + 1)]
        parts.extend([0] * (D - m - 1))
    return tuple(parts)
