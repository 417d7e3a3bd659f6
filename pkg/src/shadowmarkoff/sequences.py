"""Closed-form oracles for the integer sequences seen along tree branches."""
from __future__ import annotations

from functools import lru_cache


def _linear(n: int, a0: int, a1: int, p: int, q: int) -> int:
    """a(n) = p*a(n-1) + q*a(n-2)."""
    if n < 0:
        raise ValueError("index must be nonnegative")
    x, y = a0, a1
    for _ in range(n):
        x, y = y, p * y + q * x
    return x


def fibonacci(n: int) -> int:
    return _linear(n, 0, 1, 1, 1)


def pell(n: int) -> int:
    return _linear(n, 0, 1, 2, 1)


def even_pell(n: int) -> int:
    """P(2n): 0, 2, 12, 70, 408, ... (OEIS A001542)."""
    return pell(2 * n)


def double_even_fibonacci(n: int) -> int:
    """2*F(2n+2): 2, 6, 16, 42, 110, ... (OEIS A025169)."""
    if n < 0:
        raise ValueError("index must be nonnegative")
    return 2 * fibonacci(2 * n + 2)


# No recurrence is known to us for A281199; only these terms are fixed.
A281199_GOLDEN = (0, 2, 10, 38, 130, 420, 1308, 3970)


@lru_cache(maxsize=None)
def shadow_fib_branch_reference(n: int) -> int:
    """Shadows along the left branch of the (0:0:1) tree, indexed like A281199.

    Terms 0..7 are fixed values; later terms are read off the tree itself.
    """
    if n < 0:
        raise ValueError("index must be nonnegative")
    if n < len(A281199_GOLDEN):
        return A281199_GOLDEN[n]
    from .treewalk import branch_sequence

    _, shadow = branch_sequence(0, 0, 1, "L", n - 1)[n - 2]
    return int(shadow)


ORACLES = {
    "fibonacci": fibonacci,
    "pell": pell,
    "even_pell": even_pell,
    "double_even_fibonacci": double_even_fibonacci,
    "a281199": shadow_fib_branch_reference,
}
