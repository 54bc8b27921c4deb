"""The family-size recurrence that guarantees extraction on tree-depth instances."""
from __future__ import annotations

import math
from functools import lru_cache

MAX_BITS = 50_000_000


def m_bound(d: int, n: int, p: int, r: int, max_bits: int = MAX_BITS) -> int:
    """Exact value of ``M(d, n, p, r)``.

    ``M(d, 1, p, r) = 1`` and ``M(d, n, 0, r) = d(n-1) + 1``; otherwise, with
    ``q = d - p``::

        M2 = max(M(d, n-1, p, r) + n, M(d, n, p-1, r))
        M1 = M2 * ((n+1)^((n-1)(r+2)^(2q)) - 1) + (n-1)(r+2)^q + 1
        M  = 2^((r+2)^q) * (M1 - 1) + 1

    The values grow doubly exponentially in ``q``; an ``OverflowError`` is
    raised instead of building an integer wider than ``max_bits`` bits.
    """
    if d < 1 or r < 1 or n < 1:
        raise ValueError("need d, n, r >= 1")
    if not (0 <= p <= d - 1):
        raise ValueError(f"need 0 <= p <= d - 1, got p={p} with d={d}")
    return _m(d, n, p, r, max_bits)


@lru_cache(maxsize=None)
def _m(d: int, n: int, p: int, r: int, max_bits: int) -> int:
    if n == 1:
        return 1
    if p == 0:
        return d * (n - 1) + 1
    q = d - p
    m2 = max(_m(d, n - 1, p, r, max_bits) + n, _m(d, n, p - 1, r, max_bits))
    exponent = (n - 1) * (r + 2) ** (2 * q)
    est = exponent * math.log2(n + 1) + m2.bit_length() + (r + 2) ** q
    if est > max_bits:
        raise OverflowError(f"M({d}, {n}, {p}, {r}) needs about {est:.3g} bits (limit {max_bits})")
    m1 = m2 * ((n + 1) ** exponent - 1) + (n - 1) * (r + 2) ** q + 1
    return ((m1 - 1) << (r + 2) ** q) + 1
