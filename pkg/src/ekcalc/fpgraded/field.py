from __future__ import annotations

from ..errors import NotPrime


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, int) or isinstance(p, bool) or not is_prime(p):
        raise NotPrime(f"{p!r} is not a prime")
    return p


def inverse(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse mod {p}")
    return pow(a, -1, p)


def sym(a: int, p: int) -> int:
    """Balanced representative of a mod p, in (-p/2, p/2]."""
    a %= p
    return a - p if a > p // 2 else a
