from math import gcd


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization as ascending ``(p, alpha)`` pairs."""
    if n < 1:
        raise ValueError("n must be positive")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            a = 0
            while n % p == 0:
                n //= p
                a += 1
            out.append((p, a))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def prime_powers(n: int) -> list[int]:
    return [p**a for p, a in factorize(n)]


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def num_divisors(n: int) -> int:
    return len(divisors(n))


def sigma(n: int) -> int:
    return sum(divisors(n))


def unitary_divisors(n: int) -> list[int]:
    return [m for m in divisors(n) if gcd(m, n // m) == 1]
