"""Exact factored integers and factorial factorizations.

Orders of symmetric and alternating groups overflow 64 bits well before
c = 23, so everything here is arbitrary-width: a FactoredInt is a prime ->
exponent mapping whose value is recovered exactly, and whose divisors can
be enumerated without ever materializing the value's magnitude.
"""

from __future__ import annotations

from dataclasses import dataclass


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FactoredInt:
    """A positive integer as a sorted tuple of (prime, exponent) pairs."""

    factors: tuple

    def __post_init__(self):
        primes = [p for p, _ in self.factors]
        if primes != sorted(set(primes)):
            raise ValueError("primes must be distinct and ascending")
        for p, e in self.factors:
            if not _is_prime(p):
                raise ValueError(f"{p} is not prime")
            if e < 1:
                raise ValueError(f"exponent of {p} must be >= 1")

    @classmethod
    def from_int(cls, n):
        """Trial-division factorization (adequate for the orders handled here)."""
        if n < 1:
            raise ValueError("only positive integers can be factored")
        out = []
        d = 2
        while d * d <= n:
            if n % d == 0:
                e = 0
                while n % d == 0:
                    n //= d
                    e += 1
                out.append((d, e))
            d += 1 if d == 2 else 2
        if n > 1:
            out.append((n, 1))
        return cls(tuple(out))

    def value(self):
        v = 1
        for p, e in self.factors:
            v *= p**e
        return v

    def exponent(self, p):
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    def divisor_count(self):
        n = 1
        for _, e in self.factors:
            n *= e + 1
        return n

    def divisors(self):
        """All divisors, sorted ascending."""
        divs = [1]
        for p, e in self.factors:
            powers = [p**i for i in range(e + 1)]
            divs = [d * q for d in divs for q in powers]
        divs.sort()
        return divs

    def __int__(self):
        return self.value()

    def __repr__(self):
        body = " * ".join(f"{p}^{e}" if e > 1 else f"{p}" for p, e in self.factors)
        return f"FactoredInt({body or '1'})"


def factorial_factorization(n, halved=False):
    """n! (or n!/2 when halved) as a FactoredInt via the Legendre exponents.

    The exponent of p in n! is the sum of floor(n / p^i); halving removes
    exactly one factor of two, giving the alternating-group order.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if halved and n < 4:
        raise ValueError("halved form needs n >= 4")
    factors = []
    for p in range(2, n + 1):
        if not _is_prime(p):
            continue
        e = 0
        q = p
        while q <= n:
            e += n // q
            q *= p
        if p == 2 and halved:
            e -= 1
        if e > 0:
            factors.append((p, e))
    return FactoredInt(tuple(factors))
