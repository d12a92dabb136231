"""Integer closed forms for power-map enumerations.

Everything here is plain integer arithmetic on Python ints, so values
such as the exponent of GL(n, q) never overflow.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import combinations
from math import gcd, lcm, prod

from sympy import factorint, isprime


@dataclass(frozen=True)
class FactoredInteger:
    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        primes = [p for p, _ in self.factors]
        if primes != sorted(set(primes)):
            raise ValueError("primes must be strictly increasing")
        if prod(p**e for p, e in self.factors) != self.n:
            raise ValueError(f"factorization does not multiply back to {self.n}")

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]


def factorize(n: int) -> FactoredInteger:
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")
    return FactoredInteger(n, tuple(sorted(factorint(n).items())))


def is_prime(n: int) -> bool:
    return bool(isprime(n))


def _prime_power_lambda(p: int, e: int) -> int:
    if p == 2 and e >= 3:
        return 2 ** (e - 2)
    return p ** (e - 1) * (p - 1)


def carmichael_lambda(n: int) -> int:
    """Exponent of the unit group of Z/nZ (lambda(1) = 1)."""
    return reduce(lcm, (_prime_power_lambda(p, e) for p, e in factorize(n).factors), 1)


def moebius(n: int) -> int:
    f = factorize(n).factors
    if any(e > 1 for _, e in f):
        return 0
    return -1 if len(f) % 2 else 1


def rad(n: int) -> int:
    return prod(factorize(n).primes)


def omega(n: int) -> int:
    return len(factorize(n).factors)


def max_exponent(n: int) -> int:
    """Largest exponent in the prime factorization; 0 for n = 1."""
    return max((e for _, e in factorize(n).factors), default=0)


def squarefree_divisors(n: int) -> list[int]:
    primes = factorize(n).primes
    return sorted(prod(c) for r in range(len(primes) + 1) for c in combinations(primes, r))


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n).factors:
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def count_noncoprime(N: int, M: int) -> int:
    """Number of n in [1, M] with gcd(n, N) > 1.

    Inclusion-exclusion over the squarefree divisors d != 1 of N, each
    weighted by (-1)^(omega(d) + 1).
    """
    if N < 1 or M < 0:
        raise ValueError("need N >= 1 and M >= 0")
    total = 0
    for d in squarefree_divisors(N):
        if d == 1:
            continue
        sign = 1 if omega(d) % 2 else -1
        total += sign * (M // d)
    return total


def count_noncoprime_moebius(N: int, M: int) -> int:
    """Same count, written as -sum over all divisors d != 1 of N of mu(d) * floor(M/d)."""
    return -sum(moebius(d) * (M // d) for d in divisors(N) if d != 1)


def predicted_muP_zmod(n: int) -> int:
    """Number of periodic power maps of Z/nZ."""
    if n < 2:
        raise ValueError("Z/nZ needs n >= 2")
    window = carmichael_lambda(n) + max_exponent(n) - 1
    return count_noncoprime(rad(n // rad(n)), window)


def predicted_distinct_maps_zmod(n: int) -> int:
    return carmichael_lambda(n) + max_exponent(n) - 1


def predicted_profile_zmod(n: int) -> tuple[int, int, int]:
    return max_exponent(n), carmichael_lambda(n), predicted_muP_zmod(n)


def predicted_profile_galois_ring(p: int, k: int, d: int) -> tuple[int, int, int]:
    """(mu0, mu1, muP) of the Galois ring GR(p^k, d)."""
    if k < 1 or d < 1:
        raise ValueError("need k >= 1 and d >= 1")
    if d == 1:
        return predicted_profile_zmod(p**k)
    if k == 1:
        return 1, p**d - 1, 0
    mu1 = p ** (k - 1) * (p**d - 1)
    muP = p ** (k - 2) * (p**d - 1) + (k - 1) // p
    return k, mu1, muP


def predicted_profile_corbas(p: int, k: int, identity_phi: bool) -> tuple[int, int, int]:
    if k < 1:
        raise ValueError("need k >= 1")
    q = p**k
    return 2, p * (q - 1), (q - 1) if identity_phi else 0


def corbas_periodic_count(p: int, k: int, s: int) -> int:
    """Periodic power maps of the Corbas ring with phi = Frobenius^s.

    x^n is periodic iff p | n and a^n = phi(a)^n for every unit a, i.e.
    (q - 1) / gcd(q - 1, p^s - 1) divides n. For s = 0 this is p^k - 1.
    """
    q = p**k
    step = lcm(p, (q - 1) // gcd(q - 1, p**s - 1))
    return (p * (q - 1) + 1) // step


def ceil_log(p: int, n: int) -> int:
    """Smallest e >= 0 with p**e >= n, computed exactly."""
    e, power = 0, 1
    while power < n:
        power *= p
        e += 1
    return e


def predicted_mu1_matrix(p: int, k: int, n: int) -> int:
    """Exponent of GL(n, q), q = p^k: p^ceil(log_p n) * lcm(q - 1, ..., q^n - 1)."""
    if n < 1:
        raise ValueError("need n >= 1")
    q = p**k
    return p ** ceil_log(p, n) * reduce(lcm, (q**i - 1 for i in range(1, n + 1)), 1)


def predicted_profile_matrix(p: int, k: int, n: int) -> tuple[int, int, int]:
    return n, predicted_mu1_matrix(p, k, n), 0


def periodic_map_lower_bound(N: int, mu0: int, mu1: int) -> int:
    """Guaranteed number of periodic power maps of a commutative ring whose
    nilpotents have additive orders with lcm N.
    """
    return count_noncoprime(rad(N), mu0 + mu1 - 1)
