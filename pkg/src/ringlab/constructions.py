"""Constructors for the concrete ring families.

Encodings (all mixed radix, most significant component first):

* ``zmod:n``      residue r -> r
* ``gf``/``gr``   coefficient vector c_0 + c_1 t + ... -> sum c_i m^i
* ``corbas``      pair (a, b) of field ids -> a * q + b
* ``mat``         row-major entries e_0 .. e_{n^2-1} -> sum e_t q^(n^2-1-t)
* ``nilzero``     tuple (x_1, .., x_r) -> mixed radix over the orders
* ``bell``        0, a, b, c -> 0, 1, 2, 3 (c = a + b)
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

import numpy as np

from .core import FiniteRing, check_size, direct_product
from .numtheory import factorize, is_prime

__all__ = [
    "NotPrimeError",
    "find_irreducible",
    "is_irreducible",
    "make_zmod",
    "make_galois_field",
    "make_galois_ring",
    "make_corbas",
    "make_matrix_ring",
    "make_bell_klein",
    "make_nil_zero",
    "make_product",
]


class NotPrimeError(ValueError):
    pass


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")


# -- polynomials over F_p as coefficient lists, low degree first ------------

def _trim(f):
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def poly_mod(f, g, p):
    """Remainder of f modulo monic g over Z/p."""
    f = _trim(x % p for x in f)
    dg = len(g) - 1
    while len(f) - 1 >= dg:
        c, shift = f[-1], len(f) - 1 - dg
        for i, gi in enumerate(g):
            f[shift + i] = (f[shift + i] - c * gi) % p
        f = _trim(f)
    return f


def is_irreducible(f, p: int) -> bool:
    """Trial division of monic f by every monic polynomial of degree <= deg f / 2."""
    k = len(f) - 1
    if k < 1:
        return False
    for deg in range(1, k // 2 + 1):
        for low in product(range(p), repeat=deg):
            if not poly_mod(f, list(low) + [1], p):
                return False
    return True


@lru_cache(maxsize=None)
def find_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree k over F_p.

    Coefficient tuples are compared low degree first.
    """
    _require_prime(p)
    if k < 1:
        raise ValueError("degree must be >= 1")
    for low in product(range(p), repeat=k):
        f = list(low) + [1]
        if is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("unreachable: irreducibles exist in every degree")


def _digits(a, base: int, d: int) -> np.ndarray:
    return (np.asarray(a)[..., None] // base ** np.arange(d, dtype=np.int64)) % base


def _undigits(c, base: int) -> np.ndarray:
    d = c.shape[-1]
    return (c * base ** np.arange(d, dtype=np.int64)).sum(axis=-1)


class ZMod(FiniteRing):
    family = "zmod"
    commutative_hint = True

    def __init__(self, n: int):
        super().__init__()
        self.n = self.size = n
        self.params = (n,)
        self.unity = 1 % n if n > 1 else None

    def _add(self, a, b):
        return (a + b) % self.n

    def _neg(self, a):
        return (-a) % self.n

    def _mul(self, a, b):
        return (a * b) % self.n

    def decode(self, x):
        return int(x)

    def encode(self, obj):
        return int(obj) % self.n

    def describe(self):
        return f"zmod:{self.n}"


class PolyQuotientRing(FiniteRing):
    """(Z/m)[t] / (f) for a monic f of degree d; used for Galois rings."""

    family = "gr"
    commutative_hint = True

    def __init__(self, m: int, modulus):
        super().__init__()
        self.m = m
        self.modulus = tuple(int(c) % m for c in modulus)
        if self.modulus[-1] != 1:
            raise ValueError("modulus must be monic")
        self.d = len(self.modulus) - 1
        self.size = m**self.d
        self.unity = 1
        self._f = np.array(self.modulus[:-1], dtype=np.int64)

    def _add(self, a, b):
        return _undigits((_digits(a, self.m, self.d) + _digits(b, self.m, self.d)) % self.m, self.m)

    def _neg(self, a):
        return _undigits((-_digits(a, self.m, self.d)) % self.m, self.m)

    def _poly_mul(self, a, b):
        m, d = self.m, self.d
        A, B = np.broadcast_arrays(_digits(a, m, d), _digits(b, m, d))
        C = np.zeros(A.shape[:-1] + (2 * d - 1,), dtype=np.int64)
        for i in range(d):
            C[..., i:i + d] = (C[..., i:i + d] + A[..., i:i + 1] * B) % m
        for t in range(2 * d - 2, d - 1, -1):
            lead = C[..., t:t + 1]
            C[..., t - d:t] = (C[..., t - d:t] - lead * self._f) % m
        return _undigits(C[..., :d], m)

    _mul = _poly_mul

    def decode(self, x):
        return tuple(int(c) for c in _digits(int(x), self.m, self.d))

    def encode(self, obj):
        return int(_undigits(np.asarray(obj, dtype=np.int64) % self.m, self.m))


class GaloisRing(PolyQuotientRing):
    family = "gr"

    def __init__(self, p: int, k: int, d: int, modulus=None):
        if modulus is None:
            modulus = find_irreducible(p, d)  # trivial coefficientwise lift
        super().__init__(p**k, modulus)
        self.p, self.k = p, k
        self.params = (p, k, d)
        if not is_irreducible([c % p for c in self.modulus], p):
            raise ValueError("modulus is not irreducible modulo p")

    def describe(self):
        return f"gr:{self.p}^{self.k},{self.d}"


class GaloisField(PolyQuotientRing):
    """F_{p^k} with log/antilog tables for fast multiplication."""

    family = "gf"

    def __init__(self, p: int, k: int, modulus=None):
        _require_prime(p)
        if modulus is None:
            modulus = find_irreducible(p, k)
        if not is_irreducible(list(modulus), p):
            raise ValueError(f"{modulus} is not irreducible over F_{p}")
        super().__init__(p, modulus)
        self.p, self.k, self.q = p, k, p**k
        self.params = (p, k)
        self._build_logs()

    def _build_logs(self):
        q = self.q
        order = q - 1
        cofactors = [order // r for r in factorize(order).primes] if order > 1 else []
        for g in range(1, q):
            if all(self._scalar_pow(g, c) != 1 for c in cofactors):
                break
        self.generator = g
        exp = np.ones(max(order, 1), dtype=np.int64)
        filled, gpow = 1, g
        while filled < order:
            take = min(filled, order - filled)
            exp[filled:filled + take] = self._poly_mul(exp[:take], gpow)
            filled += take
            gpow = int(self._poly_mul(gpow, gpow))
        log = np.zeros(q, dtype=np.int64)
        log[exp] = np.arange(len(exp), dtype=np.int64)
        if len(np.unique(exp)) != order:
            raise AssertionError("generator search produced a non-primitive element")
        exp.flags.writeable = False
        log.flags.writeable = False
        self.exp_table, self.log_table = exp, log

    def _scalar_pow(self, g, e):
        result, base = 1, g
        while e:
            if e & 1:
                result = int(self._poly_mul(result, base))
            base = int(self._poly_mul(base, base))
            e >>= 1
        return result

    def _add(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)
        return super()._add(a, b)

    def _neg(self, a):
        if self.p == 2:
            return np.asarray(a)
        return super()._neg(a)

    def _mul(self, a, b):
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        nz = (a != 0) & (b != 0)
        e = self.exp_table[(self.log_table[a] + self.log_table[b]) % (self.q - 1)]
        return np.where(nz, e, 0)

    # field helpers, all vectorized; ``a`` must be nonzero where noted
    def power(self, a, e: int):
        """a^e for integer e (negative allowed on nonzero a); 0^0 = 1."""
        a = np.asarray(a, dtype=np.int64)
        e = int(e)
        raised = self.exp_table[(self.log_table[a] * (e % (self.q - 1))) % (self.q - 1)]
        if e == 0:
            return np.ones_like(a)
        if e < 0:
            return raised  # caller guarantees a != 0
        return np.where(a == 0, 0, raised)

    def inv(self, a):
        return self.power(a, -1)

    def frobenius(self, a, s: int):
        """x -> x^(p^s)."""
        return self.power(a, self.p**s)

    def times(self, n: int, a):
        """The additive multiple n * a."""
        c = _digits(a, self.p, self.d) * (int(n) % self.p) % self.p
        return _undigits(c, self.p)

    def describe(self):
        return f"gf:{self.p}^{self.k}"


class CorbasRing(FiniteRing):
    """F_q + F_q with (a, b)(c, d) = (ac, ad + b phi(c)), phi = Frobenius^s."""

    family = "corbas"

    def __init__(self, p: int, k: int, s: int):
        super().__init__()
        self.F = GaloisField(p, k)
        self.p, self.k, self.s = p, k, s
        self.q = self.F.q
        self.size = self.q**2
        self.params = (p, k, s)
        self.unity = self.q  # (1, 0)
        self.commutative_hint = s == 0

    def phi(self, c):
        return self.F.frobenius(c, self.s)

    def _split(self, x):
        return np.divmod(x, self.q)

    def _add(self, x, y):
        (a, b), (c, d) = self._split(x), self._split(y)
        return self.F._add(a, c) * self.q + self.F._add(b, d)

    def _neg(self, x):
        a, b = self._split(x)
        return self.F._neg(a) * self.q + self.F._neg(b)

    def _mul(self, x, y):
        F = self.F
        (a, b), (c, d) = self._split(x), self._split(y)
        second = F._add(F._mul(a, d), F._mul(b, self.phi(c)))
        return F._mul(a, c) * self.q + second

    def decode(self, x):
        return divmod(int(x), self.q)

    def encode(self, obj):
        a, b = obj
        return int(a) * self.q + int(b)

    def describe(self):
        return f"corbas:{self.p},{self.k},{self.s}"


def corbas_pow_closed_form(R: CorbasRing, a: int, b: int, n: int) -> int:
    """(a, b)^n from the closed-form power formulas of a Corbas ring.

    Identity automorphism: (a^n, n a^(n-1) b). Otherwise, for a != 0, the
    geometric form when a phi(a^-1) != 1, else the summation
    b phi(a^(n-1)) sum_j a^j phi(a^-j). For a == 0 the power is (0, b) at
    n = 1 and 0 afterwards.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    F, phi = R.F, R.phi
    first = int(F.power(a, n))
    if a == 0:
        return R.encode((0, b if n == 1 else 0))
    if R.s == 0:
        second = F.times(n, F._mul(F.power(a, n - 1), b))
        return R.encode((first, int(second)))
    lead = F._mul(b, phi(F.power(a, n - 1)))
    ratio = F._mul(a, phi(F.inv(a)))
    if int(ratio) != 1:
        num = F._add(F._mul(F.power(a, n), phi(F.power(a, -n))), F._neg(1))
        den = F._add(ratio, F._neg(1))
        second = F._mul(lead, F._mul(num, F.inv(den)))
    else:
        total = 0
        for j in range(n):
            total = F._add(total, F._mul(F.power(a, j), phi(F.power(a, -j))))
        second = F._mul(lead, total)
    return R.encode((first, int(second)))


def corbas_pow_summation(R: CorbasRing, a: int, b: int, n: int) -> int:
    """(a, b)^n from the general summation form, valid for a != 0."""
    F, phi = R.F, R.phi
    if a == 0:
        raise ValueError("summation form needs a != 0")
    total = 0
    for j in range(n):
        total = F._add(total, F._mul(F.power(a, j), phi(F.power(a, -j))))
    second = F._mul(F._mul(b, phi(F.power(a, n - 1))), total)
    return R.encode((int(F.power(a, n)), int(second)))


class MatrixRing(FiniteRing):
    family = "mat"

    def __init__(self, p: int, k: int, n: int):
        super().__init__()
        self.F = GaloisField(p, k)
        self.p, self.k, self.n = p, k, n
        self.q = self.F.q
        self.size = self.q ** (n * n)
        self.params = (p, k, n)
        self._weights = self.q ** np.arange(n * n - 1, -1, -1, dtype=np.int64)
        self.unity = self.encode(np.eye(n, dtype=np.int64))
        self.commutative_hint = n == 1

    def to_matrix(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=np.int64)
        flat = (x[..., None] // self._weights) % self.q
        return flat.reshape(x.shape + (self.n, self.n))

    def from_matrix(self, M) -> np.ndarray:
        M = np.asarray(M, dtype=np.int64)
        return (M.reshape(M.shape[:-2] + (self.n * self.n,)) * self._weights).sum(axis=-1)

    def _entrywise(self, op, x, y):
        return self.from_matrix(op(self.to_matrix(x), self.to_matrix(y)))

    def _add(self, x, y):
        return self._entrywise(self.F._add, x, y)

    def _neg(self, x):
        return self.from_matrix(self.F._neg(self.to_matrix(x)))

    def _mul(self, x, y):
        F, n = self.F, self.n
        A, B = np.broadcast_arrays(self.to_matrix(x), self.to_matrix(y))
        C = np.zeros_like(A)
        for j in range(n):
            acc = F._mul(A[..., :, 0], B[..., 0, j, None])
            for t in range(1, n):
                acc = F._add(acc, F._mul(A[..., :, t], B[..., t, j, None]))
            C[..., :, j] = acc
        return self.from_matrix(C)

    def decode(self, x):
        return self.to_matrix(int(x))

    def encode(self, obj):
        return int(self.from_matrix(obj))

    def describe(self):
        return f"mat:{self.p}^{self.k},{self.n}"


class BellKleinRing(FiniteRing):
    """Klein four-group {0, a, b, c} with 0x = cx = 0 and ax = bx = x."""

    family = "bell"
    names = ("0", "a", "b", "c")
    commutative_hint = False

    def __init__(self):
        super().__init__()
        self.size = 4
        self.params = ()

    def _add(self, x, y):
        return np.bitwise_xor(x, y)

    def _neg(self, x):
        return np.asarray(x)

    def _mul(self, x, y):
        x, y = np.broadcast_arrays(np.asarray(x), np.asarray(y))
        return np.where((x == 1) | (x == 2), y, 0)

    def decode(self, x):
        return self.names[int(x)]

    def encode(self, obj):
        return self.names.index(obj)

    def describe(self):
        return "bell"


class NilZeroRing(FiniteRing):
    """Z/m_1 + ... + Z/m_r with the zero multiplication."""

    family = "nilzero"
    commutative_hint = True

    def __init__(self, orders):
        super().__init__()
        self.orders = tuple(int(m) for m in orders)
        if not self.orders or any(m < 1 for m in self.orders):
            raise ValueError("orders must be positive")
        self.params = self.orders
        self.size = int(np.prod(self.orders))
        radix = [1]
        for m in reversed(self.orders[1:]):
            radix.append(radix[-1] * m)
        self._radix = np.array(radix[::-1], dtype=np.int64)
        self._mods = np.array(self.orders, dtype=np.int64)

    def _comp(self, x):
        return (np.asarray(x)[..., None] // self._radix) % self._mods

    def _join(self, c):
        return (c * self._radix).sum(axis=-1)

    def _add(self, x, y):
        return self._join((self._comp(x) + self._comp(y)) % self._mods)

    def _neg(self, x):
        return self._join((-self._comp(x)) % self._mods)

    def _mul(self, x, y):
        return np.zeros(np.broadcast_shapes(np.shape(x), np.shape(y)), dtype=np.int64)

    def decode(self, x):
        return tuple(int(c) for c in self._comp(int(x)))

    def encode(self, obj):
        return int(self._join(np.asarray(obj, dtype=np.int64) % self._mods))

    def describe(self):
        return "nilzero:" + ",".join(map(str, self.orders))


def make_zmod(n: int, max_size: int | None = None) -> ZMod:
    if n < 1:
        raise ValueError("need n >= 1")
    check_size(n, max_size)
    return ZMod(n)


def make_galois_field(p: int, k: int, modulus=None, max_size: int | None = None) -> GaloisField:
    _require_prime(p)
    if k < 1:
        raise ValueError("need k >= 1")
    check_size(p**k, max_size)
    return GaloisField(p, k, modulus)


def make_galois_ring(p: int, k: int, d: int, max_size: int | None = None) -> GaloisRing:
    _require_prime(p)
    if k < 1 or d < 1:
        raise ValueError("need k >= 1 and d >= 1")
    check_size(p ** (k * d), max_size)
    return GaloisRing(p, k, d)


def make_corbas(p: int, k: int, s: int, max_size: int | None = None) -> CorbasRing:
    _require_prime(p)
    if k < 1:
        raise ValueError("need k >= 1")
    if not 0 <= s < k:
        raise ValueError(f"Frobenius exponent s={s} outside [0, {k})")
    check_size(p ** (2 * k), max_size)
    return CorbasRing(p, k, s)


def make_matrix_ring(p: int, k: int, n: int, max_size: int | None = None) -> MatrixRing:
    _require_prime(p)
    if k < 1 or n < 1:
        raise ValueError("need k >= 1 and n >= 1")
    check_size(p ** (k * n * n), max_size)
    return MatrixRing(p, k, n)


def make_bell_klein() -> BellKleinRing:
    return BellKleinRing()


def make_nil_zero(orders, max_size: int | None = None) -> NilZeroRing:
    orders = tuple(int(m) for m in orders)
    check_size(int(np.prod(orders)) if orders else 0, max_size)
    return NilZeroRing(orders)


def make_product(R1: FiniteRing, R2: FiniteRing, max_size: int | None = None):
    return direct_product(R1, R2, max_size)
