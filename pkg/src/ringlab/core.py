"""Abstract finite rings with vectorized exact arithmetic.

Elements are plain integer ids in ``[0, size)``; id 0 is always the zero
element. Every family implements ``_add``, ``_neg`` and ``_mul`` on
int64 numpy arrays (broadcasting like numpy ufuncs). The public ``add``,
``neg`` and ``mul`` go through precomputed operation tables when they
have been built, and accept Python ints as well as arrays.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

import numpy as np

DEFAULT_TABLE_CAP = 4096
DEFAULT_MAX_SIZE = 65536
EXHAUSTIVE_LAW_CAP = 256


class RingSizeError(ValueError):
    """Requested ring is larger than the configured size cap."""


class RingLawError(AssertionError):
    """A ring axiom failed on some tuple of elements."""


def check_size(size: int, max_size: int | None) -> None:
    cap = DEFAULT_MAX_SIZE if max_size is None else max_size
    if size > cap:
        raise RingSizeError(f"ring of size {size} exceeds size cap {cap}")


def _wrap(res, *args):
    if all(np.ndim(a) == 0 for a in args):
        return int(res)
    return res


@dataclass(frozen=True)
class OpTables:
    add_table: np.ndarray
    mul_table: np.ndarray
    size: int

    @classmethod
    def from_ring(cls, ring: "FiniteRing", chunk: int = 1 << 20) -> "OpTables":
        n = ring.size
        add = np.empty(n * n, dtype=np.int64)
        mul = np.empty(n * n, dtype=np.int64)
        rows = max(1, chunk // n)
        ids = ring.elements()
        for start in range(0, n, rows):
            a = ids[start:start + rows, None]
            sl = slice(start * n, min(n, start + rows) * n)
            add[sl] = ring._add(a, ids[None, :]).ravel()
            mul[sl] = ring._mul(a, ids[None, :]).ravel()
        add.flags.writeable = False
        mul.flags.writeable = False
        return cls(add, mul, n)


class FiniteRing:
    """Base class for finite rings.

    Subclasses set ``size``, ``family`` and ``params`` and implement the
    three vectorized primitives. ``unity`` is an element id or None.
    """

    family: str = "abstract"
    size: int
    unity: int | None = None
    # structural hint used only when exhaustive checks are too costly
    commutative_hint: bool | None = None

    def __init__(self):
        self._tables: OpTables | None = None

    # -- primitives -----------------------------------------------------
    def _add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _neg(self, a: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def decode(self, x: int):
        raise NotImplementedError

    def encode(self, obj) -> int:
        raise NotImplementedError

    # -- public arithmetic ------------------------------------------------
    @property
    def has_unity(self) -> bool:
        return self.unity is not None

    @property
    def zero(self) -> int:
        return 0

    @property
    def tables(self) -> OpTables | None:
        return self._tables

    def build_tables(self, table_cap: int = DEFAULT_TABLE_CAP) -> OpTables | None:
        """Precompute add/mul tables when ``size <= table_cap``."""
        if self._tables is None and self.size <= table_cap:
            self._tables = OpTables.from_ring(self)
        return self._tables

    def elements(self) -> np.ndarray:
        return np.arange(self.size, dtype=np.int64)

    def add(self, a, b):
        a_, b_ = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self._tables is not None:
            res = self._tables.add_table[a_ * self.size + b_]
        else:
            res = self._add(a_, b_)
        return _wrap(res, a, b)

    def mul(self, a, b):
        a_, b_ = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self._tables is not None:
            res = self._tables.mul_table[a_ * self.size + b_]
        else:
            res = self._mul(a_, b_)
        return _wrap(res, a, b)

    def neg(self, a):
        return _wrap(self._neg(np.asarray(a, dtype=np.int64)), a)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def describe(self) -> str:
        return f"{self.family}{self.params}"

    def __repr__(self):
        return f"<{type(self).__name__} {self.describe()} size={self.size}>"

    def __len__(self):
        return self.size


def _binary_power(mul, base, n: int):
    if n < 1:
        raise ValueError("x^0 is undefined in a ring without unity; need n >= 1")
    result = None
    while True:
        if n & 1:
            result = base if result is None else mul(result, base)
        n >>= 1
        if not n:
            return result
        base = mul(base, base)


def elem_pow(R: FiniteRing, x, n: int):
    """x^n by square-and-multiply; ``x`` may be an id or an array of ids."""
    return _binary_power(R.mul, x, int(n))


def power_map(R: FiniteRing, n: int, use_tables: bool = True) -> np.ndarray:
    """Function table of x -> x^n, indexed by element id."""
    mul = R.mul if use_tables else R._mul
    return np.asarray(_binary_power(mul, R.elements(), int(n)), dtype=np.int64)


def table_key(table: np.ndarray) -> bytes:
    return np.ascontiguousarray(table, dtype=np.int64).tobytes()


def additive_orders(R: FiniteRing) -> np.ndarray:
    ids = R.elements()
    orders = np.ones(R.size, dtype=np.int64)
    acc = ids.copy()
    live = acc != 0
    j = 1
    while live.any():
        j += 1
        orders[live] = j
        acc[live] = R.add(acc[live], ids[live])
        live &= acc != 0
    return orders


def additive_order(R: FiniteRing, x: int) -> int:
    acc, j = x, 1
    while acc != 0:
        acc = R.add(acc, x)
        j += 1
    return j


def characteristic(R: FiniteRing) -> int:
    """Exponent of the additive group (lcm of additive orders)."""
    return lcm(*(int(o) for o in np.unique(additive_orders(R))))


def is_commutative(R: FiniteRing, table_cap: int = DEFAULT_TABLE_CAP) -> bool:
    if R.size > table_cap and R.commutative_hint is not None:
        return R.commutative_hint
    ids = R.elements()
    for start in range(0, R.size, 256):
        a = ids[start:start + 256, None]
        if not np.array_equal(R.mul(a, ids[None, :]), R.mul(ids[None, :], a)):
            return False
    return True


def _law_triples(R: FiniteRing, exhaustive_cap: int, samples: int, seed: int):
    ids = R.elements()
    if R.size <= exhaustive_cap:
        for x in ids:
            yield np.int64(x), ids[:, None], ids[None, :]
    else:
        rng = np.random.default_rng(seed)
        t = rng.integers(0, R.size, size=(3, samples), dtype=np.int64)
        yield t[0], t[1], t[2]


def check_ring_laws(
    R: FiniteRing,
    exhaustive_cap: int = EXHAUSTIVE_LAW_CAP,
    samples: int = 10_000,
    seed: int = 0,
) -> None:
    """Raise RingLawError unless the ring axioms hold.

    Exhaustive over all triples for ``size <= exhaustive_cap``, otherwise
    over ``samples`` random triples drawn with a fixed seed.
    """
    ids = R.elements()
    if R.size <= exhaustive_cap:
        pairs = (ids[:, None], ids[None, :])
    else:
        rng = np.random.default_rng(seed)
        pairs = tuple(rng.integers(0, R.size, size=(2, samples), dtype=np.int64))
    a, b = pairs
    if not np.array_equal(R.add(a, b), R.add(b, a)):
        raise RingLawError("addition is not commutative")
    if not np.array_equal(R.add(ids, 0), ids):
        raise RingLawError("0 is not an additive identity")
    if np.any(R.add(ids, R.neg(ids)) != 0):
        raise RingLawError("negation is not an additive inverse")
    if R.has_unity:
        u = R.unity
        if not (np.array_equal(R.mul(u, ids), ids) and np.array_equal(R.mul(ids, u), ids)):
            raise RingLawError("unity is not a two-sided identity")
    for x, y, z in _law_triples(R, exhaustive_cap, samples, seed):
        if not np.array_equal(R.add(R.add(x, y), z), R.add(x, R.add(y, z))):
            raise RingLawError("addition is not associative")
        if not np.array_equal(R.mul(R.mul(x, y), z), R.mul(x, R.mul(y, z))):
            raise RingLawError("multiplication is not associative")
        if not np.array_equal(R.mul(x, R.add(y, z)), R.add(R.mul(x, y), R.mul(x, z))):
            raise RingLawError("left distributivity fails")
        if not np.array_equal(R.mul(R.add(y, z), x), R.add(R.mul(y, x), R.mul(z, x))):
            raise RingLawError("right distributivity fails")


class ProductRing(FiniteRing):
    """Direct product with componentwise operations; id = i1 * |R2| + i2."""

    family = "prod"

    def __init__(self, R1: FiniteRing, R2: FiniteRing):
        super().__init__()
        self.R1, self.R2 = R1, R2
        self.size = R1.size * R2.size
        self.params = (R1.describe(), R2.describe())
        if R1.has_unity and R2.has_unity:
            self.unity = R1.unity * R2.size + R2.unity
        hints = (R1.commutative_hint, R2.commutative_hint)
        self.commutative_hint = None if None in hints else all(hints)

    def _split(self, a):
        return np.divmod(a, self.R2.size)

    def _join(self, a1, a2):
        return a1 * self.R2.size + a2

    def _add(self, a, b):
        (a1, a2), (b1, b2) = self._split(a), self._split(b)
        return self._join(self.R1.add(a1, b1), self.R2.add(a2, b2))

    def _neg(self, a):
        a1, a2 = self._split(a)
        return self._join(self.R1.neg(a1), self.R2.neg(a2))

    def _mul(self, a, b):
        (a1, a2), (b1, b2) = self._split(a), self._split(b)
        return self._join(self.R1.mul(a1, b1), self.R2.mul(a2, b2))

    def decode(self, x):
        x1, x2 = divmod(int(x), self.R2.size)
        return self.R1.decode(x1), self.R2.decode(x2)

    def encode(self, obj):
        return self.R1.encode(obj[0]) * self.R2.size + self.R2.encode(obj[1])

    def describe(self):
        return f"prod({self.R1.describe()},{self.R2.describe()})"


def direct_product(R1: FiniteRing, R2: FiniteRing, max_size: int | None = None) -> ProductRing:
    check_size(R1.size * R2.size, max_size)
    return ProductRing(R1, R2)
