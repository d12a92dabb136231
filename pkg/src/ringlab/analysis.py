"""Power-map dynamics and structural predicates of finite rings.

Lemma used throughout: once every cycle length divides mu1,
x^(m + mu1) = x^m holds exactly when m >= tail(x). Hence
mu0 = max tail(x) and mu1 = lcm cycle(x). The first repetition in the
sequence of power-map tables f_1, f_2, ... occurs at f_(mu0 + mu1) = f_mu0,
and all of f_1 .. f_(mu0 + mu1 - 1) are pairwise distinct.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial, lcm

import numpy as np

from .core import (
    FiniteRing,
    additive_order,
    additive_orders,
    elem_pow,
    is_commutative,
    power_map,
)
from .numtheory import divisors

DEFAULT_MU1_BOUND = 10**6


class Mu1TooLarge(RuntimeError):
    """The power-map sequence did not repeat within the configured bound."""


@dataclass(frozen=True)
class OrbitInfo:
    tail: int
    cycle: int


@dataclass
class MuProfile:
    mu0: int
    mu1: int
    distinct_maps: int
    periodic_exponents: tuple[int, ...] = ()
    period_subgroups: dict[int, tuple[int, ...]] = field(default_factory=dict)

    @property
    def muP(self) -> int:
        return len(self.periodic_exponents)

    @property
    def window(self) -> int:
        return self.mu0 + self.mu1 - 1

    def to_dict(self) -> dict:
        return {
            "mu0": self.mu0,
            "mu1": self.mu1,
            "muP": self.muP,
            "distinct_maps": self.distinct_maps,
            "periodic_exponents": list(self.periodic_exponents),
            "period_subgroups": {str(n): list(g) for n, g in self.period_subgroups.items()},
        }

    @classmethod
    def from_dict(cls, d: dict) -> "MuProfile":
        return cls(
            mu0=d["mu0"],
            mu1=d["mu1"],
            distinct_maps=d["distinct_maps"],
            periodic_exponents=tuple(d["periodic_exponents"]),
            period_subgroups={int(n): tuple(g) for n, g in d["period_subgroups"].items()},
        )


def orbit(R: FiniteRing, x: int) -> OrbitInfo:
    """Tail and cycle length of x, x^2, x^3, ... by hashing visited powers."""
    seen = {}
    cur, m = int(x), 1
    while cur not in seen:
        seen[cur] = m
        cur = R.mul(cur, x)
        m += 1
    first = seen[cur]
    return OrbitInfo(tail=first, cycle=m - first)


def scan_power_maps(R: FiniteRing, mu1_bound: int = DEFAULT_MU1_BOUND) -> tuple[int, int, int]:
    """Iterate f_n until the first repeated table; return (mu0, mu1, distinct).

    Only a weighted-sum fingerprint of each table is kept; a hash hit is confirmed by
    recomputing the earlier table, so collisions cannot cause a false stop.
    """
    ids = R.elements()
    weights = np.random.default_rng(0).integers(1, 2**62, size=R.size, dtype=np.int64)
    mul = R.mul if R._tables is not None else R._mul  # arrays only: skip the scalar wrapper
    seen: dict[int, list[int]] = {}
    table, n = ids, 1
    while True:
        h = int(np.dot(table, weights))
        for first in seen.get(h, ()):
            if np.array_equal(power_map(R, first), table):
                return first, n - first, n - 1
        seen.setdefault(h, []).append(n)
        if n - 1 > mu1_bound:
            raise Mu1TooLarge(f"no repetition among the first {n} power maps of {R.describe()}")
        table = mul(table, ids)
        n += 1


def orbits(R: FiniteRing, mu0: int, mu1: int) -> tuple[np.ndarray, np.ndarray]:
    """Per-element tails and cycles, given the ring's (mu0, mu1)."""
    tails = np.zeros(R.size, dtype=np.int64)
    for m in range(1, mu0 + 1):
        hit = (tails == 0) & (power_map(R, m) == power_map(R, m + mu1))
        tails[hit] = m
    cycles = np.zeros(R.size, dtype=np.int64)
    base = power_map(R, mu0)
    for c in divisors(mu1):
        hit = (cycles == 0) & (power_map(R, mu0 + c) == base)
        cycles[hit] = c
    if (tails == 0).any() or (cycles == 0).any():
        raise AssertionError("tail/cycle search did not cover every element")
    return tails, cycles


def _sample_points(n: int, size: int) -> np.ndarray:
    if n <= size:
        return np.arange(n, dtype=np.int64)
    return np.unique(np.linspace(0, n - 1, size).astype(np.int64))


def _is_period(R: FiniteRing, table: np.ndarray, r: int) -> bool:
    return bool(np.array_equal(table[R.add(R.elements(), r)], table))


def periods_of(
    R: FiniteRing,
    n: int,
    table: np.ndarray | None = None,
    sample_size: int = 64,
    verify: bool = False,
) -> np.ndarray:
    """Per(f_n) together with 0: all r with (x + r)^n = x^n for every x.

    Candidates are restricted to r^n = 0. A cheap screen on a fixed sample
    of x discards most candidates; survivors get a full sweep. Since the
    periods form an additive subgroup, confirmed periods are closed up
    and their multiples skip the sweep. ``verify`` re-checks every member
    and the subgroup laws directly.
    """
    P = power_map(R, n) if table is None else table
    in_group = np.zeros(R.size, dtype=bool)
    in_group[0] = True
    cand = np.flatnonzero(P == P[0])
    cand = cand[cand != 0]
    if cand.size:
        xs = _sample_points(R.size, sample_size)
        rows = max(1, (1 << 20) // xs.size)
        keep = []
        for start in range(0, cand.size, rows):
            block = cand[start:start + rows]
            shifted = P[R.add(block[:, None], xs[None, :])]
            keep.append(block[(shifted == P[xs][None, :]).all(axis=1)])
        for r in np.concatenate(keep):
            r = int(r)
            if in_group[r] or not _is_period(R, P, r):
                continue
            coset = np.flatnonzero(in_group)
            while True:
                coset = R.add(coset, r)
                if in_group[coset[0]]:
                    break
                in_group[coset] = True
    group = np.flatnonzero(in_group)
    if verify:
        _verify_period_group(R, P, group)
    return group


def _verify_period_group(R: FiniteRing, P: np.ndarray, group: np.ndarray) -> None:
    mask = np.zeros(R.size, dtype=bool)
    mask[group] = True
    for r in group:
        if not _is_period(R, P, int(r)):
            raise AssertionError(f"{int(r)} is not a period")
    if not mask[R.neg(group)].all():
        raise AssertionError("period set not closed under negation")
    if not mask[R.add(group[:, None], group[None, :])].all():
        raise AssertionError("period set not closed under addition")


def mu_profile(
    R: FiniteRing,
    mu1_bound: int = DEFAULT_MU1_BOUND,
    periods: bool = True,
    verify: bool = False,
) -> MuProfile:
    """Measure (mu0, mu1), the distinct power maps and, optionally, every
    period subgroup in the window n = 1 .. mu0 + mu1 - 1.
    """
    mu0, mu1, distinct = scan_power_maps(R, mu1_bound)
    tails, cycles = orbits(R, mu0, mu1)
    if int(tails.max()) != mu0 or lcm(*map(int, np.unique(cycles))) != mu1:
        raise AssertionError("orbit statistics disagree with the power-map scan")
    if R.size > 1 and distinct != mu0 + mu1 - 1:
        raise AssertionError("distinct power maps != mu0 + mu1 - 1")
    if not np.array_equal(power_map(R, mu0), power_map(R, mu0 + mu1)):
        raise AssertionError("f_mu0 != f_(mu0 + mu1)")
    profile = MuProfile(mu0, mu1, distinct)
    if not periods:
        return profile
    ids = R.elements()
    table = ids
    exps, groups = [], {}
    for n in range(1, mu0 + mu1):
        if n > 1:
            table = R.mul(table, ids)
        group = periods_of(R, n, table=table, verify=verify)
        if group.size > 1:
            exps.append(n)
            groups[n] = tuple(int(g) for g in group)
    profile.periodic_exponents = tuple(exps)
    profile.period_subgroups = groups
    return profile


def nilpotents(R: FiniteRing, mu0: int | None = None) -> np.ndarray:
    if mu0 is None:
        mu0 = scan_power_maps(R)[0]
    return np.flatnonzero(power_map(R, mu0) == 0)


def potents(R: FiniteRing, mu0: int | None = None, mu1: int | None = None) -> np.ndarray:
    if mu0 is None or mu1 is None:
        mu0, mu1, _ = scan_power_maps(R)
    tails, _ = orbits(R, mu0, mu1)
    return np.flatnonzero(tails == 1)


def nil_index(R: FiniteRing) -> int:
    mu0, mu1, _ = scan_power_maps(R)
    tails, _ = orbits(R, mu0, mu1)
    return int(tails[nilpotents(R, mu0)].max())


@dataclass
class StructuralFlags:
    commutative: bool
    unital: bool
    nil_central: bool
    nil_torsion_bounded: bool
    nil_set: tuple[int, ...]
    pot_set: tuple[int, ...]
    nil_index: int
    nil_order_lcm: int
    weakly_periodic: bool
    j_ring: bool
    nilperiod: bool
    ni_ring: bool

    def to_dict(self) -> dict:
        d = dict(self.__dict__)
        d["nil_set"] = list(self.nil_set)
        d["pot_set"] = list(self.pot_set)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "StructuralFlags":
        d = dict(d)
        d["nil_set"] = tuple(d["nil_set"])
        d["pot_set"] = tuple(d["pot_set"])
        return cls(**d)


def _chunks(arr: np.ndarray, width: int, budget: int = 1 << 20):
    rows = max(1, budget // max(width, 1))
    for start in range(0, arr.size, rows):
        yield arr[start:start + rows]


def structural_flags(R: FiniteRing, profile: MuProfile | None = None) -> StructuralFlags:
    if profile is None:
        profile = mu_profile(R)
    ids = R.elements()
    tails, _ = orbits(R, profile.mu0, profile.mu1)
    nil = np.flatnonzero(power_map(R, profile.mu0) == 0)
    pot = np.flatnonzero(tails == 1)
    nil_mask = np.zeros(R.size, dtype=bool)
    nil_mask[nil] = True
    pot_mask = np.zeros(R.size, dtype=bool)
    pot_mask[pot] = True

    nil_central = all(
        np.array_equal(R.mul(blk[:, None], ids[None, :]), R.mul(ids[None, :], blk[:, None]))
        for blk in _chunks(nil, R.size)
    )
    ni_ring = all(
        nil_mask[R.add(blk[:, None], nil[None, :])].all()
        for blk in _chunks(nil, nil.size)
    ) and all(
        nil_mask[R.mul(blk[:, None], ids[None, :])].all()
        and nil_mask[R.mul(ids[None, :], blk[:, None])].all()
        for blk in _chunks(nil, R.size)
    )
    covered = np.zeros(R.size, dtype=bool)
    for blk in _chunks(nil, R.size):
        covered |= pot_mask[R.sub(ids[None, :], blk[:, None])].any(axis=0)

    periodic_members = set()
    for n, group in profile.period_subgroups.items():
        if n >= 2:
            periodic_members.update(group)
    nilperiod = all(int(r) in periodic_members for r in nil if r != 0)

    orders = additive_orders(R)[nil]
    return StructuralFlags(
        commutative=is_commutative(R),
        unital=R.has_unity,
        nil_central=nil_central,
        nil_torsion_bounded=True,  # every element of a finite ring has finite order
        nil_set=tuple(int(x) for x in nil),
        pot_set=tuple(int(x) for x in pot),
        nil_index=int(tails[nil].max()),
        nil_order_lcm=lcm(*map(int, orders)),
        weakly_periodic=bool(covered.all()),
        j_ring=bool(pot_mask.all()),
        nilperiod=nilperiod,
        ni_ring=bool(ni_ring),
    )


class NotCentralError(ValueError):
    pass


def nilpotent_period_exponent(R: FiniteRing, r: int) -> int:
    """n = (i - 1)! * j for a central nilpotent r of index i and additive order j.

    Every such r is a period of x -> x^n.
    """
    ids = R.elements()
    if not np.array_equal(R.mul(r, ids), R.mul(ids, r)):
        raise NotCentralError(f"{r} is not central")
    index, cur = 1, r
    while cur != 0:
        cur = R.mul(cur, r)
        index += 1
        if index > R.size + 1:
            raise ValueError(f"{r} is not nilpotent")
    return factorial(index - 1) * additive_order(R, r)


def is_period(R: FiniteRing, r: int, n: int) -> bool:
    """(x + r)^n == x^n for every x, with big exponents by square-and-multiply."""
    ids = R.elements()
    return bool(np.array_equal(elem_pow(R, R.add(ids, r), n), elem_pow(R, ids, n)))


def quasiperiodic_check(R: FiniteRing, c: int, window: int | None = None) -> bool:
    """(x + c)^n == x^n + c for all x outside {0, c} and n in the power-map window."""
    if c == 0:
        return True
    if window is None:
        mu0, mu1, _ = scan_power_maps(R)
        window = mu0 + mu1 - 1
    ids = R.elements()
    xs = ids[(ids != 0) & (ids != c)]
    shifted = R.add(xs, c)
    lhs, rhs = shifted, xs
    for n in range(1, window + 1):
        if n > 1:
            lhs, rhs = R.mul(lhs, shifted), R.mul(rhs, xs)
        if not np.array_equal(lhs, R.add(rhs, c)):
            return False
    return True
