from math import gcd, lcm

import numpy as np
import pytest

from ringlab.analysis import (
    Mu1TooLarge,
    MuProfile,
    NotCentralError,
    StructuralFlags,
    is_period,
    mu_profile,
    nil_index,
    nilpotent_period_exponent,
    nilpotents,
    orbit,
    orbits,
    periods_of,
    potents,
    quasiperiodic_check,
    structural_flags,
)
from ringlab.constructions import make_galois_field, make_zmod
from ringlab.core import additive_orders, is_commutative, power_map

from conftest import build

SPECS = ["zmod:8", "zmod:12", "zmod:36", "gr:2^2,2", "corbas:2,2,0", "corbas:2,2,1", "corbas:3,1,0",
         "mat:2^1,2", "bell", "nilzero:2,2", "prod(gf:2^2,nilzero:3)", "prod(zmod:4,bell)",
         "prod(corbas:2,1,0,zmod:3)"]


def brute_orbit(R, x):
    """Tail and cycle from the explicit list of powers."""
    seq = [x]
    while True:
        nxt = R.mul(seq[-1], x)
        if nxt in seq:
            tail = seq.index(nxt) + 1
            return tail, len(seq) + 1 - tail
        seq.append(nxt)


def test_orbit_examples():
    Z8 = make_zmod(8)
    assert (orbit(Z8, 2).tail, orbit(Z8, 2).cycle) == (3, 1)
    assert (orbit(Z8, 3).tail, orbit(Z8, 3).cycle) == (1, 2)
    F4 = make_galois_field(2, 2)
    g = orbit(F4, F4.generator)
    assert (g.tail, g.cycle) == (1, 3)


@pytest.mark.parametrize("spec", SPECS)
def test_orbits_match_brute_force(spec):
    R = build(spec)
    prof = mu_profile(R, periods=False)
    tails, cycles = orbits(R, prof.mu0, prof.mu1)
    for x in range(R.size):
        want = brute_orbit(R, x)
        assert (int(tails[x]), int(cycles[x])) == want
        o = orbit(R, x)
        assert (o.tail, o.cycle) == want
        assert o.tail + o.cycle <= R.size + 1
    assert prof.mu0 == tails.max()
    assert prof.mu1 == lcm(*map(int, cycles))


@pytest.mark.parametrize("spec", SPECS)
def test_power_maps_distinct_in_window_then_repeat(spec):
    R = build(spec)
    prof = mu_profile(R, periods=False)
    tables = {power_map(R, n).tobytes() for n in range(1, prof.mu0 + prof.mu1)}
    assert len(tables) == prof.mu0 + prof.mu1 - 1 == prof.distinct_maps
    assert np.array_equal(power_map(R, prof.mu0), power_map(R, prof.mu0 + prof.mu1))
    if prof.mu0 > 1:
        assert not np.array_equal(power_map(R, prof.mu0 - 1), power_map(R, prof.mu0 - 1 + prof.mu1))


@pytest.mark.parametrize("spec,mu0,mu1,distinct,muP", [
    ("zmod:9", 2, 6, 7, 2),
    ("zmod:8", 3, 2, 4, 2),
    ("nilzero:2,2", 2, 1, 2, 1),  # x^2 is the zero map, so every r is a period
    ("zmod:1", 1, 1, 1, 0),
    ("bell", 2, 1, 2, 0),
])
def test_profile_examples(spec, mu0, mu1, distinct, muP):
    prof = mu_profile(build(spec))
    assert (prof.mu0, prof.mu1, prof.distinct_maps, prof.muP) == (mu0, mu1, distinct, muP)


def test_zmod8_periodic_exponents():
    assert mu_profile(build("zmod:8")).periodic_exponents == (2, 4)


def brute_periods(R, n):
    f = power_map(R, n)
    ids = R.elements()
    return [r for r in range(R.size) if np.array_equal(f[R.add(ids, r)], f)]


@pytest.mark.parametrize("spec", SPECS + ["gr:2^3,2", "prod(zmod:6,nilzero:4)", "gr:3^2,2"])
def test_periods_match_full_sweep(spec):
    R = build(spec)
    prof = mu_profile(R, verify=True)
    for n in range(1, prof.mu0 + prof.mu1):
        group = periods_of(R, n).tolist()
        assert group == brute_periods(R, n)
        want = tuple(group) if len(group) > 1 else None
        assert prof.period_subgroups.get(n) == want


@pytest.mark.parametrize("spec", SPECS)
def test_period_groups_are_subgroups_of_nil(spec):
    R = build(spec)
    prof = mu_profile(R)
    nil = set(nilpotents(R).tolist())
    for n, group in prof.period_subgroups.items():
        g = np.array(group)
        assert 0 in group
        assert set(R.add(g[:, None], g[None, :]).ravel().tolist()) <= set(group)
        assert set(R.neg(g).tolist()) <= set(group)
        assert all(power_map(R, n)[r] == 0 for r in group)
        assert set(group) <= nil
    assert prof.muP == len(prof.periodic_exponents)


def test_periods_examples():
    assert periods_of(build("zmod:12"), 2).tolist() == [0, 6]
    for spec in SPECS:
        assert periods_of(build(spec), 1).tolist() == [0]


def test_sampled_screen_cannot_drop_periods():
    # a one-point screen still finds every period after the full sweep
    R = build("gr:2^3,2")
    for n in range(1, 15):
        assert periods_of(R, n, sample_size=1).tolist() == brute_periods(R, n)


def test_nil_and_pot_examples():
    Z12 = build("zmod:12")
    assert nilpotents(Z12).tolist() == [0, 6]
    assert nil_index(Z12) == 2
    B = build("bell")
    assert nilpotents(B).tolist() == [0, 3]
    assert potents(B).tolist() == [0, 1, 2]
    assert len(nilpotents(build("mat:2^1,2"))) == 4
    assert nil_index(build("zmod:16")) == 4


def brute_weakly_periodic(R, nil, pot):
    sums = {R.add(a, b) for a in nil for b in pot}
    return sums == set(range(R.size))


@pytest.mark.parametrize("spec", SPECS)
def test_flag_invariants(spec):
    R = build(spec)
    f = structural_flags(R)
    assert set(f.nil_set) & set(f.pot_set) == {0}
    assert f.j_ring == (len(f.pot_set) == R.size)
    assert f.weakly_periodic == brute_weakly_periodic(R, f.nil_set, f.pot_set)
    assert f.commutative == is_commutative(R)
    nil = set(f.nil_set)
    closed = all(R.add(a, b) in nil for a in nil for b in nil)
    ideal = all(R.mul(a, x) in nil and R.mul(x, a) in nil for a in nil for x in range(R.size))
    assert f.ni_ring == (closed and ideal)
    orders = additive_orders(R)
    assert f.nil_order_lcm == lcm(*(int(orders[r]) for r in f.nil_set))


@pytest.mark.parametrize("n", range(2, 65))
def test_zmod_flags(n):
    f = structural_flags(build(f"zmod:{n}"))
    assert f.weakly_periodic and f.ni_ring and f.nil_central
    # every nonzero nilpotent is a period of some power map; vacuous when Z/n is reduced
    assert f.nilperiod


def test_bell_flags():
    f = structural_flags(build("bell"))
    assert f.nil_set == (0, 3)
    assert {1, 2} <= set(f.pot_set)
    assert f.weakly_periodic and not f.nilperiod and f.ni_ring
    assert not f.unital and not f.commutative


def test_twisted_corbas_flags():
    # measured: x^6 has Nil = 0 x F_4 as its period group, so the ring is nilperiod
    f = structural_flags(build("corbas:2,2,1"))
    assert f.ni_ring and f.nilperiod and not f.commutative and not f.nil_central


def test_flags_round_trip():
    f = structural_flags(build("zmod:12"))
    assert StructuralFlags.from_dict(f.to_dict()) == f
    p = mu_profile(build("zmod:12"))
    assert MuProfile.from_dict(p.to_dict()) == p


def test_nilpotent_period_exponent_examples():
    Z8 = build("zmod:8")
    assert nilpotent_period_exponent(Z8, 4) == 2
    assert nilpotent_period_exponent(Z8, 2) == 8
    assert nilpotent_period_exponent(Z8, 0) == 1
    for r, n in ((4, 2), (2, 8)):
        assert all((x + r) ** n % 8 == x**n % 8 for x in range(8))
    with pytest.raises(NotCentralError):
        nilpotent_period_exponent(build("bell"), 3)
    with pytest.raises(ValueError):
        nilpotent_period_exponent(Z8, 3)


@pytest.mark.parametrize("spec", ["zmod:32", "zmod:72", "gr:2^3,2", "nilzero:4,2", "prod(zmod:9,nilzero:3)", "gr:3^2,2"])
def test_constructed_exponent_is_a_period(spec):
    R = build(spec)
    for r in nilpotents(R):
        n = nilpotent_period_exponent(R, int(r))
        assert is_period(R, int(r), n)
        # also after adding a large multiple of the exponential period
        assert is_period(R, int(r), n * (10**30 + 1))


def test_quasiperiodic_examples():
    assert quasiperiodic_check(build("bell"), 3)
    assert not quasiperiodic_check(build("zmod:12"), 6)
    assert quasiperiodic_check(build("zmod:12"), 0)


def test_mu1_bound_guard():
    with pytest.raises(Mu1TooLarge):
        mu_profile(make_zmod(1009), mu1_bound=10)


@pytest.mark.parametrize("spec", ["gf:2^3", "gf:3^2", "gf:5^1", "gf:2^5", "gf:7^2"])
def test_fields_have_no_periodic_maps(spec):
    assert mu_profile(build(spec)).periodic_exponents == ()


def test_lower_bound_direction_on_small_commutative_zoo(zoo_small):
    for spec in zoo_small:
        R = build(spec)
        if not is_commutative(R):
            continue
        prof = mu_profile(R)
        nil = nilpotents(R)
        if nil.size == 1:
            continue
        N = lcm(*(int(o) for o in additive_orders(R)[nil]))
        for n in range(2, prof.mu0 + prof.mu1):
            if gcd(n, N) > 1:
                assert n in prof.periodic_exponents, (spec, n)
