from itertools import product

import numpy as np
import pytest

from ringlab.analysis import mu_profile, nilpotents, structural_flags
from ringlab.constructions import (
    GaloisField,
    NotPrimeError,
    corbas_pow_closed_form,
    corbas_pow_summation,
    find_irreducible,
    is_irreducible,
    make_bell_klein,
    make_corbas,
    make_galois_field,
    make_galois_ring,
    make_matrix_ring,
    make_nil_zero,
    make_zmod,
    poly_mod,
)
from ringlab.core import RingSizeError, elem_pow, power_map

from conftest import build, slow_pow


def has_root(f, p):
    return any(sum(c * x**i for i, c in enumerate(f)) % p == 0 for x in range(p))


def test_find_irreducible_examples():
    assert find_irreducible(2, 1) == (0, 1)
    assert find_irreducible(2, 2) == (1, 1, 1)
    assert find_irreducible(3, 2) == (1, 0, 1)


@pytest.mark.parametrize("p,k", [(2, 2), (2, 3), (3, 2), (3, 3), (5, 2), (5, 3), (7, 2)])
def test_low_degree_irreducibility_by_roots(p, k):
    # for degree 2 and 3, irreducible <=> no root in F_p
    f = find_irreducible(p, k)
    assert not has_root(f, p)
    for low in product(range(p), repeat=k):
        g = list(low) + [1]
        if tuple(g) < f:
            assert has_root(g, p), g


@pytest.mark.parametrize("p,k", [(2, 4), (2, 5), (3, 4), (2, 6)])
def test_higher_degree_irreducible_generates_field(p, k):
    # an irreducible modulus makes every nonzero element invertible
    F = make_galois_field(p, k)
    nz = np.arange(1, F.q)
    prods = F._poly_mul(nz[:, None], nz[None, :])
    assert not (prods == 0).any()
    assert all((row == 1).any() for row in prods)


def test_poly_mod_and_reducible():
    assert poly_mod([1, 0, 1], [1, 1], 2) == []  # t^2 + 1 = (t + 1)^2 over F_2
    assert not is_irreducible([1, 0, 1], 2)
    assert is_irreducible([1, 1, 0, 1], 2)


def test_field_rejects_reducible_and_composite():
    with pytest.raises(ValueError):
        GaloisField(2, 2, modulus=(1, 0, 1))
    with pytest.raises(NotPrimeError):
        make_galois_field(4, 1)
    with pytest.raises(NotPrimeError):
        make_corbas(4, 2, 0)
    with pytest.raises(ValueError):
        make_corbas(2, 2, 2)
    with pytest.raises(RingSizeError):
        make_galois_ring(2, 10, 2)


@pytest.mark.parametrize("p,k", [(2, 1), (2, 2), (2, 3), (3, 2), (5, 2), (2, 4)])
def test_field_multiplicative_group_is_cyclic(p, k):
    F = make_galois_field(p, k)
    g = F.generator
    seen = {int(F.power(g, e)) for e in range(F.q - 1)}
    assert seen == set(range(1, F.q))
    assert all(int(F._mul(a, F.inv(a))) == 1 for a in range(1, F.q))
    prof = mu_profile(F)
    assert (prof.mu0, prof.mu1, prof.muP) == (1, F.q - 1, 0)


def test_field_examples():
    assert mu_profile(make_galois_field(2, 1)).distinct_maps == 1
    F4 = mu_profile(make_galois_field(2, 2))
    assert (F4.mu1, F4.distinct_maps, F4.muP) == (3, 3, 0)
    F9 = mu_profile(make_galois_field(3, 2))
    assert (F9.mu1, F9.muP) == (8, 0)


@pytest.mark.parametrize("p,k,moduli", [
    (2, 3, [(1, 1, 0, 1), (1, 0, 1, 1)]),
    (3, 2, [(1, 0, 1), (2, 1, 1), (2, 2, 1)]),
    (2, 4, [(1, 1, 0, 0, 1), (1, 0, 0, 1, 1), (1, 1, 1, 1, 1)]),
])
def test_field_invariants_do_not_depend_on_modulus(p, k, moduli):
    results = []
    for f in moduli:
        F = make_galois_field(p, k, modulus=f)
        prof = mu_profile(F)
        flags = structural_flags(F, prof)
        results.append((prof.mu0, prof.mu1, prof.distinct_maps, prof.periodic_exponents,
                        flags.weakly_periodic, flags.j_ring, flags.nilperiod, flags.ni_ring,
                        len(flags.pot_set), len(flags.nil_set)))
    assert len(set(results)) == 1


def test_frobenius_is_field_automorphism():
    F = make_galois_field(2, 3)
    a = np.arange(F.q)
    for s in range(3):
        fa = F.frobenius(a, s)
        assert sorted(fa.tolist()) == list(range(F.q))
        assert np.array_equal(F.frobenius(F._mul(a[:, None], a[None, :]), s), F._mul(fa[:, None], fa[None, :]))
        assert np.array_equal(F.frobenius(F._add(a[:, None], a[None, :]), s), F._add(fa[:, None], fa[None, :]))


@pytest.mark.parametrize("p,k,d", [(2, 2, 2), (2, 3, 2), (3, 2, 2), (2, 2, 3)])
def test_galois_ring_structure(p, k, d):
    R = build(f"gr:{p}^{k},{d}")
    assert R.size == p ** (k * d)
    ids = R.elements()
    prods = R.mul(ids[:, None], ids[None, :])
    units = {int(x) for x in ids if (prods[x] == R.unity).any()}
    non_units = set(range(R.size)) - units
    p_multiples = {int(y) for y in R.mul(ids, R.encode((p,) + (0,) * (d - 1)))}
    assert non_units == p_multiples
    assert len(units) == p ** (k * d) - p ** ((k - 1) * d)


def test_galois_ring_degenerate_cases():
    R = make_galois_ring(3, 1, 2)
    prof = mu_profile(R)
    assert (prof.mu0, prof.mu1, prof.muP) == (1, 8, 0)
    assert mu_profile(make_galois_ring(2, 2, 2)).mu1 == 6


def _corbas_elements(R):
    return [(a, b) for a in range(R.q) for b in range(R.q)]


@pytest.mark.parametrize("p,k,s", [(2, 2, 0), (2, 2, 1), (3, 1, 0), (2, 3, 1), (2, 3, 2), (3, 2, 1)])
def test_corbas_closed_form_vs_repeated_multiplication(p, k, s):
    R = build(f"corbas:{p},{k},{s}")
    prof = mu_profile(R, periods=False)
    for a, b in _corbas_elements(R):
        x = R.encode((a, b))
        acc = x
        for n in range(1, prof.mu0 + prof.mu1):
            if n > 1:
                acc = R.mul(acc, x)
            assert corbas_pow_closed_form(R, a, b, n) == acc
            if a:
                assert corbas_pow_summation(R, a, b, n) == acc


def test_corbas_closed_form_examples():
    R = build("corbas:2,2,0")
    for b in range(4):
        for n in range(1, 8):
            assert R.decode(corbas_pow_closed_form(R, 1, b, n)) == (1, int(R.F.times(n, b)))
    for a in range(1, 4):
        for b in range(4):
            assert R.decode(elem_pow(R, R.encode((a, b)), 2)) == (int(R.F.power(a, 2)), 0)


def test_corbas_structure():
    for s in (0, 1):
        R = build(f"corbas:2,2,{s}")
        assert R.size == 16 and R.has_unity and R.unity == R.encode((1, 0))
        nil = set(nilpotents(R).tolist())
        assert nil == {R.encode((0, b)) for b in range(4)}
        assert all(R.mul(x, x) == 0 for x in nil)


def test_bell_klein_multiplication():
    B = make_bell_klein()
    z, a, b, c = (B.encode(n) for n in "0abc")
    assert B.mul(a, b) == b and B.mul(b, a) == a
    assert all(B.mul(c, x) == 0 and B.mul(z, x) == 0 for x in range(4))
    assert all(B.mul(a, x) == x and B.mul(b, x) == x for x in range(4))
    assert not B.has_unity


def test_nil_zero_examples():
    N = make_nil_zero([3])
    assert all(elem_pow(N, x, 2) == 0 for x in range(3))
    prof = mu_profile(N)
    assert (prof.mu0, prof.mu1) == (2, 1)
    prof = mu_profile(make_nil_zero([2, 2]))
    assert (prof.mu0, prof.mu1, prof.distinct_maps) == (2, 1, 2)
    assert make_nil_zero([2, 3]).decode(5) == (1, 2)


def test_zmod_example():
    prof = mu_profile(make_zmod(12))
    assert (prof.mu1, prof.mu0) == (2, 2)


def test_matrix_ring_encoding_is_row_major():
    R = make_matrix_ring(3, 1, 2)
    M = np.array([[1, 2], [0, 1]])
    x = R.encode(M)
    assert x == 1 * 27 + 2 * 9 + 0 * 3 + 1
    assert np.array_equal(R.decode(x), M)
    assert R.unity == R.encode(np.eye(2, dtype=int))


@pytest.mark.parametrize("p,k", [(2, 1), (3, 1)])
def test_matrix_multiplication_matches_numpy(p, k):
    R = build(f"mat:{p}^{k},2")
    ids = R.elements()
    got = R.mul(ids[:, None], ids[None, :])
    mats = R.to_matrix(ids)
    want = R.from_matrix(np.einsum("aij,bjk->abik", mats, mats) % p)
    assert np.array_equal(got, want)


def test_matrix_ring_degenerates_to_field():
    R = make_matrix_ring(2, 2, 1)
    prof = mu_profile(R)
    assert (prof.mu0, prof.mu1, prof.muP) == (1, 3, 0)


def test_matrix_examples():
    for spec, mu1 in (("mat:2^1,2", 6), ("mat:3^1,2", 24)):
        prof = mu_profile(build(spec))
        assert (prof.mu0, prof.mu1, prof.muP) == (2, mu1, 0)
    assert len(nilpotents(build("mat:2^1,2"))) == 4


# an independent model of F_4 + F_4 with twisted multiplication, no shared code

def _f4_mul(x, y):
    # F_4 = F_2[t]/(t^2 + t + 1); ids are bit vectors c0 + 2 c1
    r = 0
    for i in range(2):
        if (y >> i) & 1:
            r ^= x << i
    if r & 4:
        r ^= 0b111
    return r


def _twisted(s):
    def phi(c):
        return _f4_mul(c, c) if s else c

    def mul(x, y):
        (a, b), (c, d) = x, y
        return _f4_mul(a, c), _f4_mul(a, d) ^ _f4_mul(b, phi(c))

    return mul


def _model_profile(s):
    mul = _twisted(s)
    elems = [(a, b) for a in range(4) for b in range(4)]
    powers = {x: [x] for x in elems}
    for x in elems:
        for _ in range(40):
            powers[x].append(mul(powers[x][-1], x))
    maps = [tuple(powers[x][n - 1] for x in elems) for n in range(1, 41)]
    first = {}
    for n, m in enumerate(maps, start=1):
        if m in first:
            mu0 = first[m]
            mu1 = n - mu0
            break
        first[m] = n

    def add(x, y):
        return x[0] ^ y[0], x[1] ^ y[1]

    periodic = [n for n in range(1, mu0 + mu1)
                if any(all(powers[add(x, r)][n - 1] == powers[x][n - 1] for x in elems)
                       for r in elems if r != (0, 0))]
    return mu0, mu1, periodic


@pytest.mark.parametrize("s", [0, 1])
def test_corbas_over_f4_agrees_with_independent_model(s):
    mu0, mu1, periodic = _model_profile(s)
    prof = mu_profile(build(f"corbas:2,2,{s}"))
    assert (prof.mu0, prof.mu1, list(prof.periodic_exponents)) == (mu0, mu1, periodic)


def test_twisted_corbas_over_f4_has_one_periodic_map():
    # x^6 is periodic: 2 | 6 kills the nilpotent part and a^6 = phi(a)^6 = 1 on units
    mu0, mu1, periodic = _model_profile(1)
    assert (mu0, mu1, periodic) == (2, 6, [6])
    R = build("corbas:2,2,1")
    f = power_map(R, 6)
    for b in range(1, 4):
        assert np.array_equal(f[R.add(R.elements(), R.encode((0, b)))], f)


def test_power_by_repeated_multiplication_on_corbas_units():
    R = build("corbas:2,2,1")
    for x in range(R.size):
        assert elem_pow(R, x, 5) == slow_pow(R, x, 5)
