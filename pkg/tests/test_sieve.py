import random

import pytest

from ffrace.characters import all_characters, unit_group
from ffrace.cyclo import CycloNum
from ffrace.errors import UsageError
from ffrace.field import field_make, parse_field
from ffrace.numth import gauss_irreducible_count
from ffrace.polyring import Poly, factorize, parse_poly
from ffrace.sieve import (cumulative_count, default_cutoff, sieve_count,
                          sieve_count_naive, sieve_count_nonmonic,
                          sieve_count_nonmonic_naive, weighted_count,
                          _residues_mod, irreducible_indices)

F2 = field_make(2)
F3 = field_make(3)
F5 = field_make(5)
F4 = parse_field("F4")


def P(field, s):
    return parse_poly(field, s)


MODULI = {
    F2: ["T^2", "T^2+T+1", "T^3+T+1"],
    F3: ["T^2", "T^2+1", "T^3+2T+2"],
}


def test_engine_matches_naive_reference():
    for field, tops in ((F2, 10), (F3, 7), (F5, 5)):
        for mstr in MODULI.get(field, ["T^2"]):
            m = P(field, mstr)
            for N in range(1, tops + 1):
                fast = sieve_count(m, N)
                slow = sieve_count_naive(m, N)
                assert fast.counts == slow.counts
                assert fast.excluded == slow.excluded


def test_engine_on_extension_field():
    m = P(F4, "T^2+2")
    for N in range(1, 6):
        assert sieve_count(m, N).counts == sieve_count_naive(m, N).counts
    F9 = parse_field("F9")
    m = P(F9, "T^2+1")
    for N in range(1, 4):
        assert sieve_count(m, N).counts == sieve_count_naive(m, N).counts


def test_table1_row9():
    m = P(F2, "T^3+T+1")
    t = sieve_count(m, 9)
    cols = ["1", "T", "T^2", "T+1", "T^2+T", "T^2+T+1", "T^2+1"]
    assert [t.counts[P(F2, c)] for c in cols] == [7, 9, 7, 9, 9, 8, 7]
    assert t.total == 56 == gauss_irreducible_count(2, 9)


def test_table4_row10():
    m = P(F2, "T^2")
    t = sieve_count(m, 10)
    assert t.counts[P(F2, "1")] == 48
    assert t.counts[P(F2, "T+1")] == 51


def test_degree2_modulus_excludes_itself():
    # the only degree-2 irreducible over F2 IS the modulus
    m = P(F2, "T^2+T+1")
    t = sieve_count(m, 2)
    assert t.total == 0 and t.excluded == 1


def test_gauss_row_sums_full_spec_bounds():
    for field, top in ((F2, 16), (F3, 10), (F5, 7)):
        for N in range(1, top + 1):
            assert len(irreducible_indices(field, N)) == \
                gauss_irreducible_count(field.q, N)
    # with a modulus: unit classes + excluded == pi(N)
    for field, mstr, top in ((F2, "T^3+T+1", 14), (F3, "T^2+1", 9)):
        m = P(field, mstr)
        for N in range(1, top + 1):
            t = sieve_count(m, N)
            assert t.total + t.excluded == gauss_irreducible_count(field.q, N)


def test_vectorized_residues_vs_divmod():
    import numpy as np
    rng = random.Random(17)
    for field, mstr, N in ((F2, "T^3+T+1", 14), (F3, "T^3+2T+2", 8)):
        m = P(field, mstr)
        idx = [rng.randrange(0, field.q ** (N + 1)) for _ in range(10_000)]
        res = _residues_mod(m, np.array(idx, dtype=np.int64), N)
        for i in rng.sample(range(len(idx)), 500):
            f = Poly.from_index(field, idx[i])
            assert int(res[i]) == (f % m).encode()


def test_nonmonic_f2_equals_monic():
    m = P(F2, "T^3+T+1")
    for N in (3, 6, 9):
        assert sieve_count_nonmonic(m, N) == sieve_count(m, N).counts


def test_nonmonic_vs_naive_enumeration():
    for field, mstr, top in ((F3, "T^2+1", 6), (F3, "T^2", 6), (F5, "T^2", 3)):
        m = P(field, mstr)
        for N in range(1, top + 1):
            assert sieve_count_nonmonic(m, N) == \
                sieve_count_nonmonic_naive(m, N)


def test_nonmonic_scaling_identities():
    m = P(F3, "T^2+1")
    table = sieve_count(m, 2).counts
    nm = sieve_count_nonmonic(m, 2)
    G = unit_group(m)
    for c in G.units:
        # forced by the normalization bijection
        assert nm[c] == table[c] + table[c.scale(2) % m]
        # lambda-invariance: pi~(N; m, c) == pi~(N; m, lambda*c)
        for lam in (1, 2):
            assert nm[c] == nm[c.scale(lam) % m]


def test_weighted_count_reference():
    m = P(F2, "T^2+T+1")
    G = unit_group(m)
    chi0, chi1, _chi2 = all_characters(G)
    assert weighted_count(m, chi0, 1) == 2       # classes T and T+1
    assert weighted_count(m, chi1, 1) == -1      # zeta_3 + zeta_3^2
    # no irreducibles coprime to m at this degree -> 0
    assert weighted_count(m, chi1, 2) == 0


def test_weighted_count_trivial_identity():
    # A_chi0(d) = pi(d) - #{P | m : deg P = d}
    for field, mstr in ((F2, "T^3+T+1"), (F3, "T^2")):
        m = P(field, mstr)
        G = unit_group(m)
        chi0 = all_characters(G)[0]
        fact = factorize(m)
        for d in range(1, 8):
            excl = sum(1 for p, _ in fact.factors if p.degree == d)
            expect = gauss_irreducible_count(field.q, d) - excl
            assert weighted_count(m, chi0, d) == expect


def test_cumulative_small():
    m = P(F2, "T^3+T+1")
    tab = cumulative_count(m, 12)
    assert tab.per_class[P(F2, "T")][4] == 3        # N=5, class T
    assert tab.per_class[P(F2, "T^2")][11] == 108   # N=12, class T^2
    # N=1 equals the plain sieve
    first = {c: tab.per_class[c][0] for c in tab.per_class}
    assert first == sieve_count(m, 1).counts
    assert all(src == "sieve" for src in tab.sources.values())


def test_cumulative_needs_provider_beyond_cutoff():
    m = P(F3, "T^2")
    with pytest.raises(UsageError):
        cumulative_count(m, default_cutoff(3) + 1)


def test_usage_errors():
    with pytest.raises(UsageError):
        sieve_count(P(F2, "T^2"), 0)
    with pytest.raises(UsageError):
        irreducible_indices(F3, 25)   # beyond enumeration scale
