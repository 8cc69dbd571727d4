from fractions import Fraction

import pytest

from ffrace.characters import all_characters, unit_group
from ffrace.cyclo import CycloNum
from ffrace.errors import UsageError
from ffrace.explicit import (ExplicitCounter, bias_report, explicit_count,
                             explicit_counter, mobius_helpers,
                             pi_g_decomposition, s_value, zmatrix,
                             zmatrix_inverse)
from ffrace.field import field_make
from ffrace.numth import divisors, mobius
from ffrace.polyring import factorize, parse_poly
from ffrace.sieve import sieve_count

F2 = field_make(2)
F3 = field_make(3)


def P(field, s):
    return parse_poly(field, s)


def test_s_value_cases():
    assert all(s_value(factorize(P(F2, "T^2")), n) == 1 for n in range(1, 10))
    fact = factorize(P(F2, "T^3+T+1"))     # irreducible of degree 3
    for n in range(1, 13):
        assert s_value(fact, n) == (3 if n % 3 == 0 else 0)
    assert s_value(factorize(P(F2, "T^2+T")), 5) == 2   # two degree-1 parts


def test_ztilde_n1_is_scaled_conjugate_transpose():
    for m in (P(F2, "T^2+T+1"), P(F3, "T^2+1")):
        G = unit_group(m)
        chars = all_characters(G)
        E = G.exponent
        Z1 = zmatrix_inverse(G, 1)
        for ai, a in enumerate(G.units):
            for ci, chi in enumerate(chars):
                want = CycloNum.zeta(E, (-chi.value_exponent(a)) % E) * \
                    Fraction(1, G.order)
                assert Z1.entries[ai][ci] == want


def test_ztilde_coprime_closed_form():
    # gcd(n, M') = 1: Ztilde(n)_{a,chi} = mu(n)/M' chi(a)^(-n^-1)
    for m, ns in ((P(F2, "T^3+T+1"), (2, 3, 5, 6)), (P(F3, "T^2+1"), (3, 5, 7))):
        G = unit_group(m)
        chars = all_characters(G)
        E = G.exponent
        for n in ns:
            ninv = pow(n, -1, G.order)
            Z = zmatrix_inverse(G, n)
            for ai, a in enumerate(G.units):
                for ci, chi in enumerate(chars):
                    want = CycloNum.zeta(
                        E, (-ninv * chi.value_exponent(a)) % E) * \
                        Fraction(mobius(n), G.order)
                    assert Z.entries[ai][ci] == want


def test_ztilde_prime_divisor_closed_form():
    # prime l | M': -(l/M') chi(a^(1/l))^-1 on the l-power images, else 0
    m = P(F3, "T^2+1")
    G = unit_group(m)
    chars = all_characters(G)
    E = G.exponent
    l = 2
    lth_powers = {G.unit_pow(b, l) for b in G.units}
    lth_chars = {(chi ** l).exps for chi in chars}
    Z = zmatrix_inverse(G, l)
    for ai, a in enumerate(G.units):
        for ci, chi in enumerate(chars):
            if a in lth_powers and chi.exps in lth_chars:
                root = next(b for b in G.units if G.unit_pow(b, l) == a)
                want = CycloNum.zeta(E, (-chi.value_exponent(root)) % E) * \
                    Fraction(-l, G.order)
            else:
                want = CycloNum.from_rational(0, E)
            assert Z.entries[ai][ci] == want


def test_ztilde_zero_for_square_divisors():
    G = unit_group(P(F2, "T^3+T+1"))
    Z = zmatrix_inverse(G, 4)
    assert all(e.is_zero for row in Z.entries for e in row)


def _matmul(A, B, E):
    n = len(A)
    k = len(B)
    out = [[CycloNum.from_rational(0, E) for _ in range(len(B[0]))]
           for _ in range(n)]
    for i in range(n):
        for j in range(len(B[0])):
            acc = CycloNum.from_rational(0, E)
            for t in range(k):
                if not A[i][t].is_zero and not B[t][j].is_zero:
                    acc = acc + A[i][t] * B[t][j]
            out[i][j] = acc
    return out


@pytest.mark.parametrize("fieldstr,mstr,top", [
    ("F2", "T^2", 30), ("F2", "T^2+T+1", 30), ("F2", "T^3+T+1", 30),
    ("F3", "T^2", 30), ("F3", "T^2+1", 30), ("F3", "T^3+2T+2", 10),
])
def test_mobius_inverse_defining_relations(fieldstr, mstr, top):
    field = field_make(2) if fieldstr == "F2" else field_make(3)
    m = P(field, mstr)
    G = unit_group(m)
    E = G.exponent
    order = G.order
    ident = [[CycloNum.from_rational(1 if i == j else 0, E)
              for j in range(order)] for i in range(order)]
    zt = {d: zmatrix_inverse(G, d).entries for d in range(1, top + 1)}
    z = {d: zmatrix(G, d) for d in range(1, top + 1)}
    got = _matmul(zt[1], z[1], E)
    assert got == ident
    for n in range(2, top + 1):
        total = None
        for d in divisors(n):
            if all(e.is_zero for row in zt[d] for e in row):
                continue
            term = _matmul(zt[d], z[n // d], E)
            total = term if total is None else \
                [[x + y for x, y in zip(r1, r2)]
                 for r1, r2 in zip(total, term)]
        assert all(e.is_zero for row in total for e in row), n


def test_explicit_equals_sieve_cross_product():
    for field, moduli, top in ((F2, ("T^2", "T^2+T+1", "T^3+T+1"), 10),
                               (F3, ("T^2", "T^2+1", "T^3+2T+2"), 8)):
        for mstr in moduli:
            m = P(field, mstr)
            for N in range(1, top + 1):
                assert explicit_count(m, N).counts == \
                    sieve_count(m, N).counts, (mstr, N)


def test_table_values_spot():
    m = P(F2, "T^3+T+1")
    counts = explicit_count(m, 14).counts
    cols = ["1", "T", "T^2", "T+1", "T^2+T", "T^2+T+1", "T^2+1"]
    assert [counts[P(F2, c)] for c in cols] == [168, 162, 162, 169, 162, 169,
                                                169]
    m = P(F3, "T^2+1")
    G = unit_group(m)
    counts = explicit_count(m, 20).counts
    assert counts[G.unit_pow(G.generators[0], 4)] == 21793092
    m = P(F3, "T^2")
    G = unit_group(m)
    counts = explicit_count(m, 20).counts
    want = (29054568, 29056044, 29056044, 29057520, 29056044, 29056044)
    got = tuple(counts[G.unit_pow(G.generators[0], k)] for k in range(6))
    assert got == want


def test_roundtrip_eq13():
    # re-applying Z(n/d) convolution to explicit counts reproduces
    # (q^n - s_{m,n}, c_n(chi)) exactly
    m = P(F3, "T^2+1")
    counter = explicit_counter(m)
    G = counter.group
    chars = counter.chars
    E = counter.E
    for n in range(1, 9):
        per_degree = {d: explicit_count(m, d).counts for d in divisors(n)}
        for ci, chi in enumerate(chars):
            acc = CycloNum.from_rational(0, E)
            for d in divisors(n):
                nu = n // d    # Z(nu) applied to the degree-d count column
                for a in G.units:
                    acc = acc + CycloNum.zeta(
                        E, (nu * chi.value_exponent(a)) % E) * \
                        (d * per_degree[d][a])
            if ci == 0:
                assert acc == 3 ** n - counter.s(n)
            else:
                assert acc == counter.lpolys[ci].c(n)


def test_breakdown_audit():
    m = P(F2, "T^2+T+1")
    res = explicit_count(m, 6, breakdown=True)
    assert res.breakdown            # has per-divisor, per-character terms
    keys = {d for (_cls, d) in res.breakdown}
    assert keys == {1, 2, 3, 6}
    # Ztilde-weighted terms over all divisors and characters re-sum to N*pi
    for cls in ("1", "T", "T+1"):
        total = CycloNum.from_rational(0, 3)
        for (c, _d), terms in res.breakdown.items():
            if c == cls:
                for term in terms.values():
                    total = total + CycloNum.from_json(term)
        assert total == 6 * res.counts[P(F2, cls)]


def test_pi_g_coprime_degree_collapses_to_pi1():
    m = P(F2, "T^3+T+1")    # M' = 7
    for N in (4, 5, 6, 8):  # gcd(N, 7) = 1
        for k in (0, 1, 3):
            a = unit_group(m).unit_pow(unit_group(m).generators[0], k)
            parts = pi_g_decomposition(m, N, a)
            assert set(parts) == {1, 7}
            assert parts[7] == 0
            assert parts[1] == explicit_count(m, N).counts[a]


def test_pi_g_vanishing_cases():
    # 3 | N, class T != 1 mod T^2+T+1: pi_3 = 0
    m = P(F2, "T^2+T+1")
    for N in (3, 6, 9, 12):
        parts = pi_g_decomposition(m, N, P(F2, "T"))
        assert parts[3] == 0
    # T^2/F3, a = (T+2)^k with k in {1,5}: pi_2 = pi_3 = pi_6 = 0
    m = P(F3, "T^2")
    G = unit_group(m)
    for N in (6, 12):
        for k in (1, 5):
            parts = pi_g_decomposition(m, N, G.unit_pow(G.generators[0], k))
            assert parts[2] == parts[3] == parts[6] == 0


def test_pi_g_sums_to_total():
    for field, mstr, top in ((F2, "T^2+T+1", 12), (F2, "T^3+T+1", 12),
                             (F3, "T^2", 10), (F3, "T^2+1", 10)):
        m = P(field, mstr)
        G = unit_group(m)
        for N in range(1, top + 1):
            counts = explicit_count(m, N).counts
            for a in G.units:
                parts = pi_g_decomposition(m, N, a)
                assert sum(parts.values()) == counts[a], (mstr, N, a)


def test_pi_g_requires_cyclic():
    m = P(F2, "T^4+T^2+1")
    with pytest.raises(UsageError):
        pi_g_decomposition(m, 4, P(F2, "T+1"))


def test_mobius_helpers_closed_forms():
    # first sum: 1 iff the p-free part of N is 1 (N a power of p, incl. N=1);
    # this corrects the published closed form [N=1]+[N=p], which fails at
    # N = p^a for a >= 2 (e.g. N=9, p=3: only d=1 survives, sum = 1)
    for p in (2, 3, 5, 7):
        for N in range(1, 51):
            first, second = mobius_helpers(N, p)
            M = N
            while M % p == 0:
                M //= p
            assert first == (1 if M == 1 else 0), (N, p)
            assert second == (-1 if N == 1 else 2 if N == 2 else 0)
    assert mobius_helpers(1, 3) == (1, -1)
    assert mobius_helpers(3, 3) == (1, 0)
    assert mobius_helpers(12, 3) == (0, 0)
    assert mobius_helpers(9, 3) == (1, 0)    # prime-power counterexample


def test_bias_reference_cases():
    # T^2+T+1/F2: pi(N;1) < pi(N;T) at N in {9,12,...}, equality only at N=6
    m = P(F2, "T^2+T+1")
    rep = bias_report(m, P(F2, "T"), P(F2, "1"), range(9, 31, 3),
                      expected_sign=1)
    assert rep.violations == []
    assert all(d > 0 for *_x, d in rep.rows)
    rep6 = bias_report(m, P(F2, "T"), P(F2, "1"), [6])
    assert rep6.rows[0][3] == 0
    # (a, a) -> all zeros
    rep0 = bias_report(m, P(F2, "T"), P(F2, "T"), range(1, 10))
    assert all(d == 0 for *_x, d in rep0.rows)
    assert rep0.sign_summary() == {"positive": 0, "negative": 0, "zero": 9}


def test_bias_usage_error():
    m = P(F3, "T^2")
    with pytest.raises(UsageError):
        bias_report(m, P(F3, "T"), P(F3, "1"), [4])   # T not a unit mod T^2


def test_counts_cached_counter_reused():
    m = P(F2, "T^3+T+1")
    assert explicit_counter(m) is explicit_counter(P(F2, "T^3+T+1"))


def test_degenerate_degree_one():
    for field, mstr in ((F2, "T^3+T+1"), (F3, "T^2")):
        m = P(field, mstr)
        assert explicit_count(m, 1).counts == sieve_count(m, 1).counts


def test_trivial_unit_group_modulus():
    # m = T over F2: single class, pi(N; T, 1) = pi(N) - [N == 1]
    m = P(F2, "T")
    from ffrace.numth import gauss_irreducible_count
    for N in range(1, 9):
        c = explicit_count(m, N).counts
        want = gauss_irreducible_count(2, N) - (1 if N == 1 else 0)
        assert c[P(F2, "1")] == want
