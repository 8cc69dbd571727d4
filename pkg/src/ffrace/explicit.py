"""Exact per-class counts with no enumeration: the character-matrix Mobius
inversion.

For each divisor d of N the inverse matrix entry is
    Ztilde(d)_{a,chi} = (mu(d)/M') * sum_{b^d = a} chi(b)^-1
and
    pi(N; m, a) = (1/N) sum_{d|N} ( Ztilde(d)_{a,chi0} (q^{N/d} - s_{m,N/d})
                                    + sum_{chi != chi0} Ztilde(d)_{a,chi} c_{N/d}(chi) ),
where +c_{N/d}(chi) realizes the -sum_j alpha_j^{N/d} term (they are equal by
definition of c_n).  Assembly is exact in Q(zeta_E); every count must reduce
to a nonnegative rational integer, and a failure of that reduction is raised,
never rounded away.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .characters import all_characters, unit_group
from .cyclo import CycloNum
from .errors import IntegrityError, UsageError
from .lfunc import l_polynomial
from .numth import divisors, mobius
from .polyring import Poly, factorize, format_poly


def s_value(factorization, n):
    """s_{m,n}: sum of deg P over distinct irreducible P | m with deg P | n."""
    if n < 1:
        raise UsageError("n must be >= 1")
    return sum(p.degree for p, _ in factorization.factors if n % p.degree == 0)


@dataclass
class ZMatrixInverse:
    """Entries of Ztilde(n), indexed [unit class][character] in canonical
    class / lexicographic character order."""
    n: int
    group: object
    entries: list  # entries[a_index][chi_index] -> CycloNum


def _raw_power_sums(G, n):
    """S(n)[a_idx][chi_idx] = sum_{b^n = a} chi(b)^-1 (integer CycloNums);
    Ztilde(n) = (mu(n)/M') * S(n)."""
    E = G.exponent
    chars = all_characters(G)
    order = G.order
    tallies = [[None] * order for _ in range(order)]
    for b in G.units:
        a_idx = G.index_of(G.unit_pow(b, n))
        row = tallies[a_idx]
        for ci, chi in enumerate(chars):
            if row[ci] is None:
                row[ci] = [0] * E
            row[ci][(-chi.value_exponent(b)) % E] += 1
    zero = [0] * E
    return [[CycloNum.from_zeta_powers(E, t if t is not None else zero)
             for t in row] for row in tallies]


def zmatrix_inverse(G, n):
    """Ztilde(n); the zero matrix when mu(n) = 0."""
    if n < 1:
        raise UsageError("n must be >= 1")
    E = G.exponent
    mu = mobius(n)
    order = G.order
    if mu == 0:
        zero = CycloNum.from_rational(0, E)
        return ZMatrixInverse(n=n, group=G,
                              entries=[[zero] * order for _ in range(order)])
    scale = Fraction(mu, order)
    raw = _raw_power_sums(G, n)
    return ZMatrixInverse(n=n, group=G,
                          entries=[[s * scale for s in row] for row in raw])


def zmatrix(G, n):
    """Forward matrix Z(n), entries [chi_index][a_index] = chi^n(a)."""
    chars = all_characters(G)
    E = G.exponent
    return [[CycloNum.zeta(E, (n * chi.value_exponent(a)) % E)
             for a in G.units] for chi in chars]


@dataclass
class ExplicitCount:
    modulus: Poly
    degree: int
    counts: dict            # Poly -> int, canonical class order
    breakdown: dict | None  # (class literal, d) -> {chi label: CycloNum json}
    source: str = "explicit"

    @property
    def total(self):
        return sum(self.counts.values())


class ExplicitCounter:
    """Caches the per-modulus character data (unit group, L-polynomials,
    power sums, Ztilde raw sums) across degrees."""

    def __init__(self, m):
        if m.degree < 1:
            raise UsageError("modulus must have degree >= 1")
        self.modulus = m
        self.field = m.field
        self.group = unit_group(m)
        self.E = self.group.exponent
        self.factorization = factorize(m)
        self.chars = all_characters(self.group)
        self.lpolys = [None] + [l_polynomial(m, chi) for chi in self.chars[1:]]
        self._raw = {}

    def s(self, n):
        return s_value(self.factorization, n)

    def raw_zsum(self, d):
        if d not in self._raw:
            self._raw[d] = _raw_power_sums(self.group, d)
        return self._raw[d]

    def count(self, degree, breakdown=False):
        if degree < 1:
            raise UsageError("degree must be >= 1")
        G = self.group
        q = self.field.q
        order = G.order
        zero = CycloNum.from_rational(0, self.E)
        acc = [zero] * order
        audit = {} if breakdown else None
        for d in divisors(degree):
            mu = mobius(d)
            if mu == 0:
                continue
            raw = self.raw_zsum(d)
            nu = degree // d
            triv = q ** nu - self.s(nu)
            cvals = [None] + [self.lpolys[ci].c(nu)
                              for ci in range(1, order)]
            for ai in range(order):
                row = raw[ai]
                term = row[0] * triv
                for ci in range(1, order):
                    if not row[ci].is_zero and not cvals[ci].is_zero:
                        term = term + row[ci] * cvals[ci]
                acc[ai] = acc[ai] + term * mu
                if breakdown:
                    scale = Fraction(mu, order)
                    audit[(ai, d)] = {
                        self.chars[ci].label():
                            ((row[ci] * scale) *
                             (triv if ci == 0 else cvals[ci])).to_json()
                        for ci in range(order)}
        counts = {}
        scale = Fraction(1, degree * order)
        for ai, u in enumerate(G.units):
            v = acc[ai] * scale
            if not v.is_rational:
                raise IntegrityError(
                    "explicit count pi(%d; %s, %s) is not rational: %r"
                    % (degree, self.modulus, u, v))
            val = v.rational_value
            if val.denominator != 1 or val < 0:
                raise IntegrityError(
                    "explicit count pi(%d; %s, %s) = %s is not a nonnegative "
                    "integer" % (degree, self.modulus, u, val))
            counts[u] = int(val)
        out_audit = None
        if breakdown:
            out_audit = {(format_poly(G.units[ai]), d): per_chi
                         for (ai, d), per_chi in audit.items()}
        return ExplicitCount(modulus=self.modulus, degree=degree,
                             counts=counts, breakdown=out_audit)

    def max_horizon(self):
        return max((len(L._psums) for L in self.lpolys[1:]), default=0)


_counters = {}


def explicit_counter(m):
    key = (m.field, m.coeffs)
    if key not in _counters:
        _counters[key] = ExplicitCounter(m)
    return _counters[key]


def explicit_count(m, degree, breakdown=False):
    """pi(N; m, c) for every unit class c, assembled exactly (no enumeration)."""
    return explicit_counter(m).count(degree, breakdown=breakdown)


def pi_g_decomposition(m, degree, cls):
    """For cyclic unit groups: the map g -> pi_g(N; m, a) over g | M', where
    pi_g collects the divisors d | N with gcd(d, M') = g, via the closed form

      pi_g(N;m,c^k) = (g [g|k] / (M' N)) sum_{d: gcd(d,M')=g} mu(d)
          ( q^{N/d} - s_{m,N/d}
            + sum_{j=1}^{M'/g-1} zeta_{M'}^{-k j (d/g)^{-1}} c_{N/d}(chi_1^{g j}) ).

    Individual parts are rationals (not necessarily integers); they sum to
    the explicit count."""
    counter = explicit_counter(m)
    G = counter.group
    if not G.is_cyclic:
        raise UsageError("pi_g decomposition needs a cyclic unit group")
    cls = cls % m
    Mp = G.order
    q = counter.field.q
    if Mp == 1:
        # only g = 1; the whole formula collapses to the trivial column
        total = Fraction(0)
        for d in divisors(degree):
            mu = mobius(d)
            if mu:
                total += mu * (q ** (degree // d) - counter.s(degree // d))
        return {1: total / degree}
    k = G.dlog[cls][0]
    E = counter.E
    assert E == Mp
    out = {}
    for g in divisors(Mp):
        if k % g:
            out[g] = Fraction(0)
            continue
        acc = CycloNum.from_rational(0, E)
        for d in divisors(degree):
            if gcd(d, Mp) != g:
                continue
            mu = mobius(d)
            if mu == 0:
                continue
            nu = degree // d
            inner = CycloNum.from_rational(q ** nu - counter.s(nu), E)
            dg_inv = pow(d // g, -1, Mp)
            for j in range(1, Mp // g):
                ci = (g * j) % Mp
                zz = CycloNum.zeta(E, (-k * j * dg_inv) % E)
                inner = inner + zz * counter.lpolys[_char_index(counter, ci)].c(nu)
            acc = acc + inner * mu
        if not acc.is_rational:
            raise IntegrityError("pi_%d part is not rational for %s mod %s"
                                 % (g, cls, m))
        out[g] = acc.rational_value * Fraction(g, Mp * degree)
    return out


def _char_index(counter, power):
    """Index of chi_1^power in the lexicographic character list (cyclic
    groups: characters are exactly chi_1^l at index l)."""
    return power % counter.group.order


def mobius_helpers(N, p):
    """(sum_{p !| d | N} mu(d), sum_{d|N} mu(d) (-1)^(N/d)), both by direct
    summation.

    Closed forms: the first sum is 1 exactly when the p-free part of N is 1
    (i.e. N is a power of p, including N = 1), else 0; the second is -1 at
    N = 1, 2 at N = 2, and 0 for N >= 3."""
    if N < 1 or p < 2:
        raise UsageError("need N >= 1 and prime p")
    first = sum(mobius(d) for d in divisors(N) if d % p != 0)
    second = sum(mobius(d) * (-1) ** (N // d) for d in divisors(N))
    return first, second


@dataclass
class BiasReport:
    modulus: Poly
    class_a: Poly
    class_b: Poly
    rows: list              # (N, pi_a, pi_b, diff)
    violations: list        # degrees where the expected sign failed

    def sign_summary(self):
        pos = sum(1 for r in self.rows if r[3] > 0)
        neg = sum(1 for r in self.rows if r[3] < 0)
        zer = sum(1 for r in self.rows if r[3] == 0)
        return {"positive": pos, "negative": neg, "zero": zer}


def bias_report(m, class_a, class_b, degrees, expected_sign=None):
    """Exact differences pi(N;m,a) - pi(N;m,b) over the given degrees.
    expected_sign in {-1, 0, 1} (or a mapping N -> sign) flags violations."""
    counter = explicit_counter(m)
    a = class_a % m
    b = class_b % m
    G = counter.group
    if not (G.contains(a) and G.contains(b)):
        raise UsageError("classes must be units mod the modulus")
    rows = []
    violations = []
    for N in degrees:
        counts = counter.count(N).counts
        diff = counts[a] - counts[b]
        rows.append((N, counts[a], counts[b], diff))
        if expected_sign is not None:
            want = expected_sign(N) if callable(expected_sign) else expected_sign
            got = (diff > 0) - (diff < 0)
            if got != want:
                violations.append(N)
    return BiasReport(modulus=m, class_a=a, class_b=b, rows=rows,
                      violations=violations)
