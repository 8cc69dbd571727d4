"""Dirichlet L-polynomials, their inverse-zero power sums via Newton's
identities, and exact Galois conjugate-relation discovery among inverse zeros.

Everything stays in Q(zeta_E); complex embeddings appear only in the Weil
|alpha| diagnostic.
"""

from dataclasses import dataclass
from math import gcd

import numpy as np

from .characters import all_characters, unit_group
from .cyclo import CycloNum
from .errors import IntegrityError, UsageError
from .numth import divisors
from .polyring import enumerate_monic
from .sieve import weighted_count


class LPolynomial:
    """L(u, chi) = sum a_n u^n with a_0 = 1, degree d <= deg(m) - 1 for
    nontrivial chi.  Coefficients are algebraic integers in Q(zeta_E)."""

    def __init__(self, chi, coeffs):
        self.chi = chi
        cs = list(coeffs)
        while len(cs) > 1 and cs[-1].is_zero:
            cs.pop()
        self.coeffs = tuple(cs)
        self._psums = []  # p_n = sum_j alpha_j^n, cached from n=1

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def power_sum(self, n):
        """p_n via the Newton recurrence p_n = -(n a_n + sum a_i p_(n-i))."""
        E = self.coeffs[0].E
        d = self.degree
        while len(self._psums) < n:
            k = len(self._psums) + 1
            acc = (self.coeffs[k] * k) if k <= d \
                else CycloNum.from_rational(0, E)
            for i in range(1, min(k - 1, d) + 1):
                if not self.coeffs[i].is_zero:
                    acc = acc + self.coeffs[i] * self._psums[k - 1 - i]
            self._psums.append(-acc)
        return self._psums[n - 1]

    def c(self, n):
        """c_n(chi) = -p_n."""
        return -self.power_sum(n)

    def strip_unit_roots(self):
        """(k, stripped LPolynomial): exact division by (1-u)^k where k is the
        multiplicity of the inverse zero alpha = 1."""
        E = self.coeffs[0].E
        cs = list(self.coeffs)
        k = 0
        while len(cs) > 1:
            total = cs[0]
            for c in cs[1:]:
                total = total + c
            if not total.is_zero:
                break
            # exact: L = (1-u) Q with q_j = sum_{i<=j} a_i (the top partial
            # sum q_{d-1} = -a_d holds because the full sum vanishes)
            quo = []
            run = CycloNum.from_rational(0, E)
            for c in cs[:-1]:
                run = run + c
                quo.append(run)
            cs = quo
            k += 1
        return k, LPolynomial(self.chi, cs)

    def inverse_roots_numeric(self):
        """Complex inverse zeros alpha_j (floating; diagnostics only)."""
        if self.degree == 0:
            return []
        cs = [c.embed() for c in self.coeffs]
        u_roots = np.roots(list(reversed(cs)))
        return [1.0 / u for u in u_roots]

    def to_json(self):
        return {"char": self.chi.label(),
                "degree": self.degree,
                "coeffs": [c.to_json() for c in self.coeffs]}


def l_polynomial(m, chi):
    """Coefficients a_n = sum over monic degree-n f coprime to m of chi(f),
    n = 0..deg(m)-1.  The trivial character is rejected: its data enters the
    explicit formula through q^n - s_{m,n} instead."""
    if chi.is_trivial:
        raise UsageError("the trivial character has no L-polynomial here; "
                         "its term is q^n - s_{m,n}")
    G = chi.group
    if G.modulus != m:
        raise UsageError("character modulus mismatch")
    E = G.exponent
    field = m.field
    M = m.degree
    coeffs = []
    for n in range(M):
        tally = [0] * E
        for f in enumerate_monic(field, n):
            if G.contains(f):
                tally[chi.value_exponent(f)] += 1
        coeffs.append(CycloNum.from_zeta_powers(E, tally))
    if coeffs[0] != 1:
        raise IntegrityError("a_0 != 1 for %r" % (chi,))
    # completeness: the full degree-M character sum must vanish
    tally = [0] * E
    for f in enumerate_monic(field, M):
        r = f % m
        if G.contains(r):
            tally[chi.value_exponent(r)] += 1
    if not CycloNum.from_zeta_powers(E, tally).is_zero:
        raise IntegrityError("degree-%d character sum does not vanish for %r"
                             % (M, chi))
    return LPolynomial(chi, coeffs)


def power_sums(lpoly, n_max):
    """[c_1(chi), ..., c_n_max(chi)], exact."""
    if n_max < 1:
        raise UsageError("horizon must be >= 1")
    return [lpoly.c(n) for n in range(1, n_max + 1)]


def power_sum_mismatch(m, chi, n_max):
    """First n where Newton-side c_n differs from the sieve-side divisor sum
    sum_{d|n} d * A_{chi^(n/d)}(d); None if they agree through n_max."""
    if chi.is_trivial:
        raise UsageError("use the q^n - s_{m,n} identity for the trivial "
                         "character")
    L = l_polynomial(m, chi)
    E = chi.group.exponent
    for n in range(1, n_max + 1):
        rhs = CycloNum.from_rational(0, E)
        for d in divisors(n):
            rhs = rhs + weighted_count(m, chi ** (n // d), d) * d
        if L.c(n) != rhs:
            return n
    return None


def verify_power_sums_vs_sieve(m, chi, n_max):
    return power_sum_mismatch(m, chi, n_max) is None


@dataclass(frozen=True)
class ConjugateRelation:
    """sigma_l(inverse-zero multiset of chi) = zeta_E^t * (multiset of other).
    stripped=True means copies of the inverse zero 1 were removed first."""
    chi: object
    other: object
    l: int
    t: int
    stripped: bool
    size: int

    def to_json(self):
        return {"chi": self.chi.label(), "other": self.other.label(),
                "l": self.l, "t": self.t, "stripped": self.stripped,
                "size": self.size}


def find_conjugate_relations(m):
    """All (chi, chi', l, t) with sigma_l carrying the inverse-zero multiset
    of chi onto zeta_E^t times that of chi', tested exactly through the power
    sums p_1..p_d (which determine a size-d multiset).  Searched both on the
    full multisets and with unit roots stripped; empty multisets are skipped
    (every t would match vacuously)."""
    G = unit_group(m)
    E = G.exponent
    nontrivial = all_characters(G)[1:]
    variants = {}
    for chi in nontrivial:
        L = l_polynomial(m, chi)
        k, stripped = L.strip_unit_roots()
        variants[chi.exps] = []
        if L.degree >= 1:
            variants[chi.exps].append(
                (False, L.degree,
                 [L.power_sum(n) for n in range(1, L.degree + 1)]))
        if k and stripped.degree >= 1:
            variants[chi.exps].append(
                (True, stripped.degree,
                 [stripped.power_sum(n) for n in range(1, stripped.degree + 1)]))
    zeta = [CycloNum.zeta(E, t) for t in range(E)]
    out = []
    for chi in nontrivial:
        for stripped_flag, d, psums in variants[chi.exps]:
            for l in range(1, E + 1):
                if gcd(l, E) != 1:
                    continue
                images = [p.galois(l) for p in psums]
                for other in nontrivial:
                    for sf2, d2, psums2 in variants[other.exps]:
                        if sf2 != stripped_flag or d2 != d:
                            continue
                        for t in range(E):
                            if all(images[n - 1] == zeta[(t * n) % E] * psums2[n - 1]
                                   for n in range(1, d + 1)):
                                out.append(ConjugateRelation(
                                    chi=chi, other=other, l=l % E, t=t,
                                    stripped=stripped_flag, size=d))
    return out


def weil_bound_violations(lpoly, tol=1e-9):
    """Inverse zeros whose modulus is neither 1 nor sqrt(q) within tol."""
    q = lpoly.chi.group.field.q
    bad = []
    for alpha in lpoly.inverse_roots_numeric():
        r = abs(alpha)
        if abs(r - 1.0) > tol and abs(r - q ** 0.5) > tol:
            bad.append(alpha)
    return bad
