"""GL2(F_q) slash action on polynomials, modulus stabilizers, and tie
certificates transporting congruence classes by bijection.

A matrix B = (a b; c d) acts by (f|_n B)(T) = (cT+d)^n f((aT+b)/(cT+d)),
i.e. sum_i f_i (aT+b)^i (cT+d)^(n-i).  If B carries the modulus m to a
nonzero scalar multiple of itself, f -> f|_N B is a bijection on degree-N
irreducibles that moves class c to c|_N B, and the class map is periodic in N
with period N0 = the order of cT+d mod m.
"""

import random
from dataclasses import dataclass
from math import gcd

from .characters import unit_group
from .errors import IntegrityError, UsageError
from .explicit import explicit_counter
from .polyring import Poly, format_poly
from .sieve import default_cutoff, sieve_count, sieve_count_nonmonic


@dataclass(frozen=True)
class Mat2:
    field: object
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        F = self.field
        if any(not 0 <= x < F.q for x in (self.a, self.b, self.c, self.d)):
            raise UsageError("matrix entries must be field elements 0..q-1")
        if self.det == 0:
            raise UsageError("matrix is singular")

    @property
    def det(self):
        F = self.field
        return F.sub(F.mul(self.a, self.d), F.mul(self.b, self.c))

    def __mul__(self, other):
        F = self.field
        return Mat2(F,
                    F.add(F.mul(self.a, other.a), F.mul(self.b, other.c)),
                    F.add(F.mul(self.a, other.b), F.mul(self.b, other.d)),
                    F.add(F.mul(self.c, other.a), F.mul(self.d, other.c)),
                    F.add(F.mul(self.c, other.b), F.mul(self.d, other.d)))

    def inverse(self):
        F = self.field
        di = F.inv(self.det)
        return Mat2(F, F.mul(di, self.d), F.mul(di, F.neg(self.b)),
                    F.mul(di, F.neg(self.c)), F.mul(di, self.a))

    @property
    def is_identity(self):
        return (self.a, self.b, self.c, self.d) == (1, 0, 0, 1)

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __repr__(self):
        return "[[%d,%d],[%d,%d]]" % self.entries()


def all_invertible(field):
    """GL2(F_q) in lexicographic entry order."""
    q = field.q
    out = []
    for a in range(q):
        for b in range(q):
            for c in range(q):
                for d in range(q):
                    if field.sub(field.mul(a, d), field.mul(b, c)) != 0:
                        out.append(Mat2(field, a, b, c, d))
    return out


def slash_action(f, n, B):
    """f|_n B = sum_i f_i (aT+b)^i (cT+d)^(n-i); requires n >= deg f."""
    if n < f.degree:
        raise UsageError("weight n=%d below deg f=%d" % (n, f.degree))
    F = f.field
    top = Poly(F, (B.b, B.a))     # aT + b
    bot = Poly(F, (B.d, B.c))     # cT + d
    top_pows = [Poly.one(F)]
    for _ in range(max(f.degree, 0)):
        top_pows.append(top_pows[-1] * top)
    bot_pows = [Poly.one(F)]
    for _ in range(n):
        bot_pows.append(bot_pows[-1] * bot)
    out = Poly.zero(F)
    for i, coeff in enumerate(f.coeffs):
        if coeff:
            out = out + (top_pows[i] * bot_pows[n - i]).scale(coeff)
    return out


def action_law_check(f, n, B1, B2):
    """f|_n (B1 B2) == (f|_n B1)|_n B2."""
    return slash_action(f, n, B1 * B2) == slash_action(slash_action(f, n, B1),
                                                       n, B2)


def stabilizer_search(m):
    """All (B, lam) with m|_M B = lam * m, scanning the whole of GL2(F_q) in
    deterministic order."""
    if m.degree < 1:
        raise UsageError("modulus must have degree >= 1")
    out = []
    M = m.degree
    for B in all_invertible(m.field):
        g = slash_action(m, M, B)
        if g.degree != M:
            continue
        lam = g.lc if m.is_monic else m.field.div(g.lc, m.lc)
        if g == m.scale(lam):
            out.append((B, lam))
    return out


@dataclass
class TieCertificate:
    """A stabilizing matrix plus the class permutation it induces at degrees
    N = residue (mod period).  monic_certified=False means only the
    not-necessarily-monic counts are certified equal."""
    modulus: Poly
    matrix: Mat2
    lam: int
    period: int                 # N0 = order of cT+d mod m
    residue_requested: int
    residue: int                # lifted to >= deg(m) - 1 so classes act
    orbit_map: dict             # Poly -> Poly on unit classes
    orbits: tuple               # tuple of class-tuples
    monic_certified: bool
    justification: str          # "q=2" | "gamma=0,ord(alpha)|gcd(e,N0)" | "none"

    def to_json(self):
        return {
            "modulus": format_poly(self.modulus),
            "field": repr(self.modulus.field),
            "matrix": list(self.matrix.entries()),
            "lambda": self.lam,
            "period": self.period,
            "residue": self.residue,
            "residue_requested": self.residue_requested,
            "orbit_map": {format_poly(c): format_poly(i)
                          for c, i in self.orbit_map.items()},
            "orbits": [[format_poly(c) for c in orb] for orb in self.orbits],
            "monic_certified": self.monic_certified,
            "justification": self.justification,
        }


def certify_ties(m, B, lam, e, rng=None):
    """Build the certificate for residue class e of the degree.

    e below deg(m)-1 is lifted by multiples of the period (the class map only
    depends on e mod N0, but c|_e B needs e >= deg c for every class
    representative)."""
    if e < 0:
        raise UsageError("residue must be >= 0")
    M = m.degree
    if slash_action(m, M, B) != m.scale(lam):
        raise UsageError("(B, lambda) does not stabilize the modulus")
    G = unit_group(m)
    bot = Poly(m.field, (B.d, B.c)) % m
    if not G.contains(bot):
        raise IntegrityError("cT+d is not a unit mod m for a stabilizer")
    period = G.order_of(bot)
    e_used = e
    while e_used < M - 1:
        e_used += period
    orbit_map = {}
    for c in G.units:
        img = slash_action(c, e_used, B) % m
        if not G.contains(img):
            raise IntegrityError("class map left the unit classes at %s" % c)
        orbit_map[c] = img
    if len(set(orbit_map.values())) != len(orbit_map):
        raise IntegrityError("class map is not a permutation")
    # spot-check periodicity: c|_(e+N0) B == c|_e B mod m
    sample = list(G.units)
    if len(sample) > 64:
        rng = rng or random.Random(0)
        sample = rng.sample(sample, 32)
    for c in sample:
        if slash_action(c, e_used + period, B) % m != orbit_map[c]:
            raise IntegrityError("period claim failed at %s" % c)
    orbits = _cycles(orbit_map)
    q = m.field.q
    if q == 2:
        monic, why = True, "q=2"
    elif B.c == 0 and gcd(e_used, period) % m.field.mult_order(B.a) == 0:
        monic, why = True, "gamma=0,ord(alpha)|gcd(e,N0)"
    else:
        monic, why = False, "none"
    return TieCertificate(modulus=m, matrix=B, lam=lam, period=period,
                          residue_requested=e, residue=e_used,
                          orbit_map=orbit_map, orbits=orbits,
                          monic_certified=monic, justification=why)


def _cycles(perm):
    seen = set()
    out = []
    for start in sorted(perm, key=lambda p: p.sort_key()):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        cur = perm[start]
        while cur != start:
            cyc.append(cur)
            seen.add(cur)
            cur = perm[cur]
        out.append(tuple(cyc))
    return tuple(out)


def _monic_counts(m, degree, sieve_limit):
    if degree <= sieve_limit:
        return sieve_count(m, degree).counts
    return explicit_counter(m).count(degree).counts


def _nonmonic_counts(m, degree, sieve_limit):
    if degree <= sieve_limit:
        return sieve_count_nonmonic(m, degree)
    field = m.field
    counts = explicit_counter(m).count(degree).counts
    out = {}
    for c in counts:
        out[c] = sum(counts[c.scale(field.inv(lam)) % m]
                     for lam in field.units())
    return out


def find_certificate_violation(cert, n_max, sieve_limit=None):
    """First (N, class, image) whose certified equality fails against the
    counting engines, or None.  Degrees run over N >= 2 in the certificate's
    residue class (the bijection needs deg >= 2)."""
    m = cert.modulus
    if sieve_limit is None:
        sieve_limit = min(default_cutoff(m.field.q), 12)
    counts_of = _monic_counts if cert.monic_certified else _nonmonic_counts
    for N in range(2, n_max + 1):
        if (N - cert.residue) % cert.period:
            continue
        counts = counts_of(m, N, sieve_limit)
        for c, img in cert.orbit_map.items():
            if counts[c] != counts[img]:
                return N, c, img
    return None


def verify_certificate_empirically(cert, n_max, sieve_limit=None):
    return find_certificate_violation(cert, n_max, sieve_limit) is None
