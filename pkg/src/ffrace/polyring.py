"""Dense polynomials over F_q: ring arithmetic, irreducibility, factorization,
and canonical enumeration.

A polynomial is encoded as the integer sum(c_i * q^i); within one degree this
coincides with comparing coefficient vectors most-significant-first, so the
integer encoding *is* the canonical order used for table rows, generator
choices and tie-breaking.
"""

from dataclasses import dataclass
from functools import lru_cache

from .errors import UsageError
from .numth import prime_factors


class Poly:
    """Immutable dense polynomial over a FieldSpec.  coeffs[i] is the T^i
    coefficient; no trailing zeros; the zero polynomial has coeffs == ()."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    # --- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, field):
        return cls(field, ())

    @classmethod
    def one(cls, field):
        return cls(field, (1,))

    @classmethod
    def const(cls, field, c):
        return cls(field, (field.from_int(c),))

    @classmethod
    def T(cls, field):
        return cls(field, (0, 1))

    @classmethod
    def monomial(cls, field, c, e):
        return cls(field, (0,) * e + (field.from_int(c),))

    @classmethod
    def from_index(cls, field, idx):
        """Inverse of encode(): base-q digits of idx are the coefficients."""
        q = field.q
        cs = []
        while idx:
            cs.append(idx % q)
            idx //= q
        return cls(field, cs)

    # --- structure --------------------------------------------------------
    @property
    def degree(self):
        """-1 is the zero-polynomial sentinel."""
        return len(self.coeffs) - 1

    @property
    def lc(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def encode(self):
        q = self.field.q
        out = 0
        for c in reversed(self.coeffs):
            out = out * q + c
        return out

    def sort_key(self):
        return self.encode()

    def __eq__(self, other):
        return (isinstance(other, Poly) and self.field == other.field
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    # --- arithmetic -------------------------------------------------------
    def _check(self, other):
        if self.field != other.field:
            raise UsageError("mixed fields: %r vs %r" % (self.field, other.field))

    def __add__(self, other):
        self._check(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return Poly(F, out)

    def __neg__(self):
        F = self.field
        return Poly(F, [F.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(F)
        out = [0] * (len(a) + len(b) - 1)
        add, mul = F.add, F.mul
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = add(out[i + j], mul(x, y))
        return Poly(F, out)

    def scale(self, c):
        F = self.field
        c = F.from_int(c) if not (0 <= c < F.q) else c
        return Poly(F, [F.mul(c, x) for x in self.coeffs])

    def shift(self, e):
        """Multiply by T^e."""
        if self.is_zero or e == 0:
            return self if e == 0 else self
        return Poly(self.field, (0,) * e + self.coeffs)

    def __divmod__(self, other):
        self._check(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        r = list(self.coeffs)
        d = other.degree
        if self.degree < d:
            return Poly.zero(F), self
        inv_lc = F.inv(other.lc)
        quo = [0] * (self.degree - d + 1)
        sub, mul = F.sub, F.mul
        oc = other.coeffs
        for i in range(len(r) - 1, d - 1, -1):
            c = r[i]
            if c:
                t = mul(c, inv_lc)
                quo[i - d] = t
                for j in range(d + 1):
                    r[i - d + j] = sub(r[i - d + j], mul(t, oc[j]))
        return Poly(F, quo), Poly(F, r[:d])

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative polynomial power")
        out, base = Poly.one(self.field), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def monic(self):
        if self.is_zero:
            return self
        return self.scale(self.field.inv(self.lc))

    def __call__(self, x):
        """Evaluate at a field element (Horner)."""
        F = self.field
        out = 0
        for c in reversed(self.coeffs):
            out = F.add(F.mul(out, x), c)
        return out

    def subst(self, g):
        """Compose: self(g(T))."""
        F = self.field
        out = Poly.zero(F)
        for c in reversed(self.coeffs):
            out = out * g + Poly.const(F, c)
        return out

    def __repr__(self):
        return "Poly(%r, %s)" % (self.field, format_poly(self))


def poly_gcd(f, g):
    """Monic gcd."""
    while not g.is_zero:
        f, g = g, f % g
    return f.monic() if not f.is_zero else f


def poly_arith(f, g, kind):
    """Dispatch by name; kind in {add, sub, mul, divmod, gcd}."""
    try:
        fn = {"add": lambda: f + g, "sub": lambda: f - g,
              "mul": lambda: f * g, "divmod": lambda: divmod(f, g),
              "gcd": lambda: poly_gcd(f, g)}[kind]
    except KeyError:
        raise UsageError("unknown poly op %r" % (kind,))
    return fn()


def powmod(base, e, mod):
    """base^e mod `mod` by repeated squaring."""
    out, b = Poly.one(base.field), base % mod
    while e:
        if e & 1:
            out = (out * b) % mod
        b = (b * b) % mod
        e >>= 1
    return out


def is_irreducible(f):
    """Monic f of degree >= 1.  Standard criterion: T^(q^n) = T (mod f) and
    gcd(T^(q^(n/l)) - T, f) = 1 for every prime l | n."""
    if not f.is_monic or f.degree < 1:
        raise UsageError("is_irreducible needs a monic polynomial of degree >= 1")
    n = f.degree
    if n == 1:
        return True
    F = f.field
    q = F.q
    t = Poly.T(F)
    # frob[i] = T^(q^i) mod f, computed once up the tower
    frob = [t % f]
    x = frob[0]
    for _ in range(n):
        x = powmod(x, q, f)
        frob.append(x)
    if frob[n] != t % f:
        return False
    for l in prime_factors(n):
        g = poly_gcd(frob[n // l] - t, f)
        if g.degree != 0:
            return False
    return True


@dataclass(frozen=True)
class Factorization:
    """Complete factorization unit * prod(p_i^e_i) with monic irreducible p_i,
    listed in canonical (degree, encoding) order."""
    unit: int
    factors: tuple  # of (Poly, multiplicity)

    def reassemble(self, field):
        out = Poly.const(field, self.unit)
        for p, e in self.factors:
            out = out * p ** e
        return out

    def distinct_degrees(self):
        return sorted({p.degree for p, _ in self.factors})


def factorize(f):
    """Factor f (degree >= 1) into monic irreducibles with multiplicities.

    Degrees are extracted ascending; within a degree, candidates dividing the
    squarefree degree-d part gcd(T^(q^d) - T, rem) are scanned in encoding
    order, so the output order is deterministic.
    """
    if f.degree < 1:
        raise UsageError("cannot factor a constant")
    F = f.field
    q = F.q
    unit = f.lc
    rem = f.monic()
    out = []
    t = Poly.T(F)
    d = 0
    frob = t  # T^(q^d) mod rem, recomputed when rem shrinks
    while rem.degree >= 1:
        d += 1
        if 2 * d > rem.degree:
            out.append((rem, 1))
            break
        frob = powmod(frob, q, rem)
        part = poly_gcd(frob - t, rem)
        if part.degree == 0:
            continue
        for cand in enumerate_monic(F, d):
            if part.degree == 0:
                break
            if (part % cand).is_zero:
                mult = 0
                while True:
                    quo, r = divmod(rem, cand)
                    if not r.is_zero:
                        break
                    rem = quo
                    mult += 1
                out.append((cand, mult))
                part = part // cand
        frob = frob % rem
    out.sort(key=lambda pe: pe[0].sort_key())
    fact = Factorization(unit=unit, factors=tuple(out))
    assert fact.reassemble(F) == f, "factorization does not reassemble"
    return fact


def enumerate_monic(field, degree):
    """All q^degree monic polynomials of the given degree, in encoding order."""
    if degree < 0:
        raise UsageError("degree must be >= 0")
    q = field.q
    base = q ** degree
    for t in range(base):
        yield Poly.from_index(field, base + t)


# --- literal grammar ------------------------------------------------------
# terms c*T^e | T^e | T | c joined by '+'; emitted with descending exponents.

def parse_poly(field, text):
    s = text.replace(" ", "")
    if not s:
        raise UsageError("empty polynomial literal")
    coeffs = {}
    for term in s.split("+"):
        if not term:
            raise UsageError("bad polynomial literal %r" % (text,))
        if "T" in term:
            head, _, tail = term.partition("T")
            if head.endswith("*"):
                head = head[:-1]
            if head and not head.isdigit():
                raise UsageError("bad coefficient in %r" % (text,))
            c = int(head) if head else 1
            if tail:
                if not tail.startswith("^") or not tail[1:].isdigit():
                    raise UsageError("bad exponent in %r" % (text,))
                e = int(tail[1:])
            else:
                e = 1
        else:
            if not term.isdigit():
                raise UsageError("bad term %r in %r" % (term, text))
            c, e = int(term), 0
        c = field.from_int(c)
        coeffs[e] = field.add(coeffs.get(e, 0), c)
    deg = max(coeffs) if coeffs else 0
    return Poly(field, [coeffs.get(i, 0) for i in range(deg + 1)])


def format_poly(f):
    if f.is_zero:
        return "0"
    terms = []
    for e in range(f.degree, -1, -1):
        c = f.coeffs[e]
        if not c:
            continue
        if e == 0:
            terms.append(str(c))
        elif e == 1:
            terms.append("T" if c == 1 else "%d*T" % c)
        else:
            terms.append("T^%d" % e if c == 1 else "%d*T^%d" % (c, e))
    return "+".join(terms)
