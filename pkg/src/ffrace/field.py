"""Exact arithmetic in small finite fields F_q, q = p^k, via full lookup tables.

Elements are integers 0..q-1; the base-p digits of an element are its
F_p-coordinates in the power basis of the canonical modulus.  The integer
encoding fixes a total order used for deterministic enumeration everywhere
downstream.
"""

from functools import lru_cache

from .errors import UsageError
from .numth import is_prime

MAX_Q = 256


def _fp_poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _fp_poly_mod(a, m, p):
    # m monic
    a = list(a)
    dm = len(m) - 1
    inv_ignored = 1  # m monic by construction
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    del a[dm:]
    return a

_ = _fp_poly_mod  # silence linters on the unused inv_ignored pattern


def _fp_is_irreducible(m, p):
    """Trial division; m monic over F_p, deg m = len(m)-1 small (<= 8)."""
    deg = len(m) - 1
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for t in range(p ** d):
            g = []
            tt = t
            for _ in range(d):
                g.append(tt % p)
                tt //= p
            g.append(1)
            # does g divide m?
            r = _fp_poly_mod(m, g, p)
            if not any(r):
                return False
    return True


@lru_cache(maxsize=None)
def _canonical_modulus(p, k):
    """Smallest (by integer encoding) monic irreducible of degree k over F_p."""
    for t in range(p ** k):
        coeffs = []
        tt = t
        for _ in range(k):
            coeffs.append(tt % p)
            tt //= p
        coeffs.append(1)
        if _fp_is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise AssertionError("no irreducible of degree %d over F_%d" % (k, p))


class FieldSpec:
    """Immutable description of F_q with precomputed add/mul/inv tables."""

    __slots__ = ("p", "k", "q", "modulus_poly", "_add", "_mul", "_neg", "_inv",
                 "_hash")

    def __init__(self, p, k=1):
        if not is_prime(p):
            raise UsageError("p = %r is not prime" % (p,))
        if k < 1:
            raise UsageError("extension degree must be >= 1")
        q = p ** k
        if q > MAX_Q:
            raise UsageError("q = %d exceeds supported bound %d" % (q, MAX_Q))
        self.p = p
        self.k = k
        self.q = q
        self.modulus_poly = _canonical_modulus(p, k) if k > 1 else ()
        self._build_tables()
        self._hash = hash((p, k, self.modulus_poly))

    def _build_tables(self):
        p, k, q = self.p, self.k, self.q
        if k == 1:
            self._add = [[(a + b) % p for b in range(p)] for a in range(p)]
            self._mul = [[(a * b) % p for b in range(p)] for a in range(p)]
            self._neg = [(-a) % p for a in range(p)]
        else:
            digits = [[(e // p ** i) % p for i in range(k)] for e in range(q)]
            enc = lambda cs: sum(c * p ** i for i, c in enumerate(cs[:k]))
            m = list(self.modulus_poly)
            self._add = [[enc([(x + y) % p for x, y in zip(digits[a], digits[b])])
                          for b in range(q)] for a in range(q)]
            self._neg = [enc([(-x) % p for x in digits[a]]) for a in range(q)]
            self._mul = []
            for a in range(q):
                row = []
                for b in range(q):
                    prod = _fp_poly_mul(digits[a], digits[b], p)
                    row.append(enc(_fp_poly_mod(prod, m, p) + [0] * k))
                self._mul.append(row)
        self._inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if self._mul[a][b] == 1:
                    self._inv[a] = b
                    break
            else:
                raise AssertionError("element %d has no inverse" % a)

    # --- element ops ------------------------------------------------------
    def add(self, a, b):
        return self._add[a][b]

    def sub(self, a, b):
        return self._add[a][self._neg[b]]

    def mul(self, a, b):
        return self._mul[a][b]

    def neg(self, a):
        return self._neg[a]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("division by zero in %s" % self)
        return self._inv[a]

    def div(self, a, b):
        return self._mul[a][self.inv(b)]

    def pow(self, a, n):
        if n < 0:
            a, n = self.inv(a), -n
        out, base = 1, a
        while n:
            if n & 1:
                out = self._mul[out][base]
            base = self._mul[base][base]
            n >>= 1
        return out

    def mult_order(self, a):
        """Order of a in F_q^x."""
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative order")
        n, x = 1, a
        while x != 1:
            x = self._mul[x][a]
            n += 1
        return n

    def from_int(self, c):
        """Reduce an integer literal into the field (mod p for prime fields;
        encodings taken mod q for extensions)."""
        return c % self.q if self.k > 1 else c % self.p

    def elements(self):
        return range(self.q)

    def units(self):
        return range(1, self.q)

    # --- identity ---------------------------------------------------------
    def __eq__(self, other):
        return (isinstance(other, FieldSpec)
                and (self.p, self.k, self.modulus_poly)
                == (other.p, other.k, other.modulus_poly))

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "F%d" % self.q


def field_op(spec, a, b, kind):
    """Dispatch by name; kind in {add, mul, sub, div}."""
    try:
        fn = {"add": spec.add, "mul": spec.mul,
              "sub": spec.sub, "div": spec.div}[kind]
    except KeyError:
        raise UsageError("unknown field op %r" % (kind,))
    return fn(a, b)


@lru_cache(maxsize=None)
def field_make(p, k=1):
    """F_{p^k} with the canonical (encoding-smallest) irreducible modulus."""
    return FieldSpec(p, k)


def parse_field(text):
    """Parse 'F2', 'F3', 'F4', ... into a FieldSpec (q must be a prime power)."""
    s = text.strip()
    if not s or s[0] not in "Ff" or not s[1:].isdigit():
        raise UsageError("bad field spec %r (expected e.g. 'F2', 'F9')" % (text,))
    q = int(s[1:])
    if q < 2:
        raise UsageError("bad field size %d" % q)
    p = 2
    while p <= q:
        if q % p == 0:
            k = 0
            qq = q
            while qq % p == 0:
                qq //= p
                k += 1
            if qq != 1:
                raise UsageError("%d is not a prime power" % q)
            return field_make(p, k)
        p += 1
    raise UsageError("%d is not a prime power" % q)
