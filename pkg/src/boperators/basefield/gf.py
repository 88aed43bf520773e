"""Exact arithmetic in F_q, q = p^n, presented as F_p[g]/(min_poly).

Elements are coefficient tuples of length n (ascending powers of g).  The
defining polynomial is supplied explicitly in input files; irreducibility
is verified at construction by trial factorization, which is cheap at the
intended scale (n <= 8).
"""

from ..errors import DivisionByZero, FieldMismatch, ValidationError


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# -- univariate polynomials over F_p as int lists (ascending, no trailing 0)


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pdivmod(a, b, p):
    """Divide a by b over F_p; b must be nonempty."""
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    inv_lb = pow(lb, p - 2, p)
    q = [0] * max(len(a) - db, 0)
    while len(a) - 1 >= db and a:
        c = (a[-1] * inv_lb) % p
        k = len(a) - 1 - db
        q[k] = c
        for i, bi in enumerate(b):
            a[k + i] = (a[k + i] - c * bi) % p
        _trim(a)
    return q, a


def _pmulmod(a, b, mod, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    _trim(out)
    if len(out) >= len(mod):
        _, out = _pdivmod(out, mod, p)
    return out


def _monic_divisors_exist(poly, p):
    """Trial factorization: does poly have a monic factor of degree <= deg/2?"""
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        # all monic polynomials of degree d
        for code in range(p ** d):
            cand = []
            c = code
            for _ in range(d):
                cand.append(c % p)
                c //= p
            cand.append(1)
            _, rem = _pdivmod(poly, cand, p)
            if not rem:
                return True
    return False


class BaseField:
    """F_q = F_p[g]/(min_poly); hashable descriptor shared by all elements."""

    __slots__ = ("p", "deg", "min_poly")

    def __init__(self, p, deg=1, min_poly=None):
        if not _is_prime(p):
            raise ValidationError(f"characteristic {p} is not prime")
        if deg < 1:
            raise ValidationError("extension degree must be >= 1")
        if min_poly is None:
            if deg != 1:
                raise ValidationError("min_poly required for deg > 1")
            min_poly = (0, 1)
        mp = [c % p for c in min_poly]
        if len(mp) != deg + 1:
            raise ValidationError(
                f"min_poly must have degree {deg} (got {len(mp) - 1})")
        if mp[-1] != 1:
            # normalize to monic
            inv = pow(mp[-1], p - 2, p) if mp[-1] else 0
            if inv == 0:
                raise ValidationError("min_poly has zero leading coefficient")
            mp = [(c * inv) % p for c in mp]
        if deg > 1 and _monic_divisors_exist(mp, p):
            raise ValidationError("min_poly is reducible over F_p")
        self.p = p
        self.deg = deg
        self.min_poly = tuple(mp)

    @property
    def q(self):
        return self.p ** self.deg

    def __eq__(self, other):
        return (isinstance(other, BaseField) and self.p == other.p
                and self.deg == other.deg and self.min_poly == other.min_poly)

    def __hash__(self):
        return hash((self.p, self.deg, self.min_poly))

    def __repr__(self):
        if self.deg == 1:
            return f"F{self.p}"
        return f"F{self.p}^{self.deg}"

    def elem(self, coeffs):
        cs = [c % self.p for c in coeffs]
        if len(cs) > self.deg:
            _, cs = _pdivmod(cs, list(self.min_poly), self.p)
        cs += [0] * (self.deg - len(cs))
        return GFElem(self, tuple(cs[:self.deg]))

    def zero(self):
        return self.elem([0])

    def one(self):
        return self.elem([1])

    def from_int(self, n):
        return self.elem([n % self.p])

    def gen(self):
        if self.deg == 1:
            raise ValidationError("prime field has no generator symbol g")
        return self.elem([0, 1])

    def elements(self):
        for code in range(self.q):
            cs = []
            c = code
            for _ in range(self.deg):
                cs.append(c % self.p)
                c //= self.p
            yield GFElem(self, tuple(cs))


class GFElem:
    """An element of F_q; immutable, arithmetic is exact."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs

    def _check(self, other):
        if not isinstance(other, GFElem) or other.field != self.field:
            raise FieldMismatch("operands live in different base fields")

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def is_one(self):
        return self.coeffs[0] == 1 and all(c == 0 for c in self.coeffs[1:])

    def __eq__(self, other):
        return (isinstance(other, GFElem) and self.field == other.field
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def __add__(self, other):
        self._check(other)
        p = self.field.p
        return GFElem(self.field, tuple(
            (a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        p = self.field.p
        return GFElem(self.field, tuple(
            (a - b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        p = self.field.p
        return GFElem(self.field, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other):
        self._check(other)
        f = self.field
        prod = _pmulmod(_trim(list(self.coeffs)), _trim(list(other.coeffs)),
                        list(f.min_poly), f.p)
        prod += [0] * (f.deg - len(prod))
        return GFElem(f, tuple(prod[:f.deg]))

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero("inverse of zero in F_q")
        # extended Euclid in F_p[g]
        f = self.field
        p = f.p
        r0, r1 = list(f.min_poly), _trim(list(self.coeffs))
        s0, s1 = [], [1]
        while r1:
            q, r = _pdivmod(r0, r1, p)
            r0, r1 = r1, r
            # s0 - q*s1
            qs = [0] * (len(q) + len(s1) - 1) if q and s1 else []
            for i, qi in enumerate(q):
                if qi:
                    for j, sj in enumerate(s1):
                        qs[i + j] = (qs[i + j] + qi * sj) % p
            ln = max(len(s0), len(qs))
            new = [((s0[i] if i < len(s0) else 0)
                    - (qs[i] if i < len(qs) else 0)) % p for i in range(ln)]
            s0, s1 = s1, _trim(new)
        # r0 is gcd, a nonzero constant
        inv_c = pow(r0[0], p - 2, p)
        s0 = [(c * inv_c) % p for c in s0]
        return f.elem(s0)

    def __truediv__(self, other):
        self._check(other)
        return self * other.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def frobenius(self):
        return self ** self.field.p

    def pth_root(self):
        """Inverse of Frobenius; total on F_q since finite fields are perfect."""
        f = self.field
        if f.deg == 1:
            return self
        return self ** (f.p ** (f.deg - 1))

    # -- printing ----------------------------------------------------------

    def _signed(self, v):
        p = self.field.p
        return v if v <= p // 2 else v - p

    def coeff_parts(self):
        """(negative, magnitude-string) for use inside polynomial printing."""
        if self.field.deg == 1:
            v = self._signed(self.coeffs[0])
            return v < 0, str(abs(v))
        s = str(self)
        if s.startswith("-") and " " not in s:
            return True, s[1:]
        return False, s

    def __str__(self):
        terms = []
        for k in range(self.field.deg - 1, -1, -1):
            v = self._signed(self.coeffs[k])
            if v == 0:
                continue
            if k == 0:
                mono = "1"
            elif k == 1:
                mono = "g"
            else:
                mono = f"g^{k}"
            mag = abs(v)
            if mono == "1":
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            terms.append((v < 0, body))
        if not terms:
            return "0"
        out = ("-" if terms[0][0] else "") + terms[0][1]
        for neg, body in terms[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __repr__(self):
        return f"GF({self})"
