"""Rational function fields K = k(y_1..y_m) with canonical representatives.

Every element is stored as num/den with gcd(num, den) = 1 and den monic
under the global degrevlex order, so structural equality is field equality.
m = 0 is allowed; K is then the base field itself, which keeps one element
type across every coefficient position in the toolkit.
"""

from ..errors import DivisionByZero, FieldMismatch, ValidationError
from .gf import BaseField, GFElem
from .polynomials import (GradedRevlex, MPoly, exact_divide, mpoly_gcd,
                          mpoly_pth_power, mpoly_pth_root, poly_str)


class FunctionField:
    __slots__ = ("base", "vars", "order")

    def __init__(self, base, variables=()):
        if not isinstance(base, BaseField):
            raise ValidationError("FunctionField needs a BaseField")
        vs = tuple(variables)
        if len(set(vs)) != len(vs):
            raise ValidationError("duplicate function-field variables")
        if "g" in vs:
            raise ValidationError("'g' is reserved for the F_q generator")
        self.base = base
        self.vars = vs
        self.order = GradedRevlex(len(vs))

    @property
    def nvars(self):
        return len(self.vars)

    def __eq__(self, other):
        return (isinstance(other, FunctionField) and self.base == other.base
                and self.vars == other.vars)

    def __hash__(self):
        return hash((self.base, self.vars))

    def __repr__(self):
        return f"{self.base!r}({','.join(self.vars)})"

    # -- element constructors ------------------------------------------------

    def from_poly(self, num, den=None):
        if den is None:
            den = MPoly.const(self.nvars, self.base.one())
        return RationalFunction(self, num, den)

    def zero(self):
        return self.from_poly(MPoly.zero(self.nvars))

    def one(self):
        return self.from_poly(MPoly.const(self.nvars, self.base.one()))

    def from_gf(self, c):
        if c.field != self.base:
            raise FieldMismatch("constant from a different base field")
        return self.from_poly(MPoly.const(self.nvars, c))

    def from_int(self, n):
        return self.from_gf(self.base.from_int(n))

    def gen(self, i):
        if isinstance(i, str):
            i = self.vars.index(i)
        return self.from_poly(MPoly.var(self.nvars, i, self.base.one()))

    def lookup(self, name):
        if name == "g":
            return self.from_gf(self.base.gen())
        if name in self.vars:
            return self.gen(name)
        raise KeyError(name)

    def parse(self, text):
        from .grammar import parse_expression
        return parse_expression(text, self)


class RationalFunction:
    """num/den over F_q, always normalized (coprime, monic denominator)."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field, num, den):
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if num.is_zero():
            num = MPoly.zero(field.nvars)
            den = MPoly.const(field.nvars, field.base.one())
        else:
            g = mpoly_gcd(num, den, field.order)
            if not g.is_constant():
                num = exact_divide(num, g, field.order)
                den = exact_divide(den, g, field.order)
            _, lc = den.leading(field.order)
            if not lc.is_one():
                inv = lc.inverse()
                num = num.scale(inv)
                den = den.scale(inv)
        self.field = field
        self.num = num
        self.den = den

    def _check(self, other):
        if not isinstance(other, RationalFunction) or other.field != self.field:
            raise FieldMismatch("operands live in different function fields")

    # -- predicates ------------------------------------------------------------

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.den.is_constant() and self.num == self.den

    def is_polynomial(self):
        return self.den.is_constant()

    def is_constant(self):
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self):
        if not self.is_constant():
            raise ValidationError("not a constant rational function")
        if self.is_zero():
            return self.field.base.zero()
        return self.num.constant_coeff(self.field.base.zero())

    def __eq__(self, other):
        return (isinstance(other, RationalFunction)
                and self.field == other.field and self.num == other.num
                and self.den == other.den)

    def __hash__(self):
        raise TypeError("RationalFunction is not hashable")

    # -- arithmetic -------------------------------------------------------------

    def __add__(self, other):
        self._check(other)
        return RationalFunction(
            self.field,
            self.num * other.den + other.num * self.den,
            self.den * other.den)

    def __sub__(self, other):
        self._check(other)
        return RationalFunction(
            self.field,
            self.num * other.den - other.num * self.den,
            self.den * other.den)

    def __neg__(self):
        return RationalFunction(self.field, -self.num, self.den)

    def __mul__(self, other):
        self._check(other)
        return RationalFunction(self.field, self.num * other.num,
                                self.den * other.den)

    def __truediv__(self, other):
        self._check(other)
        if other.is_zero():
            raise DivisionByZero("division by zero rational function")
        return RationalFunction(self.field, self.num * other.den,
                                self.den * other.num)

    def inverse(self):
        return self.field.one() / self

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

    # -- characteristic-p structure ---------------------------------------------

    def frobenius(self):
        p = self.field.base.p
        return RationalFunction(self.field, mpoly_pth_power(self.num, p),
                                mpoly_pth_power(self.den, p))

    def _power_numerator(self):
        """N with self = N / den^p; N = num * den^(p-1)."""
        p = self.field.base.p
        n = self.num
        for _ in range(p - 1):
            n = n * self.den
        return n

    def pth_root(self):
        """The unique b with b^p = self, or None when self is not in K^p."""
        if self.is_zero():
            return self.field.zero()
        p = self.field.base.p
        root = mpoly_pth_root(self._power_numerator(), p,
                              lambda c: c.pth_root())
        if root is None:
            return None
        return RationalFunction(self.field, root, self.den)

    def frobenius_decompose(self):
        """Write self = sum_alpha (g_alpha)^p * y^alpha over the K^p-basis
        {y^alpha : alpha in {0..p-1}^m}; returns {alpha: g_alpha}."""
        p = self.field.base.p
        m = self.field.nvars
        buckets = {}
        for e, c in self._power_numerator().terms.items():
            alpha = tuple(x % p for x in e)
            root_exp = tuple(x // p for x in e)
            part = buckets.setdefault(alpha, {})
            part[root_exp] = c.pth_root()
        out = {}
        for alpha, terms in buckets.items():
            out[alpha] = RationalFunction(
                self.field, MPoly(self.field.nvars, terms, clean=False),
                self.den)
        return out

    # -- printing -----------------------------------------------------------------

    def __str__(self):
        ns = poly_str(self.num, self.field.vars, self.field.order)
        if self.is_polynomial():
            return ns
        ds = poly_str(self.den, self.field.vars, self.field.order)
        return f"({ns})/({ds})"

    def __repr__(self):
        return f"Rat({self})"

    def coeff_parts(self):
        """Sign/body split used when this element is a coefficient."""
        if self.is_polynomial() and len(self.num.terms) == 1:
            from .polynomials import attach_coeff, monomial_str
            (exp, c), = self.num.terms.items()
            neg, mag = c.coeff_parts()
            return attach_coeff(neg, mag, monomial_str(exp, self.field.vars))
        return False, str(self)


def lambda0(a):
    """p-th root as a total function: 0 outside p-th powers."""
    r = a.pth_root()
    return a.field.zero() if r is None else r
