"""One-level p-th-root towers L = K(t_1^{1/p}, ..., t_r^{1/p}).

Elements are K-linear combinations of the monomials z^alpha with alpha in
{0..p-1}^r, reduced via z_i^p = t_i.  Construction verifies that each t_i
is not a p-th power in the partial tower built so far, which makes L a
field of degree p^r over K and keeps representatives canonical.

Membership in L^p reduces to a linear system over K: expanding w in K and
the products t^alpha over the K^p-basis {y^beta : beta in {0..p-1}^m} turns
w = sum_alpha a_alpha^p t^alpha into K-linear equations for the a_alpha.
"""

from ..errors import (DivisionByZero, FieldMismatch, UnsupportedTower,
                      ValidationError)
from .rational import FunctionField, RationalFunction


def _iter_exponents(p, r):
    if r == 0:
        yield ()
        return
    for rest in _iter_exponents(p, r - 1):
        for i in range(p):
            yield rest + (i,)


def _solve_over_K(rows, rhs, field):
    """Gaussian elimination over K; returns a solution list or None."""
    m = len(rows)
    n = len(rows[0]) if rows else 0
    aug = [list(row) + [b] for row, b in zip(rows, rhs)]
    piv_cols = []
    r = 0
    for c in range(n):
        pivot = None
        for i in range(r, m):
            if not aug[i][c].is_zero():
                pivot = i
                break
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = aug[r][c].inverse()
        aug[r] = [x * inv for x in aug[r]]
        for i in range(m):
            if i != r and not aug[i][c].is_zero():
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if not aug[i][n].is_zero():
            return None
    sol = [field.zero() for _ in range(n)]
    for row_i, c in enumerate(piv_cols):
        sol[c] = aug[row_i][n]
    return sol


def _pth_power_coords(w, radicands, field):
    """Solve w = sum a_alpha^p * t^alpha for a_alpha in K; None if impossible."""
    p = field.base.p
    r = len(radicands)
    exps = list(_iter_exponents(p, r))
    cols = []
    support = set()
    decomposed = []
    for alpha in exps:
        t_alpha = field.one()
        for tj, aj in zip(radicands, alpha):
            if aj:
                t_alpha = t_alpha * tj ** aj
        dec = t_alpha.frobenius_decompose()
        decomposed.append(dec)
        support.update(dec)
    w_dec = w.frobenius_decompose()
    support.update(w_dec)
    support = sorted(support)
    zero = field.zero()
    rows = [[decomposed[j].get(beta, zero) for j in range(len(exps))]
            for beta in support]
    rhs = [w_dec.get(beta, zero) for beta in support]
    sol = _solve_over_K(rows, rhs, field)
    if sol is None:
        return None
    return dict(zip(exps, sol))


class Tower:
    __slots__ = ("base", "root_names", "radicands")

    def __init__(self, base, root_names, radicands):
        if not isinstance(base, FunctionField):
            raise ValidationError("tower base must be a function field")
        names = tuple(root_names)
        rads = tuple(radicands)
        if len(names) != len(rads):
            raise ValidationError("one name per adjoined root required")
        if len(set(names)) != len(names) or set(names) & set(base.vars):
            raise ValidationError("tower root names clash")
        if "g" in names:
            raise ValidationError("'g' is reserved for the F_q generator")
        for i, t in enumerate(rads):
            if t.field != base:
                raise FieldMismatch("radicand outside the base field")
            if t.is_zero():
                raise UnsupportedTower("zero radicand")
            if _pth_power_coords(t, rads[:i], base) is not None:
                raise UnsupportedTower(
                    f"radicand {names[i]}^{base.base.p} = {t} is already a "
                    "p-th power in the partial tower")
        self.base = base
        self.root_names = names
        self.radicands = rads

    @property
    def p(self):
        return self.base.base.p

    @property
    def r(self):
        return len(self.root_names)

    def __eq__(self, other):
        return (isinstance(other, Tower) and self.base == other.base
                and self.root_names == other.root_names
                and all(a == b for a, b in zip(self.radicands, other.radicands)))

    def __hash__(self):
        return hash((self.base, self.root_names))

    def __repr__(self):
        rel = ", ".join(f"{z}^{self.p}={t}"
                        for z, t in zip(self.root_names, self.radicands))
        return f"Tower({self.base!r}; {rel})"

    # -- element constructors --------------------------------------------------

    def embed(self, a):
        if a.field != self.base:
            raise FieldMismatch("element outside the tower's base field")
        return TowerElement(self, {(0,) * self.r: a})

    def zero(self):
        return TowerElement(self, {})

    def one(self):
        return self.embed(self.base.one())

    def from_gf(self, c):
        return self.embed(self.base.from_gf(c))

    def from_int(self, n):
        return self.embed(self.base.from_int(n))

    def root(self, i):
        if isinstance(i, str):
            i = self.root_names.index(i)
        exp = tuple(1 if j == i else 0 for j in range(self.r))
        return TowerElement(self, {exp: self.base.one()})

    def lookup(self, name):
        if name in self.root_names:
            return self.root(name)
        return self.embed(self.base.lookup(name))

    def parse(self, text):
        from .grammar import parse_expression
        return parse_expression(text, self)


class TowerElement:
    __slots__ = ("tower", "coeffs")

    def __init__(self, tower, coeffs):
        self.tower = tower
        self.coeffs = {e: c for e, c in coeffs.items() if not c.is_zero()}

    @property
    def field(self):
        return self.tower

    def _check(self, other):
        if not isinstance(other, TowerElement) or other.tower != self.tower:
            raise FieldMismatch("operands live in different towers")

    def is_zero(self):
        return not self.coeffs

    def is_one(self):
        return (len(self.coeffs) == 1
                and self.coeffs.get((0,) * self.tower.r, None) is not None
                and self.coeffs[(0,) * self.tower.r].is_one())

    def in_base(self):
        return all(sum(e) == 0 for e in self.coeffs)

    def base_part(self):
        """The K-element this reduces to; requires in_base()."""
        if not self.in_base():
            raise ValidationError("element uses tower roots")
        if self.is_zero():
            return self.tower.base.zero()
        return self.coeffs[(0,) * self.tower.r]

    def __eq__(self, other):
        return (isinstance(other, TowerElement) and self.tower == other.tower
                and self.coeffs == other.coeffs)

    def __hash__(self):
        raise TypeError("TowerElement is not hashable")

    # -- arithmetic ---------------------------------------------------------------

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out[e] + c if e in out else c
        return TowerElement(self.tower, out)

    def __sub__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out[e] - c if e in out else -c
        return TowerElement(self.tower, out)

    def __neg__(self):
        return TowerElement(self.tower, {e: -c for e, c in self.coeffs.items()})

    def __mul__(self, other):
        self._check(other)
        p = self.tower.p
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                c = c1 * c2
                exp = []
                for j, (a, b) in enumerate(zip(e1, e2)):
                    s = a + b
                    if s >= p:
                        s -= p
                        c = c * self.tower.radicands[j]
                    exp.append(s)
                exp = tuple(exp)
                out[exp] = out[exp] + c if exp in out else c
        return TowerElement(self.tower, out)

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.tower.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero("inverse of zero tower element")
        t = self.tower
        exps = list(_iter_exponents(t.p, t.r))
        idx = {e: i for i, e in enumerate(exps)}
        n = len(exps)
        zero = t.base.zero()
        # column j of the multiplication-by-self matrix
        cols = []
        for e in exps:
            prod = self * TowerElement(t, {e: t.base.one()})
            cols.append([prod.coeffs.get(f, zero) for f in exps])
        rows = [[cols[j][i] for j in range(n)] for i in range(n)]
        rhs = [t.one().coeffs.get(f, zero) for f in exps]
        sol = _solve_over_K(rows, rhs, t.base)
        if sol is None:
            raise DivisionByZero("tower representation is not a field")
        return TowerElement(t, {e: sol[idx[e]] for e in exps})

    def __truediv__(self, other):
        self._check(other)
        return self * other.inverse()

    # -- characteristic-p structure ---------------------------------------------

    def frobenius(self):
        return self ** self.tower.p

    def pth_root(self):
        """Root within the tower, or None.  L^p lies inside K, so elements
        with genuine root coordinates never have one."""
        if not self.in_base():
            return None
        coords = _pth_power_coords(self.base_part(), self.tower.radicands,
                                   self.tower.base)
        if coords is None:
            return None
        return TowerElement(self.tower, coords)

    # -- printing ------------------------------------------------------------------

    def _mono_str(self, e):
        pieces = []
        for name, k in zip(self.tower.root_names, e):
            if k == 1:
                pieces.append(name)
            elif k > 1:
                pieces.append(f"{name}^{k}")
        return "*".join(pieces)

    def __str__(self):
        if self.is_zero():
            return "0"
        from .polynomials import attach_coeff, format_terms
        items = sorted(self.coeffs.items(), key=lambda t: (sum(t[0]), t[0]),
                       reverse=True)
        parts = []
        for e, c in items:
            neg, mag = c.coeff_parts()
            parts.append(attach_coeff(neg, mag, self._mono_str(e)))
        return format_terms(parts)

    def __repr__(self):
        return f"TowerElem({self})"

    def coeff_parts(self):
        if self.in_base():
            if self.is_zero():
                return False, "0"
            return self.base_part().coeff_parts()
        return False, str(self)


def pth_power_in_tower(w, tower):
    """Is w in L^p for L the given tower?  w must lie in the base field K."""
    if isinstance(w, TowerElement):
        if not w.in_base():
            raise UnsupportedTower("w must lie in the tower's base field")
        w = w.base_part()
    if not isinstance(w, RationalFunction):
        raise UnsupportedTower("w must be a rational function over K")
    if w.field != tower.base:
        raise FieldMismatch("w lives over a different base field")
    return _pth_power_coords(w, tower.radicands, tower.base) is not None
