"""Multivariate polynomials over an exact coefficient ring.

Terms are stored as a dict {exponent tuple: coefficient}.  Coefficients can
be any exact ring element supporting +, -, *, unary -, == and is_zero();
division-dependent routines (gcd, monic normal forms) additionally need /.
The same class therefore serves three layers: polynomials over F_q (inside
rational functions), polynomials over K = k(y...) (ideals), and polynomials
over K (x) B during prolongation expansion.
"""

from ..errors import BadExponent, DivisionByZero


class GradedRevlex:
    """Graded reverse lexicographic order; earlier variables are larger."""

    __slots__ = ("nvars",)

    def __init__(self, nvars):
        self.nvars = nvars

    def key(self, exp):
        return (sum(exp), tuple(-e for e in reversed(exp)))

    def __eq__(self, other):
        return type(other) is GradedRevlex and other.nvars == self.nvars

    def __hash__(self):
        return hash(("grevlex", self.nvars))


class BlockOrder:
    """Elimination order: degrevlex on the first block, ties broken by the
    second block.  Variables [0, split) form the block being eliminated."""

    __slots__ = ("split", "nvars")

    def __init__(self, split, nvars):
        self.split = split
        self.nvars = nvars

    def key(self, exp):
        a, b = exp[:self.split], exp[self.split:]
        return ((sum(a), tuple(-e for e in reversed(a))),
                (sum(b), tuple(-e for e in reversed(b))))

    def __eq__(self, other):
        return (type(other) is BlockOrder and other.split == self.split
                and other.nvars == self.nvars)

    def __hash__(self):
        return hash(("block", self.split, self.nvars))


def exp_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def exp_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def exp_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def exp_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


class MPoly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None, clean=True):
        self.nvars = nvars
        if terms is None:
            self.terms = {}
        elif clean:
            self.terms = {e: c for e, c in terms.items() if not c.is_zero()}
        else:
            self.terms = terms

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, nvars):
        return cls(nvars, {}, clean=False)

    @classmethod
    def const(cls, nvars, c):
        if c.is_zero():
            return cls.zero(nvars)
        return cls(nvars, {(0,) * nvars: c}, clean=False)

    @classmethod
    def var(cls, nvars, i, one):
        exp = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(nvars, {exp: one}, clean=False)

    # -- predicates ----------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(sum(e) == 0 for e in self.terms)

    def constant_coeff(self, zero):
        return self.terms.get((0,) * self.nvars, zero)

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i):
        return max((e[i] for e in self.terms), default=-1)

    def vars_present(self):
        out = set()
        for e in self.terms:
            for i, x in enumerate(e):
                if x:
                    out.add(i)
        return out

    def __eq__(self, other):
        return (isinstance(other, MPoly) and self.nvars == other.nvars
                and self.terms == other.terms)

    def __hash__(self):
        raise TypeError("MPoly is not hashable")

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                s = out[e] + c
                if s.is_zero():
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return MPoly(self.nvars, out, clean=False)

    def __sub__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                s = out[e] - c
                if s.is_zero():
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = -c
        return MPoly(self.nvars, out, clean=False)

    def __neg__(self):
        return MPoly(self.nvars, {e: -c for e, c in self.terms.items()},
                     clean=False)

    def __mul__(self, other):
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = exp_mul(e1, e2)
                c = c1 * c2
                if e in out:
                    s = out[e] + c
                    if s.is_zero():
                        del out[e]
                    else:
                        out[e] = s
                elif not c.is_zero():
                    out[e] = c
        return MPoly(self.nvars, out, clean=False)

    def scale(self, c):
        if c.is_zero():
            return MPoly.zero(self.nvars)
        return MPoly(self.nvars, {e: k * c for e, k in self.terms.items()})

    def mul_term(self, exp, c):
        if c.is_zero():
            return MPoly.zero(self.nvars)
        return MPoly(self.nvars,
                     {exp_mul(e, exp): k * c for e, k in self.terms.items()})

    def __pow__(self, n):
        if n < 0:
            raise BadExponent("negative polynomial power")
        result = None
        base = self
        e0 = (0,) * self.nvars
        while True:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if not n:
                break
            base = base * base
        if result is None:
            # caller must have a coefficient one; represent 1 lazily
            raise BadExponent("power 0 needs an explicit unit; use const()")
        return result

    def pow_with_one(self, n, one):
        if n == 0:
            return MPoly.const(self.nvars, one)
        return self ** n

    def map_coeffs(self, fn):
        return MPoly(self.nvars, {e: fn(c) for e, c in self.terms.items()})

    # -- leading data ----------------------------------------------------------

    def leading(self, order):
        exp = max(self.terms, key=order.key)
        return exp, self.terms[exp]

    def sorted_terms(self, order, reverse=True):
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]),
                      reverse=reverse)

    def monic(self, order):
        if self.is_zero():
            return self
        _, lc = self.leading(order)
        if hasattr(lc, "is_one") and lc.is_one():
            return self
        return self.scale(_inverse(lc))

    # -- evaluation -------------------------------------------------------------

    def eval_full(self, values, embed):
        """Evaluate with one value per variable; embed lifts coefficients."""
        acc = None
        pow_cache = [dict() for _ in range(self.nvars)]
        for e, c in self.terms.items():
            term = embed(c)
            for i, k in enumerate(e):
                if k:
                    cache = pow_cache[i]
                    if k not in cache:
                        cache[k] = values[i] ** k
                    term = term * cache[k]
            acc = term if acc is None else acc + term
        return acc

    def partial_eval(self, values, embed):
        """Substitute values for a subset of variables (dict index -> value).

        Remaining variables stay symbolic; coefficients pass through embed."""
        out = MPoly.zero(self.nvars)
        for e, c in self.terms.items():
            coeff = embed(c)
            rest = list(e)
            for i, v in values.items():
                if e[i]:
                    coeff = coeff * (v ** e[i])
                    rest[i] = 0
            out = out + MPoly(self.nvars, {tuple(rest): coeff})
        return out


def _inverse(c):
    if hasattr(c, "inverse"):
        return c.inverse()
    raise DivisionByZero("coefficient type does not support inversion")


# -- division and normal forms ------------------------------------------------


def normal_form(f, basis, order):
    """Full multivariate division remainder of f by the list basis."""
    rem = MPoly.zero(f.nvars)
    work = f
    leads = [(g.leading(order)[0], g) for g in basis if not g.is_zero()]
    while not work.is_zero():
        e, c = work.leading(order)
        hit = None
        for lg, g in leads:
            if exp_divides(lg, e):
                hit = (lg, g)
                break
        if hit is None:
            rem = rem + MPoly(work.nvars, {e: c}, clean=False)
            work = work - MPoly(work.nvars, {e: c}, clean=False)
        else:
            lg, g = hit
            factor = c * _inverse(g.terms[lg])
            work = work - g.mul_term(exp_div(e, lg), factor)
    return rem


def exact_divide(f, g, order):
    """Quotient f/g when g divides f exactly; raises otherwise."""
    if g.is_zero():
        raise DivisionByZero("exact division by zero polynomial")
    quot = MPoly.zero(f.nvars)
    work = f
    lg, cg = g.leading(order)
    inv_cg = _inverse(cg)
    while not work.is_zero():
        e, c = work.leading(order)
        if not exp_divides(lg, e):
            raise DivisionByZero("exact division has a remainder")
        t_exp = exp_div(e, lg)
        t_c = c * inv_cg
        quot = quot + MPoly(f.nvars, {t_exp: t_c}, clean=False)
        work = work - g.mul_term(t_exp, t_c)
    return quot


# -- gcd via primitive pseudo-remainder sequences --------------------------------


def _to_univar(f, v):
    """View f as univariate in variable v with MPoly coefficients."""
    out = {}
    for e, c in f.terms.items():
        d = e[v]
        rest = list(e)
        rest[v] = 0
        coeff = out.setdefault(d, MPoly.zero(f.nvars))
        out[d] = coeff + MPoly(f.nvars, {tuple(rest): c}, clean=False)
    return {d: c for d, c in out.items() if not c.is_zero()}

def _from_univar(uni, v, nvars):
    out = MPoly.zero(nvars)
    for d, c in uni.items():
        exp = tuple(d if i == v else 0 for i in range(nvars))
        out = out + c.mul_term(exp, _coeff_one(c))
    return out


def _coeff_one(poly):
    # fetch a multiplicative unit of the coefficient ring from any entry
    c = next(iter(poly.terms.values()))
    return c * _inverse(c)


def _pseudo_rem(f, g, nvars):
    """Pseudo-remainder of univariate-view polynomials f, g (dicts)."""
    df = max(f)
    dg = max(g)
    lg = g[dg]
    r = dict(f)
    while r and max(r) >= dg:
        dr = max(r)
        lr = r[dr]
        # r := lg * r - lr * x^(dr-dg) * g
        new = {}
        for d, c in r.items():
            new[d] = c * lg
        for d, c in g.items():
            dd = d + dr - dg
            sub = c * lr
            new[dd] = new[dd] - sub if dd in new else -sub
        r = {d: c for d, c in new.items() if not c.is_zero()}
    return r


def mpoly_gcd(f, g, order=None):
    """Monic gcd of two polynomials with field coefficients."""
    if order is None:
        order = GradedRevlex(f.nvars)
    if f.is_zero():
        return g.monic(order)
    if g.is_zero():
        return f.monic(order)
    vs = f.vars_present() | g.vars_present()
    if not vs:
        return MPoly.const(f.nvars, _coeff_one(f))
    v = max(vs)
    fu = _to_univar(f, v)
    gu = _to_univar(g, v)

    def content(uni):
        acc = MPoly.zero(f.nvars)
        for c in uni.values():
            acc = mpoly_gcd(acc, c, order)
        return acc

    def primitive(uni):
        cont = content(uni)
        return cont, {d: exact_divide(c, cont, order) for d, c in uni.items()}

    cf, pf = primitive(fu)
    cg, pg = primitive(gu)
    c_gcd = mpoly_gcd(cf, cg, order)
    a, b = pf, pg
    if max(a) < max(b):
        a, b = b, a
    while b:
        r = _pseudo_rem(a, b, f.nvars)
        if not r:
            a = b
            break
        _, r = primitive(r)
        a, b = b, r
    _, a = primitive(a)
    result = _from_univar(a, v, f.nvars) * c_gcd
    return result.monic(order)


def mpoly_pth_root(f, p, coeff_root):
    """p-th root of a polynomial, or None: every exponent must be divisible
    by p; coefficients get coeff_root applied (total on perfect F_q)."""
    out = {}
    for e, c in f.terms.items():
        if any(x % p for x in e):
            return None
        out[tuple(x // p for x in e)] = coeff_root(c)
    return MPoly(f.nvars, out, clean=False)


def mpoly_pth_power(f, p):
    """Freshman's-dream power: exponents scale by p, coefficients by ^p."""
    return MPoly(f.nvars, {tuple(x * p for x in e): c ** p
                           for e, c in f.terms.items()}, clean=False)


# -- printing -------------------------------------------------------------------


def format_terms(parts):
    """Join (negative, body) pairs into a canonical signed sum string."""
    if not parts:
        return "0"
    out = ("-" if parts[0][0] else "") + parts[0][1]
    for neg, body in parts[1:]:
        out += (" - " if neg else " + ") + body
    return out


def _top_level_sum(s):
    depth = 0
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and ch in "+- ":
            return True
    return False


def attach_coeff(neg, mag, mono):
    """Render one term from a coefficient's sign/body and a monomial string."""
    if not mono:
        return neg, mag
    if mag == "1":
        return neg, mono
    if _top_level_sum(mag):
        mag = f"({mag})"
    return neg, f"{mag}*{mono}"


def monomial_str(exp, names):
    pieces = []
    for i, k in enumerate(exp):
        if k == 0:
            continue
        if k == 1:
            pieces.append(names[i])
        else:
            pieces.append(f"{names[i]}^{k}")
    return "*".join(pieces)


def poly_str(f, names, order=None):
    """Canonical string: terms in descending monomial order."""
    if f.is_zero():
        return "0"
    if order is None:
        order = GradedRevlex(f.nvars)
    parts = []
    for exp, c in f.sorted_terms(order):
        neg, mag = c.coeff_parts()
        parts.append(attach_coeff(neg, mag, monomial_str(exp, names)))
    return format_terms(parts)
