"""Deterministic Buchberger engine over K = k(y_1..y_m).

Coefficients are true fraction-field elements, so every reduction is exact
and the reduced basis is the canonical one for the chosen order.  Pair
selection uses the normal strategy (smallest lcm in the current order, ties
broken by generator indices); the coprime-lead criterion prunes pairs.  No
F4/F5: determinism over speed at this scale.
"""

from .basefield.polynomials import (BlockOrder, GradedRevlex, MPoly,
                                    exp_divides, exp_div, exp_lcm, exp_mul,
                                    normal_form, poly_str)
from .basefield.rational import FunctionField, RationalFunction
from .errors import BudgetExceeded, RingMismatch, ValidationError


class PolyRing:
    """Variable list over a coefficient function field, with print support."""

    __slots__ = ("field", "vars", "order")

    def __init__(self, field, variables):
        vs = tuple(variables)
        if len(set(vs)) != len(vs):
            raise ValidationError("duplicate ring variables")
        clash = set(vs) & (set(field.vars) | {"g"})
        if clash:
            raise ValidationError(f"ring variables clash with K: {clash}")
        self.field = field
        self.vars = vs
        self.order = GradedRevlex(len(vs))

    @property
    def nvars(self):
        return len(self.vars)

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.field == other.field
                and self.vars == other.vars)

    def __hash__(self):
        return hash((self.field, self.vars))

    def zero(self):
        return MPoly.zero(self.nvars)

    def one(self):
        return MPoly.const(self.nvars, self.field.one())

    def var(self, name):
        return MPoly.var(self.nvars, self.vars.index(name), self.field.one())

    def const(self, c):
        return MPoly.const(self.nvars, c)

    def poly_str(self, f, order=None):
        return poly_str(f, self.vars, order or self.order)

    def parse(self, text):
        """Parse an expression into a polynomial of this ring.

        Ring variables and K-elements may be mixed; division is allowed by
        K-elements only."""
        from .basefield.grammar import parse_expression
        return parse_expression(text, _PolyParseAdapter(self)).poly


class _PolyParseAdapter:
    """Makes PolyRing usable as the grammar's target field."""

    def __init__(self, ring):
        self.ring = ring

    def lookup(self, name):
        if name in self.ring.vars:
            return _ParsedPoly(self.ring, self.ring.var(name))
        return _ParsedPoly(self.ring, self.ring.const(
            self.ring.field.lookup(name)))

    def from_int(self, n):
        return _ParsedPoly(self.ring, self.ring.const(
            self.ring.field.from_int(n)))


class _ParsedPoly:
    __slots__ = ("ring", "poly")

    def __init__(self, ring, poly):
        self.ring = ring
        self.poly = poly

    def __add__(self, other):
        return _ParsedPoly(self.ring, self.poly + other.poly)

    def __sub__(self, other):
        return _ParsedPoly(self.ring, self.poly - other.poly)

    def __neg__(self):
        return _ParsedPoly(self.ring, -self.poly)

    def __mul__(self, other):
        return _ParsedPoly(self.ring, self.poly * other.poly)

    def __truediv__(self, other):
        if not other.poly.is_constant():
            raise ValidationError("division by a ring variable expression")
        c = other.poly.constant_coeff(self.ring.field.zero())
        return _ParsedPoly(self.ring, self.poly.scale(c.inverse()))

    def __pow__(self, n):
        return _ParsedPoly(self.ring,
                           self.poly.pow_with_one(n, self.ring.field.one()))


def buchberger(gens, order, step_budget=None):
    """Groebner basis by Buchberger's algorithm; deterministic."""
    basis = [g.monic(order) for g in gens if not g.is_zero()]
    # shortcut: a nonzero constant generator already spans (1)
    for g in basis:
        if g.is_constant():
            return [g]
    pairs = {(i, j) for i in range(len(basis)) for j in range(i)}
    steps = 0
    while pairs:
        # normal strategy: the pair whose lcm is smallest in the order
        def pair_key(pr):
            i, j = pr
            li = basis[i].leading(order)[0]
            lj = basis[j].leading(order)[0]
            return (order.key(exp_lcm(li, lj)), i, j)
        i, j = min(pairs, key=pair_key)
        pairs.discard((i, j))
        li = basis[i].leading(order)[0]
        lj = basis[j].leading(order)[0]
        lcm = exp_lcm(li, lj)
        if lcm == exp_mul(li, lj):
            continue  # coprime leads: S-polynomial reduces to zero
        steps += 1
        if step_budget is not None and steps > step_budget:
            raise BudgetExceeded(f"Groebner step budget {step_budget} hit")
        fi, fj = basis[i], basis[j]
        s = (fi.mul_term(exp_div(lcm, li), fi.leading(order)[1].inverse())
             - fj.mul_term(exp_div(lcm, lj), fj.leading(order)[1].inverse()))
        rem = normal_form(s, basis, order)
        if not rem.is_zero():
            rem = rem.monic(order)
            basis.append(rem)
            k = len(basis) - 1
            pairs.update((k, t) for t in range(k))
    return basis


def reduce_basis(basis, order):
    """Canonical reduced Groebner basis, sorted by descending leading term."""
    basis = [g for g in basis if not g.is_zero()]
    # minimality: drop leads divisible by other leads
    keep = []
    leads = [g.leading(order)[0] for g in basis]
    for i, g in enumerate(basis):
        li = leads[i]
        if any(j != i and exp_divides(leads[j], li)
               and (leads[j] != li or j < i) for j in range(len(basis))):
            continue
        keep.append(g)
    # full tail reduction
    reduced = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1:]
        r = normal_form(g, others, order) if others else g
        if not r.is_zero():
            reduced.append(r.monic(order))
    reduced.sort(key=lambda f: order.key(f.leading(order)[0]), reverse=True)
    return reduced


class Ideal:
    """Ideal with caching of the canonical reduced basis."""

    def __init__(self, ring, gens, order=None):
        self.ring = ring
        self.order = order or ring.order
        self.gens = [g for g in gens]
        self._gb = None

    def _check(self, other):
        if not isinstance(other, Ideal) or other.ring != self.ring:
            raise RingMismatch("ideals live in different rings")

    def groebner(self, step_budget=None):
        if self._gb is None:
            gb = buchberger(self.gens, self.order, step_budget)
            self._gb = reduce_basis(gb, self.order)
        return self._gb

    def member(self, f, step_budget=None):
        return normal_form(f, self.groebner(step_budget), self.order).is_zero()

    def equal(self, other, step_budget=None):
        self._check(other)
        if self.order != other.order:
            return Ideal(self.ring, self.gens).groebner(step_budget) == \
                Ideal(other.ring, other.gens).groebner(step_budget)
        return self.groebner(step_budget) == other.groebner(step_budget)

    def is_trivial(self, step_budget=None):
        gb = self.groebner(step_budget)
        return len(gb) == 1 and gb[0].is_constant() and not gb[0].is_zero()

    def is_zero_ideal(self, step_budget=None):
        return not self.groebner(step_budget)

    def generator_strings(self):
        return [self.ring.poly_str(g, self.order) for g in self.groebner()]


def eliminate(ideal, keep_vars, step_budget=None):
    """I intersect K[keep_vars], returned over the smaller ring in degrevlex."""
    ring = ideal.ring
    requested = set(keep_vars)
    missing = [v for v in requested if v not in ring.vars]
    if missing:
        raise ValidationError(f"unknown variables to keep: {sorted(missing)}")
    # the output ring keeps the ambient relative variable order
    keep = tuple(v for v in ring.vars if v in requested)
    drop = [v for v in ring.vars if v not in requested]
    # block order with the dropped variables in the leading block
    new_order_vars = drop + [v for v in ring.vars if v in keep]
    perm = [ring.vars.index(v) for v in new_order_vars]
    inv_perm = {old: new for new, old in enumerate(perm)}

    def remap(poly, mapping, width):
        out = {}
        for e, c in poly.terms.items():
            new_e = [0] * width
            for old, x in enumerate(e):
                if x:
                    pos = mapping.get(old)
                    if pos is None:
                        raise ValidationError("eliminated variable survives")
                    new_e[pos] = x
            out[tuple(new_e)] = c
        return MPoly(width, out, clean=False)

    work_ring = PolyRing(ring.field, new_order_vars)
    block = BlockOrder(len(drop), len(new_order_vars))
    work_gens = [remap(g, inv_perm, len(new_order_vars)) for g in ideal.gens]
    gb = reduce_basis(buchberger(work_gens, block, step_budget), block)

    keep_ring = PolyRing(ring.field, keep)
    keep_map = {new_order_vars.index(v): keep.index(v) for v in keep}
    out = []
    for g in gb:
        if all(all(x == 0 for i, x in enumerate(e) if i < len(drop))
               for e in g.terms):
            out.append(remap(g, keep_map, len(keep)))
    result = Ideal(keep_ring, out)
    result._gb = reduce_basis(out, keep_ring.order)
    result.gens = list(result._gb)
    return result
