"""Affine varieties over K and their operator prolongations.

The prolongation of V expands every coordinate X_j into e components X_j_i
and every defining equation into its e basis components after twisting the
coefficients by the operator.  A subvariety W of the prolongation of V is a
one-step kernel; the equalizer E inside the prolongation of W is cut out by
the d*n linear identifications X_j_i = X'_j_i_0, and dominance of E over W
is the kernel-prolongation criterion.  Dominance is decided as equality of
an elimination ideal with the target's ideal, the faithful semantics for
prime inputs (primality itself is caller-asserted, never verified).
"""

from dataclasses import dataclass

from .basefield.polynomials import MPoly
from .basefield.rational import RationalFunction
from .basefield.towers import Tower, TowerElement, pth_power_in_tower
from .errors import (BadEmbedding, PointNotOnVariety, PrimalityNotAsserted,
                     TooLarge, ValidationError, VariableClash,
                     VariableMismatch)
from .groebner import Ideal, PolyRing, eliminate
from .linalg import solve
from .operators import AlgebraBValue, OperatorSpec


class AffineVariety:
    def __init__(self, ring, gens, prime=False):
        self.ring = ring
        self.ideal = Ideal(ring, gens)
        self.prime = prime

    @property
    def vars(self):
        return self.ring.vars

    @classmethod
    def from_dict(cls, field, data):
        ring = PolyRing(field, data["vars"])
        gens = [ring.parse(s) for s in data.get("generators", [])]
        return cls(ring, gens, prime=bool(data.get("prime", False)))

    def to_dict(self):
        return {"vars": list(self.vars),
                "generators": self.ideal.generator_strings(),
                "prime": self.prime}


@dataclass
class ProlongationSpace:
    base: AffineVariety
    operator: OperatorSpec
    ring: PolyRing
    ideal: Ideal
    var_index: dict      # (base var, component) -> prolonged variable name

    @property
    def vars(self):
        return self.ring.vars

    def projection_vars(self):
        return [self.var_index[(v, 0)] for v in self.base.vars]

    def is_trivial(self):
        return self.ideal.is_trivial()

    def component_strings(self):
        """The raw expansion components, before Groebner normalization."""
        return [self.ring.poly_str(g) for g in self.ideal.gens]


def _prolonged_names(variables, e):
    names = []
    index = {}
    for v in variables:
        for i in range(e):
            name = f"{v}_{i}"
            index[(v, i)] = name
            names.append(name)
    if len(set(names)) != len(names) or set(names) & set(variables):
        raise VariableClash("prolonged variable names collide")
    return names, index


def prolong(op, variety, step_budget=None):
    """The prolongation space: coordinates expanded along the basis of B and
    generators expanded into their e components with operator-twisted
    coefficients."""
    B = op.algebra
    e = B.dim
    field = variety.ring.field
    names, index = _prolonged_names(variety.vars, e)
    new_ring = PolyRing(field, names)
    n_old = len(variety.vars)

    # X_j -> sum_i X_j_i (x) b_i as a linear MPoly over K (x) B
    def expanded_var(j):
        terms = {}
        for i in range(e):
            pos = new_ring.vars.index(index[(variety.vars[j], i)])
            exp = tuple(1 if t == pos else 0 for t in range(new_ring.nvars))
            terms[exp] = AlgebraBValue.basis_elem(B, i, field)
        return MPoly(new_ring.nvars, terms, clean=False)

    subs = [expanded_var(j) for j in range(n_old)]
    gens = []
    for g in variety.ideal.gens:
        expanded = None
        pow_cache = [{} for _ in range(n_old)]
        for exp, coeff in g.terms.items():
            term = MPoly.const(new_ring.nvars, op.apply(coeff))
            for j, k in enumerate(exp):
                if k:
                    cache = pow_cache[j]
                    if k not in cache:
                        cache[k] = subs[j] ** k
                    term = term * cache[k]
            expanded = term if expanded is None else expanded + term
        if expanded is None:
            continue
        for comp in range(e):
            comp_poly = MPoly(new_ring.nvars, {
                ex: c.coords[comp] for ex, c in expanded.terms.items()})
            if not comp_poly.is_zero():
                gens.append(comp_poly)
    ideal = Ideal(new_ring, gens)
    ideal.groebner(step_budget)
    return ProlongationSpace(base=variety, operator=op, ring=new_ring,
                             ideal=ideal, var_index=index)


def nabla_point(op, variety, point):
    """Coordinates of the operator applied to a rational point; lands on the
    prolongation by construction, which is verified."""
    if len(point) != len(variety.vars):
        raise VariableMismatch("point arity differs from the variety")
    field = variety.ring.field
    for g in variety.ideal.gens:
        value = g.eval_full(point, lambda c: c)
        if value is None:
            continue
        if not value.is_zero():
            raise PointNotOnVariety(
                f"generator {variety.ring.poly_str(g)} does not vanish")
    tau = prolong(op, variety)
    coords = []
    for a in point:
        coords.extend(op.apply(a).coords)
    for g in tau.ideal.gens:
        value = g.eval_full(coords, lambda c: c)
        if value is not None and not value.is_zero():
            raise PointNotOnVariety("image misses the prolongation ideal")
    return coords


def _rename_ideal_gens(gens, src_ring, dst_ring, name_map):
    """Remap generator variables through name_map (src var -> dst var)."""
    positions = {}
    for i, v in enumerate(src_ring.vars):
        target = name_map[v]
        positions[i] = dst_ring.vars.index(target)
    out = []
    for g in gens:
        terms = {}
        for e, c in g.terms.items():
            new_e = [0] * dst_ring.nvars
            for i, x in enumerate(e):
                if x:
                    new_e[positions[i]] = x
            terms[tuple(new_e)] = c
        out.append(MPoly(dst_ring.nvars, terms, clean=False))
    return out


def _kernel_name_map(tau, w_variety):
    """Positional correspondence between prolonged-V variables and W's."""
    v_vars = tau.base.vars
    n = len(v_vars)
    e = tau.operator.algebra.dim
    expected = n * e
    if len(w_variety.vars) != expected:
        raise VariableMismatch(
            f"W needs {expected} variables (n + n*d), got "
            f"{len(w_variety.vars)}")
    if tuple(w_variety.vars[:n]) != tuple(v_vars):
        raise VariableMismatch("W's leading variables must be V's")
    name_map = {}
    for j, v in enumerate(v_vars):
        name_map[tau.var_index[(v, 0)]] = w_variety.vars[j]
        for i in range(1, e):
            primed = w_variety.vars[n + j * (e - 1) + (i - 1)]
            name_map[tau.var_index[(v, i)]] = primed
    return name_map


def is_kernel(op, v_variety, w_variety, step_budget=None):
    """W carries a one-step operator structure iff W sits inside the
    prolongation of V, i.e. every prolongation generator lies in I(W)."""
    tau = prolong(op, v_variety, step_budget)
    name_map = _kernel_name_map(tau, w_variety)
    renamed = _rename_ideal_gens(tau.ideal.gens, tau.ring, w_variety.ring,
                                 name_map)
    return all(w_variety.ideal.member(g, step_budget) for g in renamed)


@dataclass
class EqualizerSpace:
    ambient: ProlongationSpace      # prolongation of W
    ring: PolyRing
    ideal: Ideal
    identifications: list           # the d*n linear identification polys
    projection: dict                # W var -> ambient variable of pi_E

    @property
    def vars(self):
        return self.ring.vars

    def equation_strings(self):
        return self.ideal.generator_strings()

    def identification_strings(self):
        return [self.ring.poly_str(g) for g in self.identifications]


def equalizer(op, v_variety, w_variety, step_budget=None, checked=True):
    """The subvariety of the prolongation of W where the prolonged projection
    to V agrees with the section through W; cut out by the coordinate
    identifications X_j_i = X'_j_i_0."""
    if checked and not is_kernel(op, v_variety, w_variety, step_budget):
        raise ValidationError("W is not contained in the prolongation of V")
    e = op.algebra.dim
    n = len(v_variety.vars)
    tau_w = prolong(op, w_variety, step_budget)
    ring = tau_w.ring
    one = ring.field.one()
    idents = []
    for j, v in enumerate(v_variety.vars):
        for i in range(1, e):
            primed = w_variety.vars[n + j * (e - 1) + (i - 1)]
            lhs = ring.var(tau_w.var_index[(v, i)])
            rhs = ring.var(tau_w.var_index[(primed, 0)])
            idents.append(lhs - rhs)
    ideal = Ideal(ring, list(tau_w.ideal.gens) + [g for g in idents])
    ideal.groebner(step_budget)
    projection = {w: tau_w.var_index[(w, 0)] for w in w_variety.vars}
    return EqualizerSpace(ambient=tau_w, ring=ring, ideal=ideal,
                          identifications=idents, projection=projection)


def dominant(x_space, y_variety, projection, step_budget=None):
    """Does X project onto a Zariski-dense subset of Y?  Decided as equality
    of the elimination ideal of I(X) with I(Y); faithful for prime inputs.

    projection maps each Y variable to the X variable carrying it."""
    if not y_variety.prime:
        raise PrimalityNotAsserted("target variety must assert primality")
    if isinstance(x_space, AffineVariety) and not x_space.prime:
        raise PrimalityNotAsserted("source variety must assert primality")
    x_ring = x_space.ring
    keep = [projection[v] for v in y_variety.vars]
    if len(set(keep)) != len(keep):
        raise VariableMismatch("projection must be injective on variables")
    elim = eliminate(x_space.ideal, keep, step_budget)
    name_map = {projection[v]: v for v in y_variety.vars}
    renamed = _rename_ideal_gens(elim.groebner(), elim.ring, y_variety.ring,
                                 name_map)
    candidate = Ideal(y_variety.ring, renamed)
    return candidate.equal(y_variety.ideal, step_budget)


@dataclass
class KernelReport:
    kernel_valid: bool
    dominant_w_over_v: bool = False
    dominant_e_over_w: bool = False
    prolongable: bool = False
    axiom_premise: bool = False
    e_generators: list = None
    e_identifications: list = None
    eliminated_ideal: list = None

    def to_dict(self):
        return {
            "kernel_valid": self.kernel_valid,
            "dominant_w_over_v": self.dominant_w_over_v,
            "dominant_e_over_w": self.dominant_e_over_w,
            "prolongable": self.prolongable,
            "axiom_premise": self.axiom_premise,
            "e_generators": self.e_generators or [],
            "e_identifications": self.e_identifications or [],
            "eliminated_ideal": self.eliminated_ideal or [],
        }


def kernel_check(op, v_variety, w_variety, step_budget=None):
    """The premises of the geometric axioms for the pair (V, W), together
    with the kernel-prolongation verdict (dominance of E over W)."""
    if not is_kernel(op, v_variety, w_variety, step_budget):
        return KernelReport(kernel_valid=False)
    proj_wv = {v: v for v in v_variety.vars}
    dom_wv = dominant(w_variety, v_variety, proj_wv, step_budget)
    espace = equalizer(op, v_variety, w_variety, step_budget, checked=False)
    dom_ew = dominant(espace, w_variety, espace.projection, step_budget)
    elim = eliminate(espace.ideal,
                     [espace.projection[w] for w in w_variety.vars],
                     step_budget)
    renamed = _rename_ideal_gens(
        elim.groebner(), elim.ring, w_variety.ring,
        {espace.projection[w]: w for w in w_variety.vars})
    elim_strings = [w_variety.ring.poly_str(g) for g in renamed]
    return KernelReport(
        kernel_valid=True,
        dominant_w_over_v=dom_wv,
        dominant_e_over_w=dom_ew,
        prolongable=dom_ew,
        axiom_premise=dom_wv and dom_ew,
        e_generators=espace.equation_strings(),
        e_identifications=espace.identification_strings(),
        eliminated_ideal=elim_strings,
    )


# -- generic fibers over tower points -----------------------------------------


def _check_point_on(variety, values, tower):
    for g in variety.ideal.gens:
        acc = None
        for e, c in g.terms.items():
            term = tower.embed(c)
            for i, k in enumerate(e):
                if k:
                    term = term * values[variety.vars[i]] ** k
            acc = term if acc is None else acc + term
        if acc is not None and not acc.is_zero():
            raise BadEmbedding(
                f"point violates {variety.ring.poly_str(g)}")


def _substitute(gens, ring, assignment, tower):
    """Partially evaluate generators at tower values; returns polynomials
    over the tower in the remaining variables."""
    idx_values = {ring.vars.index(v): val for v, val in assignment.items()}
    out = []
    for g in gens:
        sub = g.partial_eval(idx_values, tower.embed)
        out.append(sub)
    return out


def _classify_residual(gens, ring, tower):
    """Decide the residual system in the honest fragment: trivial, linear,
    or disjoint p-th-power equations; anything else is undecided."""
    gens = [g for g in gens if not g.is_zero()]
    residual_strings = [_tower_poly_str(g, ring) for g in gens]
    if not gens:
        return "consistent", "empty", residual_strings
    for g in gens:
        if g.is_constant():
            return "empty", "trivial_ideal", residual_strings
    if all(g.total_degree() <= 1 for g in gens):
        active = sorted(set().union(*[g.vars_present() for g in gens]))
        rows = []
        rhs = []
        zero_exp = (0,) * ring.nvars
        for g in gens:
            row = []
            for v in active:
                exp = tuple(1 if i == v else 0 for i in range(ring.nvars))
                row.append(g.terms.get(exp, tower.zero()))
            rows.append(row)
            rhs.append(-g.terms.get(zero_exp, tower.zero()))
        sol = solve(rows, rhs, tower.zero())
        verdict = "consistent" if sol is not None else "empty"
        return verdict, "linear", residual_strings
    p = tower.p
    seen_vars = set()
    pth_equations = []
    for g in gens:
        terms = dict(g.terms)
        zero_exp = (0,) * ring.nvars
        const = terms.pop(zero_exp, None)
        if len(terms) != 1:
            return "undecided", "outside_fragment", residual_strings
        (exp, lead), = terms.items()
        vs = [i for i, x in enumerate(exp) if x]
        if len(vs) != 1 or exp[vs[0]] != p:
            return "undecided", "outside_fragment", residual_strings
        var = vs[0]
        if var in seen_vars:
            return "undecided", "outside_fragment", residual_strings
        seen_vars.add(var)
        c = tower.zero() if const is None else -const / lead
        pth_equations.append(c)
    for c in pth_equations:
        if not c.in_base():
            return "empty", "pth_root", residual_strings
        if not pth_power_in_tower(c.base_part(), tower):
            return "empty", "pth_root", residual_strings
    return "consistent", "pth_root", residual_strings


def _tower_poly_str(g, ring):
    from .basefield.polynomials import poly_str
    return poly_str(g, ring.vars, ring.order)


def generic_fiber_test(op, w_variety, point_values, tower, v_variety=None,
                       step_budget=None):
    """Rational points of the fiber over an explicitly embedded generic point.

    Without V: the fiber of the prolongation of W over b (substitute the
    0-components).  With V: the fiber of the equalizer projection over b
    (substitute the 0-components and the identified coordinates).  Decides
    only the linear / p-th-root fragment; otherwise returns undecided."""
    values = {v: point_values[v] for v in w_variety.vars}
    for v, val in values.items():
        if not isinstance(val, TowerElement) or val.tower != tower:
            raise BadEmbedding(f"coordinate {v} is not a point of the tower")
    _check_point_on(w_variety, values, tower)

    if v_variety is None:
        tau = prolong(op, w_variety, step_budget)
        assignment = {tau.var_index[(w, 0)]: values[w]
                      for w in w_variety.vars}
        ring = tau.ring
        gens = tau.ideal.gens
    else:
        espace = equalizer(op, v_variety, w_variety, step_budget)
        ring = espace.ring
        n = len(v_variety.vars)
        e = op.algebra.dim
        assignment = {espace.projection[w]: values[w]
                      for w in w_variety.vars}
        # identified coordinates X_j_i carry the primed values of b
        for j, v in enumerate(v_variety.vars):
            for i in range(1, e):
                primed = w_variety.vars[n + j * (e - 1) + (i - 1)]
                assignment[espace.ambient.var_index[(v, i)]] = values[primed]
        gens = espace.ambient.ideal.gens
    residual = _substitute(gens, ring, assignment, tower)
    verdict, method, strings = _classify_residual(residual, ring, tower)
    return {
        "fiber": verdict,
        "method": method,
        "residual_generators": strings,
    }


# -- adjunction census ----------------------------------------------------------


def adjunction_census(algebra, variety, test_ring, bound=10 ** 6):
    """Count |V(B (x) R)| against |tau(V)(R)| by full enumeration.

    The base function field must be K = k itself (the operator on k is
    forced to be trivial), so generators have constant coefficients."""
    field = variety.ring.field
    if field.vars:
        raise ValidationError("census needs a variety over K = k")
    if test_ring.base != algebra.base:
        raise ValidationError("test ring over a different base field")
    n = len(variety.vars)
    e = algebra.dim
    total = test_ring.size() ** (n * e)
    if total > bound:
        raise TooLarge(f"enumeration of {total} points exceeds {bound}")

    from .algebra import tensor_ring
    big = tensor_ring(algebra, test_ring)

    def eval_gens_in(ring, gens, nvars, point):
        for g in gens:
            acc = None
            for exp, coeff in g.terms.items():
                c = coeff.constant_value()
                term = ring.scalar_vec(c)
                for i, k in enumerate(exp):
                    for _ in range(k):
                        term = ring.mul_vec(term, point[i])
                acc = term if acc is None else tuple(
                    a + b for a, b in zip(acc, term))
            if acc is not None and not all(x.is_zero() for x in acc):
                return False
        return True

    def count_points(ring, gens, nvars):
        count = 0
        elems = list(ring.elements())
        idx = [0] * nvars
        while True:
            point = [elems[i] for i in idx]
            if eval_gens_in(ring, gens, nvars, point):
                count += 1
            k = 0
            while k < nvars:
                idx[k] += 1
                if idx[k] < len(elems):
                    break
                idx[k] = 0
                k += 1
            if k == nvars or nvars == 0:
                break
        return count

    count_tensor = count_points(big, variety.ideal.gens, n)

    triv = OperatorSpec.trivial(algebra, field)
    tau = prolong(triv, variety)
    count_prolong = count_points(test_ring, tau.ideal.gens, n * e)
    return count_tensor, count_prolong
