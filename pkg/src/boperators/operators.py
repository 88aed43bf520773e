"""B-operators on polynomial rings, fraction fields and p-th-root towers.

An operator is specified by the images of the field generators: per
generator an element of K (x)_k B, stored as an e-vector of coordinates in
the basis b_0..b_d with component 0 forced to equal the generator.  The
extension to the whole polynomial ring is the unique k-algebra homomorphism
with those images; fractions need a local B, where an element is invertible
exactly when its augmentation component is nonzero.
"""

from .algebra import FiniteAlgebra, is_local, assumption_frobenius_vanishes
from .basefield.polynomials import attach_coeff, format_terms
from .basefield.rational import FunctionField, RationalFunction
from .basefield.towers import Tower, TowerElement, pth_power_in_tower
from .errors import (AlreadyPthPower, DimensionMismatch, FieldMismatch,
                     NonLocalFractionUnsupported, NotAConstant, NotInvertible,
                     PreconditionViolated, ValidationError, VariableClash)


class AlgebraBValue:
    """An element of K (x)_k B: an e-vector of field elements."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra, coords):
        coords = tuple(coords)
        if len(coords) != algebra.dim:
            raise DimensionMismatch(
                f"need {algebra.dim} coordinates, got {len(coords)}")
        self.algebra = algebra
        self.coords = coords

    @classmethod
    def scalar(cls, algebra, value):
        """value (x) 1_B for a field element value."""
        zero = _field_of(value).zero()
        unit = [zero] * algebra.dim
        for i, c in enumerate(algebra.unit):
            if not c.is_zero():
                unit[i] = _embed_gf(_field_of(value), c)
        return cls(algebra, [value * u if not u.is_zero() else zero
                             for u in unit])

    @classmethod
    def basis_elem(cls, algebra, i, field):
        coords = [field.zero()] * algebra.dim
        coords[i] = field.one()
        return cls(algebra, coords)

    def field(self):
        return _field_of(self.coords[0])

    def _check(self, other):
        if (not isinstance(other, AlgebraBValue)
                or other.algebra is not self.algebra):
            raise FieldMismatch("values over different algebras")

    def is_zero(self):
        return all(c.is_zero() for c in self.coords)

    def __eq__(self, other):
        return (isinstance(other, AlgebraBValue)
                and other.algebra is self.algebra
                and all(a == b for a, b in zip(self.coords, other.coords)))

    def __add__(self, other):
        self._check(other)
        return AlgebraBValue(self.algebra, [a + b for a, b in
                                            zip(self.coords, other.coords)])

    def __sub__(self, other):
        self._check(other)
        return AlgebraBValue(self.algebra, [a - b for a, b in
                                            zip(self.coords, other.coords)])

    def __neg__(self):
        return AlgebraBValue(self.algebra, [-a for a in self.coords])

    def __mul__(self, other):
        self._check(other)
        fld = self.field()
        zero = fld.zero()
        acc = [zero] * self.algebra.dim
        for i, ui in enumerate(self.coords):
            if ui.is_zero():
                continue
            for j, vj in enumerate(other.coords):
                if vj.is_zero():
                    continue
                c = ui * vj
                for l, s in enumerate(self.algebra.mul[i][j]):
                    if not s.is_zero():
                        acc[l] = acc[l] + c * _embed_gf(fld, s)
        return AlgebraBValue(self.algebra, acc)

    def scale(self, c):
        return AlgebraBValue(self.algebra, [c * a for a in self.coords])

    def __pow__(self, n):
        result = AlgebraBValue.scalar(self.algebra, self.field().one())
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def augmentation(self):
        """pi applied coordinate-wise: the component-0 part under the
        normalization pi(b_i) = delta_i0."""
        return self.coords[0]

    def is_constant_value(self):
        return all(c.is_zero() for c in self.coords[1:])

    def invert(self):
        """Inverse via the nilpotent geometric series; needs local B and a
        nonzero augmentation component."""
        if not is_local(self.algebra):
            raise PreconditionViolated("inversion implemented for local B")
        u0 = self.coords[0]
        if u0.is_zero():
            raise NotInvertible("augmentation component is zero")
        fld = self.field()
        inv0 = u0.inverse()
        unit = AlgebraBValue.scalar(self.algebra, fld.one())
        n = self.scale(inv0) - unit  # nilpotent part
        acc = unit
        term = unit
        for _ in range(1, self.algebra.dim):
            term = term * (-n)
            acc = acc + term
        return acc.scale(inv0)

    def __str__(self):
        parts = []
        for name, c in zip(self.algebra.names, self.coords):
            if c.is_zero():
                continue
            neg, mag = c.coeff_parts()
            parts.append(attach_coeff(neg, mag, f"[{name}]"))
        return format_terms(parts)

    def __repr__(self):
        return f"BValue({self})"

    def coord_strings(self):
        return [str(c) for c in self.coords]


def _field_of(value):
    return value.field


def _embed_gf(fld, c):
    """Embed a k-scalar into K or a tower."""
    return fld.from_gf(c)


def _embed_rational(target, value):
    """Embed a K-element into target (K itself or a tower over K)."""
    if isinstance(target, Tower) and isinstance(value, RationalFunction):
        return target.embed(value)
    return value


class OperatorSpec:
    """A B-operator given by generator images; pure and immutable."""

    def __init__(self, algebra, field, images):
        if not isinstance(algebra, FiniteAlgebra):
            raise ValidationError("operator needs a validated algebra")
        self.algebra = algebra
        self.field = field
        self.images = dict(images)
        self._local = is_local(algebra)
        names = _generator_names(field)
        if set(self.images) != set(names):
            raise ValidationError(
                f"images must cover exactly the generators {names}")
        for name in names:
            img = self.images[name]
            if img.algebra is not algebra:
                raise FieldMismatch("image over a different algebra")
            gen = field.lookup(name)
            if not img.coords[0] == gen:
                raise ValidationError(
                    f"component 0 of the image of {name} must equal {name}")

    @classmethod
    def trivial(cls, algebra, field):
        """All generators constant; on K = k this is the forced operator."""
        images = {}
        for name in _generator_names(field):
            images[name] = AlgebraBValue.scalar(algebra, field.lookup(name))
        return cls(algebra, field, images)

    # -- application ---------------------------------------------------------

    def one(self):
        return AlgebraBValue.scalar(self.algebra, self.field.one())

    def scalar(self, value):
        return AlgebraBValue.scalar(self.algebra, value)

    def _eval_poly(self, poly, var_values):
        """Evaluate a k[y]-polynomial at AlgebraBValues (k-algebra map)."""
        fld = self.field
        acc = None
        pow_cache = [{} for _ in var_values]
        for e, c in poly.terms.items():
            term = AlgebraBValue.scalar(self.algebra, _embed_gf(fld, c))
            for i, k in enumerate(e):
                if k:
                    cache = pow_cache[i]
                    if k not in cache:
                        cache[k] = var_values[i] ** k
                    term = term * cache[k]
            acc = term if acc is None else acc + term
        if acc is None:
            acc = AlgebraBValue.scalar(self.algebra, fld.zero())
        return acc

    def _rational_images(self):
        base = self.field.base if isinstance(self.field, Tower) else self.field
        return [self.images[name] for name in base.vars]

    def apply(self, f):
        """The operator as a map into K (x)_k B (or L (x)_k B on a tower)."""
        if isinstance(f, RationalFunction):
            if isinstance(self.field, Tower):
                if f.field != self.field.base:
                    raise FieldMismatch("input outside the operator's field")
                return self._apply_rational(f)
            if f.field != self.field:
                raise FieldMismatch("input outside the operator's field")
            return self._apply_rational(f)
        if isinstance(f, TowerElement):
            if not isinstance(self.field, Tower) or f.tower != self.field:
                raise FieldMismatch("input outside the operator's tower")
            acc = None
            for exp, c in sorted(f.coeffs.items()):
                term = self._apply_rational(c)
                for name, k in zip(self.field.root_names, exp):
                    if k:
                        term = term * self.images[name] ** k
                acc = term if acc is None else acc + term
            if acc is None:
                acc = AlgebraBValue.scalar(self.algebra, self.field.zero())
            return acc
        raise FieldMismatch("unsupported input type for apply")

    def _apply_rational(self, f):
        values = self._rational_images()
        num = self._eval_poly(f.num, values)
        if f.is_polynomial():
            c = f.den.constant_coeff(_base_of(self.field).base.zero())
            if not c.is_one():
                num = num.scale(_embed_gf(self.field, c.inverse()))
            return num
        if not self._local:
            raise NonLocalFractionUnsupported(
                "fraction inputs need a local algebra")
        den = self._eval_poly(f.den, values)
        return num * den.invert()

    # -- derived checks -------------------------------------------------------

    def is_constant(self, f):
        value = self.apply(f)
        lifted = f if not (isinstance(self.field, Tower)
                           and isinstance(f, RationalFunction)) \
            else self.field.embed(f)
        return value.is_constant_value() and value.coords[0] == lifted

    def check_frl(self, f):
        """Under the local nil=ker(fr) hypothesis the operator must kill
        p-th powers; returns the verified assertion."""
        if not assumption_frobenius_vanishes(self.algebra):
            raise PreconditionViolated(
                "requires fr_B(ker pi_B) = 0 for this algebra")
        fp = f ** self.field.base.base.p if isinstance(self.field, Tower) \
            else f ** self.field.base.p
        return self.is_constant(fp)

    def strictness_witness(self, f):
        """Which of f in K^d-constants and f in K^p hold; a witness against
        strictness is a constant that is not a p-th power."""
        if not assumption_frobenius_vanishes(self.algebra):
            raise PreconditionViolated(
                "requires fr_B(ker pi_B) = 0 for this algebra")
        constant = self.is_constant(f)
        root = f.pth_root()
        return {
            "constant": constant,
            "pth_power": root is not None,
            "strictness_counterexample": constant and root is None,
        }


def _base_of(field):
    return field.base if isinstance(field, Tower) else field


def _generator_names(field):
    if isinstance(field, Tower):
        return tuple(field.base.vars) + tuple(field.root_names)
    return tuple(field.vars)


def tensor(op_r, op_s):
    """The unique operator on the union of two disjoint variable sets that
    restricts to each factor."""
    if op_r.algebra is not op_s.algebra:
        raise FieldMismatch("tensor factors over different algebras")
    fr, fs = op_r.field, op_s.field
    if isinstance(fr, Tower) or isinstance(fs, Tower):
        raise ValidationError("tensor implemented for rational factors")
    if fr.base != fs.base:
        raise FieldMismatch("tensor factors over different base fields")
    clash = set(fr.vars) & set(fs.vars)
    if clash:
        raise VariableClash(f"shared variables: {sorted(clash)}")
    joint = FunctionField(fr.base, fr.vars + fs.vars)

    def lift(value, src):
        offsets = {v: joint.vars.index(v) for v in src.vars}
        from .basefield.polynomials import MPoly

        def remap(poly):
            out = {}
            for e, c in poly.terms.items():
                new_e = [0] * joint.nvars
                for i, x in enumerate(e):
                    if x:
                        new_e[offsets[src.vars[i]]] = x
                out[tuple(new_e)] = c
            return MPoly(joint.nvars, out, clean=False)
        return RationalFunction(joint, remap(value.num), remap(value.den))

    images = {}
    for name in fr.vars:
        img = op_r.images[name]
        images[name] = AlgebraBValue(img.algebra,
                                     [lift(c, fr) for c in img.coords])
    for name in fs.vars:
        img = op_s.images[name]
        images[name] = AlgebraBValue(img.algebra,
                                     [lift(c, fs) for c in img.coords])
    return OperatorSpec(op_r.algebra, joint, images)


def restrict(op, variables):
    """Generator images over a variable subset; partial inverse of tensor."""
    return {v: op.images[v].coord_strings() for v in variables}


def extend_pth_root(op, t):
    """Lift the operator to K(t^{1/p}) (or one more root on an existing
    tower).  The input must be a constant and not already a p-th power; the
    fresh root is a constant of the lifted operator."""
    if not is_local(op.algebra):
        raise PreconditionViolated("lifting implemented for local B")
    base = _base_of(op.field)
    if isinstance(t, TowerElement):
        if not t.in_base():
            raise ValidationError("radicand must lie in K")
        t = t.base_part()
    if t.field != base:
        raise FieldMismatch("radicand outside the operator's base field")
    if not op.is_constant(t):
        raise NotAConstant(f"{t} is not a constant of the operator")
    if isinstance(op.field, Tower):
        if pth_power_in_tower(t, op.field):
            raise AlreadyPthPower(f"{t} is already a p-th power in the tower")
        names = op.field.root_names
        rads = op.field.radicands
    else:
        if t.pth_root() is not None:
            raise AlreadyPthPower(f"{t} is already a p-th power in K")
        names, rads = (), ()
    new_name = _fresh_root_name(names, base)
    tower = Tower(base, names + (new_name,), rads + (t,))
    images = {}
    for v in base.vars + names:
        old = op.images[v]
        images[v] = AlgebraBValue(op.algebra,
                                  [_re_embed(c, tower) for c in old.coords])
    images[new_name] = AlgebraBValue.scalar(op.algebra, tower.root(new_name))
    return OperatorSpec(op.algebra, tower, images)


def _fresh_root_name(existing, base):
    i = 1
    while True:
        name = f"z{i}"
        if name not in existing and name not in base.vars:
            return name
        i += 1


def _re_embed(c, tower):
    """Re-embed a smaller tower's element into an extended tower."""
    if isinstance(c, RationalFunction):
        return tower.embed(c)
    out = tower.zero()
    for exp, coeff in c.coeffs.items():
        term = tower.embed(coeff)
        for name, k in zip(c.tower.root_names, exp):
            if k:
                term = term * tower.root(name) ** k
        out = out + term
    return out
