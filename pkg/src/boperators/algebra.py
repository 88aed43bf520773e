"""Finite commutative k-algebras by structure constants.

The central objects: an augmented algebra (B, pi_B) with a basis normalized
so that pi(b_0) = 1 and pi(b_i) = 0 for i > 0, its distinguished ideals
ker(pi), ker(Frobenius) and the nilradical, and the resulting decision
procedure for whether the theory of fields with B-operators admits a model
companion.  Base fields here are finite, hence perfect; over a perfect base
the non-local companionability clause reduces to "B is reduced", so no
explicit factorization into field extensions is ever required.
"""

from dataclasses import dataclass, field as dc_field

from .basefield.gf import BaseField, GFElem
from .errors import (BadAugmentation, BadUnit, BasisNotNormalized,
                     FieldMismatch, InternalInconsistency, NotAssociative,
                     NotCommutative, ValidationError)
from .linalg import rref, row_space_contains


def _vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _vec_scale(c, u):
    return tuple(c * a for a in u)


def _vec_is_zero(u):
    return all(a.is_zero() for a in u)


class FiniteRing:
    """A finite-dimensional commutative k-algebra with unit, no augmentation.

    mul[i][j] holds the coordinates of b_i * b_j in the basis."""

    def __init__(self, base, names, mul, unit, validate=True):
        self.base = base
        self.names = tuple(names)
        self.dim = len(self.names)
        self.mul = tuple(tuple(tuple(entry) for entry in row) for row in mul)
        self.unit = tuple(unit)
        if validate:
            self._validate_ring()

    def _validate_ring(self):
        e = self.dim
        if len(self.mul) != e or any(len(row) != e for row in self.mul):
            raise ValidationError("multiplication table has wrong shape")
        for row in self.mul:
            for entry in row:
                if len(entry) != e:
                    raise ValidationError("structure vector has wrong length")
        if len(self.unit) != e:
            raise ValidationError("unit vector has wrong length")
        for i in range(e):
            for j in range(i + 1, e):
                if self.mul[i][j] != self.mul[j][i]:
                    raise NotCommutative(i, j)
        basis = [self._basis_vec(i) for i in range(e)]
        for i in range(e):
            if self.mul_vec(self.unit, basis[i]) != basis[i]:
                raise BadUnit(f"1 * b{i} != b{i}")
        for i in range(e):
            for j in range(e):
                for l in range(e):
                    left = self.mul_vec(self.mul[i][j], basis[l])
                    right = self.mul_vec(basis[i], self.mul[j][l])
                    if left != right:
                        raise NotAssociative(i, j, l)

    def _basis_vec(self, i):
        zero, one = self.base.zero(), self.base.one()
        return tuple(one if j == i else zero for j in range(self.dim))

    def zero_vec(self):
        zero = self.base.zero()
        return tuple(zero for _ in range(self.dim))

    def mul_vec(self, u, v):
        acc = list(self.zero_vec())
        for i, ui in enumerate(u):
            if ui.is_zero():
                continue
            for j, vj in enumerate(v):
                if vj.is_zero():
                    continue
                c = ui * vj
                for l, s in enumerate(self.mul[i][j]):
                    if not s.is_zero():
                        acc[l] = acc[l] + c * s
        return tuple(acc)

    def pow_vec(self, u, n):
        result = self.unit
        base = u
        while n:
            if n & 1:
                result = self.mul_vec(result, base)
            base = self.mul_vec(base, base)
            n >>= 1
        return result

    def scalar_vec(self, c):
        return _vec_scale(c, self.unit)

    def elements(self):
        """All q^dim elements, as coordinate tuples."""
        pools = [list(self.base.elements()) for _ in range(self.dim)]
        idx = [0] * self.dim
        while True:
            yield tuple(pools[i][idx[i]] for i in range(self.dim))
            k = 0
            while k < self.dim:
                idx[k] += 1
                if idx[k] < len(pools[k]):
                    break
                idx[k] = 0
                k += 1
            if k == self.dim:
                return

    def size(self):
        return self.base.q ** self.dim


def tensor_ring(a, b):
    """A (x)_k B as a FiniteRing on the basis (a_i, b_j), j fastest."""
    if a.base != b.base:
        raise FieldMismatch("tensor factors over different base fields")
    names = tuple(f"{x}(x){y}" for x in a.names for y in b.names)
    dim = a.dim * b.dim
    zero = a.base.zero()

    def flat(i, j):
        return i * b.dim + j

    mul = [[None] * dim for _ in range(dim)]
    for i1 in range(a.dim):
        for j1 in range(b.dim):
            for i2 in range(a.dim):
                for j2 in range(b.dim):
                    vec = [zero] * dim
                    av = a.mul[i1][i2]
                    bv = b.mul[j1][j2]
                    for s, cs in enumerate(av):
                        if cs.is_zero():
                            continue
                        for t, ct in enumerate(bv):
                            if not ct.is_zero():
                                vec[flat(s, t)] = vec[flat(s, t)] + cs * ct
                    mul[flat(i1, j1)][flat(i2, j2)] = tuple(vec)
    unit = [zero] * dim
    for s, cs in enumerate(a.unit):
        for t, ct in enumerate(b.unit):
            unit[flat(s, t)] = cs * ct
    return FiniteRing(a.base, names, mul, tuple(unit), validate=False)


class FiniteAlgebra(FiniteRing):
    """FiniteRing plus the augmentation pi_B, with the basis normalization
    pi(b_0) = 1, pi(b_i) = 0 for i > 0, and b_0 = 1 when B is local."""

    def __init__(self, base, names, mul, unit, pi):
        super().__init__(base, names, mul, unit, validate=True)
        self.pi = tuple(pi)
        self._validate_augmentation()

    @property
    def e(self):
        return self.dim

    @property
    def d(self):
        return self.dim - 1

    def _validate_augmentation(self):
        if len(self.pi) != self.dim:
            raise ValidationError("augmentation vector has wrong length")
        if not self.pi[0].is_one():
            raise BasisNotNormalized("pi(b0) must be 1")
        for i in range(1, self.dim):
            if not self.pi[i].is_zero():
                raise BasisNotNormalized(f"pi(b{i}) must be 0")
        if not self.pi_value(self.unit).is_one():
            raise BadAugmentation(0, "pi(1_B) != 1")
        for i in range(self.dim):
            for j in range(self.dim):
                lhs = self.pi_value(self.mul[i][j])
                rhs = self.pi[i] * self.pi[j]
                if lhs != rhs:
                    raise BadAugmentation(i, f"pi(b{i}*b{j}) != pi(b{i})pi(b{j})")
        if is_local(self) and self.unit != self._basis_vec(0):
            raise BasisNotNormalized("local algebra must have b0 = 1_B")

    def pi_value(self, u):
        acc = self.base.zero()
        for c, pv in zip(u, self.pi):
            acc = acc + c * pv
        return acc

    # -- serialization ------------------------------------------------------

    def to_dict(self):
        def gf(c):
            return list(c.coeffs)
        return {
            "p": self.base.p,
            "k_deg": self.base.deg,
            "k_min_poly": list(self.base.min_poly),
            "dim": self.dim,
            "basis": list(self.names),
            "mul": [[[gf(c) for c in entry] for entry in row]
                    for row in self.mul],
            "unit": [gf(c) for c in self.unit],
            "pi": [gf(c) for c in self.pi],
        }

    @classmethod
    def from_dict(cls, data):
        base = BaseField(data["p"], data.get("k_deg", 1),
                         data.get("k_min_poly"))
        dim = data["dim"]
        names = data.get("basis") or [f"b{i}" for i in range(dim)]

        def gf(v):
            if isinstance(v, int):
                return base.from_int(v)
            return base.elem(v)

        mul = [[[gf(c) for c in entry] for entry in row]
               for row in data["mul"]]
        unit = [gf(c) for c in data["unit"]]
        pi = [gf(c) for c in data["pi"]]
        return cls(base, names, mul, unit, pi)


@dataclass
class SubspaceIdeal:
    """A k-subspace of B closed under multiplication, in echelon form."""

    parent: FiniteAlgebra
    basis: tuple

    @property
    def dim(self):
        return len(self.basis)

    def is_zero(self):
        return not self.basis

    def contains(self, other):
        return all(row_space_contains(list(self.basis), v)
                   for v in other.basis)

    def __eq__(self, other):
        return (isinstance(other, SubspaceIdeal)
                and self.parent is other.parent and self.basis == other.basis)

    def to_lists(self):
        return [[list(c.coeffs) for c in v] for v in self.basis]


def _echelon_subspace(algebra, vectors, check_ideal=False):
    rows, _ = rref([list(v) for v in vectors])
    basis = tuple(tuple(r) for r in rows)
    if check_ideal:
        for v in basis:
            for i in range(algebra.dim):
                prod = algebra.mul_vec(v, algebra._basis_vec(i))
                if not row_space_contains([list(b) for b in basis],
                                          list(prod)):
                    raise ValidationError("span is not an ideal")
    return SubspaceIdeal(algebra, basis)


def ker_pi(algebra):
    """span{b_1..b_d}; immediate from the basis normalization."""
    vecs = [algebra._basis_vec(i) for i in range(1, algebra.dim)]
    return _echelon_subspace(algebra, vecs)


def _fp_flatten(algebra, vec):
    out = []
    for c in vec:
        out.extend(c.coeffs)
    return out


def _fp_kernel(matrix_rows, p):
    """Kernel basis of an F_p integer matrix given by rows=images."""
    ncols = len(matrix_rows)
    nrows = len(matrix_rows[0]) if matrix_rows else 0
    # transpose: standard kernel of the linear map column-vector convention
    m = [[matrix_rows[j][i] % p for j in range(ncols)] for i in range(nrows)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] % p), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] % p:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for ri, pc in enumerate(pivots):
            v[pc] = (-m[ri][fc]) % p
        basis.append(v)
    return basis


def _fp_unflatten(algebra, flat):
    n = algebra.base.deg
    out = []
    for i in range(algebra.dim):
        out.append(algebra.base.elem(flat[i * n:(i + 1) * n]))
    return tuple(out)


def _power_map_kernel(algebra, exponent):
    """Kernel of x -> x^exponent as a k-subspace (exponent a p-power, so the
    map is F_p-linear on B viewed as an F_p-space of dimension e*n)."""
    n = algebra.base.deg
    images = []
    for i in range(algebra.dim):
        for s in range(n):
            vec = list(algebra.zero_vec())
            vec[i] = algebra.base.gen() ** s if n > 1 else algebra.base.one()
            img = algebra.pow_vec(tuple(vec), exponent)
            images.append(_fp_flatten(algebra, img))
    kernel = _fp_kernel(images, algebra.base.p)
    vecs = [_fp_unflatten(algebra, v) for v in kernel]
    return _echelon_subspace(algebra, vecs)


def ker_frobenius(algebra):
    """{x in B : x^p = 0}, automatically a k-subspace and an ideal."""
    return _power_map_kernel(algebra, algebra.base.p)


def nilradical(algebra):
    """Kernel of x -> x^(p^m) for the least m with p^m >= dim."""
    p = algebra.base.p
    m = 0
    while p ** m < algebra.dim:
        m += 1
    return _power_map_kernel(algebra, p ** m)


def is_local(algebra):
    """Two independent methods that must agree: (ker pi)^e = 0, and
    nilradical == ker pi."""
    kp = ker_pi(algebra)
    power = list(kp.basis)
    for _ in range(1, algebra.dim):
        nxt = []
        for v in power:
            for w in kp.basis:
                nxt.append(algebra.mul_vec(v, w))
        power = [tuple(r) for r in rref([list(v) for v in nxt])[0]]
        if not power:
            break
    method_a = not power
    method_b = nilradical(algebra) == kp
    if method_a != method_b:
        raise InternalInconsistency(
            f"locality tests disagree: power={method_a} radical={method_b}")
    return method_a


def assumption_frobenius_vanishes(algebra):
    """Does x^p = 0 hold on all of ker(pi)?  Checking a basis suffices:
    Frobenius is additive and (c v)^p = c^p v^p."""
    p = algebra.base.p
    for v in ker_pi(algebra).basis:
        if not _vec_is_zero(algebra.pow_vec(v, p)):
            return False
    return True


@dataclass
class ClassificationReport:
    dim: int
    local: bool
    assumption2: bool
    cond1: bool
    cond2: bool
    companionable: bool
    clause: str
    nil_basis: list = dc_field(default_factory=list)
    ker_frobenius_basis: list = dc_field(default_factory=list)
    ker_pi_basis: list = dc_field(default_factory=list)

    def to_dict(self):
        return {
            "dim": self.dim,
            "local": self.local,
            "assumption2": self.assumption2,
            "cond1_nil_equals_ker_frobenius": self.cond1,
            "cond2_local_or_reduced": self.cond2,
            "companionable": self.companionable,
            "clause": self.clause,
            "nil_basis": self.nil_basis,
            "ker_frobenius_basis": self.ker_frobenius_basis,
            "ker_pi_basis": self.ker_pi_basis,
        }


def companionability(algebra):
    """Decide existence of a model companion for B-operator fields.

    Condition (1): nil(B) = ker(fr_B).  Condition (2): B local, or B reduced
    (the perfect-base replacement for "product of finite separable field
    extensions").  The clause labels which branch admitted the companion."""
    nil = nilradical(algebra)
    kfr = ker_frobenius(algebra)
    kp = ker_pi(algebra)
    local = is_local(algebra)
    ass2 = assumption_frobenius_vanishes(algebra)
    cond1 = nil == kfr
    cond2 = local or nil.is_zero()
    companionable_flag = cond1 and cond2
    if not companionable_flag:
        clause = "none"
    elif local:
        clause = "local"
    else:
        clause = "separable_product"
    return ClassificationReport(
        dim=algebra.dim, local=local, assumption2=ass2, cond1=cond1,
        cond2=cond2, companionable=companionable_flag, clause=clause,
        nil_basis=nil.to_lists(), ker_frobenius_basis=kfr.to_lists(),
        ker_pi_basis=kp.to_lists())


# -- constructions -----------------------------------------------------------


def truncated_poly(base, e):
    """k[X]/(X^e) on the basis 1, t, ..., t^(e-1)."""
    zero, one = base.zero(), base.one()
    names = ["1"] + [f"t^{i}" if i > 1 else "t" for i in range(1, e)]
    mul = [[tuple(one if l == i + j else zero for l in range(e))
            if i + j < e else tuple(zero for _ in range(e))
            for j in range(e)] for i in range(e)]
    unit = tuple(one if l == 0 else zero for l in range(e))
    pi = tuple(one if l == 0 else zero for l in range(e))
    return FiniteAlgebra(base, names, mul, unit, pi)


def endo_algebra(base, e):
    """k^e with pi the first projection; operators are e-1 endomorphisms."""
    zero, one = base.zero(), base.one()
    names = [f"e{i}" for i in range(e)]
    mul = [[tuple(one if (l == i and i == j) else zero for l in range(e))
            for j in range(e)] for i in range(e)]
    unit = tuple(one for _ in range(e))
    pi = tuple(one if l == 0 else zero for l in range(e))
    return FiniteAlgebra(base, names, mul, unit, pi)


def fiber_product(a, b):
    """Subalgebra of A x A' of pairs with equal augmentation.

    Basis: (b0, b0'), then (b_i, 0) for i > 0, then (0, b_j') for j > 0."""
    if a.base != b.base:
        raise FieldMismatch("fiber product over different base fields")
    zero = a.base.zero()
    ea, eb = a.dim, b.dim
    dim = ea + eb - 1

    def pair(u, v):
        return tuple(u) + tuple(v)

    basis = [pair(a._basis_vec(0), b._basis_vec(0))]
    names = [f"({a.names[0]},{b.names[0]})"]
    for i in range(1, ea):
        basis.append(pair(a._basis_vec(i), [zero] * eb))
        names.append(f"({a.names[i]},0)")
    for j in range(1, eb):
        basis.append(pair([zero] * ea, b._basis_vec(j)))
        names.append(f"(0,{b.names[j]})")

    def mul_pairs(u, v):
        return pair(a.mul_vec(u[:ea], v[:ea]), b.mul_vec(u[ea:], v[ea:]))

    def coords(w):
        # pi-components agree for every product of basis pairs
        lam = a.pi_value(w[:ea])
        rest = tuple(x - lam * y for x, y in zip(w, basis[0]))
        out = [lam]
        out.extend(rest[1:ea])
        out.extend(rest[ea + 1:])
        # validity: components 0 of each block must be exhausted
        if not rest[0].is_zero() or not rest[ea].is_zero():
            raise ValidationError("pair outside the fiber product")
        return tuple(out)

    mul = [[coords(mul_pairs(basis[i], basis[j])) for j in range(dim)]
           for i in range(dim)]
    unit = coords(pair(a.unit, b.unit))
    pi = tuple(a.base.one() if l == 0 else zero for l in range(dim))
    return FiniteAlgebra(a.base, names, mul, unit, pi)


def direct_product(a, b, which_pi=0):
    """A x A' with the augmentation taken from the chosen factor."""
    if a.base != b.base:
        raise FieldMismatch("product over different base fields")
    zero = a.base.zero()
    ea, eb = a.dim, b.dim
    dim = ea + eb

    blocks = []
    names = []
    if which_pi == 0:
        order = [(0, i) for i in range(ea)] + [(1, j) for j in range(eb)]
    else:
        order = ([(1, 0)] + [(0, i) for i in range(ea)]
                 + [(1, j) for j in range(1, eb)])
    for side, idx in order:
        if side == 0:
            blocks.append(tuple(a._basis_vec(idx)) + (zero,) * eb)
            names.append(f"({a.names[idx]},0)")
        else:
            blocks.append((zero,) * ea + tuple(b._basis_vec(idx)))
            names.append(f"(0,{b.names[idx]})")

    def mul_pairs(u, v):
        return (a.mul_vec(u[:ea], v[:ea]) + b.mul_vec(u[ea:], v[ea:]))

    def coords(w):
        # the ambient coordinates permuted into the chosen basis order
        out = []
        for side, idx in order:
            out.append(w[idx] if side == 0 else w[ea + idx])
        return tuple(out)

    mul = [[coords(mul_pairs(blocks[i], blocks[j])) for j in range(dim)]
           for i in range(dim)]
    unit = coords(tuple(a.unit) + tuple(b.unit))
    pi = tuple(a.base.one() if l == 0 else zero for l in range(dim))
    return FiniteAlgebra(a.base, names, mul, unit, pi)
