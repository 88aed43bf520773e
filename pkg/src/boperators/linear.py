"""Semilinear maps D: V -> W (x) B twisted by an operator on K.

The matrix holds the images of the basis vectors of V, so semilinearity is
definitional: D(sum a_i e_i) = sum apply(a_i) * D(e_i).  Exterior powers
take determinants over the commutative ring K (x) B; the checkable face of
the linear-disjointness theorem is that echelon kernel coefficients of a
constant-vector matrix are themselves constants.
"""

from itertools import combinations

from .errors import (BadExponent, DimensionMismatch, NotConstantInput,
                     ValidationError)
from .linalg import kernel_basis
from .operators import AlgebraBValue


class SemilinearMap:
    def __init__(self, operator, dim_v, dim_w, matrix):
        if dim_v < 1 or dim_w < 1:
            raise ValidationError("dimensions must be positive")
        if len(matrix) != dim_w or any(len(r) != dim_v for r in matrix):
            raise DimensionMismatch("matrix must be dim_w x dim_v")
        self.operator = operator
        self.dim_v = dim_v
        self.dim_w = dim_w
        self.matrix = [list(row) for row in matrix]

    @classmethod
    def coordinatewise(cls, operator, dim):
        """D(e_i) = e_i (x) 1: the operator acting in every coordinate."""
        one = operator.one()
        zero = one - one
        matrix = [[one if i == j else zero for j in range(dim)]
                  for i in range(dim)]
        return cls(operator, dim, dim, matrix)

    def apply_vec(self, vector):
        if len(vector) != self.dim_v:
            raise DimensionMismatch(
                f"expected {self.dim_v} coordinates, got {len(vector)}")
        images = [self.operator.apply(a) for a in vector]
        out = []
        for i in range(self.dim_w):
            acc = None
            for j in range(self.dim_v):
                term = images[j] * self.matrix[i][j]
                acc = term if acc is None else acc + term
            out.append(acc)
        return out

    def is_constant_vec(self, vector):
        """D(v) = v (x) 1 under the inclusion of V as the first coordinates."""
        value = self.apply_vec(vector)
        for i, comp in enumerate(value):
            if not comp.is_constant_value():
                return False
            expected = vector[i] if i < self.dim_v else None
            if expected is None:
                if not comp.coords[0].is_zero():
                    return False
            elif not comp.coords[0] == expected:
                return False
        return True

    def exterior_power(self, n):
        if n < 1 or n > self.dim_v:
            raise BadExponent(f"wedge power {n} outside 1..{self.dim_v}")
        rows = list(combinations(range(self.dim_w), n))
        cols = list(combinations(range(self.dim_v), n))
        matrix = []
        for rset in rows:
            row = []
            for cset in cols:
                sub = [[self.matrix[i][j] for j in cset] for i in rset]
                row.append(det_ring(sub))
            matrix.append(row)
        return SemilinearMap(self.operator, len(cols), len(rows), matrix)


def det_ring(matrix):
    """Determinant over a commutative ring by cofactor expansion."""
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    acc = None
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in matrix[1:]]
        term = matrix[0][j] * det_ring(minor)
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    return acc


def det_field(matrix):
    """Determinant of a matrix of field elements (same expansion)."""
    return det_ring(matrix)


def wedge_coords(vectors):
    """Coordinates of v_1 ^ ... ^ v_n in the combination basis of wedge^n."""
    n = len(vectors)
    dim = len(vectors[0])
    out = []
    for rset in combinations(range(dim), n):
        sub = [[vectors[j][i] for j in range(n)] for i in rset]
        out.append(det_field(sub))
    return out


def dependency_constancy_check(dmap, vectors):
    """Kernel of the matrix of constant vectors must have constant entries.

    The input vectors must each be constants of dmap; the report carries the
    canonical echelon kernel basis and any non-constant entry found (which
    would contradict linear disjointness over the constants and is treated
    as an oracle failure by the test-suite)."""
    for i, v in enumerate(vectors):
        if len(v) != dmap.dim_v:
            raise DimensionMismatch(f"vector {i} has wrong length")
        if not dmap.is_constant_vec(v):
            raise NotConstantInput(i)
    field = dmap.operator.field
    matrix = [[vectors[j][i] for j in range(len(vectors))]
              for i in range(dmap.dim_v)]
    kernel = kernel_basis(matrix, field.zero(), field.one())
    violations = []
    for vi, kvec in enumerate(kernel):
        for ci, entry in enumerate(kvec):
            if not dmap.operator.is_constant(entry):
                violations.append({"kernel_vector": vi, "entry": ci,
                                   "value": str(entry)})
    return {
        "kernel_basis": [[str(c) for c in kvec] for kvec in kernel],
        "kernel_dim": len(kernel),
        "entries_constant": not violations,
        "violations": violations,
    }
