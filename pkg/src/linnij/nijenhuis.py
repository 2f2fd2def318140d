"""Linear operator fields, Nijenhuis torsion, and left-symmetric algebras.

The bridge between the two sides is the right-multiplication operator of an
algebra: given structure constants a[i][j][k] (eta_i * eta_j = sum_k
a[i][j][k] eta_k), the operator field has entry (row k, column i) equal to
sum_j a[i][j][k] x_j, so the matrix acts on a tangent vector by
right-multiplying it with the base point.  That convention reproduces the
catalog matrices verbatim and is pinned down by tests, not assumed.

Indices on reported witnesses (violating triples, nonzero torsion
components) are 1-based, matching the basis labels eta_1..eta_n; internal
arrays are 0-based.
"""

from __future__ import annotations

import random
from typing import Iterable, Sequence

from .errors import DimensionMismatchError
from .polymatrix import PolyMatrix, jacobian, scalar_mat_inverse
from .polyring import Poly
from .exactfield import Scalar, ZERO


class StructureConstants:
    """Rank-3 array of exact scalars defining a bilinear product.

    ``a[i][j][k]`` is the eta_k-component of eta_i * eta_j: first index is
    the left factor, second the right factor, third the output component.
    """

    __slots__ = ("n", "a")

    def __init__(self, a: Sequence[Sequence[Sequence[Scalar]]]):
        n = len(a)
        coerced = []
        for plane in a:
            if len(plane) != n:
                raise DimensionMismatchError("structure constants must be cubic")
            rows = []
            for row in plane:
                if len(row) != n:
                    raise DimensionMismatchError("structure constants must be cubic")
                rows.append([v if isinstance(v, Scalar) else Scalar(v) for v in row])
            coerced.append(rows)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "a", coerced)

    def __setattr__(self, name, value):
        raise AttributeError("StructureConstants is immutable")

    @staticmethod
    def zero(n: int) -> "StructureConstants":
        return StructureConstants(
            [[[ZERO] * n for _ in range(n)] for _ in range(n)]
        )

    @staticmethod
    def from_relations(
        n: int, relations: Iterable[tuple[int, int, int, object]]
    ) -> "StructureConstants":
        """Build from sparse 1-based relations (i, j, k, coefficient)."""
        a = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
        for i, j, k, coeff in relations:
            if not (1 <= i <= n and 1 <= j <= n and 1 <= k <= n):
                raise DimensionMismatchError(
                    "relation index out of range: (%d, %d, %d)" % (i, j, k)
                )
            value = coeff if isinstance(coeff, Scalar) else Scalar(coeff)
            a[i - 1][j - 1][k - 1] = a[i - 1][j - 1][k - 1] + value
        return StructureConstants(a)

    def relations(self) -> list[tuple[int, int, int, Scalar]]:
        """Nonzero entries as sorted 1-based (i, j, k, coefficient) tuples."""
        out = []
        for i in range(self.n):
            for j in range(self.n):
                for k in range(self.n):
                    v = self.a[i][j][k]
                    if not v.is_zero():
                        out.append((i + 1, j + 1, k + 1, v))
        return out

    def product(self, i: int, j: int) -> list[Scalar]:
        """Component vector of eta_i * eta_j (0-based factors)."""
        return list(self.a[i][j])

    def __eq__(self, other):
        if not isinstance(other, StructureConstants):
            return NotImplemented
        return self.n == other.n and self.a == other.a

    def __hash__(self):
        return hash(
            tuple(tuple(tuple(row) for row in plane) for plane in self.a)
        )

    def __repr__(self):
        return "StructureConstants(n=%d, %d nonzero)" % (
            self.n,
            len(self.relations()),
        )


def lsa_to_operator(sc: StructureConstants) -> PolyMatrix:
    """Right-multiplication operator field of an algebra.

    Entry (k, i) is sum_j a[i][j][k] x_j; every entry is linear homogeneous.
    """
    n = sc.n
    rows = []
    for k in range(n):
        row = []
        for i in range(n):
            acc = Poly.zero(n)
            for j in range(n):
                coeff = sc.a[i][j][k]
                if not coeff.is_zero():
                    acc = acc + Poly.monomial(
                        n, (1 if m == j else 0 for m in range(n)), coeff
                    )
            row.append(acc)
        rows.append(row)
    return PolyMatrix(rows)


def operator_is_linear(operator: PolyMatrix) -> bool:
    """True when every entry is homogeneous of degree one (or zero)."""
    return all(
        p.is_zero() or p.is_homogeneous(1)
        for row in operator.entries
        for p in row
    )


def operator_to_lsa(operator: PolyMatrix) -> StructureConstants:
    """Recover structure constants a[i][j][k] = d(entry (k,i))/dx_j.

    Exact inverse of :func:`lsa_to_operator`; rejects operators with a
    nonlinear or affine entry.
    """
    if not operator.is_square() or operator.rows != operator.nvars:
        raise DimensionMismatchError("operator must be n x n over n variables")
    if not operator_is_linear(operator):
        raise DimensionMismatchError("operator entries must be linear homogeneous")
    n = operator.rows
    a = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for k in range(n):
        for i in range(n):
            entry = operator.entries[k][i]
            for exps, coeff in entry.terms.items():
                j = exps.index(1)
                a[i][j][k] = coeff
    return StructureConstants(a)


class TorsionTensor:
    """All n^3 torsion components of an operator field, computed verbatim.

    Nothing is deduplicated: the j<->k antisymmetry is a property the tests
    check, not one the storage assumes.
    """

    __slots__ = ("n", "nvars", "comp")

    def __init__(self, comp: Sequence[Sequence[Sequence[Poly]]]):
        object.__setattr__(self, "n", len(comp))
        object.__setattr__(self, "nvars", comp[0][0][0].nvars)
        object.__setattr__(self, "comp", [[list(row) for row in plane] for plane in comp])

    def __setattr__(self, name, value):
        raise AttributeError("TorsionTensor is immutable")

    def component(self, i: int, j: int, k: int) -> Poly:
        """Component with 1-based indices (upper index first)."""
        return self.comp[i - 1][j - 1][k - 1]

    def is_zero(self) -> bool:
        return all(
            p.is_zero() for plane in self.comp for row in plane for p in row
        )

    def first_nonzero(self) -> tuple[int, int, int, Poly] | None:
        """First nonvanishing component as 1-based (i, j, k, polynomial)."""
        for i in range(self.n):
            for j in range(self.n):
                for k in range(self.n):
                    p = self.comp[i][j][k]
                    if not p.is_zero():
                        return (i + 1, j + 1, k + 1, p)
        return None


def torsion(operator: PolyMatrix) -> TorsionTensor:
    """Four-term coordinate torsion of a polynomial operator field.

    Component (i, j, k) is
    L^s_j dL^i_k/dx^s - L^s_k dL^i_j/dx^s - L^i_s dL^s_k/dx^j
    + L^i_s dL^s_j/dx^k, summed over s.  Entries need not be linear.
    """
    if not operator.is_square() or operator.rows != operator.nvars:
        raise DimensionMismatchError("operator must be n x n over n variables")
    n = operator.rows
    L = operator.entries
    grad = [[[L[i][j].partial(s) for s in range(n)] for j in range(n)] for i in range(n)]
    comp = []
    for i in range(n):
        plane = []
        for j in range(n):
            row = []
            for k in range(n):
                acc = Poly.zero(n)
                for s in range(n):
                    acc = acc + L[s][j] * grad[i][k][s]
                    acc = acc - L[s][k] * grad[i][j][s]
                    acc = acc - L[i][s] * grad[s][k][j]
                    acc = acc + L[i][s] * grad[s][j][k]
                row.append(acc)
            plane.append(row)
        comp.append(plane)
    return TorsionTensor(comp)


class LsaCheck:
    """Outcome of the associator-symmetry test, with a violating triple."""

    __slots__ = ("ok", "witness")

    def __init__(self, ok: bool, witness: tuple[int, int, int] | None):
        object.__setattr__(self, "ok", ok)
        object.__setattr__(self, "witness", witness)

    def __setattr__(self, name, value):
        raise AttributeError("LsaCheck is immutable")

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return "LsaCheck(ok)"
        return "LsaCheck(violated at %r)" % (self.witness,)


def _associator(sc: StructureConstants, i: int, j: int, k: int) -> list[Scalar]:
    """(eta_i * eta_j) * eta_k - eta_i * (eta_j * eta_k), as a vector."""
    n = sc.n
    out = [ZERO] * n
    for s in range(n):
        left = sc.a[i][j][s]
        if not left.is_zero():
            for m in range(n):
                out[m] = out[m] + left * sc.a[s][k][m]
        right = sc.a[j][k][s]
        if not right.is_zero():
            for m in range(n):
                out[m] = out[m] - right * sc.a[i][s][m]
    return out


def is_left_symmetric(sc: StructureConstants) -> LsaCheck:
    """Check associator symmetry in the first two arguments on basis triples.

    Bilinearity makes basis triples sufficient.  The witness, if any, is the
    first (i, j, k) in lexicographic order with A(i,j,k) != A(j,i,k),
    reported 1-based.
    """
    n = sc.n
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                if _associator(sc, i, j, k) != _associator(sc, j, i, k):
                    return LsaCheck(False, (i + 1, j + 1, k + 1))
    return LsaCheck(True, None)


def change_coordinates(
    operator: PolyMatrix, change: Sequence[Sequence[Scalar]]
) -> PolyMatrix:
    """Conjugate an operator field by the linear change x = T y.

    Returns T^{-1} L(T y) T; raises on singular T.  For a linear operator
    this is simultaneously the basis change of the underlying algebra.
    """
    t = [
        [v if isinstance(v, Scalar) else Scalar(v) for v in row] for row in change
    ]
    t_inv = scalar_mat_inverse(t)
    substituted = operator.substitute_linear(t)
    return substituted.scalar_premul(t_inv).scalar_postmul(t)


def direct_sum(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    """Block-diagonal operator on the disjoint union of variables.

    Variables of ``b`` are shifted past those of ``a``.
    """
    na, nb = a.nvars, b.nvars
    n = na + nb
    zero = Poly.zero(n)
    rows = []
    for i in range(a.rows):
        rows.append(
            [a.entries[i][j].embed(n) for j in range(a.cols)] + [zero] * nb
        )
    for i in range(b.rows):
        rows.append(
            [zero] * na + [b.entries[i][j].embed(n, na) for j in range(b.cols)]
        )
    return PolyMatrix(rows)


def is_differentially_nondegenerate(
    sigmas: Sequence[Poly], wrt: Sequence[int] | None = None
) -> bool:
    """True when the Jacobian determinant of the sigmas is not the zero
    polynomial, i.e. the differentials are independent almost everywhere.

    ``wrt`` restricts differentiation to the given variable indices (used
    when the coefficient ring carries extra parameter variables).
    """
    return not jacobian(sigmas, wrt).determinant().is_zero()


def random_structure_constants(
    rng: random.Random, n: int, low: int = -2, high: int = 2, density: float = 1.0
) -> StructureConstants:
    """Seeded random structure constants with small integer entries.

    ``density`` < 1 zeroes entries at random, producing the sparser algebras
    that are more likely to satisfy left-symmetry by accident; dense draws
    are almost always violations.
    """
    a = []
    for i in range(n):
        plane = []
        for j in range(n):
            row = []
            for k in range(n):
                if density < 1.0 and rng.random() > density:
                    row.append(ZERO)
                else:
                    row.append(Scalar(rng.randint(low, high)))
            plane.append(row)
        a.append(plane)
    return StructureConstants(a)
