"""The algebra of linearized polynomials sum_i f_i x^(q^i) over GF(q^n).

A polynomial is stored by its unique representative of q-degree < n, i.e.
a coefficient vector of length exactly n (composition is taken modulo
x^(q^n) - x).  Matrix representations are with respect to the power basis
{1, t, ..., t^(n-1)} of the field's modulus root t; this basis is fixed so
that canonical forms and golden values are stable.  Counts and densities
derived from these matrices are basis-independent, which the test suite
checks by recomputing one of them under a second modulus.
"""

from __future__ import annotations

from typing import Sequence

from . import linalg
from .fields import ExtField


class LinearizedPoly:
    """f = sum_{i=0}^{n-1} coeffs[i] * x^(q^i) over the given field."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: ExtField, coeffs: Sequence[int]):
        coeffs = tuple(coeffs)
        if len(coeffs) != field.n:
            raise ValueError(
                f"need exactly n = {field.n} coefficients, got {len(coeffs)}"
            )
        self.field = field
        self.coeffs = coeffs

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls, field: ExtField) -> "LinearizedPoly":
        return cls(field, (0,) * field.n)

    @classmethod
    def x(cls, field: ExtField) -> "LinearizedPoly":
        return cls(field, (1,) + (0,) * (field.n - 1))

    @classmethod
    def monomial(cls, field: ExtField, c: int, i: int) -> "LinearizedPoly":
        """c * x^(q^i)."""
        coeffs = [0] * field.n
        coeffs[i % field.n] = c
        return cls(field, coeffs)

    @classmethod
    def scalar(cls, field: ExtField, c: int) -> "LinearizedPoly":
        """The multiplication map x -> c*x."""
        return cls.monomial(field, c, 0)

    # algebra ------------------------------------------------------------
    def __add__(self, other: "LinearizedPoly") -> "LinearizedPoly":
        self._check(other)
        E = self.field
        return LinearizedPoly(E, tuple(E.add(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "LinearizedPoly") -> "LinearizedPoly":
        self._check(other)
        E = self.field
        return LinearizedPoly(E, tuple(E.sub(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c: int) -> "LinearizedPoly":
        """Multiply every coefficient by c in GF(q^n)."""
        E = self.field
        return LinearizedPoly(E, tuple(E.mul(c, a) for a in self.coeffs))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, LinearizedPoly)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def __repr__(self) -> str:
        return f"LinearizedPoly({self.field!r}, {self.coeffs})"

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _check(self, other: "LinearizedPoly") -> None:
        if self.field != other.field:
            raise ValueError("field mismatch")

    # the operations of the algebra --------------------------------------
    def evaluate(self, a: int) -> int:
        """f(a); GF(q)-linear in a."""
        E = self.field
        out = 0
        v = a
        for c in self.coeffs:
            if c:
                out = E.add(out, E.mul(c, v))
            v = E.frobenius(v, 1)
        return out

    def compose(self, g: "LinearizedPoly") -> "LinearizedPoly":
        """f o g modulo x^(q^n) - x:  coeff_k = sum_{i+j=k mod n} f_i g_j^(q^i)."""
        self._check(g)
        E = self.field
        n = E.n
        out = [0] * n
        for i, fi in enumerate(self.coeffs):
            if not fi:
                continue
            for j, gj in enumerate(g.coeffs):
                if not gj:
                    continue
                k = (i + j) % n
                out[k] = E.add(out[k], E.mul(fi, E.frobenius(gj, i)))
        return LinearizedPoly(E, out)

    def to_matrix(self) -> linalg.Matrix:
        """Matrix of a -> f(a) over GF(q) w.r.t. the power basis; an algebra
        isomorphism: to_matrix(f o g) == to_matrix(f) . to_matrix(g)."""
        E = self.field
        cols = [E.coords(self.evaluate(b)) for b in E.basis()]
        return tuple(tuple(col[r] for col in cols) for r in range(E.n))

    def rank(self) -> int:
        """Rank of the induced GF(q)-linear map; n iff f is invertible."""
        return linalg.rank(self.to_matrix(), self.field.base)

    def is_invertible(self) -> bool:
        return self.rank() == self.field.n

    def adjoint(self) -> "LinearizedPoly":
        """sum_i f_i^(q^(n-i)) x^(q^(n-i)): the transpose under the trace
        form, i.e. Tr(f(a)b) == Tr(a adj(f)(b)) for all a, b."""
        E = self.field
        n = E.n
        out = [0] * n
        for i, c in enumerate(self.coeffs):
            if c:
                k = (n - i) % n
                out[k] = E.add(out[k], E.frobenius(c, (n - i) % n))
        return LinearizedPoly(E, out)

    def rho_twist(self, rho: int) -> "LinearizedPoly":
        """Apply the base-field automorphism x -> x^(p^rho) to every
        coefficient (its minimal extension to GF(q^n)); 0 <= rho < h."""
        E = self.field
        h = E.base.h
        if not 0 <= rho < h:
            raise ValueError(f"rho must lie in [0, {h}), got {rho}")
        if rho == 0:
            return self
        e = E.base.p**rho
        return LinearizedPoly(E, tuple(E.pow(c, e) for c in self.coeffs))


def evaluate(f: LinearizedPoly, a: int) -> int:
    return f.evaluate(a)


def compose(f: LinearizedPoly, g: LinearizedPoly) -> LinearizedPoly:
    return f.compose(g)


def to_matrix(f: LinearizedPoly) -> linalg.Matrix:
    return f.to_matrix()


def poly_rank(f: LinearizedPoly) -> int:
    return f.rank()


def adjoint(f: LinearizedPoly) -> LinearizedPoly:
    return f.adjoint()


def rho_twist(f: LinearizedPoly, rho: int) -> LinearizedPoly:
    return f.rho_twist(rho)


def from_matrix(field: ExtField, mat: Sequence[Sequence[int]]) -> LinearizedPoly:
    """Inverse of to_matrix: the unique q-polynomial inducing the given
    GF(q)-linear map.  Solves the Moore system sum_j c_j b^(q^j) = image(b)
    over the power basis, exactly."""
    n = field.n
    images = []
    for j, b in enumerate(field.basis()):
        col = tuple(mat[r][j] for r in range(n))
        images.append(field.from_coords(col))
    rows = []
    for b in field.basis():
        rows.append(tuple(field.frobenius(b, j) for j in range(n)))
    # Solve M c = images over GF(q^n) where M[i][j] = basis_i^(q^j).
    aug = [list(rows[i]) + [images[i]] for i in range(n)]
    reduced, pivots = linalg.rref(aug, field)
    if len(pivots) != n or any(p >= n for p in pivots):
        raise ValueError("Moore matrix of the power basis is singular")
    coeffs = [0] * n
    for row, p in zip(reduced, pivots):
        coeffs[p] = row[n]
    return LinearizedPoly(field, coeffs)
