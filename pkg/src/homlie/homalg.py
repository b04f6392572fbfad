"""Core Hom-algebra types and axiom checks.

A Hom-Lie algebra is a triple (g, [.,.], alpha): a skew bilinear bracket
together with a linear twist map, subject to the twisted Jacobi identity

    [alpha(x),[y,z]] + [alpha(y),[z,x]] + [alpha(z),[x,y]] = 0.

Everything is stored by structure constants over exact rationals.  All checks
quantify over basis tuples only; bilinearity makes that complete.  Failed
checks report the first violating index tuple in lexicographic order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DimensionMismatch, IndexOutOfRange, NotHomAssociative
from .exactlin import (
    Matrix,
    add_vec,
    frac,
    is_zero_vec,
    vec,
    zero_vec,
)

Vector = tuple[Fraction, ...]
Tensor = tuple[tuple[Vector, ...], ...]


def _tensor(dim: int, raw) -> Tensor:
    t = tuple(tuple(vec(v) for v in plane) for plane in raw)
    if len(t) != dim or any(
        len(plane) != dim or any(len(v) != dim for v in plane) for plane in t
    ):
        raise DimensionMismatch("structure tensor must be dim x dim x dim")
    return t


class HomAlgebra:
    """Finite-dimensional Hom-algebra with a skew-symmetric bracket.

    ``bracket[i][j]`` holds the coefficient vector of [x_i, x_j] in the basis;
    skew-symmetry of the full tensor is validated at construction.
    """

    __slots__ = ("dim", "bracket", "alpha")

    def __init__(self, dim: int, bracket, alpha: Matrix):
        t = _tensor(dim, bracket)
        for i in range(dim):
            for j in range(i, dim):
                for k in range(dim):
                    if t[i][j][k] != -t[j][i][k]:
                        raise ValueError(
                            f"bracket tensor is not skew-symmetric at {(i, j, k)}"
                        )
        if alpha.shape != (dim, dim):
            raise DimensionMismatch("alpha must be dim x dim")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "bracket", t)
        object.__setattr__(self, "alpha", alpha)

    def __setattr__(self, *_):
        raise AttributeError("HomAlgebra is immutable")

    @classmethod
    def from_pairs(cls, dim: int, pairs: dict, alpha: Matrix) -> "HomAlgebra":
        """Build from entries {(i, j): coefficient vector} with i < j only."""
        table = [[list(zero_vec(dim)) for _ in range(dim)] for _ in range(dim)]
        for (i, j), v in pairs.items():
            if not 0 <= i < j < dim:
                raise IndexOutOfRange(f"bracket entry ({i},{j}) needs 0 <= i < j < dim")
            w = vec(v)
            for k in range(dim):
                table[i][j][k] = w[k]
                table[j][i][k] = -w[k]
        return cls(dim, table, alpha)

    # basic algebra ---------------------------------------------------------
    def bracket_vec(self, x: Sequence, y: Sequence) -> Vector:
        x, y = vec(x), vec(y)
        out = list(zero_vec(self.dim))
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            for j, yj in enumerate(y):
                if yj == 0:
                    continue
                c = xi * yj
                row = self.bracket[i][j]
                for k in range(self.dim):
                    if row[k]:
                        out[k] += c * row[k]
        return tuple(out)

    def ad(self, i: int) -> Matrix:
        """Matrix of [x_i, .] acting on column vectors."""
        if not 0 <= i < self.dim:
            raise IndexOutOfRange(str(i))
        return Matrix([[self.bracket[i][j][k] for j in range(self.dim)] for k in range(self.dim)])

    def ad_matrices(self) -> list[Matrix]:
        return [self.ad(i) for i in range(self.dim)]

    def ad_vec(self, x: Sequence) -> Matrix:
        """Matrix of [x, .] for an arbitrary coefficient vector x."""
        x = vec(x)
        out = [[frac(0)] * self.dim for _ in range(self.dim)]
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            for j in range(self.dim):
                row = self.bracket[i][j]
                for k in range(self.dim):
                    if row[k]:
                        out[k][j] += xi * row[k]
        return Matrix(out)

    def alpha_col(self, i: int) -> Vector:
        return self.alpha.col(i)

    def is_abelian(self) -> bool:
        return all(
            is_zero_vec(self.bracket[i][j])
            for i in range(self.dim)
            for j in range(i + 1, self.dim)
        )

    def with_alpha(self, alpha: Matrix) -> "HomAlgebra":
        return HomAlgebra(self.dim, self.bracket, alpha)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, HomAlgebra)
            and self.dim == other.dim
            and self.bracket == other.bracket
            and self.alpha == other.alpha
        )

    def __hash__(self):
        return hash((self.dim, self.bracket, self.alpha))

    def __repr__(self):
        return f"HomAlgebra(dim={self.dim})"


class AssocAlgebra:
    """Hom-associative algebra: product tensor without skew symmetry."""

    __slots__ = ("dim", "product", "alpha")

    def __init__(self, dim: int, product, alpha: Matrix):
        t = _tensor(dim, product)
        if alpha.shape != (dim, dim):
            raise DimensionMismatch("alpha must be dim x dim")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "product", t)
        object.__setattr__(self, "alpha", alpha)

    def __setattr__(self, *_):
        raise AttributeError("AssocAlgebra is immutable")

    def product_vec(self, x: Sequence, y: Sequence) -> Vector:
        x, y = vec(x), vec(y)
        out = list(zero_vec(self.dim))
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            for j, yj in enumerate(y):
                if yj == 0:
                    continue
                c = xi * yj
                row = self.product[i][j]
                for k in range(self.dim):
                    if row[k]:
                        out[k] += c * row[k]
        return tuple(out)

    def is_commutative(self) -> bool:
        return all(
            self.product[i][j] == self.product[j][i]
            for i in range(self.dim)
            for j in range(i + 1, self.dim)
        )

    def __repr__(self):
        return f"AssocAlgebra(dim={self.dim})"


@dataclass(frozen=True)
class BilinearForm:
    """Bilinear form B(x, y) = x^T gram y."""

    dim: int
    gram: Matrix

    def __post_init__(self):
        if self.gram.shape != (self.dim, self.dim):
            raise DimensionMismatch("gram must be dim x dim")

    def value(self, x: Sequence, y: Sequence) -> Fraction:
        gx = self.gram.apply(y)
        return sum((a * b for a, b in zip(vec(x), gx)), frac(0))

    def is_symmetric(self) -> bool:
        return self.gram.is_symmetric()

    def is_nondegenerate(self) -> bool:
        return self.gram.rank() == self.dim


@dataclass(frozen=True)
class Representation:
    """Module (V, rho, beta) over a Hom-Lie algebra.

    ``rho[i]`` is the action matrix of the i-th basis vector on V.
    """

    algebra_dim: int
    module_dim: int
    rho: tuple[Matrix, ...]
    beta: Matrix

    def __post_init__(self):
        object.__setattr__(self, "rho", tuple(self.rho))
        m = self.module_dim
        if len(self.rho) != self.algebra_dim:
            raise DimensionMismatch("need one action matrix per basis vector")
        if any(r.shape != (m, m) for r in self.rho) or self.beta.shape != (m, m):
            raise DimensionMismatch("action matrices must be module_dim x module_dim")

    def rho_vec(self, x: Sequence) -> Matrix:
        out = Matrix.zeros(self.module_dim, self.module_dim)
        for i, xi in enumerate(vec(x)):
            if xi != 0:
                out = out + self.rho[i].scale(xi)
        return out


@dataclass(frozen=True)
class AlphaClass:
    """Classification of a twist map.

    ``involutive`` means alpha is an involutive automorphism of the bracket
    (alpha^2 = id and alpha multiplicative), so involutive implies regular.
    """

    tag: str
    multiplicative: bool
    regular: bool
    involutive: bool
    nilpotent: bool


@dataclass(frozen=True)
class HomLieReport:
    skew: bool
    hom_jacobi: bool
    skew_witness: Optional[tuple] = None
    jacobi_witness: Optional[tuple] = None
    jacobi_residual: Optional[Vector] = None

    @property
    def ok(self) -> bool:
        return self.skew and self.hom_jacobi


@dataclass(frozen=True)
class QuadraticReport:
    symmetric: bool
    nondegenerate: bool
    invariant: bool
    alpha_symmetric: bool
    symmetric_witness: Optional[tuple] = None
    degenerate_witness: Optional[Vector] = None
    invariant_witness: Optional[tuple] = None
    alpha_witness: Optional[tuple] = None

    @property
    def ok(self) -> bool:
        return (
            self.symmetric
            and self.nondegenerate
            and self.invariant
            and self.alpha_symmetric
        )


def jacobiator(g: HomAlgebra, i: int, j: int, k: int) -> Vector:
    """Coefficients of [a(x_i),[x_j,x_k]] + [a(x_j),[x_k,x_i]] + [a(x_k),[x_i,x_j]]."""
    for idx in (i, j, k):
        if not 0 <= idx < g.dim:
            raise IndexOutOfRange(str(idx))
    t1 = g.bracket_vec(g.alpha_col(i), g.bracket[j][k])
    t2 = g.bracket_vec(g.alpha_col(j), g.bracket[k][i])
    t3 = g.bracket_vec(g.alpha_col(k), g.bracket[i][j])
    return add_vec(add_vec(t1, t2), t3)


def _ad_alpha_matrices(g: HomAlgebra) -> list[Matrix]:
    """Matrices of [alpha(x_i), .], precomputed for fast Jacobi scans."""
    ads = g.ad_matrices()
    n = g.dim
    out = []
    for i in range(n):
        rows = [[Fraction(0)] * n for _ in range(n)]
        for m in range(n):
            c = g.alpha[m, i]
            if c == 0:
                continue
            adm = ads[m].data
            for r in range(n):
                src = adm[r]
                dst = rows[r]
                for s in range(n):
                    if src[s]:
                        dst[s] += c * src[s]
        out.append(Matrix(rows))
    return out


_SparseRows = list[tuple[tuple[int, Fraction], ...]]


def _sparse_rows(m: Matrix) -> _SparseRows:
    return [tuple((j, x) for j, x in enumerate(row) if x) for row in m.data]


def _sparse_apply(srows: _SparseRows, v) -> list[Fraction]:
    out = []
    for row in srows:
        acc = Fraction(0)
        for j, c in row:
            if v[j]:
                acc += c * v[j]
        out.append(acc)
    return out


def check_hom_lie(g: HomAlgebra) -> HomLieReport:
    """Verify skew-symmetry and the twisted Jacobi identity on all basis triples."""
    skew = True
    skew_witness = None
    for i in range(g.dim):
        for j in range(i, g.dim):
            for k in range(g.dim):
                if g.bracket[i][j][k] != -g.bracket[j][i][k]:
                    skew, skew_witness = False, (i, j, k)
                    break
            if not skew:
                break
        if not skew:
            break
    n = g.dim
    ad_alpha = [_sparse_rows(m) for m in _ad_alpha_matrices(g)]
    nonzero = [[not is_zero_vec(g.bracket[i][j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                if not (nonzero[j][k] or nonzero[k][i] or nonzero[i][j]):
                    continue
                t1 = _sparse_apply(ad_alpha[i], g.bracket[j][k])
                t2 = _sparse_apply(ad_alpha[j], g.bracket[k][i])
                t3 = _sparse_apply(ad_alpha[k], g.bracket[i][j])
                res = tuple(a + b + c for a, b, c in zip(t1, t2, t3))
                if not is_zero_vec(res):
                    return HomLieReport(skew, False, skew_witness, (i, j, k), res)
    return HomLieReport(skew, True, skew_witness)


def multiplicativity_witness(g: HomAlgebra) -> Optional[tuple[int, int]]:
    """First basis pair where alpha([x_i,x_j]) != [alpha(x_i),alpha(x_j)]."""
    ad_alpha = _ad_alpha_matrices(g)
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            lhs = g.alpha.apply(g.bracket[i][j])
            rhs = ad_alpha[i].apply(g.alpha_col(j))
            if lhs != rhs:
                return (i, j)
    return None


def is_multiplicative(g: HomAlgebra) -> bool:
    return multiplicativity_witness(g) is None


def is_nilpotent_matrix(a: Matrix) -> bool:
    p = a
    for _ in range(a.rows):
        if p.is_zero():
            return True
        p = p @ a
    return p.is_zero()


def classify_alpha(g: HomAlgebra) -> AlphaClass:
    """Classify the twist map of a Hom-Lie algebra.

    multiplicative: alpha is a bracket morphism; regular: an automorphism;
    involutive: an automorphism with alpha^2 = id; nilpotent: alpha^n = 0.
    """
    mult = is_multiplicative(g)
    invertible = g.alpha.inverse() is not None
    regular = mult and invertible
    involutive = mult and g.alpha.power(2).is_identity()
    nilpotent = is_nilpotent_matrix(g.alpha)
    if involutive:
        tag = "involutive"
    elif regular:
        tag = "regular"
    elif nilpotent:
        tag = "nilpotent"
    elif mult:
        tag = "multiplicative"
    else:
        tag = "general"
    return AlphaClass(tag, mult, regular, involutive, nilpotent)


def check_quadratic(g: HomAlgebra, b: BilinearForm) -> QuadraticReport:
    """Check that b is an invariant scalar product compatible with the twist.

    invariant: B([x,y],z) = B(x,[y,z]) on basis triples;
    alpha_symmetric: gram @ alpha = alpha^T @ gram.
    """
    if b.dim != g.dim:
        raise DimensionMismatch("form and algebra dimensions differ")
    n = g.dim
    gram = b.gram
    symmetric = True
    sym_witness = None
    for i in range(n):
        for j in range(i + 1, n):
            if gram[i, j] != gram[j, i]:
                symmetric, sym_witness = False, (i, j)
                break
        if not symmetric:
            break
    from .exactlin import kernel

    ker = kernel(gram)
    nondeg = ker.is_zero()
    degenerate_witness = None if nondeg else ker.vectors()[0]
    invariant = True
    inv_witness = None
    ads = g.ad_matrices()
    for i in range(n):
        lhs = ads[i].transpose() @ gram  # (y,z) -> B([x_i,y],z)
        gram_row = [(m, gram[i, m]) for m in range(n) if gram[i, m]]
        rhs_rows = [
            [
                sum((c * g.bracket[j][k][m] for m, c in gram_row), frac(0))
                for k in range(n)
            ]
            for j in range(n)
        ]
        rhs = Matrix(rhs_rows)  # (y,z) -> B(x_i,[y,z])
        if lhs != rhs:
            for j in range(n):
                for k in range(n):
                    if lhs[j, k] != rhs[j, k]:
                        invariant, inv_witness = False, (i, j, k)
                        break
                if not invariant:
                    break
        if not invariant:
            break
    lhs = gram @ g.alpha
    rhs = g.alpha.transpose() @ gram
    alpha_symmetric = lhs == rhs
    alpha_witness = None
    if not alpha_symmetric:
        alpha_witness = next(
            (i, j)
            for i in range(n)
            for j in range(n)
            if lhs[i, j] != rhs[i, j]
        )
    return QuadraticReport(
        symmetric,
        nondeg,
        invariant,
        alpha_symmetric,
        sym_witness,
        degenerate_witness,
        inv_witness,
        alpha_witness,
    )


def check_hom_quadratic(g: HomAlgebra, b: BilinearForm, gamma: Matrix) -> bool:
    """Twisted invariance B([x,y],gamma(z)) = -B(gamma(y),[x,z]) on basis triples."""
    if b.dim != g.dim or gamma.shape != (g.dim, g.dim):
        raise DimensionMismatch("incompatible dimensions")
    n = g.dim
    for i in range(n):
        for j in range(n):
            for k in range(n):
                lhs = b.value(g.bracket[i][j], gamma.col(k))
                rhs = -b.value(gamma.col(j), g.bracket[i][k])
                if lhs != rhs:
                    return False
    return True


class QuadraticHomAlgebra:
    """A Hom-Lie algebra with a validated invariant scalar product."""

    __slots__ = ("algebra", "form")

    def __init__(self, algebra: HomAlgebra, form: BilinearForm):
        report = check_quadratic(algebra, form)
        if not report.ok:
            failed = [
                name
                for name, okay in (
                    ("symmetric", report.symmetric),
                    ("nondegenerate", report.nondegenerate),
                    ("invariant", report.invariant),
                    ("alpha_symmetric", report.alpha_symmetric),
                )
                if not okay
            ]
            raise ValueError(f"not a quadratic structure: {', '.join(failed)} failed")
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "form", form)

    def __setattr__(self, *_):
        raise AttributeError("QuadraticHomAlgebra is immutable")

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def gram(self) -> Matrix:
        return self.form.gram

    @property
    def alpha(self) -> Matrix:
        return self.algebra.alpha

    def __eq__(self, other):
        return (
            isinstance(other, QuadraticHomAlgebra)
            and self.algebra == other.algebra
            and self.form.gram == other.form.gram
        )

    def __hash__(self):
        return hash((self.algebra, self.form.gram))

    def __repr__(self):
        return f"QuadraticHomAlgebra(dim={self.dim})"


def check_representation(g: HomAlgebra, r: Representation) -> bool:
    """Module axiom rho([x,y]) beta = rho(a(x)) rho(y) - rho(a(y)) rho(x)."""
    if r.algebra_dim != g.dim:
        raise DimensionMismatch("representation is over a different algebra")
    rho_alpha = [r.rho_vec(g.alpha_col(i)) for i in range(g.dim)]
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            lhs = r.rho_vec(g.bracket[i][j]) @ r.beta
            rhs = rho_alpha[i] @ r.rho[j] - rho_alpha[j] @ r.rho[i]
            if lhs != rhs:
                return False
    return True


def check_coadjoint_condition(g: HomAlgebra) -> bool:
    """Identity a([[x,y],z]) = [x,[a(y),z]] - [y,[a(x),z]] on basis triples.

    Holds exactly when the dual space with the negated transposed adjoint
    action and transposed twist is a representation.
    """
    ads = g.ad_matrices()
    ad_alpha = _ad_alpha_matrices(g)
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            # both sides are linear in z, compare the operators
            lhs = g.alpha @ g.ad_vec(g.bracket[i][j])
            rhs_rows = ads[i] @ ad_alpha[j] - ads[j] @ ad_alpha[i]
            if lhs != rhs_rows:
                return False
    return True


def check_hom_associative(a: AssocAlgebra) -> bool:
    """Twisted associativity mu(a(x), mu(y,z)) = mu(mu(x,y), a(z))."""
    n = a.dim
    for i in range(n):
        ai = a.alpha.col(i)
        for j in range(n):
            for k in range(n):
                lhs = a.product_vec(ai, a.product[j][k])
                rhs = a.product_vec(a.product[i][j], a.alpha.col(k))
                if lhs != rhs:
                    return False
    return True


def commutator_hom_lie(a: AssocAlgebra) -> HomAlgebra:
    """Commutator bracket [x,y] = mu(x,y) - mu(y,x) of a Hom-associative algebra."""
    if not check_hom_associative(a):
        raise NotHomAssociative("input fails twisted associativity")
    n = a.dim
    bracket = [
        [
            tuple(a.product[i][j][k] - a.product[j][i][k] for k in range(n))
            for j in range(n)
        ]
        for i in range(n)
    ]
    return HomAlgebra(n, bracket, a.alpha)


def check_morphism(g: HomAlgebra, h: HomAlgebra, f: Matrix) -> bool:
    """Is f a morphism of Hom-algebras: f[x,y] = [f x, f y] and f a = a' f."""
    if f.shape != (h.dim, g.dim):
        raise DimensionMismatch("f must map g into h")
    if f @ g.alpha != h.alpha @ f:
        return False
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            if f.apply(g.bracket[i][j]) != h.bracket_vec(f.col(i), f.col(j)):
                return False
    return True


def is_lie_algebra(g: HomAlgebra) -> bool:
    """Does the bracket alone satisfy the classical Jacobi identity."""
    return check_hom_lie(g.with_alpha(Matrix.identity(g.dim))).hom_jacobi
