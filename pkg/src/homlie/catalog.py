"""Named fixtures and seeded random generators.

Classical example algebras parameterized over exact rationals, plus
deterministic pseudorandom instances feeding the property suites.  Fixture
names are part of the CLI contract.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .build import (
    change_basis,
    change_basis_quadratic,
    direct_sum,
    double_extension_1d,
    ExtensionData1D,
    orthogonal_sum,
    quadratic_yau_twist,
    yau_twist,
)
from .errors import BadParams, UnknownFixture
from .exactlin import Matrix, frac, zero_vec
from .homalg import AssocAlgebra, BilinearForm, HomAlgebra, QuadraticHomAlgebra

_ONE = Fraction(1)
_ZERO = Fraction(0)


@dataclass(frozen=True)
class FixtureId:
    name: str
    params: tuple[Fraction, ...]


# ---------------------------------------------------------------------------
# basic Lie algebras
# ---------------------------------------------------------------------------

def abelian(n: int) -> HomAlgebra:
    """Zero bracket with identity twist."""
    n = int(n)
    if n < 1:
        raise BadParams("dimension must be >= 1")
    z = [[zero_vec(n) for _ in range(n)] for _ in range(n)]
    return HomAlgebra(n, z, Matrix.identity(n))


def heis3() -> HomAlgebra:
    """Heisenberg algebra: [x1,x2] = x3."""
    return HomAlgebra.from_pairs(3, {(0, 1): [0, 0, 1]}, Matrix.identity(3))


def sl2() -> HomAlgebra:
    """sl2 in the basis (e, f, h): [e,f]=h, [h,e]=2e, [h,f]=-2f."""
    return sl_n(2)


def _sln_basis(n: int) -> list[list[list[Fraction]]]:
    mats = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            m = [[_ZERO] * n for _ in range(n)]
            m[i][j] = _ONE
            mats.append(m)
    for k in range(n - 1):
        m = [[_ZERO] * n for _ in range(n)]
        m[k][k] = _ONE
        m[k + 1][k + 1] = -_ONE
        mats.append(m)
    return mats


def _sln_coords(n: int, m: list[list[Fraction]]) -> list[Fraction]:
    coords = []
    for i in range(n):
        for j in range(n):
            if i != j:
                coords.append(m[i][j])
    partial = _ZERO
    for k in range(n - 1):
        partial += m[k][k]
        coords.append(partial)
    return coords


def sl_n(n: int) -> HomAlgebra:
    """sl_n with basis E_ij (i != j, row major) then H_k = E_kk - E_(k+1)(k+1)."""
    n = int(n)
    if n < 2:
        raise BadParams("sl_n needs n >= 2")
    basis = _sln_basis(n)
    dim = len(basis)
    bracket = []
    for a in basis:
        row = []
        for b in basis:
            comm = [
                [
                    sum((a[i][t] * b[t][j] - b[i][t] * a[t][j] for t in range(n)), _ZERO)
                    for j in range(n)
                ]
                for i in range(n)
            ]
            row.append(_sln_coords(n, comm))
        bracket.append(row)
    return HomAlgebra(dim, bracket, Matrix.identity(dim))


def sl_n_killing(n: int) -> BilinearForm:
    """Killing form of sl_n: K(x, y) = 2n tr(xy)."""
    n = int(n)
    basis = _sln_basis(n)
    dim = len(basis)
    gram = [
        [
            2
            * n
            * sum(
                (basis[a][i][t] * basis[b][t][i] for i in range(n) for t in range(n)),
                _ZERO,
            )
            for b in range(dim)
        ]
        for a in range(dim)
    ]
    return BilinearForm(dim, Matrix(gram))


def sl_n_neg_transpose(n: int) -> Matrix:
    """The involution x -> -x^T of sl_n, in the standard basis."""
    n = int(n)
    basis = _sln_basis(n)
    cols = []
    for m in basis:
        neg_t = [[-m[j][i] for j in range(n)] for i in range(n)]
        cols.append(_sln_coords(n, neg_t))
    return Matrix.from_cols(cols)


# ---------------------------------------------------------------------------
# named fixtures
# ---------------------------------------------------------------------------

def ex_1_2(a, b, c, d) -> HomAlgebra:
    """Three-dimensional Hom-Lie family: [x1,x2]=a x1+b x3, [x1,x3]=c x2,
    [x2,x3]=d x1+2a x3, twist diag(1,2,2)."""
    a, b, c, d = frac(a), frac(b), frac(c), frac(d)
    pairs = {
        (0, 1): [a, _ZERO, b],
        (0, 2): [_ZERO, c, _ZERO],
        (1, 2): [d, _ZERO, 2 * a],
    }
    return HomAlgebra.from_pairs(3, pairs, Matrix.diagonal([1, 2, 2]))


def jackson_sl2(q) -> HomAlgebra:
    """Jackson sl2: [x1,x2]=-2q x2, [x1,x3]=2 x3, [x2,x3]=-(1+q)/2 x1,
    twist diag(q, q^2, q).  q = 1 recovers the classical sl2."""
    q = frac(q)
    if q == 0:
        raise BadParams("q must be nonzero")
    pairs = {
        (0, 1): [_ZERO, -2 * q, _ZERO],
        (0, 2): [_ZERO, _ZERO, frac(2)],
        (1, 2): [-(1 + q) / 2, _ZERO, _ZERO],
    }
    return HomAlgebra.from_pairs(3, pairs, Matrix.diagonal([q, q * q, q]))


def sl_n_transpose(n) -> QuadraticHomAlgebra:
    """sl_n twisted by x -> -x^T, with the twisted Killing form."""
    n = int(n)
    base = QuadraticHomAlgebra(sl_n(n), sl_n_killing(n))
    return quadratic_yau_twist(base, sl_n_neg_transpose(n))


def swap_double(n=2) -> HomAlgebra:
    """sl_n + sl_n twisted by the factor swap automorphism."""
    n = int(n)
    g = sl_n(n)
    l = direct_sum(g, g)
    d = g.dim
    swap = Matrix.block_diagonal([Matrix.zeros(d, d), Matrix.zeros(d, d)])
    rows = [list(r) for r in swap.data]
    for i in range(d):
        rows[i][d + i] = _ONE
        rows[d + i][i] = _ONE
    return yau_twist(l, Matrix(rows))


def filiform(n, lam) -> HomAlgebra:
    """Filiform nilpotent algebra on x0..xn: [x0,xi] = x(i+1) for 1 <= i < n,
    with the automorphism x0 -> x0 + lam xn fixing the other basis vectors."""
    n = int(n)
    lam = frac(lam)
    if n < 2:
        raise BadParams("filiform needs n >= 2")
    dim = n + 1
    pairs = {}
    for i in range(1, n):
        v = [_ZERO] * dim
        v[i + 1] = _ONE
        pairs[(0, i)] = v
    alpha_rows = [[_ONE if i == j else _ZERO for j in range(dim)] for i in range(dim)]
    alpha_rows[n][0] = lam
    return HomAlgebra.from_pairs(dim, pairs, Matrix(alpha_rows))


def two_nilpotent(dim_v, dim_z, *entries) -> HomAlgebra:
    """Two-step nilpotent algebra V + Z with [v(2i-1), v(2i)] landing in Z and
    the automorphism v -> v + lam(v), z -> z given by a dim_z x dim_v table."""
    dim_v, dim_z = int(dim_v), int(dim_z)
    if dim_v < 2 or dim_z < 1:
        raise BadParams("need dim_v >= 2 and dim_z >= 1")
    dim = dim_v + dim_z
    entries = [frac(e) for e in entries]
    if entries and len(entries) != dim_v * dim_z:
        raise BadParams("lambda table must have dim_z * dim_v entries")
    if not entries:
        entries = [_ZERO] * (dim_v * dim_z)
        entries[0] = _ONE
    pairs = {}
    for i in range(dim_v // 2):
        v = [_ZERO] * dim
        v[dim_v + (i % dim_z)] = _ONE
        pairs[(2 * i, 2 * i + 1)] = v
    alpha_rows = [[_ONE if i == j else _ZERO for j in range(dim)] for i in range(dim)]
    for r in range(dim_z):
        for c in range(dim_v):
            alpha_rows[dim_v + r][c] = entries[r * dim_v + c]
    return HomAlgebra.from_pairs(dim, pairs, Matrix(alpha_rows))


def assoc_a(q) -> AssocAlgebra:
    """Commutative associative algebra on (e,f,h,t): ee=f, ef=h, eh=t, ff=t,
    carrying the automorphism e -> e + q t."""
    q = frac(q)
    if q == 0:
        raise BadParams("q must be nonzero")
    prod = [[list(zero_vec(4)) for _ in range(4)] for _ in range(4)]

    def put(i, j, k):
        prod[i][j][k] = _ONE
        prod[j][i][k] = _ONE

    put(0, 0, 1)  # ee = f
    put(0, 1, 2)  # ef = fe = h
    put(0, 2, 3)  # eh = he = t
    put(1, 1, 3)  # ff = t
    alpha_rows = [[_ONE if i == j else _ZERO for j in range(4)] for i in range(4)]
    alpha_rows[3][0] = q
    return AssocAlgebra(4, prod, Matrix(alpha_rows))


_FIXTURES = {
    "ex_1_2": ("a b c d", ex_1_2, 4),
    "jackson_sl2": ("q", jackson_sl2, 1),
    "sl2": ("", lambda: sl2(), 0),
    "heis3": ("", lambda: heis3(), 0),
    "abelian": ("n", abelian, 1),
    "sl_n_transpose": ("n", sl_n_transpose, 1),
    "swap_double": ("n", swap_double, 1),
    "filiform": ("n lambda", filiform, 2),
    "two_nilpotent": ("dim_v dim_z lambda-entries...", two_nilpotent, -1),
    "assoc_a": ("q", assoc_a, 1),
}


def fixture_names() -> list[tuple[str, str]]:
    return [(name, sig) for name, (sig, _, _) in sorted(_FIXTURES.items())]


def emit(name: str, *params):
    """Build a registered fixture; raises UnknownFixture / BadParams."""
    if name not in _FIXTURES:
        raise UnknownFixture(name)
    _, builder, arity = _FIXTURES[name]
    if arity >= 0 and len(params) != arity:
        raise BadParams(f"{name} expects {arity} parameter(s)")
    return builder(*params)


def emit_id(fid: FixtureId):
    return emit(fid.name, *fid.params)


def basis_names(name: str, *params) -> list[str] | None:
    """Display names for a fixture's basis, when natural ones exist."""
    if name in ("ex_1_2", "jackson_sl2"):
        return ["x1", "x2", "x3"]
    if name == "sl2":
        return ["e", "f", "h"]
    if name == "heis3":
        return ["x1", "x2", "x3"]
    if name == "filiform":
        return [f"x{i}" for i in range(int(params[0]) + 1)]
    if name == "assoc_a":
        return ["e", "f", "h", "t"]
    return None


# ---------------------------------------------------------------------------
# deterministic random instances
# ---------------------------------------------------------------------------

def _rand_fraction(rng: random.Random, small=False) -> Fraction:
    num = rng.randrange(-4, 5) if small else rng.randrange(-9, 10)
    den = rng.choice((1, 1, 2, 3))
    return Fraction(num, den)


def _rand_unimodular(rng: random.Random, n: int) -> Matrix:
    """Random integer matrix with determinant +-1 (product of shears and swaps)."""
    rows = [[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)]
    m = Matrix(rows)
    for _ in range(2 * n):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        shear = [[_ONE if r == c else _ZERO for c in range(n)] for r in range(n)]
        shear[i][j] = Fraction(rng.randrange(-2, 3))
        m = m @ Matrix(shear)
    perm = list(range(n))
    rng.shuffle(perm)
    p = Matrix([[_ONE if perm[r] == c else _ZERO for c in range(n)] for r in range(n)])
    return m @ p


def _lie_block(rng: random.Random, size: int) -> HomAlgebra:
    if size >= 3:
        pick = rng.choice(("sl2", "heis3", "filiform", "abelian"))
    elif size == 2:
        pick = "abelian"
    else:
        pick = "abelian"
    if pick == "sl2" and size >= 3:
        return direct_sum(sl2(), abelian(size - 3)) if size > 3 else sl2()
    if pick == "heis3" and size >= 3:
        return direct_sum(heis3(), abelian(size - 3)) if size > 3 else heis3()
    if pick == "filiform" and size >= 3:
        return filiform(size - 1, 0).with_alpha(Matrix.identity(size))
    return abelian(size)


def _lie_blocks(rng: random.Random, dim: int) -> HomAlgebra:
    out = None
    remaining = dim
    while remaining:
        size = rng.randrange(1, remaining + 1)
        block = _lie_block(rng, size)
        out = block if out is None else direct_sum(out, block)
        remaining = dim - out.dim
    return out


def _hom_lie_block(rng: random.Random, size: int) -> HomAlgebra:
    if size >= 3 and rng.random() < 0.7:
        pick = rng.choice(("jackson", "ex12", "twisted_sl2", "filiform"))
        if pick == "jackson":
            head = jackson_sl2(_rand_fraction(rng, small=True) or Fraction(2))
        elif pick == "ex12":
            head = ex_1_2(*(_rand_fraction(rng, small=True) for _ in range(4)))
        elif pick == "twisted_sl2":
            head = sl_n_transpose(2).algebra
        else:
            head = filiform(size - 1, _rand_fraction(rng, small=True) or _ONE)
            return head
        rest = size - 3
        return direct_sum(head, abelian(rest)) if rest else head
    signs = Matrix.diagonal([rng.choice((1, -1, 2)) for _ in range(size)])
    return abelian(size).with_alpha(signs)


def _involution_on_abelian(rng: random.Random, n: int) -> tuple[Matrix, Matrix]:
    """A pair (alpha, gram) on an abelian block: involutive, alpha-symmetric."""
    signs = [rng.choice((_ONE, -_ONE)) for _ in range(n)]
    alpha = Matrix.diagonal(signs)
    diag = [Fraction(rng.choice((1, 2, 3, -1, -2))) for _ in range(n)]
    gram = Matrix.diagonal(diag)
    return alpha, gram


def _nilpotent_block(size: int) -> QuadraticHomAlgebra:
    """Abelian block with a single nilpotent Jordan twist and antidiagonal form."""
    rows = [[_ZERO] * size for _ in range(size)]
    for i in range(size - 1):
        rows[i][i + 1] = _ONE
    gram = [[_ONE if i + j == size - 1 else _ZERO for j in range(size)] for i in range(size)]
    alg = abelian(size).with_alpha(Matrix(rows))
    return QuadraticHomAlgebra(alg, BilinearForm(size, Matrix(gram)))


def extension_delta_space(
    q: QuadraticHomAlgebra, lam: Fraction, x0=None
) -> tuple[Matrix, list[Matrix]]:
    """Solutions delta of the linear extension constraints over a given base.

    Solves, exactly and simultaneously, a delta a - lam delta = [x0, .],
    skewness of delta for the form, and the compatibility of lam delta + [x0,.]
    with the bracket; returns a particular solution and a basis of the
    homogeneous solution space.  The quadratic constraint on delta^2 and the
    multiplicativity compatibilities are not linear and must be checked on
    each candidate afterwards.
    """
    from .exactlin import kernel, solve_linear

    n = q.dim
    g = q.algebra
    a, gram = q.alpha, q.gram
    x0 = list(x0) if x0 is not None else [_ZERO] * n
    adx0 = g.ad_vec(x0)
    rows = []
    rhs = []
    # vec(delta) row major; (a delta a)[i][j] - lam delta[i][j] = ad(x0)[i][j]
    for i in range(n):
        for j in range(n):
            row = [_ZERO] * (n * n)
            for r in range(n):
                for s in range(n):
                    row[r * n + s] += a[i, r] * a[s, j]
            row[i * n + j] -= lam
            rows.append(row)
            rhs.append(adx0[i, j])
    # (delta^T gram + gram delta)[i][j] = 0
    for i in range(n):
        for j in range(n):
            row = [_ZERO] * (n * n)
            for r in range(n):
                row[r * n + i] += gram[r, j]
                row[r * n + j] += gram[i, r]
            rows.append(row)
            rhs.append(_ZERO)
    # lam delta([x_r,x_s]) + [x0,[x_r,x_s]] = [delta x_r, a x_s] + [a x_r, delta x_s]
    for r in range(n):
        for s in range(r + 1, n):
            c_rs = g.bracket[r][s]
            adc = adx0.apply(c_rs)
            for k in range(n):
                row = [_ZERO] * (n * n)
                for m in range(n):
                    if c_rs[m]:
                        row[k * n + m] += lam * c_rs[m]
                for p in range(n):
                    coeff = sum(
                        (a[qq, s] * g.bracket[p][qq][k] for qq in range(n)), _ZERO
                    )
                    if coeff:
                        row[p * n + r] -= coeff
                    coeff = sum(
                        (a[qq, r] * g.bracket[qq][p][k] for qq in range(n)), _ZERO
                    )
                    if coeff:
                        row[p * n + s] -= coeff
                rows.append(row)
                rhs.append(-adc[k])
    system = Matrix(rows)
    particular = solve_linear(system, Matrix([[v] for v in rhs]))
    if particular is None:
        return None, []
    flat = particular.col(0)
    part = Matrix([flat[i * n : (i + 1) * n] for i in range(n)])
    hom = [
        Matrix([v[i * n : (i + 1) * n] for i in range(n)])
        for v in kernel(system).vectors()
    ]
    return part, hom


def skew_commuting_delta(rng: random.Random, q: QuadraticHomAlgebra, lam: Fraction) -> Matrix:
    """Random delta solving the linear extension constraints with x0 = 0."""
    part, hom = extension_delta_space(q, lam)
    if part is None:
        return Matrix.zeros(q.dim, q.dim)
    out = part
    for h in hom:
        c = Fraction(rng.randrange(-3, 4))
        if c:
            out = out + h.scale(c)
    return out


def random_extension_data(
    rng: random.Random,
    q: QuadraticHomAlgebra,
    lam: Fraction,
    x0=None,
    involutive: bool = False,
    attempts: int = 8,
):
    """A valid one-dimensional extension datum over q, or None.

    Draws delta from the exact solution space of the linear constraints and
    filters through the full condition set (the remaining conditions are not
    linear in delta).  With ``involutive`` the scalar lam0 is pinned to the
    involution-compatible value, otherwise it is drawn at random.
    """
    from .build import ExtensionData1D, double_extension_conditions

    n = q.dim
    x0 = tuple(x0) if x0 is not None else zero_vec(n)
    part, hom = extension_delta_space(q, lam, x0)
    if part is None:
        return None
    for _ in range(attempts):
        delta = part
        for h in hom:
            c = Fraction(rng.randrange(-3, 4))
            if c:
                delta = delta + h.scale(c)
        if involutive:
            lam0 = -q.form.value(x0, x0) / (2 * lam)
        else:
            lam0 = _rand_fraction(rng, small=True)
        data = ExtensionData1D(delta, x0, lam, lam0)
        if not double_extension_conditions(q, data):
            return data
    return None


def involutive_action_space(
    v: QuadraticHomAlgebra, eps: Fraction
) -> list[Matrix]:
    """Action matrices for a one-dimensional involutive extender with twist eps.

    Returns a basis of the space of maps D with a D a = eps D, D skew for the
    form, and a D([x,y]) = [D a x, y] + [x, D a y] on the base bracket; every
    element yields valid involutive-extension data (the module axiom is
    automatic for a one-dimensional extender).
    """
    from .exactlin import kernel

    n = v.dim
    g = v.algebra
    a, gram = v.alpha, v.gram
    rows = []
    for i in range(n):
        for j in range(n):
            row = [_ZERO] * (n * n)
            for r in range(n):
                for s in range(n):
                    row[r * n + s] += a[i, r] * a[s, j]
            row[i * n + j] -= eps
            rows.append(row)
    for i in range(n):
        for j in range(n):
            row = [_ZERO] * (n * n)
            for r in range(n):
                row[r * n + i] += gram[r, j]
                row[r * n + j] += gram[i, r]
            rows.append(row)
    for r in range(n):
        for s in range(r + 1, n):
            c_rs = g.bracket[r][s]
            for k in range(n):
                row = [_ZERO] * (n * n)
                for p in range(n):
                    for m in range(n):
                        coeff = a[k, p] * c_rs[m]
                        if coeff:
                            row[p * n + m] += coeff
                        coeff = a[m, r] * g.bracket[p][s][k]
                        if coeff:
                            row[p * n + m] -= coeff
                        coeff = a[m, s] * g.bracket[r][p][k]
                        if coeff:
                            row[p * n + m] -= coeff
                rows.append(row)
    return [
        Matrix([vv[i * n : (i + 1) * n] for i in range(n)])
        for vv in kernel(Matrix(rows)).vectors()
    ]


def _quadratic_blocks(rng: random.Random, dim: int, involutive_only: bool) -> QuadraticHomAlgebra:
    out = None
    while out is None or out.dim < dim:
        remaining = dim - (out.dim if out else 0)
        options = [("abelian_inv", 1)]
        if remaining >= 2:
            options.append(("abelian_inv", 2))
            if not involutive_only:
                options += [("nilp", 2), ("abelian_scaled", 2)]
        if remaining >= 3:
            options += [("twisted_sl2", 3)] * 2
            if not involutive_only:
                options.append(("nilp", 3))
        if remaining >= 4:
            options.append(("dext", 4))
        kind, size = rng.choice(options)
        if kind == "twisted_sl2":
            block = sl_n_transpose(2)
        elif kind == "nilp":
            block = _nilpotent_block(size)
        elif kind == "abelian_scaled":
            c = Fraction(rng.choice((2, 3, -2)))
            alg = abelian(size).with_alpha(Matrix.identity(size).scale(c))
            block = QuadraticHomAlgebra(
                alg, BilinearForm(size, Matrix.diagonal([1] * size))
            )
        elif kind == "dext":
            base_alpha, base_gram = _involution_on_abelian(rng, 2)
            base = QuadraticHomAlgebra(
                abelian(2).with_alpha(base_alpha), BilinearForm(2, base_gram)
            )
            lam = Fraction(rng.choice((1, -1)))
            # x0 in the (-lam)-eigenspace of the involution keeps the data valid
            eig = [
                _rand_fraction(rng, small=True) if base_alpha[k, k] == -lam else _ZERO
                for k in range(2)
            ]
            data = random_extension_data(
                rng, base, lam, x0=eig, involutive=involutive_only
            )
            if data is None:
                data = ExtensionData1D(
                    Matrix.zeros(2, 2), zero_vec(2), lam, _ZERO if involutive_only else _rand_fraction(rng, small=True)
                )
            block = double_extension_1d(base, data)
        else:
            alpha, gram = _involution_on_abelian(rng, size)
            block = QuadraticHomAlgebra(
                abelian(size).with_alpha(alpha), BilinearForm(size, gram)
            )
        out = block if out is None else orthogonal_sum(out, block)
    return out


def random_instance(seed: int, dim: int, kind: str):
    """Deterministic random instance of the requested kind.

    Reachable classes: ``lie`` draws direct sums of sl2, Heisenberg, filiform
    and abelian blocks under a unimodular base change; ``hom_lie`` assembles
    Hom-Lie blocks (Jackson sl2, the three-dimensional family, twisted sl2,
    twisted filiform, abelian with diagonal twists); ``quadratic`` and
    ``involutive_quadratic`` assemble orthogonal sums of twisted sl2, abelian
    blocks with compatible involutions, nilpotent-twist blocks and double
    extensions, then change basis.  Construction guarantees the checks each
    kind promises; the same seed always yields the same instance.
    """
    if dim < 1:
        raise BadParams("dim must be >= 1")
    rng = random.Random(f"{seed}:{dim}:{kind}")
    if kind == "lie":
        g = _lie_blocks(rng, dim)
        return change_basis(g, _rand_unimodular(rng, dim))
    if kind == "hom_lie":
        out = None
        while out is None or out.dim < dim:
            remaining = dim - (out.dim if out else 0)
            block = _hom_lie_block(rng, rng.randrange(1, remaining + 1))
            out = block if out is None else direct_sum(out, block)
        return change_basis(out, _rand_unimodular(rng, dim))
    if kind == "quadratic":
        q = _quadratic_blocks(rng, dim, involutive_only=False)
        return change_basis_quadratic(q, _rand_unimodular(rng, dim))
    if kind == "involutive_quadratic":
        q = _quadratic_blocks(rng, dim, involutive_only=True)
        return change_basis_quadratic(q, _rand_unimodular(rng, dim))
    raise BadParams(f"unknown kind {kind!r}")
