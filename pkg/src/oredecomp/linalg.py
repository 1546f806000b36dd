"""Dense exact linear algebra over an arbitrary coefficient field.

Works uniformly over GF(q), GF(q)(t), GF(q)(s) and algebraic extensions
K = GF(q)(t)[a]: the only requirements on the field object are ``zero``,
``one``, ``from_int`` and elements with exact operator overloads.

Provides reduced row echelon form, kernels, linear solving, the Berkowitz
(division-free) characteristic polynomial, and invariant factors through the
Smith normal form of Y*I - A over the polynomial ring.
"""

from __future__ import annotations

from .errors import NotSquare
from .fieldkit import Poly, RatFunc, RatFuncField, poly_gcd, poly_lcm


class Matrix:
    """An immutable dense matrix over a coefficient field."""

    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field, rows):
        rows = tuple(tuple(r) for r in rows)
        self.field = field
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != self.ncols:
                raise ValueError("ragged rows")

    @staticmethod
    def identity(field, n):
        z, o = field.zero, field.one
        return Matrix(field, [[o if i == j else z for j in range(n)] for i in range(n)])

    @staticmethod
    def zero(field, nrows, ncols):
        z = field.zero
        return Matrix(field, [[z] * ncols for _ in range(nrows)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash(self.rows)

    def __add__(self, other):
        return Matrix(self.field, [
            [a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)
        ])

    def __sub__(self, other):
        return Matrix(self.field, [
            [a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)
        ])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            cols = list(zip(*other.rows))
            return Matrix(self.field, [
                [_dot(r, c, self.field) for c in cols] for r in self.rows
            ])
        # matrix * vector
        return tuple(_dot(r, other, self.field) for r in self.rows)

    def scale(self, c):
        return Matrix(self.field, [[a * c for a in r] for r in self.rows])

    def transpose(self):
        return Matrix(self.field, list(zip(*self.rows)))

    def is_square(self):
        return self.nrows == self.ncols

    def is_zero(self):
        return not any(any(e for e in r) for r in self.rows)

    def __repr__(self):
        return "Matrix(%d x %d over %r)" % (self.nrows, self.ncols, self.field)


def _dot(r, c, field):
    acc = field.zero
    for a, b in zip(r, c):
        if a and b:
            acc = acc + a * b
    return acc


def rref(M: Matrix):
    """Reduced row echelon form; returns (matrix rows as lists, pivot cols)."""
    field = M.field
    rows = [list(r) for r in M.rows]
    pivots = []
    rank = 0
    for col in range(M.ncols):
        pivot_row = None
        for i in range(rank, M.nrows):
            if rows[i][col]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        piv = rows[rank][col]
        if piv != field.one:
            inv = piv.inv()
            rows[rank] = [e * inv for e in rows[rank]]
        for i in range(M.nrows):
            if i != rank and rows[i][col]:
                c = rows[i][col]
                rows[i] = [a - c * b for a, b in zip(rows[i], rows[rank])]
        pivots.append(col)
        rank += 1
        if rank == M.nrows:
            break
    return rows, pivots


def kernel_basis(M: Matrix):
    """A basis of the right kernel of M, in reduced echelon parametrization.

    Each basis vector carries a 1 at one free column and the negated reduced
    entries at the pivot columns; vectors are ordered by their free column.
    """
    field = M.field
    rows, pivots = rref(M)
    pivot_set = set(pivots)
    basis = []
    for free in range(M.ncols):
        if free in pivot_set:
            continue
        v = [field.zero] * M.ncols
        v[free] = field.one
        for r, pc in zip(rows, pivots):
            v[pc] = -r[free]
        basis.append(tuple(v))
    return basis


def solve(M: Matrix, b) -> tuple | None:
    """One solution of M x = b (free variables set to zero), or None."""
    field = M.field
    aug = Matrix(field, [list(r) + [bv] for r, bv in zip(M.rows, b)])
    rows, pivots = rref(aug)
    if M.ncols in pivots:
        return None  # inconsistent: pivot in the augmented column
    x = [field.zero] * M.ncols
    for r, pc in zip(rows, pivots):
        x[pc] = r[M.ncols]
    return tuple(x)


def rank(M: Matrix) -> int:
    return len(rref(M)[1])


class DependencyFinder:
    """Incremental linear dependency detection over a field.

    Vectors are offered one at a time; the first vector lying in the span of
    the previously offered ones is reported together with the combination
    expressing it (coefficients indexed by offer order, with a trailing 1 for
    the vector itself, so that the combination sums to zero).
    """

    def __init__(self, field, dim):
        self.field = field
        self.dim = dim
        self._rows = []  # (pivot index, reduced row, combination row)
        self._count = 0

    def offer(self, vec):
        field = self.field
        v = list(vec)
        combo = [field.zero] * self._count + [field.one]
        for piv, row, rcombo in self._rows:
            c = v[piv]
            if c:
                for i, x in enumerate(row):
                    if x:
                        v[i] = v[i] - c * x
                for i, x in enumerate(rcombo):
                    if x:
                        combo[i] = combo[i] - c * x
        self._count += 1
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is None:
            return combo
        inv = v[piv].inv()
        v = [x * inv for x in v]
        combo = [x * inv for x in combo] + [field.zero] * 0
        self._rows.append((piv, v, combo))
        return None


# ---------------------------------------------------------------------------
# Characteristic polynomial (Berkowitz, division-free)
# ---------------------------------------------------------------------------

def _berkowitz(rows, field):
    """Coefficient vector of det(Y*I - A), leading term first.

    Division-free: only ring operations on the entries are used."""
    n = len(rows)
    if n == 0:
        return [field.one]
    C = [field.one, -rows[0][0]]
    for i in range(1, n):
        R = rows[i][:i]
        S = [rows[k][i] for k in range(i)]
        # first column of the Toeplitz factor:
        # [1, -a_ii, -(R.S), -(R.M.S), -(R.M^2.S), ...]
        q = [field.one, -rows[i][i]]
        v = S
        for _ in range(i):
            q.append(-_dot(R, v, field))
            v = [_dot(rows[k][:i], v, field) for k in range(i)]
        Cn = []
        for j in range(i + 2):
            acc = field.zero
            for k in range(len(C)):
                if 0 <= j - k < len(q):
                    acc = acc + q[j - k] * C[k]
            Cn.append(acc)
        C = Cn
    return C


def char_poly(M: Matrix) -> Poly:
    """The monic characteristic polynomial det(Y*I - A) of a square matrix.

    Over a rational function field the common denominator is factored out
    first so the Berkowitz recursion runs on polynomial entries, keeping
    denominators fully predictable.
    """
    if not M.is_square():
        raise NotSquare("characteristic polynomial of a non-square matrix")
    field = M.field
    n = M.nrows
    if n == 0:
        return Poly.one(field)
    if isinstance(field, RatFuncField):
        den = Poly.one(field.base)
        for r in M.rows:
            for e in r:
                den = poly_lcm(den, e.den)
        if den.degree > 0:
            d = field.from_poly(den)
            rows = [[e * d for e in r] for r in M.rows]
            C = _berkowitz(rows, field)
            # det(Y I - A) = d^-n det((d Y) I - d A): the Y^k coefficient of
            # the polynomial-entry determinant gets divided by d^(n-k)
            dpow = [Poly.one(field.base)]
            for _ in range(n):
                dpow.append(dpow[-1] * den)
            coeffs = []
            for k in range(n + 1):
                c = C[n - k]  # coefficient of Y^k in det(Z I - dA), Z = dY
                coeffs.append(RatFunc.make(field, c.num, dpow[n - k] * c.den))
            return Poly(field, coeffs)
    C = _berkowitz([list(r) for r in M.rows], field)
    return Poly(field, list(reversed(C)))


def determinant(M: Matrix):
    """det(A) = (-1)^n * char_poly(A)(0)."""
    if not M.is_square():
        raise NotSquare("determinant of a non-square matrix")
    cp = char_poly(M)
    c0 = cp.coeff(0)
    return -c0 if M.nrows % 2 else c0


def mat_eval_poly(P: Poly, M: Matrix) -> Matrix:
    """Evaluate a polynomial at a square matrix (Horner)."""
    field = M.field
    acc = Matrix.zero(field, M.nrows, M.ncols)
    for c in reversed(P.coeffs):
        acc = acc * M + Matrix.identity(field, M.nrows).scale(c)
    return acc


# ---------------------------------------------------------------------------
# Invariant factors via the Smith normal form of Y*I - A
# ---------------------------------------------------------------------------

def _pivot_key(entry: Poly, i, j):
    return (entry.degree, entry.sort_key(), i, j)


def invariant_factors(M: Matrix) -> list[Poly]:
    """The nontrivial invariant factors P_1 | P_2 | ... | P_m of a square
    matrix, as monic polynomials over the entry field.

    Computed by Smith normal form reduction of Y*I - A over the polynomial
    ring, with degree-minimal deterministic pivoting; the product equals the
    characteristic polynomial and the last entry is the minimal polynomial.
    """
    if not M.is_square():
        raise NotSquare("invariant factors of a non-square matrix")
    field = M.field
    n = M.nrows
    if n == 0:
        return []
    B = [[Poly(field, [-M.rows[i][j]]) for j in range(n)] for i in range(n)]
    x = Poly.x(field)
    for i in range(n):
        B[i][i] = B[i][i] + x

    for k in range(n):
        while True:
            # deterministic degree-minimal pivot over the trailing block
            best = None
            for i in range(k, n):
                for j in range(k, n):
                    if B[i][j]:
                        key = _pivot_key(B[i][j], i, j)
                        if best is None or key < best[0]:
                            best = (key, i, j)
            if best is None:
                break  # trailing block is zero
            _, bi, bj = best
            if bi != k:
                B[bi], B[k] = B[k], B[bi]
            if bj != k:
                for row in B:
                    row[bj], row[k] = row[k], row[bj]
            piv = B[k][k]
            dirty = False
            for i in range(k + 1, n):
                if B[i][k]:
                    q = B[i][k].divmod(piv)[0]
                    if q:
                        B[i] = [a - q * b for a, b in zip(B[i], B[k])]
                    if B[i][k]:
                        dirty = True  # remainder of smaller degree survives
            for j in range(k + 1, n):
                if B[k][j]:
                    q = B[k][j].divmod(piv)[0]
                    if q:
                        for i in range(n):
                            B[i][j] = B[i][j] - q * B[i][k]
                    if B[k][j]:
                        dirty = True
            if dirty:
                continue
            # pivot divides the rest of the block?  If not, pull the bad row
            # up so the next pass absorbs it into the pivot's gcd.
            bad = None
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    if B[i][j] and B[i][j].divmod(piv)[1]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            B[k] = [a + b for a, b in zip(B[k], B[bad])]

    diag = [B[k][k].monic() for k in range(n) if B[k][k]]
    # safety sweep: enforce the divisibility chain (a no-op for a correct SNF)
    changed = True
    while changed:
        changed = False
        for i in range(len(diag) - 1):
            if diag[i + 1].divmod(diag[i])[1]:
                g = poly_gcd(diag[i], diag[i + 1])
                l = (diag[i] * diag[i + 1]).divmod(g)[0].monic()
                diag[i], diag[i + 1] = g, l
                changed = True
    return [d for d in diag if d.degree > 0]
