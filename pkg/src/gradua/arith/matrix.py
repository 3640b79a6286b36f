"""Exact dense matrices over F_p (flint nmod_mat) and F_p(t...) (Bareiss elimination)."""

from __future__ import annotations

import flint

from gradua.arith.fields import Field, RatFunc

# dense storage is used up to this many rows/cols; larger systems are still
# handled densely by flint for F_p, the constant only documents the budget
DENSE_LIMIT = 512


class FieldMismatch(TypeError):
    pass


class Matrix:
    """Immutable matrix. Entries are field elements (nmod or RatFunc)."""

    __slots__ = ("field", "nrows", "ncols", "_m")

    def __init__(self, field: Field, nrows: int, ncols: int, data):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self._m = data

    # construction -----------------------------------------------------
    @classmethod
    def from_rows(cls, field: Field, rows, ncols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        nr = len(rows)
        nc = len(rows[0]) if rows else (ncols or 0)
        if ncols is not None and rows and nc != ncols:
            raise ValueError("row length mismatch")
        if field.is_prime_field:
            flat = []
            for r in rows:
                if len(r) != nc:
                    raise ValueError("ragged rows")
                flat.extend(int(x) for x in r)
            return cls(field, nr, nc, flint.nmod_mat(nr, nc, flat, field.p))
        data = []
        for r in rows:
            if len(r) != nc:
                raise ValueError("ragged rows")
            data.append([field(x) for x in r])
        return cls(field, nr, nc, data)

    @classmethod
    def from_columns(cls, field: Field, cols, nrows: int | None = None) -> "Matrix":
        cols = [list(c) for c in cols]
        if not cols:
            return cls.zeros(field, nrows or 0, 0)
        return cls.from_rows(field, zip(*cols)) if cols[0] else cls.zeros(field, 0, len(cols))

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        if field.is_prime_field:
            return cls(field, nrows, ncols, flint.nmod_mat(nrows, ncols, [], field.p)
                       if nrows * ncols == 0 else flint.nmod_mat(nrows, ncols, [0] * (nrows * ncols), field.p))
        z = field.zero
        return cls(field, nrows, ncols, [[z] * ncols for _ in range(nrows)])

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        return cls.from_rows(field, rows, n)

    @classmethod
    def from_sparse(cls, field: Field, nrows: int, ncols: int, entries) -> "Matrix":
        """Build from (i, j, value) triplets; repeated positions add up."""
        if field.is_prime_field:
            flat = [0] * (nrows * ncols)
            p = field.p
            for i, j, v in entries:
                flat[i * ncols + j] = (flat[i * ncols + j] + int(v)) % p
            return cls(field, nrows, ncols, flint.nmod_mat(nrows, ncols, flat, p))
        rows = [[field.zero] * ncols for _ in range(nrows)]
        for i, j, v in entries:
            rows[i][j] = rows[i][j] + field(v)
        return cls(field, nrows, ncols, rows)

    # access -----------------------------------------------------------
    def __getitem__(self, ij):
        i, j = ij
        if self.field.is_prime_field:
            return self._m[i, j]
        return self._m[i][j]

    def rows(self) -> list:
        if self.field.is_prime_field:
            if self.nrows == 0 or self.ncols == 0:
                return [[] for _ in range(self.nrows)]
            e = self._m.entries()
            c = self.ncols
            return [e[i * c:(i + 1) * c] for i in range(self.nrows)]
        return [list(r) for r in self._m]

    def int_rows(self) -> list:
        """Rows as python ints (prime field only)."""
        if self.nrows == 0 or self.ncols == 0:
            return [[] for _ in range(self.nrows)]
        e = [int(x) for x in self._m.entries()]
        c = self.ncols
        return [e[i * c:(i + 1) * c] for i in range(self.nrows)]

    def columns(self) -> list:
        return [list(c) for c in zip(*self.rows())] if self.nrows else [[] for _ in range(self.ncols)]

    def column(self, j: int) -> list:
        return [self[i, j] for i in range(self.nrows)]

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def _check(self, other: "Matrix"):
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    # arithmetic -------------------------------------------------------
    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        if self.field.is_prime_field:
            return Matrix(self.field, self.nrows, self.ncols, self._m + other._m)
        return Matrix(self.field, self.nrows, self.ncols,
                      [[a + b for a, b in zip(r, s)] for r, s in zip(self._m, other._m)])

    def __neg__(self) -> "Matrix":
        if self.field.is_prime_field:
            return Matrix(self.field, self.nrows, self.ncols, -self._m)
        return Matrix(self.field, self.nrows, self.ncols, [[-a for a in r] for r in self._m])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            self._check(other)
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} * {other.shape}")
            if self.field.is_prime_field:
                if self.nrows == 0 or other.ncols == 0 or self.ncols == 0:
                    return Matrix.zeros(self.field, self.nrows, other.ncols)
                return Matrix(self.field, self.nrows, other.ncols, self._m * other._m)
            cols = list(zip(*other._m)) if other.nrows else [()] * other.ncols
            z = self.field.zero
            out = []
            for r in self._m:
                row = []
                for c in cols:
                    acc = z
                    for a, b in zip(r, c):
                        if a and b:
                            acc = acc + a * b
                    row.append(acc)
                out.append(row)
            return Matrix(self.field, self.nrows, other.ncols, out)
        c = self.field(other)
        if self.field.is_prime_field:
            return Matrix(self.field, self.nrows, self.ncols, self._m * int(c))
        return Matrix(self.field, self.nrows, self.ncols, [[a * c for a in r] for r in self._m])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape or self.field != other.field:
            return False
        if self.field.is_prime_field:
            if self.nrows * self.ncols == 0:
                return True
            return self._m == other._m
        return self._m == other._m

    def __hash__(self):
        return hash((self.shape, tuple(tuple(int(x) if self.field.is_prime_field else x for x in r)
                                       for r in self.rows())))

    def is_zero(self) -> bool:
        if self.nrows * self.ncols == 0:
            return True
        if self.field.is_prime_field:
            return self._m.rank() == 0
        return all(not a for r in self._m for a in r)

    @property
    def T(self) -> "Matrix":
        if self.field.is_prime_field:
            if self.nrows * self.ncols == 0:
                return Matrix.zeros(self.field, self.ncols, self.nrows)
            return Matrix(self.field, self.ncols, self.nrows, self._m.transpose())
        return Matrix(self.field, self.ncols, self.nrows, [list(c) for c in zip(*self._m)]
                      if self.nrows else [[] for _ in range(self.ncols)])

    def submatrix(self, rows=None, cols=None) -> "Matrix":
        rows = range(self.nrows) if rows is None else list(rows)
        cols = range(self.ncols) if cols is None else list(cols)
        R = self.rows()
        return Matrix.from_rows(self.field, [[R[i][j] for j in cols] for i in rows], len(cols))

    def hstack(self, *others) -> "Matrix":
        mats = (self,) + others
        for m in others:
            self._check(m)
            if m.nrows != self.nrows:
                raise ValueError("row mismatch in hstack")
        rs = [m.rows() for m in mats]
        return Matrix.from_rows(self.field, [sum((r[i] for r in rs), []) for i in range(self.nrows)],
                                sum(m.ncols for m in mats))

    def vstack(self, *others) -> "Matrix":
        mats = (self,) + others
        for m in others:
            self._check(m)
            if m.ncols != self.ncols:
                raise ValueError("column mismatch in vstack")
        return Matrix.from_rows(self.field, sum((m.rows() for m in mats), []), self.ncols)

    def kron(self, other: "Matrix") -> "Matrix":
        A, B = self.rows(), other.rows()
        rows = []
        for ra in A:
            for rb in B:
                rows.append([a * b for a in ra for b in rb])
        return Matrix.from_rows(self.field, rows, self.ncols * other.ncols)

    def apply(self, v) -> list:
        """Matrix times a column vector given as a list."""
        return (self * Matrix.from_columns(self.field, [v], self.ncols)).column(0)

    # elimination ------------------------------------------------------
    def rref(self):
        """Reduced row echelon form and pivot columns."""
        if self.field.is_prime_field:
            if self.nrows * self.ncols == 0:
                return self, []
            R, r = self._m.rref()
            e = R.entries()
            c = self.ncols
            piv = []
            for i in range(r):
                row = e[i * c:(i + 1) * c]
                for j in range(piv[-1] + 1 if piv else 0, c):
                    if row[j] != 0:
                        piv.append(j)
                        break
            return Matrix(self.field, self.nrows, self.ncols, R), piv
        rows, piv = _rref_ratfunc(self.field, self._m, self.ncols)
        return Matrix(self.field, self.nrows, self.ncols, rows), piv

    def rank(self) -> int:
        if self.nrows * self.ncols == 0:
            return 0
        if self.field.is_prime_field:
            return self._m.rank()
        return len(_echelon_poly(self.field, self._m, self.ncols)[1])

    def kernel(self) -> "Matrix":
        """Columns form a basis of the right kernel; as rows they are in reduced echelon form."""
        n = self.ncols
        if n == 0:
            return Matrix.zeros(self.field, 0, 0)
        if self.nrows == 0:
            return Matrix.identity(self.field, n)
        if self.field.is_prime_field:
            X, nul = self._m.nullspace()
            if nul == 0:
                return Matrix.zeros(self.field, n, 0)
            e = [int(x) for x in X.entries()]
            rows = [[e[i * n + j] for i in range(n)] for j in range(nul)]
            K = flint.nmod_mat(nul, n, sum(rows, []), self.field.p).rref()[0]
            return Matrix(self.field, nul, n, K).T
        R, piv = self.rref()
        rows = _kernel_from_rref(self.field, R.rows(), piv, n)
        if not rows:
            return Matrix.zeros(self.field, n, 0)
        return Matrix.from_rows(self.field, rows, n).rref()[0].T

    def nullity(self) -> int:
        return self.ncols - self.rank()

    def solve(self, b) -> "Matrix | None":
        """Return X with self * X = b (b a Matrix or a vector list), or None if inconsistent."""
        vec = not isinstance(b, Matrix)
        B = Matrix.from_columns(self.field, [b], self.nrows) if vec else b
        self._check(B)
        if B.nrows != self.nrows:
            raise ValueError("dimension mismatch in solve")
        n, k = self.ncols, B.ncols
        if k == 0:
            return [] if vec else Matrix.zeros(self.field, n, 0)
        if self.nrows == 0:
            X = Matrix.zeros(self.field, n, k)
            return X.column(0) if vec else X
        R, piv = self.hstack(B).rref()
        if piv and piv[-1] >= n:
            return None
        rows = R.rows()
        z = self.field.zero
        X = [[z] * k for _ in range(n)]
        for i, j in enumerate(piv):
            X[j] = rows[i][n:]
        M = Matrix.from_rows(self.field, X, k)
        return M.column(0) if vec else M

    def inverse(self) -> "Matrix":
        if self.nrows != self.ncols:
            raise ValueError("inverse of non-square matrix")
        X = self.solve(Matrix.identity(self.field, self.nrows))
        if X is None:
            raise ZeroDivisionError("singular matrix")
        return X

    def det(self):
        if self.nrows != self.ncols:
            raise ValueError("det of non-square matrix")
        if self.nrows == 0:
            return self.field.one
        if self.field.is_prime_field:
            return self._m.det()
        return _det_ratfunc(self.field, self._m)

    def __repr__(self):
        return "Matrix(" + repr([[self.field.format(x) for x in r] for r in self.rows()]) + ")"


# Bareiss over polynomial numerators ------------------------------------------

def _clear_denominators(field: Field, rows):
    """Scale each row by the lcm of its denominators; return rows of nmod_mpoly."""
    out = []
    one = field.one.den
    for r in rows:
        l = one
        for a in r:
            if a and not a.den.is_one():
                g = l.gcd(a.den)
                l = l * (a.den / g)
        out.append([a.num * (l / a.den) if a else a.num for a in r])
    return out


def _echelon_poly(field: Field, rows, ncols):
    """Fraction-free (Bareiss) row echelon form over F_p[t...]; returns rows and pivots."""
    A = _clear_denominators(field, rows)
    m = len(A)
    piv = []
    r = 0
    prev = field.one.num
    for c in range(ncols):
        if r >= m:
            break
        best = None
        for i in range(r, m):
            if not A[i][c].is_zero():
                d = A[i][c].total_degree()
                if best is None or d < best[0]:
                    best = (d, i)
        if best is None:
            continue
        i = best[1]
        A[r], A[i] = A[i], A[r]
        p = A[r][c]
        for i in range(r + 1, m):
            a = A[i][c]
            row = A[i]
            prow = A[r]
            for j in range(c + 1, ncols):
                v = p * row[j] - a * prow[j]
                row[j] = v / prev if not v.is_zero() else v
            row[c] = row[c] * 0
        # entries left of c in rows below are already zero
        prev = p
        piv.append(c)
        r += 1
    return A, piv


def _rref_ratfunc(field: Field, rows, ncols):
    A, piv = _echelon_poly(field, rows, ncols)
    m = len(A)
    R = [[RatFunc(field, x) for x in row] for row in A]
    z = field.zero
    for k, c in enumerate(piv):
        inv = R[k][c].inverse()
        R[k] = [x * inv if x else z for x in R[k]]
        for i in range(m):
            if i != k and R[i][c]:
                f = R[i][c]
                R[i] = [x - f * y if y else x for x, y in zip(R[i], R[k])]
    for i in range(len(piv), m):
        R[i] = [z] * ncols
    return R, piv


def _kernel_from_rref(field: Field, R, piv, n):
    free = [j for j in range(n) if j not in set(piv)]
    out = []
    for f in free:
        v = [field.zero] * n
        v[f] = field.one
        for i, j in enumerate(piv):
            v[j] = -R[i][f]
        out.append(v)
    return out


def _det_ratfunc(field: Field, rows):
    n = len(rows)
    R = [list(r) for r in rows]
    det = field.one
    for c in range(n):
        p = next((i for i in range(c, n) if R[i][c]), None)
        if p is None:
            return field.zero
        if p != c:
            R[c], R[p] = R[p], R[c]
            det = -det
        det = det * R[c][c]
        inv = R[c][c].inverse()
        for i in range(c + 1, n):
            if R[i][c]:
                f = R[i][c] * inv
                R[i] = [x - f * y for x, y in zip(R[i], R[c])]
    return det


# module-level helpers mirroring the operation names ---------------------------

def rank_kernel(m: Matrix):
    """(rank, kernel basis as list of vectors)."""
    K = m.kernel()
    return m.ncols - K.ncols, K.columns()


def solve_linear(a: Matrix, b):
    """Some x with a*x = b, or None when the system is inconsistent."""
    return a.solve(list(b))


def block_diag(field: Field, mats) -> Matrix:
    n = sum(m.nrows for m in mats)
    c = sum(m.ncols for m in mats)
    entries = []
    r0 = c0 = 0
    for m in mats:
        for i, row in enumerate(m.rows()):
            for j, x in enumerate(row):
                if x:
                    entries.append((r0 + i, c0 + j, x))
        r0 += m.nrows
        c0 += m.ncols
    return Matrix.from_sparse(field, n, c, entries)
