"""Exact dense linear algebra over small finite fields F_{p^r}.

Scalars are integer indices 0..p^r-1; the base-p digits of an index are the
coefficients (constant term first) of the residue polynomial.  Everything is
deterministic: row reduction pivots left to right and takes the first nonzero
row, so identical inputs always produce identical bases and representatives.

Matrices are dense int64 numpy arrays of scalar indices.  Over F_2 the
elimination kernel packs rows into python integers and works by XOR; over
other prime fields it uses vectorized mod-p arithmetic; extension fields go
through precomputed operation tables.
"""

from __future__ import annotations

import numpy as np

from .errors import (
    AmbientMismatch,
    DimensionMismatch,
    NonPrimeCharacteristic,
    NotASubspace,
    ReducibleModulus,
)

_MAX_EXT_ORDER = 512  # extension fields get dense q x q op tables


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _poly_divmod(num, den, p):
    """Polynomial division over F_p; coefficient lists, constant term first."""
    num = list(num)
    dlead = den[-1]
    dinv = pow(dlead, p - 2, p)
    deg_d = len(den) - 1
    for k in range(len(num) - 1, deg_d - 1, -1):
        c = num[k] * dinv % p
        if c:
            for t in range(deg_d + 1):
                num[k - deg_d + t] = (num[k - deg_d + t] - c * den[t]) % p
        num[k] = 0  # quotient coefficient, not needed
    return num[:deg_d]


def _monic_polys(p, deg):
    for idx in range(p**deg):
        coeffs = []
        t = idx
        for _ in range(deg):
            coeffs.append(t % p)
            t //= p
        yield coeffs + [1]


def _is_irreducible(modulus, p):
    r = len(modulus) - 1
    if r < 1 or modulus[-1] != 1:
        return False
    for deg in range(1, r // 2 + 1):
        for g in _monic_polys(p, deg):
            if not any(_poly_divmod(modulus, g, p)):
                return False
    return True


class FiniteField:
    """F_{p^r} with total exact arithmetic on integer-index scalars."""

    def __init__(self, p, r=1, modulus=None):
        if not _is_prime(p):
            raise NonPrimeCharacteristic(f"{p} is not prime")
        if r < 1:
            raise ValueError("extension degree must be >= 1")
        if r == 1:
            if modulus is not None:
                raise ValueError("prime fields take no modulus")
        else:
            if modulus is None:
                raise ReducibleModulus("extension field needs a modulus")
            modulus = [c % p for c in modulus]
            if len(modulus) != r + 1 or modulus[-1] != 1:
                raise ReducibleModulus(
                    f"modulus must be monic of degree {r} (got {modulus})"
                )
            if not _is_irreducible(modulus, p):
                raise ReducibleModulus(f"modulus {modulus} is reducible over F_{p}")
            if p**r > _MAX_EXT_ORDER:
                raise ValueError(f"extension field order {p**r} out of scope")
        self.p = p
        self.r = r
        self.q = p**r
        self.modulus = tuple(modulus) if modulus is not None else None
        if r > 1:
            self._build_tables()

    # -- scalar arithmetic ------------------------------------------------

    def _digits(self, a):
        out = []
        for _ in range(self.r):
            out.append(a % self.p)
            a //= self.p
        return out

    def _index(self, digits):
        a = 0
        for c in reversed(digits):
            a = a * self.p + c % self.p
        return a

    def _build_tables(self):
        p, r, q = self.p, self.r, self.q
        # x^s mod modulus for s = r .. 2r-2
        red = []
        cur = [0] * r
        cur_full = [0] * r + [1]  # x^r
        rem = _poly_divmod(cur_full, list(self.modulus), p)
        red.append(rem)
        for _ in range(r - 2):
            nxt = [0] + red[-1][:]  # multiply by x
            rem = _poly_divmod(nxt + [0], list(self.modulus), p)
            red.append(rem)
        self._xpow_red = red  # x^{r+k} -> red[k]
        dig = np.zeros((q, r), dtype=np.int64)
        for a in range(q):
            dig[a] = self._digits(a)
        self._DIG = dig
        powers = p ** np.arange(r, dtype=np.int64)
        self._ENC = powers
        add = (dig[:, None, :] + dig[None, :, :]) % p
        self._ADD = add @ powers
        self._NEG = ((-dig) % p) @ powers
        mul = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            da = self._digits(a)
            for b in range(q):
                db = self._digits(b)
                conv = [0] * (2 * r - 1)
                for i, ai in enumerate(da):
                    if ai:
                        for j, bj in enumerate(db):
                            conv[i + j] = (conv[i + j] + ai * bj) % p
                out = conv[:r]
                for k in range(r - 1):
                    c = conv[r + k]
                    if c:
                        for t in range(r):
                            out[t] = (out[t] + c * red[k][t]) % p
                mul[a, b] = self._index(out)
        self._MUL = mul
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = int(np.flatnonzero(mul[a] == 1)[0])
        self._INV = inv
        frob = np.zeros((r, q), dtype=np.int64)
        frob[0] = np.arange(q)
        for a in range(q):
            frob[1 % r, a] = self.pow(a, p) if r > 1 else a
        for s in range(2, r):
            frob[s] = frob[1][frob[s - 1]]
        self._FROB = frob
        # subtraction table, used by the elimination kernel
        self._SUB = self._ADD[np.arange(q)[:, None], self._NEG[None, :]]

    def add(self, a, b):
        if self.r == 1:
            return (a + b) % self.p
        return int(self._ADD[a, b])

    def sub(self, a, b):
        if self.r == 1:
            return (a - b) % self.p
        return int(self._SUB[a, b])

    def neg(self, a):
        if self.r == 1:
            return (-a) % self.p
        return int(self._NEG[a])

    def mul(self, a, b):
        if self.r == 1:
            return (a * b) % self.p
        return int(self._MUL[a, b])

    def inv(self, a):
        if a % self.q == 0:
            raise ZeroDivisionError("inverting zero field element")
        if self.r == 1:
            return pow(a, self.p - 2, self.p)
        return int(self._INV[a])

    def pow(self, a, e):
        if e < 0:
            return self.pow(self.inv(a), -e)
        out, base = 1, a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def frobenius(self, a, s=1):
        """a^{p^s}; negative s means the inverse Frobenius (s is taken mod r)."""
        s %= self.r
        if self.r == 1 or s == 0:
            return a
        return int(self._FROB[s, a])

    def elements(self):
        return range(self.q)

    def encode_scalar(self, a):
        """Serialization form: bare int for prime fields, digit list otherwise."""
        if self.r == 1:
            return int(a)
        return [int(c) for c in self._digits(int(a))]

    def decode_scalar(self, obj):
        if self.r == 1:
            if not isinstance(obj, int):
                raise ValueError(f"prime field scalar must be an int, got {obj!r}")
            return obj % self.p
        if not isinstance(obj, (list, tuple)) or len(obj) != self.r:
            raise ValueError(f"scalar must be a length-{self.r} coefficient list")
        return self._index(list(obj))

    def __eq__(self, other):
        return (
            isinstance(other, FiniteField)
            and (self.p, self.r, self.modulus) == (other.p, other.r, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.r, self.modulus))

    def __repr__(self):
        if self.r == 1:
            return f"F_{self.p}"
        return f"F_{self.p}^{self.r}"

    # -- vectorized arithmetic on index arrays ----------------------------

    def vadd(self, x, y):
        if self.r == 1:
            return (x + y) % self.p
        return self._ADD[x, y]

    def vsub(self, x, y):
        if self.r == 1:
            return (x - y) % self.p
        return self._SUB[x, y]

    def vneg(self, x):
        if self.r == 1:
            return (-x) % self.p
        return self._NEG[x]

    def vmul(self, x, y):
        if self.r == 1:
            return (x * y) % self.p
        return self._MUL[x, y]

    def vscale(self, c, x):
        if self.r == 1:
            return (c * x) % self.p
        return self._MUL[c][x]

    def vouter(self, c, v):
        if self.r == 1:
            return (c[:, None] * v[None, :]) % self.p
        return self._MUL[c[:, None], v[None, :]]

    def vfrob(self, x, s=1):
        s %= self.r
        if self.r == 1 or s == 0:
            return np.array(x, dtype=np.int64, copy=True)
        return self._FROB[s][x]

    def vdot(self, x, y):
        if self.r == 1:
            return int(np.dot(x, y) % self.p)
        planes = self._DIG[self._MUL[x, y]]
        return self._index(list(planes.sum(axis=0) % self.p))

    def vsum(self, x, axis=None):
        if self.r == 1:
            return x.sum(axis=axis) % self.p
        if axis is None:
            planes = self._DIG[x].reshape(-1, self.r).sum(axis=0) % self.p
            return int(planes @ self._ENC)
        planes = self._DIG[x].sum(axis=axis) % self.p
        return planes @ self._ENC

    def mat_mul(self, a, b):
        """Exact product of index matrices; float64 BLAS when provably exact."""
        if a.ndim == 1:
            return self.mat_mul(a[None, :], b)[0]
        if b.ndim == 1:
            return self.mat_mul(a, b[:, None])[:, 0]
        if a.shape[1] != b.shape[0]:
            raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
        if self.r == 1:
            n = a.shape[1]
            if n and n * (self.p - 1) ** 2 < 2**52:
                prod = a.astype(np.float64) @ b.astype(np.float64)
                return prod.astype(np.int64) % self.p
            return (a @ b) % self.p
        pa = np.stack([self._DIG[a][..., t] for t in range(self.r)])
        pb = np.stack([self._DIG[b][..., t] for t in range(self.r)])
        conv = [
            np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
            for _ in range(2 * self.r - 1)
        ]
        for i in range(self.r):
            for j in range(self.r):
                conv[i + j] = (
                    conv[i + j]
                    + pa[i].astype(np.float64) @ pb[j].astype(np.float64)
                ).astype(np.int64) % self.p
        out_planes = [conv[t] for t in range(self.r)]
        for k in range(self.r - 1):
            red = self._xpow_red[k]
            for t in range(self.r):
                if red[t]:
                    out_planes[t] = (out_planes[t] + red[t] * conv[self.r + k]) % self.p
        out = np.zeros_like(conv[0])
        for t in range(self.r):
            out += out_planes[t] * int(self._ENC[t])
        return out


def frobenius_power(field, x, s):
    return field.frobenius(x, s)


# -- matrices -------------------------------------------------------------


def _as_vector(field, v, length=None):
    arr = np.asarray(v, dtype=np.int64)
    if arr.ndim != 1:
        raise DimensionMismatch(f"expected a vector, got shape {arr.shape}")
    if length is not None and arr.shape[0] != length:
        raise DimensionMismatch(f"expected length {length}, got {arr.shape[0]}")
    return arr % field.q if field.r == 1 else arr


class Matrix:
    """Immutable dense matrix of scalar indices over a finite field."""

    __slots__ = ("field", "data")

    def __init__(self, field, data, copy=True):
        if copy:
            arr = np.array(data, dtype=np.int64)
        else:
            arr = np.asarray(data, dtype=np.int64)
        if arr.ndim != 2:
            raise DimensionMismatch(f"matrix data must be 2-d, got {arr.ndim}-d")
        arr.setflags(write=False)
        self.field = field
        self.data = arr

    @classmethod
    def zeros(cls, field, rows, cols):
        return cls(field, np.zeros((rows, cols), dtype=np.int64), copy=False)

    @classmethod
    def identity(cls, field, n):
        return cls(field, np.eye(n, dtype=np.int64), copy=False)

    @property
    def rows(self):
        return self.data.shape[0]

    @property
    def cols(self):
        return self.data.shape[1]

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.data.shape == other.data.shape
            and np.array_equal(self.data, other.data)
        )

    def __add__(self, other):
        self._check_same_shape(other)
        return Matrix(self.field, self.field.vadd(self.data, other.data), copy=False)

    def __sub__(self, other):
        self._check_same_shape(other)
        return Matrix(self.field, self.field.vsub(self.data, other.data), copy=False)

    def __neg__(self):
        return Matrix(self.field, self.field.vneg(self.data), copy=False)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            return Matrix(
                self.field, self.field.mat_mul(self.data, other.data), copy=False
            )
        return self.mul_vec(other)

    def _check_same_shape(self, other):
        if self.data.shape != other.data.shape:
            raise DimensionMismatch(
                f"shape mismatch {self.data.shape} vs {other.data.shape}"
            )

    def mul_vec(self, v):
        v = _as_vector(self.field, v, self.cols)
        return self.field.mat_mul(self.data, v)

    def transpose(self):
        return Matrix(self.field, self.data.T.copy(), copy=False)

    def frobenius(self, s=1):
        return Matrix(self.field, self.field.vfrob(self.data, s), copy=False)

    def is_zero(self):
        return not self.data.any()

    def __repr__(self):
        return f"Matrix({self.field!r}, {self.data.tolist()!r})"


# -- row reduction --------------------------------------------------------


def _rref_gf2(data):
    m, n = data.shape
    if m == 0 or n == 0:
        return data.copy(), []
    nbytes = (n + 7) // 8
    packed = np.packbits(data.astype(np.uint8), axis=1, bitorder="little")
    rows = [int.from_bytes(packed[i].tobytes(), "little") for i in range(m)]
    pivots = []
    row = 0
    for col in range(n):
        bit = 1 << col
        pr = next((i for i in range(row, m) if rows[i] & bit), None)
        if pr is None:
            continue
        rows[row], rows[pr] = rows[pr], rows[row]
        pivrow = rows[row]
        for i in range(m):
            if i != row and rows[i] & bit:
                rows[i] ^= pivrow
        pivots.append(col)
        row += 1
        if row == m:
            break
    out = np.zeros((m, n), dtype=np.int64)
    for i, rint in enumerate(rows):
        if rint:
            raw = np.frombuffer(rint.to_bytes(nbytes, "little"), dtype=np.uint8)
            out[i] = np.unpackbits(raw, bitorder="little")[:n]
    return out, pivots


def _rref_generic(field, data):
    R = data.copy()
    m, n = R.shape
    pivots = []
    row = 0
    for col in range(n):
        if row == m:
            break
        nz = np.flatnonzero(R[row:, col])
        if nz.size == 0:
            continue
        pr = row + int(nz[0])
        if pr != row:
            R[[row, pr]] = R[[pr, row]]
        pv = int(R[row, col])
        if pv != 1:
            R[row] = field.vscale(field.inv(pv), R[row])
        colvals = R[:, col]
        others = np.flatnonzero(colvals)
        others = others[others != row]
        if others.size:
            piv = R[row].copy()
            R[others] = field.vsub(R[others], field.vouter(colvals[others], piv))
        pivots.append(col)
        row += 1
    return R, pivots


def _rref(field, data):
    if field.p == 2 and field.r == 1:
        return _rref_gf2(data)
    return _rref_generic(field, data)


class RowReduction:
    """RREF of a matrix plus rank, kernel and a linear solver."""

    def __init__(self, matrix):
        if not isinstance(matrix, Matrix):
            raise TypeError("row_reduce expects a Matrix")
        self.matrix = matrix
        R, piv = _rref(matrix.field, matrix.data)
        self.rref = Matrix(matrix.field, R, copy=False)
        self.pivots = tuple(piv)
        self.rank = len(piv)
        self._kernel = None
        self._transform = None

    @property
    def kernel(self):
        if self._kernel is None:
            F = self.matrix.field
            n = self.matrix.cols
            pivset = set(self.pivots)
            free = [j for j in range(n) if j not in pivset]
            K = np.zeros((len(free), n), dtype=np.int64)
            if free:
                K[np.arange(len(free)), free] = 1
                if self.pivots:
                    sub = self.rref.data[: self.rank][:, free]
                    K[:, list(self.pivots)] = F.vneg(sub.T)
            self._kernel = Subspace(F, n, K)
        return self._kernel

    def solve(self, b):
        """Some x with Mx = b, or None when b is not in the column space."""
        F = self.matrix.field
        m, n = self.matrix.rows, self.matrix.cols
        b = _as_vector(F, b, m)
        if self._transform is None:
            aug = np.hstack([self.matrix.data, np.eye(m, dtype=np.int64)])
            Raug, _ = _rref(F, aug)
            self._transform = Raug[:, n:]
        y = F.mat_mul(self._transform, b)
        if y[self.rank :].any():
            return None
        x = np.zeros(n, dtype=np.int64)
        x[list(self.pivots)] = y[: self.rank]
        return x


def row_reduce(matrix):
    return RowReduction(matrix)


# -- subspaces ------------------------------------------------------------


class Subspace:
    """Row space stored as a canonical RREF basis."""

    __slots__ = ("field", "ambient_dim", "basis", "pivots")

    def __init__(self, field, ambient_dim, rows=None):
        if rows is None:
            data = np.zeros((0, ambient_dim), dtype=np.int64)
        elif isinstance(rows, Matrix):
            data = rows.data
        else:
            arr = np.asarray(rows, dtype=np.int64)
            if arr.size == 0:
                data = arr.reshape(0, ambient_dim)
            else:
                data = arr.reshape(-1, ambient_dim)
        if data.shape[1] != ambient_dim:
            raise AmbientMismatch(
                f"rows of width {data.shape[1]} in ambient of dim {ambient_dim}"
            )
        R, piv = _rref(field, data)
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = Matrix(field, R[: len(piv)], copy=False)
        self.pivots = tuple(piv)

    @classmethod
    def full(cls, field, n):
        return cls(field, n, np.eye(n, dtype=np.int64))

    @property
    def dim(self):
        return self.basis.rows

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and np.array_equal(self.basis.data, other.basis.data)
        )

    def __repr__(self):
        return f"Subspace(dim {self.dim} of {self.ambient_dim})"

    def _check_ambient(self, other):
        if self.ambient_dim != other.ambient_dim or self.field != other.field:
            raise AmbientMismatch("subspaces live in different ambient spaces")

    def reduce(self, v):
        """Canonical representative of v modulo this subspace."""
        v = _as_vector(self.field, v, self.ambient_dim)
        if self.dim == 0:
            return v.copy()
        coeffs = v[list(self.pivots)]
        return self.field.vsub(v, self.field.mat_mul(coeffs, self.basis.data))

    def contains_vector(self, v):
        return not self.reduce(v).any()

    def contains(self, other):
        self._check_ambient(other)
        return all(self.contains_vector(row) for row in other.basis.data)

    def coords(self, v):
        """Coordinates of v in the RREF basis; v must lie in the subspace."""
        v = _as_vector(self.field, v, self.ambient_dim)
        c = v[list(self.pivots)]
        if self.reduce(v).any():
            raise NotASubspace("vector outside subspace has no coordinates")
        return c

    def lift(self, coords):
        coords = _as_vector(self.field, coords, self.dim)
        if self.dim == 0:
            return np.zeros(self.ambient_dim, dtype=np.int64)
        return self.field.mat_mul(coords, self.basis.data)

    def __add__(self, other):
        self._check_ambient(other)
        stacked = np.vstack([self.basis.data, other.basis.data])
        return Subspace(self.field, self.ambient_dim, stacked)

    def __and__(self, other):
        self._check_ambient(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace(self.field, self.ambient_dim)
        lhs = self.basis.data.T
        rhs = self.field.vneg(other.basis.data.T)
        ker = row_reduce(Matrix(self.field, np.hstack([lhs, rhs]), copy=False)).kernel
        vecs = self.field.mat_mul(ker.basis.data[:, : self.dim], self.basis.data)
        return Subspace(self.field, self.ambient_dim, vecs)

    def quotient_basis(self, other):
        """Coset representatives of self/other; requires other <= self."""
        self._check_ambient(other)
        if not self.contains(other):
            raise NotASubspace("quotient requires the second space inside the first")
        if self.dim == 0:
            return Matrix.zeros(self.field, 0, self.ambient_dim)
        reduced = np.vstack([other.reduce(row) for row in self.basis.data])
        R, piv = _rref(self.field, reduced)
        return Matrix(self.field, R[: len(piv)], copy=False)

    def quotient_map(self, other):
        """Matrix sending x to the coordinates of x+other in the pivot-rule basis.

        Only valid when self is the full ambient space.
        """
        if self.dim != self.ambient_dim:
            raise NotASubspace("quotient_map is defined on the full ambient space")
        reps = self.quotient_basis(other)
        n = self.ambient_dim
        eye = np.eye(n, dtype=np.int64)
        if other.dim:
            picked = eye[:, list(other.pivots)]
            reduced = self.field.vsub(
                eye, self.field.mat_mul(picked, other.basis.data)
            )
        else:
            reduced = eye
        rep_space = Subspace(self.field, n, reps)
        coords = reduced[:, list(rep_space.pivots)].T  # (h, n)
        return Matrix(self.field, coords, copy=False), reps


def preimage(matrix, target):
    """{x : Mx in target} as a subspace of the domain."""
    if matrix.rows != target.ambient_dim:
        raise DimensionMismatch(
            f"matrix with {matrix.rows} rows cannot land in ambient {target.ambient_dim}"
        )
    ann = row_reduce(target.basis).kernel  # functionals vanishing on target
    comp = matrix.field.mat_mul(ann.basis.data, matrix.data)
    return row_reduce(Matrix(matrix.field, comp, copy=False)).kernel


# -- semilinear maps ------------------------------------------------------


class SemilinearMap:
    """v -> M . phi^s(v) for the entrywise Frobenius phi; twist s is mod r."""

    __slots__ = ("matrix", "twist")

    def __init__(self, matrix, twist=0):
        self.matrix = matrix
        self.twist = twist % matrix.field.r

    @property
    def field(self):
        return self.matrix.field

    def apply(self, v):
        v = _as_vector(self.field, v, self.matrix.cols)
        return self.matrix.mul_vec(self.field.vfrob(v, self.twist))

    def compose(self, other):
        """self after other: (M, s) o (N, t) = (M . phi^s(N), s + t)."""
        if self.matrix.cols != other.matrix.rows:
            raise DimensionMismatch("incompatible semilinear composition")
        twisted = self.field.vfrob(other.matrix.data, self.twist)
        prod = self.field.mat_mul(self.matrix.data, twisted)
        return SemilinearMap(
            Matrix(self.field, prod, copy=False), self.twist + other.twist
        )

    def kernel(self):
        lin = row_reduce(self.matrix).kernel
        if self.twist == 0 or lin.dim == 0:
            return lin
        shifted = self.field.vfrob(lin.basis.data, -self.twist)
        return Subspace(self.field, self.matrix.cols, shifted)

    def image(self):
        return Subspace(self.field, self.matrix.rows, self.matrix.data.T)

    @property
    def rank(self):
        return row_reduce(self.matrix).rank

    def __eq__(self, other):
        return (
            isinstance(other, SemilinearMap)
            and self.matrix == other.matrix
            and self.twist == other.twist
        )

    def __repr__(self):
        return f"SemilinearMap({self.matrix.rows}x{self.matrix.cols}, twist={self.twist})"
