"""Normalized bar complex: homology, cohomology, induced maps, cup products
and the chain-level duality pairing for symmetric algebras.

Chains in degree m are spanned by tuples (i_0, i_1, ..., i_m) with i_0 any
basis index and i_1..i_m in 1..d-1 (the reduced part excludes the unit line),
ordered lexicographically; the chain space has dimension d(d-1)^m.  Cochains
of degree m are coefficient tensors of shape (d-1)^m x d encoding multilinear
maps on the reduced algebra with values in A.
"""

from __future__ import annotations

import hashlib
import itertools
import os
from dataclasses import dataclass

import numpy as np

from .errors import (
    AlgebraMismatch,
    DegenerateForm,
    DimensionMismatch,
    NotACocycle,
    NotACycle,
    NotUnital,
)
from .fieldlin import Matrix, Subspace, _as_vector, row_reduce

CACHE_ENV = "KUELSH_CACHE_DIR"


def chain_dim(A, m):
    return A.dim * (A.dim - 1) ** m


def cochain_dim(A, m):
    return (A.dim - 1) ** m * A.dim


def _chain_tuples(A, m):
    inner = itertools.product(range(1, A.dim), repeat=m)
    for i0, rest in itertools.product(range(A.dim), inner):
        yield (i0, *rest)


def _chain_index(A, m, tup):
    d = A.dim
    idx = tup[0]
    for t in tup[1:]:
        idx = idx * (d - 1) + (t - 1)
    return idx


def _arg_index(A, args):
    d = A.dim
    idx = 0
    for t in args:
        idx = idx * (d - 1) + (t - 1)
    return idx


def _disk_cache_path(A, kind, m):
    root = os.environ.get(CACHE_ENV)
    if not root:
        return None
    os.makedirs(root, exist_ok=True)
    key = hashlib.sha256(f"{A.content_hash()}:{kind}:{m}".encode()).hexdigest()
    return os.path.join(root, f"{key}.npy")


def boundary_matrix(A, m):
    """The bar boundary from degree m to degree m-1 (m >= 1); b o b = 0."""
    if m < 1:
        raise ValueError("boundary needs m >= 1")
    key = ("boundary", m)
    if key in A._cache:
        return A._cache[key]
    path = _disk_cache_path(A, "boundary", m)
    if path and os.path.exists(path):
        M = Matrix(A.field, np.load(path))
        A._cache[key] = M
        return M
    F, d, c = A.field, A.dim, A.const
    out = np.zeros((chain_dim(A, m - 1), chain_dim(A, m)), dtype=np.int64)
    minus_one = F.neg(1)
    for col, tup in enumerate(_chain_tuples(A, m)):
        sign = 1
        for i in range(m):
            prod = c[tup[i], tup[i + 1]]
            lo = 0 if i == 0 else 1  # inner slots drop the unit component
            for t in range(lo, d):
                coeff = int(prod[t])
                if coeff:
                    target = tup[:i] + (t,) + tup[i + 2 :]
                    row = _chain_index(A, m - 1, target)
                    val = coeff if sign == 1 else F.mul(coeff, minus_one)
                    out[row, col] = F.add(int(out[row, col]), val)
            sign = -sign
        # cyclic term: (-1)^m (a_m a_0) (x) a_1 ... a_{m-1}
        prod = c[tup[m], tup[0]]
        for t in range(d):
            coeff = int(prod[t])
            if coeff:
                target = (t,) + tup[1:m]
                row = _chain_index(A, m - 1, target)
                val = coeff if sign == 1 else F.mul(coeff, minus_one)
                out[row, col] = F.add(int(out[row, col]), val)
    M = Matrix(F, out, copy=False)
    A._cache[key] = M
    if path:
        np.save(path, out)
    return M


def coboundary_matrix(A, m):
    """The Hochschild coboundary from degree-m to degree-(m+1) cochains."""
    if m < 0:
        raise ValueError("coboundary needs m >= 0")
    key = ("coboundary", m)
    if key in A._cache:
        return A._cache[key]
    F, d, c = A.field, A.dim, A.const
    out = np.zeros((cochain_dim(A, m + 1), cochain_dim(A, m)), dtype=np.int64)
    minus_one = F.neg(1)

    def emit(args, valvec, sign, col):
        base = _arg_index(A, args) * d
        for kk in range(d):
            coeff = int(valvec[kk])
            if coeff:
                val = coeff if sign == 1 else F.mul(coeff, minus_one)
                out[base + kk, col] = F.add(int(out[base + kk, col]), val)

    for J in itertools.product(range(1, d), repeat=m):
        jbase = _arg_index(A, J) * d
        for k in range(d):
            col = jbase + k
            ek = np.zeros(d, dtype=np.int64)
            ek[k] = 1
            for a in range(1, d):
                emit((a, *J), c[a, k], 1, col)  # a . f(args)
            sign = -1
            for i in range(1, m + 1):
                for x in range(1, d):
                    for y in range(1, d):
                        coeff = int(c[x, y, J[i - 1]])
                        if coeff:
                            args = J[: i - 1] + (x, y) + J[i:]
                            base = _arg_index(A, args) * d
                            val = coeff if sign == 1 else F.mul(coeff, minus_one)
                            out[base + k, col] = F.add(int(out[base + k, col]), val)
                sign = -sign
            for b in range(1, d):
                emit((*J, b), c[k, b], sign, col)  # f(args) . b
    M = Matrix(F, out, copy=False)
    A._cache[key] = M
    return M


# -- cochains and cup products ------------------------------------------------


class Cochain:
    """Multilinear map on the reduced algebra, stored as a coefficient tensor."""

    __slots__ = ("algebra", "degree", "coeffs")

    def __init__(self, algebra, degree, coeffs):
        coeffs = np.asarray(coeffs, dtype=np.int64).reshape(
            (algebra.dim - 1) ** degree, algebra.dim
        )
        self.algebra = algebra
        self.degree = degree
        self.coeffs = coeffs

    @classmethod
    def from_flat(cls, algebra, degree, flat):
        return cls(algebra, degree, np.asarray(flat, dtype=np.int64))

    @classmethod
    def unit(cls, algebra):
        return cls(algebra, 0, algebra.unit())

    def flat(self):
        return self.coeffs.reshape(-1)

    def value(self, args):
        return self.coeffs[_arg_index(self.algebra, args)]

    def is_zero(self):
        return not self.coeffs.any()

    def __eq__(self, other):
        return (
            isinstance(other, Cochain)
            and self.degree == other.degree
            and np.array_equal(self.coeffs, other.coeffs)
        )


def cup_product(f, g):
    """(f cup g)(args) = f(front) . g(back); strictly associative on cochains."""
    if f.algebra is not g.algebra and f.algebra.content_hash() != g.algebra.content_hash():
        raise AlgebraMismatch("cup product needs cochains over one algebra")
    A = f.algebra
    d = A.dim
    m, mp = f.degree, g.degree
    out = np.zeros(((d - 1) ** (m + mp), d), dtype=np.int64)
    fc = f.coeffs
    gc = g.coeffs
    for i in range((d - 1) ** m):
        fv = fc[i]
        if not fv.any():
            continue
        left = A.left_mult_matrix(fv)
        block = A.field.mat_mul(left, gc.T).T  # rows: f(front) . g(back)
        out[i * (d - 1) ** mp : (i + 1) * (d - 1) ** mp] = block
    return Cochain(A, m + mp, out)


def cup_power(f, e):
    """e-th cup power by iterated squaring; e >= 1."""
    if e < 1:
        raise ValueError("cup powers need e >= 1")
    out = None
    base = f
    while e:
        if e & 1:
            out = base if out is None else cup_product(out, base)
        e >>= 1
        if e:
            base = cup_product(base, base)
    return out


def coboundary_apply(f):
    """Apply the coboundary to one cochain directly (no matrix build)."""
    A = f.algebra
    F, d, c = A.field, A.dim, A.const
    m = f.degree
    out = np.zeros(((d - 1) ** (m + 1), d), dtype=np.int64)
    minus_one = F.neg(1)
    last_sign = 1 if (m + 1) % 2 == 0 else -1
    for J in itertools.product(range(1, d), repeat=m + 1):
        row = _arg_index(A, J)
        acc = A.multiply_basis_left(J[0], f.value(J[1:]))
        sign = -1
        for i in range(1, m + 1):
            x, y = J[i - 1], J[i]
            inner = np.zeros(d, dtype=np.int64)
            for t in range(1, d):
                coeff = int(c[x, y, t])
                if coeff:
                    inner = F.vadd(inner, F.vscale(coeff, f.value(J[: i - 1] + (t,) + J[i + 1 :])))
            acc = F.vadd(acc, inner if sign == 1 else F.vscale(minus_one, inner))
            sign = -sign
        tail = A.multiply_basis_right(f.value(J[:-1]), J[-1])
        acc = F.vadd(acc, tail if last_sign == 1 else F.vscale(minus_one, tail))
        out[row] = acc
    return Cochain(A, m + 1, out)


# -- homology -------------------------------------------------------------------


@dataclass
class HomologyBasis:
    degree: int
    representatives: tuple  # vectors in the chain (or cochain) space
    cycles: Subspace
    boundaries: Subspace
    _solver: object = None

    @property
    def dimension(self):
        return len(self.representatives)

    def express(self, v):
        """Coordinates of a cycle's class in this basis (reduce mod boundaries)."""
        if self._solver is None:
            cols = list(self.representatives) + [
                row for row in self.boundaries.basis.data
            ]
            ambient = self.cycles.ambient_dim
            M = (
                np.stack(cols, axis=1)
                if cols
                else np.zeros((ambient, 0), dtype=np.int64)
            )
            self._solver = row_reduce(Matrix(self.cycles.field, M, copy=False))
        sol = self._solver.solve(v)
        if sol is None:
            raise NotACycle("vector is not a cycle modulo boundaries")
        return sol[: self.dimension]


def homology(A, m):
    """HH_m via the normalized bar complex, with canonical representatives."""
    key = ("homology", m)
    if key in A._cache:
        return A._cache[key]
    F = A.field
    n = chain_dim(A, m)
    if m == 0:
        cycles = Subspace.full(F, n)
    else:
        cycles = row_reduce(boundary_matrix(A, m)).kernel
    nxt = boundary_matrix(A, m + 1)
    boundaries = Subspace(F, n, nxt.data.T)
    reps = cycles.quotient_basis(boundaries)
    hb = HomologyBasis(m, tuple(row for row in reps.data), cycles, boundaries)
    A._cache[key] = hb
    return hb


def cohomology(A, m):
    """HH^m via normalized cochains, with canonical representatives."""
    key = ("cohomology", m)
    if key in A._cache:
        return A._cache[key]
    F = A.field
    n = cochain_dim(A, m)
    cocycles = row_reduce(coboundary_matrix(A, m)).kernel
    if m == 0:
        cobound = Subspace(F, n)
    else:
        prev = coboundary_matrix(A, m - 1)
        cobound = Subspace(F, n, prev.data.T)
    reps = cocycles.quotient_basis(cobound)
    hb = HomologyBasis(m, tuple(row for row in reps.data), cocycles, cobound)
    A._cache[key] = hb
    return hb


# -- functoriality ---------------------------------------------------------------


def induced_chain_map(theta, m):
    """Chain map of the normalized bar complexes for a unital morphism."""
    A, B, M = theta.source, theta.target, theta.matrix
    if not np.array_equal(M @ A.unit(), B.unit()):
        raise NotUnital("induced chain maps need a unital morphism")
    F = B.field
    dB = B.dim
    out = np.zeros((chain_dim(B, m), chain_dim(A, m)), dtype=np.int64)
    cols = M.data  # theta(e_i) = cols[:, i]
    for col, tup in enumerate(_chain_tuples(A, m)):
        images = [cols[:, t] for t in tup]
        supports = [np.flatnonzero(images[0])] + [
            np.flatnonzero(img[1:]) + 1 for img in images[1:]
        ]
        for combo in itertools.product(*supports):
            coeff = 1
            for slot, t in enumerate(combo):
                coeff = F.mul(coeff, int(images[slot][t]))
            row = _chain_index(B, m, combo)
            out[row, col] = F.add(int(out[row, col]), coeff)
    return Matrix(F, out, copy=False)


def hh_of_map(theta, m, source_basis=None, target_basis=None):
    """The induced map on degree-m homology, on the canonical bases."""
    A, B = theta.source, theta.target
    src = source_basis if source_basis is not None else homology(A, m)
    tgt = target_basis if target_basis is not None else homology(B, m)
    chain = induced_chain_map(theta, m)
    cols = []
    bnd = boundary_matrix(B, m) if m >= 1 else None
    for rep in src.representatives:
        v = chain @ rep
        if bnd is not None and (bnd @ v).any():
            raise NotACycle("induced image of a cycle is not a cycle")
        cols.append(tgt.express(v))
    M = (
        np.stack(cols, axis=1)
        if cols
        else np.zeros((tgt.dimension, 0), dtype=np.int64)
    )
    return Matrix(B.field, M, copy=False)


# -- duality pairing ---------------------------------------------------------------


def pairing_vector(lam, f):
    """w with <f, c> = w . c for every chain c of f's degree."""
    A = f.algebra
    F = A.field
    lam = _as_vector(F, lam, A.dim)
    m = f.degree
    w = np.zeros(chain_dim(A, m), dtype=np.int64)
    for idx, tup in enumerate(_chain_tuples(A, m)):
        val = A.multiply_basis_right(f.value(tup[1:]), tup[0])
        w[idx] = F.vdot(lam, val)
    return w


def pairing(lam, f, c, check=True):
    """Chain-level duality pairing <f, a_0 (x) args> = lam(f(args) . a_0)."""
    A = f.algebra
    c = _as_vector(A.field, c, chain_dim(A, f.degree))
    if check:
        if not coboundary_apply(f).is_zero():
            raise NotACocycle("pairing needs a cocycle")
        if f.degree >= 1 and (boundary_matrix(A, f.degree) @ c).any():
            raise NotACycle("pairing needs a cycle")
    return A.field.vdot(pairing_vector(lam, f), c)


def gram_matrix(A, lam, m, cohom=None, homol=None):
    """Pairing of cohomology and homology representatives; invertible iff the
    degree-m duality is nondegenerate on the chosen bases."""
    ch = cohom if cohom is not None else cohomology(A, m)
    ho = homol if homol is not None else homology(A, m)
    G = np.zeros((ch.dimension, ho.dimension), dtype=np.int64)
    for i, zf in enumerate(ch.representatives):
        w = pairing_vector(lam, Cochain.from_flat(A, m, zf))
        for j, x in enumerate(ho.representatives):
            G[i, j] = A.field.vdot(w, x)
    return Matrix(A.field, G, copy=False)
