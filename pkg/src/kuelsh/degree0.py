"""Degree-0 Kulshammer theory.

Commutator space, centre, the semilinear p-power map on A/KA, the chain of
subspaces T_n = {x : x^{p^n} in KA}, orthogonal spaces against a symmetrizing
form, the adjoint maps zeta_n and kappa_n, annihilators in the dual space and
the trivial-extension identity relating them.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dataclass_field

import numpy as np

from .algebra import BilinearForm, trivial_extension
from .errors import DegenerateForm, DimensionMismatch, WellDefinednessViolation
from .fieldlin import Matrix, SemilinearMap, Subspace, preimage, row_reduce


def commutator_space(A):
    """Span of all commutators ab - ba (basis pairs suffice by bilinearity)."""
    rows = []
    for i in range(A.dim):
        for j in range(i + 1, A.dim):
            rows.append(A.field.vsub(A.const[i, j], A.const[j, i]))
    if not rows:
        return Subspace(A.field, A.dim)
    return Subspace(A.field, A.dim, np.stack(rows))


def center(A):
    """{z : z e_i = e_i z for all i}, the joint kernel of commutation constraints."""
    d = A.dim
    rows = []
    for i in range(d):
        # coefficient of the equation sum_t z_t (c[t,i,k] - c[i,t,k]) = 0
        diff = A.field.vsub(A.const[:, i, :], A.const[i, :, :])  # (t, k)
        rows.append(diff.T)  # (k, t)
    E = np.concatenate(rows, axis=0)
    return row_reduce(Matrix(A.field, E)).kernel


def hh0_data(A):
    """Quotient data of A/KA: (KA, coset representatives, coordinate map)."""
    key = "hh0"
    if key not in A._cache:
        ka = commutator_space(A)
        full = Subspace.full(A.field, A.dim)
        qmap, reps = full.quotient_map(ka)
        A._cache[key] = (ka, reps, qmap)
    return A._cache[key]


def ppower_on_HH0(A, n=1):
    """The p-power map mu^n on A/KA as a semilinear map with twist n.

    Well-definedness modulo KA is re-verified on random samples; a failure
    signals an implementation bug, since the statement is a theorem.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    ka, reps, qmap = hh0_data(A)
    F = A.field
    h = reps.rows
    cols = []
    for j in range(h):
        img = A.power(reps.data[j], F.p)
        cols.append(qmap @ img)
    M = np.stack(cols, axis=1) if h else np.zeros((0, 0), dtype=np.int64)
    mu = SemilinearMap(Matrix(F, M), twist=1)
    _verify_well_defined(A, ka, qmap, mu)
    out = mu
    for _ in range(n - 1):
        out = mu.compose(out)
    return out


def _verify_well_defined(A, ka, qmap, mu, trials=100):
    if ka.dim == 0:
        return
    F = A.field
    rng = random.Random(2)
    for _ in range(trials):
        x = np.array([rng.randrange(F.q) for _ in range(A.dim)])
        c = ka.lift(np.array([rng.randrange(F.q) for _ in range(ka.dim)]))
        lhs = qmap @ A.power(F.vadd(x, c), F.p)
        rhs = qmap @ A.power(x, F.p)
        if not np.array_equal(lhs, rhs):
            raise WellDefinednessViolation(
                "class(x^p) changed when x moved by a commutator"
            )


def kulshammer_T(A, n):
    """T_n(A) = {x : x^{p^n} in KA}, through the semilinear kernel of mu^n."""
    if n < 1:
        raise ValueError("need n >= 1")
    _, _, qmap = hh0_data(A)
    ker = ppower_on_HH0(A, n).kernel()
    return preimage(qmap, ker)


def perp(form, W, ambient):
    """{z in ambient : <z, w> = 0 for all w in W}."""
    G = form.gram if isinstance(form, BilinearForm) else form
    if W.ambient_dim != G.rows or ambient.ambient_dim != G.rows:
        raise DimensionMismatch("form and subspaces must share one ambient space")
    if W.dim == 0:
        return ambient
    E = G.field.mat_mul(W.basis.data, G.data.T)  # rows: w |-> (G^T w)^T
    total = row_reduce(Matrix(G.field, E, copy=False)).kernel
    return total & ambient


def zeta_n(A, lam, n):
    """zeta_n on Z(A): <zeta(a), b> = <a, b^{p^n}>^{p^-n}; twist -n.

    Returned in the coordinates of the canonical centre basis.  The image is
    T_n(A)^perp by Kulshammer's theorem; callers may cross-check.
    """
    F = A.field
    form = BilinearForm.from_linear_form(A, lam)
    gram_red = row_reduce(form.gram.transpose())
    if gram_red.rank != A.dim:
        raise DegenerateForm("symmetrizing form has singular Gram matrix")
    Z = center(A)
    powers = [A.power(A.basis_vector(j), F.p**n) for j in range(A.dim)]
    cols = []
    for s in range(Z.dim):
        a = Z.basis.data[s]
        w = np.array(
            [F.frobenius(F.vdot(lam, A.multiply(a, powers[j])), -n) for j in range(A.dim)]
        )
        za = gram_red.solve(w)  # G^T zeta(a) = w
        cols.append(Z.coords(za))
    M = np.stack(cols, axis=1) if cols else np.zeros((0, 0), dtype=np.int64)
    return SemilinearMap(Matrix(F, M), twist=-n)


def kappa_n_direct(A, lam, n):
    """kappa_n on A/KA: <a^{p^n}, b> = <a, kappa(b)>^{p^n}; twist -n."""
    F = A.field
    form = BilinearForm.from_linear_form(A, lam)
    if row_reduce(form.gram).rank != A.dim:
        raise DegenerateForm("symmetrizing form has singular Gram matrix")
    Z = center(A)
    _, reps, _ = hh0_data(A)
    h = reps.rows
    if Z.dim != h:
        raise DegenerateForm("dim Z(A) and dim A/KA differ; form cannot be symmetrizing")
    gram0 = np.zeros((Z.dim, h), dtype=np.int64)
    for s in range(Z.dim):
        for t in range(h):
            gram0[s, t] = F.vdot(lam, A.multiply(Z.basis.data[s], reps.data[t]))
    g0 = row_reduce(Matrix(F, gram0))
    if g0.rank != h:
        raise DegenerateForm("pairing of Z(A) with A/KA is degenerate")
    cols = []
    for t in range(h):
        b = reps.data[t]
        w = np.array(
            [
                F.frobenius(
                    F.vdot(lam, A.multiply(A.power(Z.basis.data[s], F.p**n), b)), -n
                )
                for s in range(Z.dim)
            ]
        )
        cols.append(g0.solve(w))
    M = np.stack(cols, axis=1) if cols else np.zeros((0, 0), dtype=np.int64)
    return SemilinearMap(Matrix(F, M), twist=-n)


def annihilator_in_dual(A, W):
    """{f in A* : f(W) = 0}; dimension d - dim W."""
    if W.ambient_dim != A.dim:
        raise DimensionMismatch("subspace does not live in the algebra")
    return row_reduce(W.basis).kernel


@dataclass
class BhzReport:
    holds: bool
    lhs: Subspace  # T_n(TA)^perp inside Z(TA)
    rhs: Subspace  # {0} + Ann_{A*}(T_n(A)) in TA coordinates
    pullback_holds: bool | None = None  # for symmetric A only


def bhz_check(A, n, lam=None):
    """T_n(TA)^perp = {0} + Ann_{A*}(T_n(A)), both sides computed independently.

    When a symmetrizing form lam of A itself is supplied, additionally checks
    that pulling Ann(T_n(A)) back through z |-> <z, -> recovers T_n(A)^perp.
    """
    te = trivial_extension(A)
    TA = te.algebra
    lhs = perp(te.form, kulshammer_T(TA, n), center(TA))
    tn = kulshammer_T(A, n)
    ann = annihilator_in_dual(A, tn)
    d = A.dim
    emb = np.zeros((ann.dim, 2 * d), dtype=np.int64)
    if ann.dim:
        emb[:, d:] = ann.basis.data
    rhs = Subspace(A.field, 2 * d, emb)
    pullback = None
    if lam is not None:
        form = BilinearForm.from_linear_form(A, lam)
        Z = center(A)
        tperp = perp(form, tn, Z)
        pulled = preimage(form.gram.transpose(), ann) & Z
        pullback = pulled == tperp
    return BhzReport(lhs == rhs, lhs, rhs, pullback)


@dataclass
class DegreeZeroReport:
    ka: Subspace
    z: Subspace
    t: list  # T_1 .. T_N
    ann: list  # Ann_{A*}(T_n)
    t_perp: list | None = None  # with a symmetrizing form only
    zeta: SemilinearMap | None = None
    kappa: SemilinearMap | None = None
    bhz: list = dataclass_field(default_factory=list)  # verdicts per n


def degree0_report(A, n_max, lam=None):
    """The full degree-0 suite for n = 1..n_max."""
    ka = commutator_space(A)
    z = center(A)
    t = [kulshammer_T(A, n) for n in range(1, n_max + 1)]
    ann = [annihilator_in_dual(A, tn) for tn in t]
    bhz = [bhz_check(A, n, lam).holds for n in range(1, n_max + 1)]
    rep = DegreeZeroReport(ka, z, t, ann, bhz=bhz)
    if lam is not None:
        form = BilinearForm.from_linear_form(A, lam)
        rep.t_perp = [perp(form, tn, z) for tn in t]
        rep.zeta = zeta_n(A, lam, n_max)
        rep.kappa = kappa_n_direct(A, lam, n_max)
    return rep
