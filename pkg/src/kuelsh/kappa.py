"""Higher Kulshammer maps on Hochschild homology.

For a symmetric algebra the map kappa_n^(m) sends HH_{p^n m} to HH_m and is
pinned down by pairing cup powers of degree-m cocycles against homology
classes.  For arbitrary algebras the same construction runs inside the
trivial extension and is pushed back through the canonical splitting.

The core routine evaluates kappa on explicit cycles: the duality pairing is
a chain-level formula that descends to homology, so the domain classes never
need to be re-expressed in a homology basis of the big algebra.  That keeps
the trivial-extension computation inside the chain spaces of the classes
being pushed (the dominating object for the dual numbers at p = 3 is the
4 * 3^6 column chain space, nothing larger).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import BilinearForm, trivial_extension
from .errors import DegenerateForm, DimensionMismatch, NotACocycle, NotACycle
from .fieldlin import Matrix, SemilinearMap, row_reduce
from .hochschild import (
    Cochain,
    boundary_matrix,
    chain_dim,
    coboundary_apply,
    cohomology,
    cup_power,
    gram_matrix,
    hh_of_map,
    homology,
    induced_chain_map,
    pairing_vector,
)


@dataclass
class KappaMap:
    domain_degree: int  # p^n m
    codomain_degree: int  # m
    map: SemilinearMap

    @property
    def matrix(self):
        return self.map.matrix

    @property
    def twist(self):
        return self.map.twist

    @property
    def rank(self):
        return row_reduce(self.map.matrix).rank

    def to_json(self, field):
        return {
            "domain_degree": self.domain_degree,
            "codomain_degree": self.codomain_degree,
            "matrix": [
                [field.encode_scalar(int(x)) for x in row] for row in self.matrix.data
            ],
            "twist": self.twist,
            "rank": self.rank,
        }


def _kappa_on_cycles(A, lam, m, n, cycles, check=True):
    """Coordinates in the HH_m(A) basis of kappa applied to explicit cycles.

    Solves G c = phi^{-n}(b) with b_i = <z_i^{p^n}, cycle> for the canonical
    cohomology representatives z_i and the degree-m Gram matrix G.
    """
    F = A.field
    coh = cohomology(A, m)
    hom = homology(A, m)
    if coh.dimension != hom.dimension:
        raise DegenerateForm(
            f"degree-{m} homology and cohomology dimensions differ; "
            "the duality pairing cannot be nondegenerate"
        )
    G = gram_matrix(A, lam, m, cohom=coh, homol=hom)
    gred = row_reduce(G)
    if gred.rank != G.rows:
        raise DegenerateForm(f"degree-{m} duality Gram matrix is singular")
    e = F.p**n
    dom_dim = chain_dim(A, e * m)
    pair_vecs = []
    for zf in coh.representatives:
        cz = cup_power(Cochain.from_flat(A, m, zf), e)
        if check and not coboundary_apply(cz).is_zero():
            raise NotACocycle("cup power of a cocycle failed to be a cocycle")
        pair_vecs.append(pairing_vector(lam, cz))
    bnd = boundary_matrix(A, e * m) if e * m >= 1 and cycles else None
    cols = []
    for x in cycles:
        x = np.asarray(x, dtype=np.int64)
        if x.shape != (dom_dim,):
            raise DimensionMismatch(
                f"cycle of length {x.shape} in chain space of dim {dom_dim}"
            )
        if check and bnd is not None and (bnd @ x).any():
            raise NotACycle("kappa applied to a chain that is not a cycle")
        b = np.array([F.vdot(w, x) for w in pair_vecs])
        sol = gred.solve(F.vfrob(b, -n))
        cols.append(sol)
    M = (
        np.stack(cols, axis=1)
        if cols
        else np.zeros((hom.dimension, 0), dtype=np.int64)
    )
    return Matrix(F, M, copy=False)


def kappa_m_n(A, lam, m, n):
    """kappa_n^(m): HH_{p^n m}(A) -> HH_m(A) for a symmetric algebra."""
    dom = homology(A, A.field.p**n * m)
    M = _kappa_on_cycles(A, lam, m, n, list(dom.representatives))
    return KappaMap(A.field.p**n * m, m, SemilinearMap(M, twist=-n))


def kappa_hat(A, m, n):
    """The trivial-extension route, defined with no symmetry assumption on A.

    Composes the homology push-in along the inclusion, kappa over the
    trivial extension with its canonical form, and the push-back along the
    projection; kappa over the extension is evaluated directly on the
    pushed cycles, which the chain-level pairing allows.
    """
    F = A.field
    te = trivial_extension(A)
    TA = te.algebra
    e = F.p**n
    dom = homology(A, e * m)
    push = induced_chain_map(te.iota, e * m)
    pushed = [push @ rep for rep in dom.representatives]
    inner = _kappa_on_cycles(TA, te.lam, m, n, pushed)
    down = hh_of_map(te.pi, m)
    return KappaMap(e * m, m, SemilinearMap(down @ inner, twist=-n))


@dataclass
class KappaComparison:
    equal: bool
    kappa: KappaMap
    kappa_hat: KappaMap


def kappa_compare_symmetric(A, lam, m, n):
    """Compute both routes on the same canonical bases and compare.

    Equality of the two maps is a theorem only where the source material
    proves one (the dual numbers); for other symmetric algebras this is a
    report, not an assertion.
    """
    plain = kappa_m_n(A, lam, m, n)
    hat = kappa_hat(A, m, n)
    equal = plain.map == hat.map
    return KappaComparison(equal, plain, hat)
