"""Standard test-corpus algebras and the bundled CLI example files."""

from __future__ import annotations

import json
import os

import numpy as np

from .algebra import Algebra, algebra_to_json, normalize_unit


def dual_numbers(field):
    """k[eps]/(eps^2) with basis {1, eps}."""
    c = np.zeros((2, 2, 2), dtype=np.int64)
    c[0, 0, 0] = 1
    c[0, 1, 1] = 1
    c[1, 0, 1] = 1
    return Algebra(field, ("1", "eps"), c)


def truncated_polynomial(field, e):
    """k[t]/(t^e) with basis 1, t, ..., t^{e-1}."""
    c = np.zeros((e, e, e), dtype=np.int64)
    for i in range(e):
        for j in range(e):
            if i + j < e:
                c[i, j, i + j] = 1
    labels = ["1"] + [f"t{k}" if k > 1 else "t" for k in range(1, e)]
    return Algebra(field, labels, c)


def _matrix_units_algebra(field, pairs, n):
    d = len(pairs)
    index = {pq: t for t, pq in enumerate(pairs)}
    c = np.zeros((d, d, d), dtype=np.int64)
    for a, (i, j) in enumerate(pairs):
        for b, (k, l) in enumerate(pairs):
            if j == k and (i, l) in index:
                c[a, b, index[(i, l)]] = 1
    labels = [f"e{i + 1}{j + 1}" for i, j in pairs]
    return normalize_unit(field, labels, c)


def upper_triangular(field, n):
    """UT_n, basis-changed so that the identity matrix is basis vector 0."""
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    return _matrix_units_algebra(field, pairs, n)


def full_matrix_algebra(field, n):
    """M_n(k), basis-changed so that the identity matrix is basis vector 0."""
    pairs = [(i, j) for i in range(n) for j in range(n)]
    return _matrix_units_algebra(field, pairs, n)


def field_algebra(field):
    """The ground field as a one dimensional algebra."""
    return Algebra(field, ("1",), np.ones((1, 1, 1), dtype=np.int64))


def standard_corpus():
    """Named corpus used by the test suite and bundled with the CLI."""
    from .fieldlin import FiniteField

    F2, F3, F5 = FiniteField(2), FiniteField(3), FiniteField(5)
    return {
        "dual_f2": dual_numbers(F2),
        "dual_f3": dual_numbers(F3),
        "dual_f5": dual_numbers(F5),
        "trunc2_f2": truncated_polynomial(F2, 2),
        "trunc3_f3": truncated_polynomial(F3, 3),
        "ut2_f2": upper_triangular(F2, 2),
        "ut2_f3": upper_triangular(F3, 2),
        "ut3_f2": upper_triangular(F2, 3),
        "ut3_f3": upper_triangular(F3, 3),
        "m2_f3": full_matrix_algebra(F3, 2),
        "k_f2": field_algebra(F2),
    }


def write_corpus(directory):
    os.makedirs(directory, exist_ok=True)
    written = []
    for name, alg in standard_corpus().items():
        path = os.path.join(directory, f"{name}.json")
        with open(path, "w") as fh:
            json.dump(algebra_to_json(alg), fh, indent=1, sort_keys=True)
            fh.write("\n")
        written.append(path)
    return written
