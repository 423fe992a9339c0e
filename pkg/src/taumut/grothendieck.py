"""Index and coindex vectors in the Grothendieck group.

Every pair yields two square integer matrices with aligned columns: G
collects the alternating projective multiplicities of minimal
presentations (with negated unit vectors for missing vertices), C the
signed composition-factor vectors of the paired bricks.  The two are
dual up to the diagonal endomorphism dimensions, and both are
unimodular.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

import sympy
from sympy.matrices.normalforms import smith_normal_form

from .errors import TaumutError
from .linalg import QQ, Mat, det
from .modules import simple_module, hom_dim
from .smc import PairedColumn, paired_columns
from .tautilt import SupportPair


@dataclass(frozen=True)
class GrothendieckData:
    """Aligned g/c columns for one pair; matrices are row-major, indexed
    [vertex][column]."""

    columns: Tuple[PairedColumn, ...]
    g: Tuple[Tuple[int, ...], ...]
    c: Tuple[Tuple[int, ...], ...]
    d: Tuple[int, ...]
    d_prime: Tuple[int, ...]


def g_columns(pair: SupportPair) -> List[List[int]]:
    """One column per summand ([P0] - [P1] multiplicities) and per missing
    vertex (-e_v), in the pair's column order."""
    reg = pair.registry
    n = reg.algebra.n_vertices
    cols = []
    for sid in pair.summand_ids:
        pres = reg.presentation(sid)
        col = [0] * n
        for w in pres.p0_vertices:
            col[w] += 1
        for w in pres.p1_vertices:
            col[w] -= 1
        cols.append(col)
    for v in pair.support_complement:
        col = [0] * n
        col[v] = -1
        cols.append(col)
    return cols


def _columns_to_rows(cols: Sequence[Sequence[int]], n: int) -> Tuple[Tuple[int, ...], ...]:
    return tuple(tuple(col[v] for col in cols) for v in range(n))


def g_matrix(pair: SupportPair) -> Tuple[Tuple[int, ...], ...]:
    return _columns_to_rows(g_columns(pair), pair.registry.algebra.n_vertices)


def simple_end_dims(algebra) -> Tuple[int, ...]:
    return tuple(
        hom_dim(simple_module(algebra, v), simple_module(algebra, v))
        for v in range(algebra.n_vertices)
    )


def c_data(pair: SupportPair):
    """Signed composition-factor columns of the paired bricks, plus the
    diagonal of their endomorphism dimensions."""
    reg = pair.registry
    n = reg.algebra.n_vertices
    simple_dims = simple_end_dims(reg.algebra)
    cols = []
    d_prime = []
    paired = paired_columns(pair)
    for col in paired:
        brick = reg.module(col.brick_id)
        vec = []
        for v in range(n):
            # composition multiplicity: vertex dimension over dim S_v
            if brick.dims[v] % simple_dims[v] != 0:
                raise TaumutError("composition multiplicity is not integral")
            vec.append(col.sign * (brick.dims[v] // simple_dims[v]))
        cols.append(vec)
        d_prime.append(reg.end_dim(col.brick_id))
    return cols, tuple(d_prime), tuple(paired)


def c_matrix(pair: SupportPair) -> Tuple[Tuple[int, ...], ...]:
    cols, _, _ = c_data(pair)
    return _columns_to_rows(cols, pair.registry.algebra.n_vertices)


def grothendieck_data(pair: SupportPair) -> GrothendieckData:
    n = pair.registry.algebra.n_vertices
    gc = g_columns(pair)
    cc, d_prime, paired = c_data(pair)
    return GrothendieckData(
        columns=paired,
        g=_columns_to_rows(gc, n),
        c=_columns_to_rows(cc, n),
        d=simple_end_dims(pair.registry.algebra),
        d_prime=d_prime,
    )


def _int_det(rows: Sequence[Sequence[int]]) -> int:
    m = Mat(QQ, [[Fraction(x) for x in row] for row in rows])
    value = det(m)
    if value.denominator != 1:
        raise TaumutError("integer matrix produced a fractional determinant")
    return int(value)


def check_duality(data: GrothendieckData) -> dict:
    """G^T D C must equal diag(d_prime); both matrices must be unimodular;
    the two diagonals must share a Smith normal form.

    Whether d_prime is a permutation of d is reported but not asserted.
    """
    n = len(data.d)
    product = [
        [
            sum(data.g[v][i] * data.d[v] * data.c[v][j] for v in range(n))
            for j in range(n)
        ]
        for i in range(n)
    ]
    expected = [
        [data.d_prime[i] if i == j else 0 for j in range(n)] for i in range(n)
    ]
    det_g = _int_det(data.g)
    det_c = _int_det(data.c)
    snf_d = smith_diagonal(data.d)
    snf_dp = smith_diagonal(data.d_prime)
    report = {
        "gtdc_equals_dprime": product == expected,
        "det_g": det_g,
        "det_c": det_c,
        "unimodular": abs(det_g) == 1 and abs(det_c) == 1,
        "snf_d": snf_d,
        "snf_dprime": snf_dp,
        "snf_equal": snf_d == snf_dp,
        "d_multiset_equal": sorted(data.d) == sorted(data.d_prime),
    }
    report["ok"] = (
        report["gtdc_equals_dprime"]
        and report["unimodular"]
        and report["snf_equal"]
    )
    return report


def smith_diagonal(diag: Sequence[int]) -> Tuple[int, ...]:
    """Smith normal form diagonal of diag(values), nonnegative entries."""
    n = len(diag)
    m = sympy.zeros(n, n)
    for i, x in enumerate(diag):
        m[i, i] = int(x)
    s = smith_normal_form(m.as_immutable(), domain=sympy.ZZ)
    return tuple(abs(int(s[i, i])) for i in range(n))


def duality_report(pair: SupportPair) -> dict:
    return check_duality(grothendieck_data(pair))
