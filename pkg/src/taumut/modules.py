"""Finite-dimensional right modules over a bound quiver algebra.

A module is a representation of the quiver: one exact vector space per
vertex and, for each arrow a: u -> w, a dims[u] x dims[w] matrix.  Vectors
are rows and act on the right, so a path acts by multiplying its arrow
matrices in path order.  Every construction here is exact and
deterministic; the same input always yields identical matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import sympy

from .algebra import Algebra
from .errors import (
    CharacteristicError,
    DimensionMismatchError,
    IndeterminateDecompositionError,
    SpecError,
)
from .linalg import (
    Mat,
    PrimeField,
    _rref_rows,
    block_diag,
    hstack,
    kernel_basis,
    left_kernel_rows,
    reduce_row,
    row_space,
    row_space_with_pivots,
    rref,
    solve,
    vstack,
)


class Module:
    """A right module presented as a quiver representation."""

    __slots__ = ("algebra", "dims", "mats")

    def __init__(
        self,
        algebra: Algebra,
        dims: Sequence[int],
        mats: Sequence[Mat],
        *,
        _validated: bool = False,
    ):
        self.algebra = algebra
        self.dims = tuple(int(d) for d in dims)
        self.mats = tuple(mats)
        if len(self.dims) != algebra.n_vertices:
            raise DimensionMismatchError("one dimension per vertex required")
        if len(self.mats) != len(algebra.quiver.arrows):
            raise DimensionMismatchError("one matrix per arrow required")
        vidx = algebra.quiver.vertex_index
        for ai, a in enumerate(algebra.quiver.arrows):
            m = self.mats[ai]
            du = self.dims[vidx[a.source]]
            dw = self.dims[vidx[a.target]]
            if (m.nrows, m.ncols) != (du, dw):
                raise DimensionMismatchError(
                    f"arrow {a.name}: expected {du}x{dw}, got {m.nrows}x{m.ncols}"
                )
            if m.field != algebra.field:
                raise DimensionMismatchError("module matrices over the wrong field")
        if not _validated:
            self._check_relations()

    def _check_relations(self) -> None:
        A = self.algebra
        vidx = A.quiver.vertex_index
        for combo in A.annihilator_combos:
            first_arrows = combo[0][1]
            src = vidx[A.quiver.arrows[first_arrows[0]].source]
            acc = None
            for coeff, arrows in combo:
                term = self.path_action(src, arrows).scale(coeff)
                acc = term if acc is None else acc.add(term)
            if acc is not None and not acc.is_zero():
                raise SpecError("matrices do not satisfy the algebra's relations")

    def path_action(self, source: int, arrows: Sequence[int]) -> Mat:
        m = Mat.identity(self.algebra.field, self.dims[source])
        for ai in arrows:
            m = m.mul(self.mats[ai])
        return m

    @property
    def dim_total(self) -> int:
        return sum(self.dims)

    @property
    def is_zero(self) -> bool:
        return self.dim_total == 0

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Module)
            and self.algebra is other.algebra
            and self.dims == other.dims
            and self.mats == other.mats
        )

    def __hash__(self) -> int:
        return hash((id(self.algebra), self.dims, self.mats))

    def __repr__(self) -> str:
        return f"Module(dims={self.dims})"


def zero_module(algebra: Algebra) -> Module:
    dims = [0] * algebra.n_vertices
    mats = [Mat.zeros(algebra.field, 0, 0) for _ in algebra.quiver.arrows]
    return Module(algebra, dims, mats, _validated=True)


def simple_module(algebra: Algebra, v: int) -> Module:
    dims = [1 if u == v else 0 for u in range(algebra.n_vertices)]
    vidx = algebra.quiver.vertex_index
    mats = []
    for a in algebra.quiver.arrows:
        du = dims[vidx[a.source]]
        dw = dims[vidx[a.target]]
        mats.append(Mat.zeros(algebra.field, du, dw))
    return Module(algebra, dims, mats, _validated=True)


def module_from_dict(algebra: Algebra, dims: Sequence[int], named: Dict[str, Sequence[Sequence]]) -> Module:
    """Build a module giving arrow matrices by arrow name (rows of rows)."""
    vidx = algebra.quiver.vertex_index
    field = algebra.field
    mats = []
    for a in algebra.quiver.arrows:
        du = dims[vidx[a.source]]
        dw = dims[vidx[a.target]]
        if a.name in named:
            mats.append(Mat(field, named[a.name], ncols=dw))
        else:
            mats.append(Mat.zeros(field, du, dw))
    return Module(algebra, dims, mats)


def direct_sum(algebra: Algebra, summands: Sequence[Module]) -> Tuple[Module, List[List[int]]]:
    """Direct sum plus per-summand row offsets at each vertex."""
    field = algebra.field
    n = algebra.n_vertices
    offsets: List[List[int]] = []
    cursor = [0] * n
    for s in summands:
        if s.algebra is not algebra:
            raise DimensionMismatchError("direct sum across algebras")
        offsets.append(list(cursor))
        cursor = [c + d for c, d in zip(cursor, s.dims)]
    dims = cursor
    mats = []
    for ai in range(len(algebra.quiver.arrows)):
        mats.append(block_diag(field, [s.mats[ai] for s in summands]))
    return Module(algebra, dims, mats, _validated=True), offsets


class ModuleHom:
    """A homomorphism f: M -> N, one matrix per vertex, rows act on left."""

    __slots__ = ("source", "target", "mats")

    def __init__(
        self,
        source: Module,
        target: Module,
        mats: Sequence[Mat],
        *,
        _validated: bool = False,
    ):
        self.source = source
        self.target = target
        self.mats = tuple(mats)
        if len(self.mats) != source.algebra.n_vertices:
            raise DimensionMismatchError("one matrix per vertex required")
        for v, m in enumerate(self.mats):
            if (m.nrows, m.ncols) != (source.dims[v], target.dims[v]):
                raise DimensionMismatchError(
                    f"vertex {v}: expected {source.dims[v]}x{target.dims[v]}, "
                    f"got {m.nrows}x{m.ncols}"
                )
        if not _validated:
            self._check_commutes()

    def _check_commutes(self) -> None:
        A = self.source.algebra
        vidx = A.quiver.vertex_index
        for ai, a in enumerate(A.quiver.arrows):
            u, w = vidx[a.source], vidx[a.target]
            left = self.source.mats[ai].mul(self.mats[w])
            right = self.mats[u].mul(self.target.mats[ai])
            if left != right:
                raise DimensionMismatchError(
                    f"map does not commute with arrow {a.name}"
                )

    def compose(self, other: "ModuleHom") -> "ModuleHom":
        """self followed by other (source of other = target of self)."""
        if other.source is not self.target and other.source != self.target:
            raise DimensionMismatchError("composition target/source mismatch")
        mats = [m.mul(o) for m, o in zip(self.mats, other.mats)]
        return ModuleHom(self.source, other.target, mats, _validated=True)

    def add(self, other: "ModuleHom") -> "ModuleHom":
        mats = [m.add(o) for m, o in zip(self.mats, other.mats)]
        return ModuleHom(self.source, self.target, mats, _validated=True)

    def scale(self, c) -> "ModuleHom":
        return ModuleHom(
            self.source, self.target, [m.scale(c) for m in self.mats], _validated=True
        )

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.mats)

    def flatten(self) -> tuple:
        out = []
        for m in self.mats:
            out.extend(m.flatten())
        return tuple(out)

    def __repr__(self) -> str:
        return f"ModuleHom({self.source.dims} -> {self.target.dims})"


def identity_hom(M: Module) -> ModuleHom:
    mats = [Mat.identity(M.algebra.field, d) for d in M.dims]
    return ModuleHom(M, M, mats, _validated=True)


def zero_hom(M: Module, N: Module) -> ModuleHom:
    mats = [
        Mat.zeros(M.algebra.field, M.dims[v], N.dims[v])
        for v in range(M.algebra.n_vertices)
    ]
    return ModuleHom(M, N, mats, _validated=True)


@dataclass(frozen=True)
class HomSpace:
    source: Module
    target: Module
    basis: Tuple[ModuleHom, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


def hom_basis(M: Module, N: Module) -> HomSpace:
    """A canonical basis of Hom(M, N) from the commutation equations."""
    if M.algebra is not N.algebra:
        raise DimensionMismatchError("hom across algebras")
    A = M.algebra
    field = A.field
    n = A.n_vertices
    offsets = []
    total = 0
    for v in range(n):
        offsets.append(total)
        total += M.dims[v] * N.dims[v]
    if total == 0:
        return HomSpace(M, N, ())
    vidx = A.quiver.vertex_index
    rows = []
    for ai, a in enumerate(A.quiver.arrows):
        u, w = vidx[a.source], vidx[a.target]
        Na, Ma = N.mats[ai], M.mats[ai]
        for i in range(M.dims[u]):
            for l in range(N.dims[w]):
                row = [field.zero()] * total
                for j in range(N.dims[u]):
                    row[offsets[u] + i * N.dims[u] + j] = Na[j, l]
                for k in range(M.dims[w]):
                    cur = row[offsets[w] + k * N.dims[w] + l]
                    row[offsets[w] + k * N.dims[w] + l] = field.sub(
                        cur, Ma[i, k]
                    )
                rows.append(row)
    system = Mat(field, rows, ncols=total, _raw=True)
    basis = []
    for vec in kernel_basis(system):
        flat = vec.flatten()
        mats = []
        for v in range(n):
            seg = flat[offsets[v] : offsets[v] + M.dims[v] * N.dims[v]]
            mats.append(
                Mat(
                    field,
                    [
                        seg[i * N.dims[v] : (i + 1) * N.dims[v]]
                        for i in range(M.dims[v])
                    ],
                    ncols=N.dims[v],
                    _raw=True,
                )
            )
        basis.append(ModuleHom(M, N, mats, _validated=True))
    return HomSpace(M, N, tuple(basis))


def hom_dim(M: Module, N: Module) -> int:
    return hom_basis(M, N).dim


# -- submodules, quotients, kernels ----------------------------------------


def coords_in_rows(rows: Mat, vectors: Mat) -> Mat:
    """Express each row of `vectors` over the row basis `rows`."""
    sol = solve(rows.transpose(), vectors.transpose())
    if sol is None:
        raise DimensionMismatchError("vectors outside the expected row space")
    return sol.transpose()


def submodule_from_rows(M: Module, rows_per_vertex: Sequence[Mat]) -> Tuple[Module, ModuleHom]:
    """The submodule spanned by given rows (must be arrow-stable)."""
    A = M.algebra
    vidx = A.quiver.vertex_index
    rows = [row_space(r) for r in rows_per_vertex]
    dims = [r.nrows for r in rows]
    mats = []
    for ai, a in enumerate(A.quiver.arrows):
        u, w = vidx[a.source], vidx[a.target]
        pushed = rows[u].mul(M.mats[ai])
        mats.append(coords_in_rows(rows[w], pushed))
    sub = Module(A, dims, mats, _validated=True)
    incl = ModuleHom(sub, M, rows, _validated=True)
    return sub, incl


def quotient_by_rows(M: Module, rows_per_vertex: Sequence[Mat]) -> Tuple[Module, ModuleHom]:
    """The quotient of M by the arrow-stable row span."""
    A = M.algebra
    field = A.field
    vidx = A.quiver.vertex_index
    reduced = []
    pivots = []
    free = []
    for v in range(A.n_vertices):
        rows, piv = row_space_with_pivots(rows_per_vertex[v])
        reduced.append(rows)
        pivots.append(piv)
        free.append([c for c in range(M.dims[v]) if c not in set(piv)])
    proj_mats = []
    for v in range(A.n_vertices):
        cols = free[v]
        mat = []
        for i in range(M.dims[v]):
            e = [field.zero()] * M.dims[v]
            e[i] = field.one()
            resid = reduce_row(field, e, reduced[v].rows, pivots[v])
            mat.append([resid[c] for c in cols])
        proj_mats.append(Mat(field, mat, ncols=len(cols), _raw=True))
    dims = [len(f) for f in free]
    arrow_mats = []
    for ai, a in enumerate(A.quiver.arrows):
        u, w = vidx[a.source], vidx[a.target]
        rows = []
        for c in free[u]:
            rows.append(M.mats[ai].row(c))
        lifted = Mat(field, rows, ncols=M.dims[w], _raw=True)
        arrow_mats.append(lifted.mul(proj_mats[w]))
    quo = Module(A, dims, arrow_mats, _validated=True)
    proj = ModuleHom(M, quo, proj_mats)
    return quo, proj


def kernel(h: ModuleHom) -> Tuple[Module, ModuleHom]:
    rows = [left_kernel_rows(m) for m in h.mats]
    return submodule_from_rows(h.source, rows)


def image(h: ModuleHom) -> Tuple[Module, ModuleHom]:
    rows = [row_space(m) for m in h.mats]
    return submodule_from_rows(h.target, rows)


def cokernel(h: ModuleHom) -> Tuple[Module, ModuleHom]:
    rows = [row_space(m) for m in h.mats]
    return quotient_by_rows(h.target, rows)


def radical_rows(M: Module) -> List[Mat]:
    """Row bases of rad M = sum of all arrow images, per vertex."""
    A = M.algebra
    field = A.field
    vidx = A.quiver.vertex_index
    per_vertex: List[List[Mat]] = [[] for _ in range(A.n_vertices)]
    for ai, a in enumerate(A.quiver.arrows):
        per_vertex[vidx[a.target]].append(M.mats[ai])
    return [
        row_space(vstack(field, chunk, ncols=M.dims[v]))
        for v, chunk in enumerate(per_vertex)
    ]


def top(M: Module) -> Tuple[Module, ModuleHom]:
    return quotient_by_rows(M, radical_rows(M))


# -- projectives, injectives, duality ---------------------------------------


def projective_module(algebra: Algebra, v: int) -> Module:
    """The indecomposable projective P_v with the path basis at each vertex."""
    field = algebra.field
    vidx = algebra.quiver.vertex_index
    blocks = [algebra.basis_paths(v, u) for u in range(algebra.n_vertices)]
    dims = [len(b) for b in blocks]
    pos = []
    for u in range(algebra.n_vertices):
        pos.append({k: i for i, (k, _) in enumerate(blocks[u])})
    mats = []
    for a in algebra.quiver.arrows:
        u, w = vidx[a.source], vidx[a.target]
        ai = algebra.quiver.arrow_index[a.name]
        rows = []
        for _, arrows in blocks[u]:
            out = [field.zero()] * dims[w]
            for k, c in algebra.path_class(v, arrows + (ai,)):
                out[pos[w][k]] = c
            rows.append(out)
        mats.append(Mat(field, rows, ncols=dims[w], _raw=True))
    return Module(algebra, dims, mats, _validated=True)


def injective_module(algebra: Algebra, v: int) -> Module:
    """The indecomposable injective I_v on the dual of the path basis.

    The space at vertex u is dual to the paths u -> v; an arrow acts by the
    transpose of left multiplication on those paths.
    """
    field = algebra.field
    vidx = algebra.quiver.vertex_index
    blocks = [algebra.basis_paths(u, v) for u in range(algebra.n_vertices)]
    dims = [len(b) for b in blocks]
    pos = []
    for u in range(algebra.n_vertices):
        pos.append({k: i for i, (k, _) in enumerate(blocks[u])})
    mats = []
    for a in algebra.quiver.arrows:
        u, w = vidx[a.source], vidx[a.target]
        ai = algebra.quiver.arrow_index[a.name]
        mat = [[field.zero()] * dims[w] for _ in range(dims[u])]
        for y_local, (_, y_arrows) in enumerate(blocks[w]):
            for k, c in algebra.path_class(u, (ai,) + y_arrows):
                mat[pos[u][k]][y_local] = c
        mats.append(Mat(field, mat, ncols=dims[w], _raw=True))
    return Module(algebra, dims, mats, _validated=True)


def dualize(M: Module) -> Module:
    """The linear dual as a module over the opposite algebra."""
    op = M.algebra.opposite()
    mats = [m.transpose() for m in M.mats]
    return Module(op, M.dims, mats, _validated=True)


def projective_sum(algebra: Algebra, vertices: Sequence[int]) -> Tuple[Module, List[List[int]]]:
    return direct_sum(algebra, [projective_module(algebra, v) for v in vertices])


def injective_sum(algebra: Algebra, vertices: Sequence[int]) -> Tuple[Module, List[List[int]]]:
    return direct_sum(algebra, [injective_module(algebra, v) for v in vertices])


# -- minimal presentations and the translate --------------------------------


@dataclass
class Presentation:
    """A minimal projective presentation P1 -> P0 -> M -> 0."""

    module: Module
    p0_vertices: Tuple[int, ...]
    p0: Module
    p0_offsets: List[List[int]]
    cover: ModuleHom
    omega: Module
    omega_incl: ModuleHom
    p1_vertices: Tuple[int, ...]
    p1: Module
    p1_offsets: List[List[int]]
    f: ModuleHom


def _top_generators(M: Module) -> List[Tuple[int, int]]:
    """(vertex, coordinate) pairs lifting a basis of M / rad M."""
    gens = []
    for v, rows in enumerate(radical_rows(M)):
        piv = set(rref(rows).pivot_cols)
        for c in range(M.dims[v]):
            if c not in piv:
                gens.append((v, c))
    return gens


def _projective_cover(M: Module) -> Tuple[Tuple[int, ...], Module, List[List[int]], ModuleHom]:
    A = M.algebra
    field = A.field
    gens = _top_generators(M)
    vertices = tuple(v for v, _ in gens)
    p0, offsets = projective_sum(A, vertices)
    n = A.n_vertices
    mats = []
    for u in range(n):
        rows = [[field.zero()] * M.dims[u] for _ in range(p0.dims[u])]
        for copy, (v, x) in enumerate(gens):
            block = A.basis_paths(v, u)
            for local, (_, arrows) in enumerate(block):
                act = M.path_action(v, arrows)
                rows[offsets[copy][u] + local] = list(act.row(x))
        mats.append(Mat(field, rows, ncols=M.dims[u], _raw=True))
    cover = ModuleHom(p0, M, mats)
    for v in range(n):
        if rref(cover.mats[v]).rank != M.dims[v]:
            raise DimensionMismatchError("projective cover failed to surject")
    return vertices, p0, offsets, cover


def minimal_projective_presentation(M: Module) -> Presentation:
    p0_vertices, p0, p0_off, cover = _projective_cover(M)
    omega, incl = kernel(cover)
    p1_vertices, p1, p1_off, cover1 = _projective_cover(omega)
    f = cover1.compose(incl)
    return Presentation(
        module=M,
        p0_vertices=p0_vertices,
        p0=p0,
        p0_offsets=p0_off,
        cover=cover,
        omega=omega,
        omega_incl=incl,
        p1_vertices=p1_vertices,
        p1=p1,
        p1_offsets=p1_off,
        f=f,
    )


def _empty_path_position(algebra: Algebra, v: int) -> int:
    for i, (_, arrows) in enumerate(algebra.basis_paths(v, v)):
        if arrows == ():
            return i
    raise SpecError("idempotent path missing from basis")


def nakayama_functor_map(pres: Presentation) -> Tuple[Module, Module, ModuleHom]:
    """Apply nu = D Hom(-, A) to the presentation map f: P1 -> P0."""
    A = pres.module.algebra
    field = A.field
    nu_p1, off1 = injective_sum(A, pres.p1_vertices)
    nu_p0, off0 = injective_sum(A, pres.p0_vertices)
    n = A.n_vertices

    # Entry c_ij of f over the algebra: the image of the i-th generator,
    # sliced along the j-th copy of P0.
    coefs: Dict[Tuple[int, int], List[Tuple[int, object]]] = {}
    for i, vi in enumerate(pres.p1_vertices):
        grow = pres.p1_offsets[i][vi] + _empty_path_position(A, vi)
        frow = pres.f.mats[vi].row(grow)
        for j, wj in enumerate(pres.p0_vertices):
            block = A.basis_paths(wj, vi)
            start = pres.p0_offsets[j][vi]
            entries = []
            for local, (k, _) in enumerate(block):
                c = frow[start + local]
                if not field.is_zero(c):
                    entries.append((k, c))
            if entries:
                coefs[(i, j)] = entries

    pos_maps: List[Dict[Tuple[int, int], Dict[int, int]]] = []
    mats = []
    for u in range(n):
        mat = [[field.zero()] * nu_p0.dims[u] for _ in range(nu_p1.dims[u])]
        for i, vi in enumerate(pres.p1_vertices):
            rows_block = A.basis_paths(u, vi)
            rpos = {k: z for z, (k, _) in enumerate(rows_block)}
            for j, wj in enumerate(pres.p0_vertices):
                entries = coefs.get((i, j))
                if not entries:
                    continue
                cols_block = A.basis_paths(u, wj)
                for y_local, (y_k, _) in enumerate(cols_block):
                    for b, cb in entries:
                        for k, c in A.mult_basis(y_k, b):
                            z = rpos[k]
                            cur = mat[off1[i][u] + z][off0[j][u] + y_local]
                            mat[off1[i][u] + z][off0[j][u] + y_local] = field.add(
                                cur, field.mul(cb, c)
                            )
        mats.append(Mat(field, mat, ncols=nu_p0.dims[u], _raw=True))
    return nu_p1, nu_p0, ModuleHom(nu_p1, nu_p0, mats)


def ar_translate(M: Module) -> Module:
    """The Auslander-Reiten translate: kernel of nu applied to a minimal
    presentation.  Projective summands contribute nothing."""
    if M.is_zero:
        return zero_module(M.algebra)
    pres = minimal_projective_presentation(M)
    if pres.p1.is_zero:
        return zero_module(M.algebra)
    _, _, nu_f = nakayama_functor_map(pres)
    ker, _ = kernel(nu_f)
    return ker


def ar_translate_inverse(M: Module) -> Module:
    if M.is_zero:
        return zero_module(M.algebra)
    t = ar_translate(dualize(M))
    if t.is_zero:
        return zero_module(M.algebra)
    return dualize(t)


# -- extensions --------------------------------------------------------------


def _projective_hom_block(pres: Presentation, N: Module) -> List[ModuleHom]:
    """The canonical basis of Hom(P0, N) written out explicitly."""
    A = pres.module.algebra
    field = A.field
    n = A.n_vertices
    out = []
    for j, wj in enumerate(pres.p0_vertices):
        for x in range(N.dims[wj]):
            mats = []
            for u in range(n):
                rows = [[field.zero()] * N.dims[u] for _ in range(pres.p0.dims[u])]
                block = A.basis_paths(wj, u)
                for local, (_, arrows) in enumerate(block):
                    act = N.path_action(wj, arrows)
                    rows[pres.p0_offsets[j][u] + local] = list(act.row(x))
                mats.append(Mat(field, rows, ncols=N.dims[u], _raw=True))
            out.append(ModuleHom(pres.p0, N, mats))
    return out


def ext1_dim(M: Module, N: Module, pres: Optional[Presentation] = None) -> int:
    """dim Ext^1(M, N) from a minimal presentation of M."""
    if M.is_zero or N.is_zero:
        return 0
    if pres is None:
        pres = minimal_projective_presentation(M)
    h_omega = hom_dim(pres.omega, N)
    h_p0 = sum(N.dims[w] for w in pres.p0_vertices)
    h_m = hom_dim(M, N)
    return h_omega - h_p0 + h_m


def ext1_basis(M: Module, N: Module, pres: Optional[Presentation] = None) -> Tuple[List[ModuleHom], Presentation]:
    """Cocycle representatives Omega M -> N spanning Ext^1(M, N)."""
    if pres is None:
        pres = minimal_projective_presentation(M)
    field = M.algebra.field
    restricted = [
        pres.omega_incl.compose(h) for h in _projective_hom_block(pres, N)
    ]
    flats = [list(h.flatten()) for h in restricted]
    omega_basis = hom_basis(pres.omega, N).basis
    width = len(omega_basis[0].flatten()) if omega_basis else 0
    if width == 0:
        return [], pres
    if flats:
        _, rows, piv = _rref_rows(field, flats)
        rows = [r for r in rows if any(not field.is_zero(x) for x in r)]
    else:
        rows, piv = [], ()
    reps = []
    for h in omega_basis:
        resid = reduce_row(field, list(h.flatten()), rows, piv)
        if any(not field.is_zero(x) for x in resid):
            reps.append(h)
            rows = rows + [resid]
            _, rows, piv = _rref_rows(field, rows)
            rows = [r for r in rows if any(not field.is_zero(x) for x in r)]
    return reps, pres


# -- rigidity and torsion membership -----------------------------------------


def _as_single_module(M: Union[Module, Sequence[Module]], algebra: Optional[Algebra] = None) -> Module:
    if isinstance(M, Module):
        return M
    mods = list(M)
    if not mods:
        if algebra is None:
            raise DimensionMismatchError("empty summand list needs an algebra")
        return zero_module(algebra)
    return direct_sum(mods[0].algebra, mods)[0]


def is_tau_rigid_pair(
    M: Union[Module, Sequence[Module]],
    support_complement: Sequence[int],
    algebra: Optional[Algebra] = None,
) -> bool:
    """Hom(M, tau M) = 0 and M vanishes at every listed vertex."""
    mod = _as_single_module(M, algebra)
    for v in support_complement:
        if mod.dims[v] != 0:
            return False
    t = ar_translate(mod)
    if t.is_zero:
        return True
    return hom_dim(mod, t) == 0


def is_tau_inverse_rigid(M: Module) -> bool:
    t = ar_translate_inverse(M)
    if t.is_zero:
        return True
    return hom_dim(t, M) == 0


def trace_rows(X: Module, generators: Union[Module, Sequence[Module]]) -> List[Mat]:
    """Row bases of the trace of add(generators) in X, per vertex."""
    gens = [generators] if isinstance(generators, Module) else list(generators)
    A = X.algebra
    field = A.field
    per_vertex: List[List[Mat]] = [[] for _ in range(A.n_vertices)]
    for U in gens:
        for h in hom_basis(U, X).basis:
            for v in range(A.n_vertices):
                per_vertex[v].append(h.mats[v])
    return [
        row_space(vstack(field, chunk, ncols=X.dims[v]))
        for v, chunk in enumerate(per_vertex)
    ]


def in_fac(X: Module, generators: Union[Module, Sequence[Module]]) -> bool:
    """Is X generated by add(generators), i.e. a quotient of a finite sum?"""
    rows = trace_rows(X, generators)
    return all(rows[v].nrows == X.dims[v] for v in range(X.algebra.n_vertices))


def in_sub(X: Module, cogenerators: Union[Module, Sequence[Module]]) -> bool:
    """Does X embed into a finite sum from add(cogenerators)?"""
    gens = [cogenerators] if isinstance(cogenerators, Module) else list(cogenerators)
    A = X.algebra
    field = A.field
    for v in range(A.n_vertices):
        if X.dims[v] == 0:
            continue
        mats = []
        for U in gens:
            for h in hom_basis(X, U).basis:
                mats.append(h.mats[v])
        joint = hstack(field, mats, nrows=X.dims[v])
        if left_kernel_rows(joint).nrows != 0:
            return False
    return True


# -- endomorphism rings: radical, bricks, decomposition ----------------------


@dataclass
class EndData:
    basis: Tuple[ModuleHom, ...]
    dim: int
    struct: Dict[Tuple[int, int], tuple]
    identity_coeffs: tuple
    rad_vectors: List[tuple]
    rad_homs: List[ModuleHom]


def _hom_coords_matrix(field, homs: Sequence[ModuleHom]) -> Mat:
    return Mat(
        field,
        [list(h.flatten()) for h in homs],
        ncols=len(homs[0].flatten()) if homs else 0,
        _raw=True,
    )


def end_data(M: Module) -> EndData:
    """Structure constants and radical of End(M) via the trace form.

    Requires characteristic 0 or p > dim End(M); smaller primes raise
    CharacteristicError rather than risk a wrong radical.
    """
    E = hom_basis(M, M).basis
    d = len(E)
    field = M.algebra.field
    if d == 0:
        return EndData((), 0, {}, (), [], [])
    if isinstance(field, PrimeField) and field.p <= d:
        raise CharacteristicError(
            f"endomorphism radical over F_{field.p} needs p > dim End = {d}"
        )
    B = _hom_coords_matrix(field, E)
    Bt = B.transpose()
    prods = []
    order = []
    for i in range(d):
        for j in range(d):
            order.append((i, j))
            prods.append(list(E[i].compose(E[j]).flatten()))
    W = Mat(field, prods, ncols=B.ncols, _raw=True).transpose()
    sol = solve(Bt, W)
    if sol is None:
        raise DimensionMismatchError("endomorphism product escaped the basis")
    struct: Dict[Tuple[int, int], tuple] = {}
    for col, (i, j) in enumerate(order):
        struct[(i, j)] = tuple(sol[r, col] for r in range(d))
    ident = identity_hom(M)
    id_sol = solve(Bt, Mat(field, [list(ident.flatten())], ncols=B.ncols, _raw=True).transpose())
    if id_sol is None:
        raise DimensionMismatchError("identity escaped the endomorphism basis")
    identity_coeffs = tuple(id_sol[r, 0] for r in range(d))
    # trace of left multiplication by each basis element
    traces = []
    for l in range(d):
        t = field.zero()
        for j in range(d):
            t = field.add(t, struct[(l, j)][j])
        traces.append(t)
    gram_rows = []
    for i in range(d):
        row = []
        for j in range(d):
            s = field.zero()
            for l, c in enumerate(struct[(i, j)]):
                if not field.is_zero(c):
                    s = field.add(s, field.mul(c, traces[l]))
            row.append(s)
        gram_rows.append(row)
    gram = Mat(field, gram_rows, ncols=d, _raw=True)
    rad_vectors = [tuple(v.flatten()) for v in kernel_basis(gram)]
    rad_homs = []
    for vec in rad_vectors:
        h = None
        for c, b in zip(vec, E):
            if field.is_zero(c):
                continue
            term = b.scale(c)
            h = term if h is None else h.add(term)
        rad_homs.append(h if h is not None else zero_hom(M, M))
    return EndData(tuple(E), d, struct, identity_coeffs, rad_vectors, rad_homs)


def end_radical(M: Module) -> List[ModuleHom]:
    """A basis of the Jacobson radical of End(M)."""
    return end_data(M).rad_homs


def _hom_power_minpoly(h: ModuleHom) -> list:
    """Minimal polynomial coefficients (ascending, monic) of an endo."""
    field = h.source.algebra.field
    cur = identity_hom(h.source)
    flats = [list(cur.flatten())]
    width = len(flats[0])
    while True:
        cur = cur.compose(h)
        vec = list(cur.flatten())
        stacked = Mat(field, flats, ncols=width, _raw=True).transpose()
        rhs = Mat(field, [vec], ncols=width, _raw=True).transpose()
        sol = solve(stacked, rhs)
        if sol is not None:
            k = len(flats)
            coeffs = [field.neg(sol[i, 0]) for i in range(k)]
            coeffs.append(field.one())
            return coeffs
        flats.append(vec)


def _factor_poly(field, coeffs: Sequence) -> List[Tuple[list, int]]:
    """Factor a monic polynomial into irreducibles over the field."""
    x = sympy.Symbol("x")
    if isinstance(field, PrimeField):
        poly = sympy.Poly(list(reversed([int(c) for c in coeffs])), x, modulus=field.p, symmetric=False)
    else:
        poly = sympy.Poly(
            list(reversed([sympy.Rational(c.numerator, c.denominator) for c in coeffs])),
            x,
            domain=sympy.QQ,
        )
    _, factors = poly.factor_list()
    out = []
    for fac, mult in factors:
        cs = list(reversed(fac.all_coeffs()))
        if isinstance(field, PrimeField):
            conv = [field.coerce(int(c)) for c in cs]
        else:
            conv = [
                field.coerce(Fraction(int(c.p), int(c.q)))
                for c in (sympy.Rational(x) for x in cs)
            ]
        lead = conv[-1]
        if not field.is_zero(field.sub(lead, field.one())):
            inv = field.inv(lead)
            conv = [field.mul(inv, c) for c in conv]
        out.append((conv, int(mult)))
    return out


def _poly_of_hom(coeffs: Sequence, h: ModuleHom) -> ModuleHom:
    """Evaluate an ascending-coefficient polynomial at an endomorphism."""
    field = h.source.algebra.field
    acc = zero_hom(h.source, h.source)
    ident = identity_hom(h.source)
    for c in reversed(list(coeffs)):
        acc = acc.compose(h)
        if not field.is_zero(c):
            acc = acc.add(ident.scale(c))
    return acc


def _probe_elements(E: Sequence[ModuleHom]) -> List[ModuleHom]:
    probes = list(E)
    d = len(E)
    for i in range(d):
        for j in range(i + 1, d):
            probes.append(E[i].add(E[j]))
    for i in range(d):
        for j in range(d):
            if i != j:
                probes.append(E[i].compose(E[j]))
    return probes


def is_brick(M: Module) -> bool:
    """Is End(M) a division algebra?

    Raises IndeterminateDecompositionError if the probe strategy cannot
    certify either answer; it never guesses.
    """
    E = hom_basis(M, M).basis
    if len(E) == 0:
        return False
    if len(E) == 1:
        return True
    data = end_data(M)
    if data.rad_vectors:
        return False
    field = M.algebra.field
    saw_full_irreducible = False
    for probe in _probe_elements(E):
        mp = _hom_power_minpoly(probe)
        factors = _factor_poly(field, mp)
        if len(factors) > 1 or factors[0][1] > 1:
            return False
        if len(mp) - 1 == len(E):
            saw_full_irreducible = True
    if saw_full_irreducible:
        return True
    raise IndeterminateDecompositionError(
        "semisimple endomorphism ring defied the probe strategy; "
        "cannot certify whether it is a division algebra"
    )


def _vector_in_span(field, vec, rows, piv) -> bool:
    resid = reduce_row(field, vec, rows, piv)
    return all(field.is_zero(x) for x in resid)


def _struct_mul(field, struct, d, a: Sequence, b: Sequence) -> list:
    out = [field.zero()] * d
    for i, ca in enumerate(a):
        if field.is_zero(ca):
            continue
        for j, cb in enumerate(b):
            if field.is_zero(cb):
                continue
            c = field.mul(ca, cb)
            for k, s in enumerate(struct[(i, j)]):
                if not field.is_zero(s):
                    out[k] = field.add(out[k], field.mul(c, s))
    return out


def _certify_local_via_field_quotient(M: Module, data: EndData) -> bool:
    """True if End(M)/rad is certified to be a (commutative) field."""
    field = M.algebra.field
    d = data.dim
    if not data.rad_vectors:
        rad_rows, rad_piv = [], ()
    else:
        _, rows, rad_piv = _rref_rows(field, [list(v) for v in data.rad_vectors])
        rad_rows = [r for r in rows if any(not field.is_zero(x) for x in r)]
    q = d - len(rad_rows)
    if q == 1:
        return True
    unit_probes = [tuple(field.one() if k == i else field.zero() for k in range(d)) for i in range(d)]
    pair_probes = []
    for i in range(d):
        for j in range(i + 1, d):
            pair_probes.append(
                tuple(
                    field.add(a, b)
                    for a, b in zip(unit_probes[i], unit_probes[j])
                )
            )
    for probe in unit_probes + pair_probes:
        reduced_probe = reduce_row(field, list(probe), rad_rows, rad_piv)
        if all(field.is_zero(x) for x in reduced_probe):
            continue
        flats = [reduce_row(field, list(data.identity_coeffs), rad_rows, rad_piv)]
        cur = flats[0]
        deg = None
        while True:
            cur = reduce_row(
                field,
                _struct_mul(field, data.struct, d, cur, reduced_probe),
                rad_rows,
                rad_piv,
            )
            stacked = Mat(field, flats, ncols=d, _raw=True).transpose()
            rhs = Mat(field, [cur], ncols=d, _raw=True).transpose()
            sol = solve(stacked, rhs)
            if sol is not None:
                k = len(flats)
                coeffs = [field.neg(sol[i, 0]) for i in range(k)] + [field.one()]
                deg = k
                break
            flats.append(cur)
        if deg == q:
            factors = _factor_poly(field, coeffs)
            if len(factors) == 1 and factors[0][1] == 1:
                return True
    return False


def decompose(M: Module) -> List[Module]:
    """Split M into indecomposable summands, or raise if uncertifiable."""
    if M.is_zero:
        return []
    out: List[Module] = []
    work = [M]
    while work:
        N = work.pop()
        E = hom_basis(N, N).basis
        if len(E) == 1:
            out.append(N)
            continue
        data = end_data(N)
        if data.dim - len(data.rad_vectors) == 1:
            out.append(N)
            continue
        split = _try_split(N, E)
        if split is not None:
            work.extend(split)
            continue
        if _certify_local_via_field_quotient(N, data):
            out.append(N)
            continue
        raise IndeterminateDecompositionError(
            f"cannot certify a decomposition of a module with dims {N.dims}"
        )
    return out


def _try_split(N: Module, E: Sequence[ModuleHom]) -> Optional[List[Module]]:
    field = N.algebra.field
    for probe in _probe_elements(E):
        mp = _hom_power_minpoly(probe)
        factors = _factor_poly(field, mp)
        if len(factors) < 2:
            continue
        g_coeffs, g_mult = factors[0]
        g = list(g_coeffs)
        for _ in range(g_mult - 1):
            g = _poly_mul(field, g, g_coeffs)
        h = [field.one()]
        for fc, fm in factors[1:]:
            for _ in range(fm):
                h = _poly_mul(field, h, fc)
        sub1, _ = kernel(_poly_of_hom(g, probe))
        sub2, _ = kernel(_poly_of_hom(h, probe))
        if sub1.dim_total == 0 or sub2.dim_total == 0:
            continue
        if sub1.dim_total + sub2.dim_total != N.dim_total:
            raise DimensionMismatchError("fitting split lost dimensions")
        return [sub1, sub2]
    return None


def _poly_mul(field, a: Sequence, b: Sequence) -> list:
    out = [field.zero()] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if field.is_zero(ca):
            continue
        for j, cb in enumerate(b):
            out[i + j] = field.add(out[i + j], field.mul(ca, cb))
    return out


def _indec_iso(M: Module, N: Module, n_rad_homs: Optional[List[ModuleHom]] = None) -> bool:
    """Isomorphism test for two indecomposable modules."""
    if M.dims != N.dims:
        return False
    field = M.algebra.field
    fw = hom_basis(M, N).basis
    if not fw:
        return False
    bw = hom_basis(N, M).basis
    if not bw:
        return False
    if n_rad_homs is None:
        end_n = hom_basis(N, N).basis
        n_rad_homs = [] if len(end_n) == 1 else end_data(N).rad_homs
    width = sum(d * d for d in N.dims)
    rad_flat = [list(h.flatten()) for h in n_rad_homs]
    if rad_flat:
        base_rank = rref(Mat(field, rad_flat, ncols=width, _raw=True)).rank
    else:
        base_rank = 0
    rows = list(rad_flat)
    for g in bw:
        for f in fw:
            rows.append(list(g.compose(f).flatten()))
    total_rank = rref(Mat(field, rows, ncols=width, _raw=True)).rank
    return total_rank > base_rank


def is_isomorphic(M: Module, N: Module) -> bool:
    """Do M and N agree as (possibly decomposable) modules?"""
    if M.algebra is not N.algebra:
        return False
    if M.dims != N.dims:
        return False
    if M.dim_total == 0:
        return True
    parts_m = decompose(M)
    parts_n = decompose(N)
    if len(parts_m) != len(parts_n):
        return False
    remaining = list(parts_n)
    for a in parts_m:
        hit = None
        for idx, b in enumerate(remaining):
            if _indec_iso(a, b):
                hit = idx
                break
        if hit is None:
            return False
        remaining.pop(hit)
    return True


# -- semibrick layers of a summand list --------------------------------------


def _grid_top_rows(
    summands: Sequence[Module],
    hom_fn: Callable[[int, int], Sequence[ModuleHom]],
    rad_fn: Callable[[int], Sequence[ModuleHom]],
    i: int,
) -> List[Mat]:
    A = summands[i].algebra
    field = A.field
    per_vertex: List[List[Mat]] = [[] for _ in range(A.n_vertices)]
    for j in range(len(summands)):
        if j == i:
            continue
        for h in hom_fn(j, i):
            for v in range(A.n_vertices):
                per_vertex[v].append(h.mats[v])
    for h in rad_fn(i):
        for v in range(A.n_vertices):
            per_vertex[v].append(h.mats[v])
    return [
        row_space(vstack(field, chunk, ncols=summands[i].dims[v]))
        for v, chunk in enumerate(per_vertex)
    ]


def top_components(
    summands: Sequence[Module],
    hom_fn: Optional[Callable[[int, int], Sequence[ModuleHom]]] = None,
    rad_fn: Optional[Callable[[int], Sequence[ModuleHom]]] = None,
) -> List[Module]:
    """The i-th entry is M_i modulo the trace of radical maps into it."""
    if hom_fn is None:
        hom_fn = lambda j, i: hom_basis(summands[j], summands[i]).basis
    if rad_fn is None:
        cache: Dict[int, List[ModuleHom]] = {}

        def rad_fn(i: int) -> List[ModuleHom]:
            if i not in cache:
                E = hom_basis(summands[i], summands[i]).basis
                cache[i] = [] if len(E) <= 1 else end_data(summands[i]).rad_homs
            return cache[i]

    out = []
    for i in range(len(summands)):
        rows = _grid_top_rows(summands, hom_fn, rad_fn, i)
        out.append(quotient_by_rows(summands[i], rows)[0])
    return out


def socle_components(
    summands: Sequence[Module],
    hom_fn: Optional[Callable[[int, int], Sequence[ModuleHom]]] = None,
    rad_fn: Optional[Callable[[int], Sequence[ModuleHom]]] = None,
) -> List[Module]:
    """The i-th entry is the common kernel of radical maps out of M_i."""
    if hom_fn is None:
        hom_fn = lambda i, j: hom_basis(summands[i], summands[j]).basis
    if rad_fn is None:
        cache: Dict[int, List[ModuleHom]] = {}

        def rad_fn(i: int) -> List[ModuleHom]:
            if i not in cache:
                E = hom_basis(summands[i], summands[i]).basis
                cache[i] = [] if len(E) <= 1 else end_data(summands[i]).rad_homs
            return cache[i]

    out = []
    for i, Mi in enumerate(summands):
        A = Mi.algebra
        field = A.field
        homs: List[ModuleHom] = []
        for j in range(len(summands)):
            if j == i:
                continue
            homs.extend(hom_fn(i, j))
        homs.extend(rad_fn(i))
        rows = []
        for v in range(A.n_vertices):
            mats = [h.mats[v] for h in homs]
            joint = hstack(field, mats, nrows=Mi.dims[v])
            rows.append(left_kernel_rows(joint))
        out.append(submodule_from_rows(Mi, rows)[0])
    return out


def semibrick_top(summands: Sequence[Module]) -> List[Module]:
    return [m for m in top_components(summands) if not m.is_zero]


def semibrick_socle(summands: Sequence[Module]) -> List[Module]:
    return [m for m in socle_components(summands) if not m.is_zero]


def is_semibrick(modules: Sequence[Module]) -> bool:
    """All bricks, pairwise Hom-orthogonal in both directions."""
    for m in modules:
        if not is_brick(m):
            return False
    for i, a in enumerate(modules):
        for j, b in enumerate(modules):
            if i != j and hom_dim(a, b) != 0:
                return False
    return True


# -- iso-class registry -------------------------------------------------------


class IsoRegistry:
    """Canonical ids for indecomposables plus caches keyed by those ids.

    All exploration-scale computations go through a registry so that Hom
    spaces, translates, presentations, and brick data are computed once
    per isomorphism class.
    """

    def __init__(self, algebra: Algebra):
        self.algebra = algebra
        self._mods: List[Module] = []
        self._by_dims: Dict[tuple, List[int]] = {}
        self._hom: Dict[Tuple[int, int], Tuple[ModuleHom, ...]] = {}
        self._tau: Dict[int, Optional[int]] = {}
        self._pres: Dict[int, Presentation] = {}
        self._rad: Dict[int, List[ModuleHom]] = {}
        self._brick: Dict[int, bool] = {}
        self._end_dim: Dict[int, int] = {}
        self._pair_top: Dict[tuple, tuple] = {}
        self._pair_socle: Dict[tuple, tuple] = {}
        self.projective_ids: List[int] = []
        self._projective_vertex: Dict[int, int] = {}
        self._injective_ids: Dict[int, int] = {}
        for v in range(algebra.n_vertices):
            pid = self.register(projective_module(algebra, v))
            self.projective_ids.append(pid)
            self._projective_vertex[pid] = v

    def module(self, i: int) -> Module:
        return self._mods[i]

    def count(self) -> int:
        return len(self._mods)

    def rad_end(self, i: int) -> List[ModuleHom]:
        if i not in self._rad:
            homs = self.hom(i, i)
            if len(homs) <= 1:
                self._rad[i] = []
            else:
                self._rad[i] = end_data(self._mods[i]).rad_homs
        return self._rad[i]

    def register(self, M: Module) -> int:
        """Identify an indecomposable module up to isomorphism."""
        if M.is_zero:
            raise DimensionMismatchError("cannot register the zero module")
        bucket = self._by_dims.setdefault(M.dims, [])
        for i in bucket:
            if _indec_iso(M, self._mods[i], self.rad_end(i)):
                return i
        self._mods.append(M)
        i = len(self._mods) - 1
        bucket.append(i)
        return i

    def register_all(self, M: Module) -> List[int]:
        return sorted(self.register(part) for part in decompose(M))

    def hom(self, i: int, j: int) -> Tuple[ModuleHom, ...]:
        key = (i, j)
        if key not in self._hom:
            self._hom[key] = hom_basis(self._mods[i], self._mods[j]).basis
        return self._hom[key]

    def hom_dim(self, i: int, j: int) -> int:
        return len(self.hom(i, j))

    def end_dim(self, i: int) -> int:
        if i not in self._end_dim:
            self._end_dim[i] = len(self.hom(i, i))
        return self._end_dim[i]

    def presentation(self, i: int) -> Presentation:
        if i not in self._pres:
            self._pres[i] = minimal_projective_presentation(self._mods[i])
        return self._pres[i]

    def tau_id(self, i: int) -> Optional[int]:
        """Registry id of the translate, or None when it vanishes."""
        if i not in self._tau:
            pres = self.presentation(i)
            if pres.p1.is_zero:
                self._tau[i] = None
            else:
                _, _, nu_f = nakayama_functor_map(pres)
                t, _ = kernel(nu_f)
                parts = decompose(t)
                if len(parts) != 1:
                    raise IndeterminateDecompositionError(
                        "translate of an indecomposable split unexpectedly"
                    )
                self._tau[i] = self.register(parts[0])
        return self._tau[i]

    def is_brick_id(self, i: int) -> bool:
        if i not in self._brick:
            self._brick[i] = is_brick(self._mods[i])
        return self._brick[i]

    def projective_vertex(self, i: int) -> Optional[int]:
        return self._projective_vertex.get(i)

    def injective_id(self, v: int) -> int:
        if v not in self._injective_ids:
            self._injective_ids[v] = self.register(injective_module(self.algebra, v))
        return self._injective_ids[v]

    def pair_top_ids(self, ids: Tuple[int, ...]) -> tuple:
        """Top components of a summand tuple; None marks a vanishing one."""
        if ids not in self._pair_top:
            mods = [self._mods[i] for i in ids]
            comps = top_components(
                mods,
                hom_fn=lambda j, i: self.hom(ids[j], ids[i]),
                rad_fn=lambda i: self.rad_end(ids[i]),
            )
            out = []
            for comp in comps:
                out.append(None if comp.is_zero else self.register_component(comp))
            self._pair_top[ids] = tuple(out)
        return self._pair_top[ids]

    def pair_socle_ids(self, ids: Tuple[int, ...]) -> tuple:
        if ids not in self._pair_socle:
            mods = [self._mods[i] for i in ids]
            comps = socle_components(
                mods,
                hom_fn=lambda i, j: self.hom(ids[i], ids[j]),
                rad_fn=lambda i: self.rad_end(ids[i]),
            )
            out = []
            for comp in comps:
                out.append(None if comp.is_zero else self.register_component(comp))
            self._pair_socle[ids] = tuple(out)
        return self._pair_socle[ids]

    def register_component(self, comp: Module) -> int:
        parts = decompose(comp)
        if len(parts) != 1:
            raise IndeterminateDecompositionError(
                "semibrick layer component was not indecomposable"
            )
        return self.register(parts[0])
