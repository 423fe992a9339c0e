"""Two-term simple-minded collections attached to exchange-quiver vertices.

A collection is a set of bricks split across two degrees: the degree-0
part is the semibrick of top components, the degree -1 part is the socle
co-semibrick of the dual pair.  Columns stay aligned with the pair's
summands and missing vertices so the Grothendieck matrices can reuse the
pairing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .errors import (
    ApproximationDichotomyError,
    MutationError,
    NotTauRigidError,
    SelfExtensionError,
    TaumutError,
)
from .linalg import Mat, _rref_rows, hstack, reduce_row, rref
from .modules import (
    IsoRegistry,
    Module,
    ModuleHom,
    _projective_hom_block,
    cokernel,
    decompose,
    direct_sum,
    ext1_basis,
    ext1_dim,
    kernel,
    quotient_by_rows,
)
from .tautilt import ExchangeQuiver, SupportPair


@dataclass(frozen=True)
class PairedColumn:
    """One Grothendieck column: where it came from and which brick labels it.

    kind is "summand" (index = position in the pair's summand tuple) or
    "support" (index = missing vertex); sign +1 marks degree 0, -1 marks
    degree -1.
    """

    kind: str
    index: int
    sign: int
    brick_id: int


class TwoTermSMC:
    """Bricks in degree 0 and degree -1, stored as registry ids."""

    __slots__ = ("registry", "degree0", "degree_minus1", "columns")

    def __init__(
        self,
        registry: IsoRegistry,
        degree0: Sequence[int],
        degree_minus1: Sequence[int],
        columns: Optional[Tuple[PairedColumn, ...]] = None,
    ):
        self.registry = registry
        self.degree0 = tuple(sorted(degree0))
        self.degree_minus1 = tuple(sorted(degree_minus1))
        self.columns = columns

    @property
    def key(self) -> tuple:
        return (self.degree0, self.degree_minus1)

    def modules0(self) -> List[Module]:
        return [self.registry.module(i) for i in self.degree0]

    def modules1(self) -> List[Module]:
        return [self.registry.module(i) for i in self.degree_minus1]

    def signature(self) -> tuple:
        """Dim vectors with shift flags, a stable comparison key for tests."""
        reg = self.registry
        return (
            tuple(sorted(reg.module(i).dims for i in self.degree0)),
            tuple(sorted(reg.module(i).dims for i in self.degree_minus1)),
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TwoTermSMC)
            and self.registry is other.registry
            and self.key == other.key
        )

    def __hash__(self) -> int:
        return hash((id(self.registry),) + self.key)

    def __repr__(self) -> str:
        reg = self.registry
        d0 = [reg.module(i).dims for i in self.degree0]
        d1 = [reg.module(i).dims for i in self.degree_minus1]
        return f"TwoTermSMC(degree0={d0}, shifted={d1})"


def _presentation_pairing_dim(reg: IsoRegistry, sid: int, brick_id: int) -> int:
    """dim coker(Hom(P0, N') -> Hom(P1, N')) for the summand's presentation."""
    pres = reg.presentation(sid)
    brick = reg.module(brick_id)
    total = sum(brick.dims[w] for w in pres.p1_vertices)
    if total == 0:
        return 0
    field = reg.algebra.field
    images = []
    for h in _projective_hom_block(pres, brick):
        images.append(list(pres.f.compose(h).flatten()))
    if not images:
        return total
    width = len(images[0])
    rank = rref(Mat(field, images, ncols=width, _raw=True)).rank
    return total - rank


def paired_columns(pair: SupportPair) -> List[PairedColumn]:
    """One signed brick per summand and per missing vertex.

    Mutable summands contribute their top component in degree 0; the rest
    pair with socle components of the dual pair in degree -1.  Both
    pairings are certified at runtime: positive columns must receive a
    map from their summand, negative ones must pair against the
    presentation, and no dual socle component may go unused.
    """
    reg = pair.registry
    ids = pair.summand_ids
    tops = reg.pair_top_ids(ids)

    dual_ids: List[int] = []
    dual_source: Dict[int, tuple] = {}
    for pos, sid in enumerate(ids):
        pv = reg.projective_vertex(sid)
        if pv is not None:
            continue
        tid = reg.tau_id(sid)
        if tid is None:
            raise NotTauRigidError("translate vanished on a non-projective summand")
        dual_ids.append(tid)
        dual_source[tid] = ("summand", pos)
    for v in pair.support_complement:
        iid = reg.injective_id(v)
        dual_ids.append(iid)
        dual_source[iid] = ("support", v)
    if len(set(dual_ids)) != len(dual_ids):
        raise NotTauRigidError("dual pair is not basic")
    sorted_dual = tuple(sorted(dual_ids))
    socles = reg.pair_socle_ids(sorted_dual)
    socle_of = {did: socles[k] for k, did in enumerate(sorted_dual)}

    columns: List[PairedColumn] = []
    used: set = set()
    for pos, sid in enumerate(ids):
        if tops[pos] is not None:
            if reg.hom_dim(sid, tops[pos]) == 0:
                raise TaumutError("degree-0 column does not pair with its summand")
            columns.append(PairedColumn("summand", pos, 1, tops[pos]))
            continue
        pv = reg.projective_vertex(sid)
        if pv is not None:
            raise TaumutError(
                "a projective summand turned out immutable; impossible for a "
                "basic pair"
            )
        tid = reg.tau_id(sid)
        soc = socle_of.get(tid)
        if soc is None:
            raise TaumutError("missing socle component for an immutable summand")
        if _presentation_pairing_dim(reg, sid, soc) == 0:
            raise TaumutError("degree -1 column does not pair with its summand")
        columns.append(PairedColumn("summand", pos, -1, soc))
        used.add(tid)
    for v in pair.support_complement:
        iid = reg.injective_id(v)
        soc = socle_of.get(iid)
        if soc is None:
            raise TaumutError("missing socle component for a missing vertex")
        if reg.module(soc).dims[v] == 0:
            raise TaumutError("degree -1 column does not pair with its vertex")
        columns.append(PairedColumn("support", v, -1, soc))
        used.add(iid)
    for did, soc in socle_of.items():
        if soc is not None and did not in used:
            raise TaumutError("a dual socle component was left unpaired")
    return columns


def smc_of_vertex(pair: SupportPair, check: bool = True) -> TwoTermSMC:
    """The two-term collection at a pair: tops in degree 0, dual socles
    shifted.  With check=True the axioms are verified before returning."""
    cols = tuple(paired_columns(pair))
    degree0 = [c.brick_id for c in cols if c.sign > 0]
    degree_minus1 = [c.brick_id for c in cols if c.sign < 0]
    out = TwoTermSMC(pair.registry, degree0, degree_minus1, cols)
    if check:
        report = check_smc_axioms(out)
        if not report.ok:
            raise TaumutError(
                "constructed collection failed its axioms: "
                + "; ".join(report.violations)
            )
    return out


@dataclass
class SmcReport:
    violations: List[str]

    @property
    def ok(self) -> bool:
        return not self.violations


def check_smc_axioms(x: TwoTermSMC) -> SmcReport:
    """Verify cardinality, brickhood, and all orthogonality axioms."""
    reg = x.registry
    n = reg.algebra.n_vertices
    violations: List[str] = []
    if len(x.degree0) + len(x.degree_minus1) != n:
        violations.append(
            f"cardinality {len(x.degree0)}+{len(x.degree_minus1)} != {n}"
        )
    for i in x.degree0 + x.degree_minus1:
        if not reg.is_brick_id(i):
            violations.append(f"element {reg.module(i).dims} is not a brick")
    for part in (x.degree0, x.degree_minus1):
        for a in part:
            for b in part:
                if a != b and reg.hom_dim(a, b) != 0:
                    violations.append(
                        f"Hom inside one degree: {reg.module(a).dims} -> "
                        f"{reg.module(b).dims}"
                    )
    for a in x.degree0:
        for b in x.degree_minus1:
            if reg.hom_dim(a, b) != 0:
                violations.append(
                    f"Hom across degrees: {reg.module(a).dims} -> "
                    f"{reg.module(b).dims}"
                )
            if ext1_dim(
                reg.module(a), reg.module(b), reg.presentation(a)
            ) != 0:
                violations.append(
                    f"Ext1 across degrees: {reg.module(a).dims} -> "
                    f"{reg.module(b).dims}"
                )
    return SmcReport(violations)


# -- mutation ------------------------------------------------------------------


def _division_closure_pick(
    field, candidates: Sequence[ModuleHom], post: Sequence[ModuleHom], base_rows: List[list]
) -> List[ModuleHom]:
    """Greedy basis of a Hom space over the division ring acting by
    post-composition; base_rows spans the coset to quotient away."""
    rows = [list(r) for r in base_rows]
    piv: tuple = ()
    if rows:
        _, rows, piv = _rref_rows(field, rows)
        rows = [r for r in rows if any(not field.is_zero(x) for x in r)]
    chosen: List[ModuleHom] = []
    for cand in candidates:
        flat = list(cand.flatten())
        resid = reduce_row(field, flat, rows, piv)
        if all(field.is_zero(x) for x in resid):
            continue
        chosen.append(cand)
        for u in post:
            rows.append(list(cand.compose(u).flatten()))
        _, rows, piv = _rref_rows(field, rows)
        rows = [r for r in rows if any(not field.is_zero(x) for x in r)]
    return chosen


def _universal_extension(pres, chosen: Sequence[ModuleHom], S0: Module) -> Module:
    """Pushout of Omega -> P0 along the stacked cocycles Omega -> S0^e."""
    A = S0.algebra
    field = A.field
    e = len(chosen)
    s0e, _ = direct_sum(A, [S0] * e)
    total, _ = direct_sum(A, [pres.p0, s0e])
    rows = []
    for v in range(A.n_vertices):
        left = pres.omega_incl.mats[v]
        right = hstack(
            field, [c.mats[v] for c in chosen], nrows=pres.omega.dims[v]
        ).neg()
        rows.append(hstack(field, [left, right], nrows=pres.omega.dims[v]))
    Y, _ = quotient_by_rows(total, rows)
    expected = pres.module.dim_total + e * S0.dim_total
    if Y.dim_total != expected:
        raise TaumutError("universal extension has the wrong dimension")
    return Y


def smc_left_mutate(x: TwoTermSMC, brick: Union[Module, int]) -> TwoTermSMC:
    """Left mutation of a collection at one of its degree-0 bricks.

    Requires the chosen brick to have no self-extensions; each other
    element is replaced by a universal extension, a cokernel, or a kernel
    depending on how it interacts with the chosen brick.
    """
    reg = x.registry
    field = reg.algebra.field
    if isinstance(brick, Module):
        parts = decompose(brick)
        if len(parts) != 1:
            raise MutationError("mutation brick must be indecomposable")
        s0 = reg.register(parts[0])
    else:
        s0 = brick
    if s0 not in x.degree0:
        raise MutationError("mutation brick is not in the degree-0 part")
    S0 = reg.module(s0)
    if ext1_dim(S0, S0, reg.presentation(s0)) != 0:
        raise SelfExtensionError(
            "mutation at a brick with self-extensions is not defined here"
        )
    end_s0 = list(reg.hom(s0, s0))

    new0: List[int] = []
    new1: List[int] = [s0]
    for sid in x.degree0:
        if sid == s0:
            continue
        S = reg.module(sid)
        pres = reg.presentation(sid)
        reps, _ = ext1_basis(S, S0, pres)
        if not reps:
            new0.append(sid)
            continue
        base_rows = [
            list(pres.omega_incl.compose(h).flatten())
            for h in _projective_hom_block(pres, S0)
        ]
        chosen = _division_closure_pick(field, reps, end_s0, base_rows)
        if len(chosen) * len(end_s0) != len(reps):
            raise TaumutError(
                "extension space dimension is not divisible by the brick's "
                "endomorphism ring"
            )
        Y = _universal_extension(pres, chosen, S0)
        parts = decompose(Y)
        if len(parts) != 1:
            raise TaumutError("universal extension split unexpectedly")
        new0.append(reg.register(parts[0]))
    for tid in x.degree_minus1:
        T = reg.module(tid)
        homs = list(reg.hom(tid, s0))
        if not homs:
            new1.append(tid)
            continue
        chosen = _division_closure_pick(field, homs, end_s0, [])
        if len(chosen) * len(end_s0) != len(homs):
            raise TaumutError(
                "hom space dimension is not divisible by the brick's "
                "endomorphism ring"
            )
        h = len(chosen)
        s0h, _ = direct_sum(reg.algebra, [S0] * h)
        mats = [
            hstack(field, [c.mats[v] for c in chosen], nrows=T.dims[v])
            for v in range(reg.algebra.n_vertices)
        ]
        f = ModuleHom(T, s0h, mats, _validated=True)
        ker, _ = kernel(f)
        injective = ker.is_zero
        surjective = all(
            rref(f.mats[v]).rank == s0h.dims[v]
            for v in range(reg.algebra.n_vertices)
        )
        if injective and not surjective:
            coker, _ = cokernel(f)
            parts = decompose(coker)
            if len(parts) != 1:
                raise TaumutError("cokernel of a universal map split")
            new0.append(reg.register(parts[0]))
        elif surjective and not injective:
            parts = decompose(ker)
            if len(parts) != 1:
                raise TaumutError("kernel of a universal map split")
            new1.append(reg.register(parts[0]))
        else:
            raise ApproximationDichotomyError(
                "universal map is neither injective nor surjective"
            )
    out = TwoTermSMC(reg, new0, new1)
    report = check_smc_axioms(out)
    if not report.ok:
        raise TaumutError(
            "mutated collection failed its axioms: "
            + "; ".join(report.violations)
        )
    return out


def check_label_coincidence(quiver: ExchangeQuiver) -> dict:
    """Mutating the collection at an arrow's label lands on the target's
    collection; arrows whose label has self-extensions are skipped."""
    reg = quiver.registry
    smcs: Dict[int, TwoTermSMC] = {}

    def smc_at(i: int) -> TwoTermSMC:
        if i not in smcs:
            smcs[i] = smc_of_vertex(quiver.pairs[i], check=False)
        return smcs[i]

    checked = 0
    skipped: List[tuple] = []
    failures: List[tuple] = []
    for s, t, lab in quiver.arrows:
        brick = reg.module(lab)
        if ext1_dim(brick, brick, reg.presentation(lab)) != 0:
            skipped.append((s, t, tuple(brick.dims)))
            continue
        got = smc_left_mutate(smc_at(s), lab)
        want = smc_at(t)
        if got.key != want.key:
            failures.append((s, t, tuple(brick.dims)))
        checked += 1
    return {
        "checked": checked,
        "skipped": skipped,
        "failures": failures,
        "ok": not failures,
    }
