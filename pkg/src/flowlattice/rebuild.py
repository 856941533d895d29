"""Reconstruction of the co-loop-free minor from a Gram matrix, and the
isometry decisions for flow, cut, and mixed lattice pairs."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import FlowLatticeError
from .gram import Classification, Feasibility, GramMatrix, classify, is_g_feasible
from .intmat import IntegerMatrix, determinant
from .matroid import (
    IsomorphismResult,
    RegularMatroid,
    contract_coloops,
    delete_loops,
    dual,
    is_isomorphic,
)


def _first_unimodular_square(u: IntegerMatrix) -> tuple[int, ...]:
    """Lexicographically least row set carrying an invertible s-by-s block."""
    s = u.cols
    for combo in itertools.combinations(range(u.rows), s):
        if determinant(u.select_rows(combo)) != 0:
            return combo
    raise FlowLatticeError("certificate has deficient column rank")


def _integer_inverse_unit(z: IntegerMatrix) -> IntegerMatrix:
    from .matroid import _integer_inverse

    return _integer_inverse(z)


def to_g_positive_basis(a: GramMatrix, certificate: IntegerMatrix) -> tuple[IntegerMatrix, GramMatrix]:
    """Change of basis turning a TU certificate into one containing I_s.

    The inverse of any invertible s-by-s block is integral (unit
    determinant), so the transformed basis spans the same lattice and
    its Gram matrix gains strictly positive singleton values.
    """
    z_rows = _first_unimodular_square(certificate)
    f = _integer_inverse_unit(certificate.select_rows(z_rows))
    q = certificate * f
    gram_q = GramMatrix(q.transpose() * q)
    cls = classify(gram_q)
    if not cls.g_positive:
        raise FlowLatticeError("transformed basis failed the positivity gate")
    return q, gram_q


@dataclass(frozen=True)
class ReconstructionReport:
    gram: GramMatrix
    certificate: IntegerMatrix          # TU, columns Gram back to the input
    g_positive_basis: IntegerMatrix     # certificate times a unimodular block inverse
    standard_form: IntegerMatrix        # [I_r L], no zero rows in L
    matroid: RegularMatroid             # the co-loop-free minor
    zero_rows: int                      # co-loop rows inferred from the input: always 0 here


@dataclass(frozen=True)
class ReconstructionOutcome:
    feasible: bool
    report: ReconstructionReport | None = None
    feasibility: Feasibility | None = None

    def __bool__(self) -> bool:
        return self.feasible

    @property
    def reason(self) -> str | None:
        return None if self.feasibility is None else self.feasibility.reason


def reconstruct_matroid(a: GramMatrix, bound: int | None = None) -> ReconstructionOutcome:
    """Rebuild the co-loop-free minor whose flow lattice has Gram matrix a.

    Feasibility search, change to a basis containing an identity block,
    then reading the standard form off the stacked block shape.
    """
    feas = is_g_feasible(a, bound)
    if not feas:
        return ReconstructionOutcome(False, None, feas)
    u = feas.certificate
    q, _ = to_g_positive_basis(a, u)
    s = q.cols
    ident_rows = _identity_block_rows(q)
    other_rows = [i for i in range(q.rows) if i not in set(ident_rows)]
    k_block = q.select_rows(other_rows)
    l_block = -k_block
    r = len(other_rows)
    rep = IntegerMatrix.identity(r).hstack(l_block) if r else \
        IntegerMatrix((), empty_cols=s)
    ground = tuple(f"e{i + 1}" for i in range(r + s))
    matroid = RegularMatroid.from_rep(ground, rep, validate=True)
    if any(not any(row) for row in l_block.entries):
        raise FlowLatticeError("reconstructed block has a zero row")
    report = ReconstructionReport(
        gram=a,
        certificate=u,
        g_positive_basis=q,
        standard_form=rep,
        matroid=matroid,
        zero_rows=0,
    )
    return ReconstructionOutcome(True, report, feas)


def _identity_block_rows(q: IntegerMatrix) -> list[int]:
    """Row indices forming I_s in column order (first match per unit row)."""
    s = q.cols
    out = []
    used = set()
    for j in range(s):
        unit = tuple(1 if c == j else 0 for c in range(s))
        row = next(
            i for i in range(q.rows)
            if i not in used and q.entries[i] == unit
        )
        used.add(row)
        out.append(row)
    return out


@dataclass(frozen=True)
class IsometryDecision:
    isometric: bool
    witness: IsomorphismResult
    left_core: RegularMatroid
    right_core: RegularMatroid

    def __bool__(self) -> bool:
        return self.isometric


def flow_lattices_isometric(m: RegularMatroid, n: RegularMatroid,
                            bound: int | None = None) -> IsometryDecision:
    """Flow lattices are isometric iff the co-loop-free minors are isomorphic."""
    mc = contract_coloops(m)
    nc = contract_coloops(n)
    iso = is_isomorphic(mc, nc, bound)
    return IsometryDecision(bool(iso), iso, mc, nc)


def cut_lattices_isometric(m: RegularMatroid, n: RegularMatroid,
                           bound: int | None = None) -> IsometryDecision:
    """Cut lattices compare through duality: loops become co-loops."""
    return flow_lattices_isometric(dual(m), dual(n), bound)


def mixed_isometric(m: RegularMatroid, n: RegularMatroid,
                    bound: int | None = None) -> IsometryDecision:
    """Flow lattice of the first against the cut lattice of the second."""
    return flow_lattices_isometric(m, dual(n), bound)


__all__ = [
    "IsometryDecision",
    "ReconstructionOutcome",
    "ReconstructionReport",
    "cut_lattices_isometric",
    "delete_loops",
    "flow_lattices_isometric",
    "mixed_isometric",
    "reconstruct_matroid",
    "to_g_positive_basis",
]
