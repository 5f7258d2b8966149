"""Affine spaces over prime fields, presented as heaps with a scalar action.

An affine structure is a heap of size p^d together with dense tables
lam[alpha][a][b] for the ternary scalar action.  The tables stay dense even
when built from a vector-space action so that hand-edited or adversarial
structures are first-class inputs for the validators.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .groups import DTYPE, AbelianGroup, as_table, validate_group_table
from .heaps import FiniteHeap, heap_from_group, heap_word, validate_heap_hom
from .reports import StructureError, ViolationReport, add_mismatches

MAX_PRIME = 13
_PRIMES = (2, 3, 5, 7, 11, 13)


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if self.p not in _PRIMES:
            raise StructureError(f"field order must be a prime <= {MAX_PRIME}")


class AffineStructure:
    def __init__(self, heap: FiniteHeap, field: PrimeField, lam):
        self.heap = heap
        self.field = field
        self.lam = as_table(np.asarray(lam), (field.p, heap.n, heap.n), "scalar action")
        self.dimension = _power_dimension(heap.n, field.p)

    @classmethod
    def from_vector_space(cls, p: int, d: int) -> "AffineStructure":
        """The affine space of (F_p)^d: lam(alpha, a, b) = a + alpha*(b - a)."""
        field = PrimeField(p)
        group = AbelianGroup.direct_product((p,) * d)
        heap = heap_from_group(group)
        n = group.n
        arrows = group.add[:, group.neg].T        # arrows[a, b] = b - a
        idx = np.arange(n, dtype=DTYPE)
        lam = np.empty((p, n, n), dtype=DTYPE)
        for alpha in range(p):
            lam[alpha] = group.add[idx[:, None], group.scalar_table(alpha)[arrows]]
        return cls(heap, field, lam)

    @property
    def n(self) -> int:
        return self.heap.n

    def scale(self, alpha: int, a: int, b: int) -> int:
        return int(self.lam[alpha, a, b])

    def __repr__(self):
        return f"AffineStructure(p={self.field.p}, d={self.dimension})"


def _power_dimension(n: int, p: int) -> int:
    d = round(math.log(n, p)) if n > 1 else 0
    if p ** d != n:
        raise StructureError(f"carrier size {n} is not a power of {p}")
    return d


def affine_from_vector_action(p: int, d: int) -> AffineStructure:
    return AffineStructure.from_vector_space(p, d)


def validate_affine(struct: AffineStructure, collect_all: bool = False) -> ViolationReport:
    """Sweep the five scalar-action axiom families exhaustively."""
    lam = struct.lam
    base = struct.heap.base
    p, n = struct.field.p, struct.n
    idx = np.arange(n, dtype=DTYPE)
    report = ViolationReport()

    def bail():
        return not report.ok and not collect_all

    # lam(0, a, b) = a and lam(1, b, a) = a
    add_mismatches(report, "scalar-zero", lam[0], idx[:, None], collect_all)
    if bail():
        return report
    add_mismatches(report, "scalar-one", lam[1], idx[None, :], collect_all)
    if bail():
        return report

    # lam(alpha, a, a) = a, a consequence worth checking on raw tables
    add_mismatches(report, "scalar-fixpoint", lam[:, idx, idx], idx[None, :], collect_all)
    if bail():
        return report

    # scalar slot is a heap map: lam(alpha-beta+gamma, a, b) as a heap word
    s = np.arange(p)
    mixed = (s[:, None, None] - s[None, :, None] + s[None, None, :]) % p
    lhs = lam[mixed]
    rhs = heap_word(base, (lam[:, None, None], lam[None, :, None], lam[None, None, :]))
    add_mismatches(report, "scalar-heap-combination", lhs, rhs, collect_all)
    if bail():
        return report

    # lam(alpha, a, -) is a heap endomorphism
    t3 = struct.heap.table()
    for alpha in range(p):
        x = lam[alpha]
        lhs = x[idx[:, None, None, None], t3[None]]
        rhs = heap_word(base, (x[:, :, None, None], x[:, None, :, None], x[:, None, None, :]))
        add_mismatches(report, "point-heap-endomorphism", lhs, rhs, collect_all,
                       witness_fn=lambda key, alpha=alpha: (alpha,) + key)
        if bail():
            return report

    # lam(alpha*beta, a, b) = lam(alpha, a, lam(beta, a, b))
    for alpha in range(p):
        for beta in range(p):
            rhs = np.take_along_axis(lam[alpha], lam[beta].astype(np.intp), axis=1)
            add_mismatches(report, "scalar-associativity", lam[(alpha * beta) % p], rhs,
                           collect_all, witness_fn=lambda key, a=alpha, b=beta: (a, b) + key)
            if bail():
                return report

    # lam(alpha, a, b) = [lam(alpha, c, b), lam(alpha, c, a), a]
    for alpha in range(p):
        x = lam[alpha]
        rhs = heap_word(base, (x.T[None, :, :], x.T[:, None, :], idx[:, None, None]))
        add_mismatches(report, "reference-change", x[:, :, None], rhs, collect_all,
                       witness_fn=lambda key, alpha=alpha: (alpha,) + key)
        if bail():
            return report
    return report


@dataclass
class VectorSpaceView:
    """The vector space sitting at a chosen origin of an affine structure."""

    affine: AffineStructure
    origin: int
    group: AbelianGroup
    scal: np.ndarray            # scal[alpha, a] = lam(alpha, origin, a)


def validate_vector_space(view: VectorSpaceView, collect_all: bool = False) -> ViolationReport:
    """All eight vector-space axiom families, exhaustively."""
    report = ViolationReport()
    group_report = validate_group_table(view.group.add, collect_all)
    relabel = {
        "group-associativity": "vs-add-associativity",
        "group-commutativity": "vs-add-commutativity",
        "group-identity": "vs-add-identity",
        "group-inverse": "vs-add-inverse",
    }
    for v in group_report.violations:
        report.add(relabel[v.axiom], v.witness, v.lhs, v.rhs)
    if not report.ok and not collect_all:
        return report

    scal, add = view.scal, view.group.add
    p = scal.shape[0]
    add_mismatches(report, "vs-scalar-distributes-add",
                   scal[:, add], add[scal[:, :, None], scal[:, None, :]], collect_all)
    if not report.ok and not collect_all:
        return report
    for alpha in range(p):
        for beta in range(p):
            tag = lambda key, a=alpha, b=beta: (a, b) + key
            add_mismatches(report, "vs-scalar-add", scal[(alpha + beta) % p],
                           add[scal[alpha], scal[beta]], collect_all, witness_fn=tag)
            add_mismatches(report, "vs-scalar-mul-assoc", scal[(alpha * beta) % p],
                           scal[alpha][scal[beta]], collect_all, witness_fn=tag)
            if not report.ok and not collect_all:
                return report
    idx = np.arange(view.group.n, dtype=DTYPE)
    add_mismatches(report, "vs-scalar-unit", scal[1 % p], idx, collect_all)
    add_mismatches(report, "vs-scalar-zero", scal[0],
                   np.full(view.group.n, view.origin, dtype=DTYPE), collect_all)
    return report


def vector_space_at(struct: AffineStructure, o: int) -> VectorSpaceView:
    """The validated vector space A(o) with alpha*a = lam(alpha, o, a)."""
    if not 0 <= o < struct.n:
        raise StructureError(f"origin {o} out of range")
    view = VectorSpaceView(struct, int(o), struct.heap.retract_at(o), struct.lam[:, o, :])
    validate_vector_space(view).require("scalar action does not give a vector space")
    return view


def arrow(struct: AffineStructure, o: int, a: int, b: int) -> int:
    """The vector [o, a, b] of A(o) translating a to b."""
    for x in (o, a, b):
        if not 0 <= x < struct.n:
            raise StructureError("element out of carrier range")
    return struct.heap.op(o, a, b)


def validate_affine_hom(f, source: AffineStructure, target: AffineStructure,
                        collect_all: bool = False) -> ViolationReport:
    """Heap-homomorphism plus preservation of the scalar action."""
    if source.field.p != target.field.p:
        raise StructureError("affine structures live over different fields")
    report = validate_heap_hom(f, source.heap, target.heap, collect_all)
    if not report.ok and not collect_all:
        return report
    fmap = np.asarray(f).astype(DTYPE)
    p = source.field.p
    lhs = fmap[source.lam]
    rhs = target.lam[np.arange(p)[:, None, None], fmap[None, :, None], fmap[None, None, :]]
    add_mismatches(report, "affine-hom-scalar", lhs, rhs, collect_all)
    return report


def linearize(f, source: AffineStructure, target: AffineStructure,
              o_src: int, o_tgt: int) -> np.ndarray:
    """Linear part [f(a), f(o_src), o_tgt] of an affine homomorphism."""
    validate_affine_hom(f, source, target).require("not an affine homomorphism")
    fmap = np.asarray(f).astype(DTYPE)
    if not 0 <= o_src < source.n or not 0 <= o_tgt < target.n:
        raise StructureError("origin out of range")
    return heap_word(target.heap.base,
                     (fmap, np.asarray(fmap[o_src]), np.asarray(o_tgt)))
