"""Trusses: heaps with an associative multiplication distributing over the
ternary operation, plus derivations with their Leibniz rule.

Multiplication tables are stored densely even for ring-derived trusses so
the validators always exercise the general path.  No validator assumes an
absorbing zero: constant multiplications are legitimate trusses.
"""
from __future__ import annotations

import numpy as np

from .groups import DTYPE, AbelianGroup, as_table
from .heaps import FiniteHeap, heap_from_group, heap_word, validate_heap_hom
from .reports import StructureError, ViolationReport, add_mismatches


class TrussStructure:
    def __init__(self, heap: FiniteHeap, mul):
        self.heap = heap
        self.mul = as_table(np.asarray(mul), (heap.n, heap.n), "multiplication table")

    @property
    def n(self) -> int:
        return self.heap.n

    def times(self, a: int, b: int) -> int:
        return int(self.mul[a, b])

    def __repr__(self):
        return f"TrussStructure(n={self.n})"


def validate_truss(truss: TrussStructure, collect_all: bool = False) -> ViolationReport:
    """Exhaustive associativity plus two-sided distributivity sweep."""
    mul = truss.mul
    base = truss.heap.base
    n = truss.n
    report = ViolationReport()

    add_mismatches(report, "mul-associativity", mul[mul], mul[:, mul], collect_all)
    if not report.ok and not collect_all:
        return report

    t3 = truss.heap.table()
    idx = np.arange(n, dtype=DTYPE)
    for a in range(n):
        lhs = mul[a][t3]
        rhs = heap_word(base, (mul[a][:, None, None], mul[a][None, :, None],
                               mul[a][None, None, :]))
        add_mismatches(report, "left-distributivity", lhs, rhs, collect_all,
                       witness_fn=lambda key, a=a: (a,) + key)
        if not report.ok and not collect_all:
            return report

    lhs = mul[t3]                                # [a,b,c] * d
    rhs = heap_word(base, (mul[:, None, None, :], mul[None, :, None, :],
                           mul[None, None, :, :]))
    add_mismatches(report, "right-distributivity", lhs, rhs, collect_all)
    return report


def truss_from_ring(group: AbelianGroup, mul) -> TrussStructure:
    """Wrap an associative biadditive multiplication as a truss."""
    table = as_table(np.asarray(mul), (group.n, group.n), "ring multiplication")
    report = ViolationReport()
    add_mismatches(report, "mul-associativity", table[table], table[:, table], False)
    add_mismatches(report, "biadditivity-left", table[group.add],
                   group.add[table[:, None, :], table[None, :, :]], False)
    add_mismatches(report, "biadditivity-right", table[:, group.add],
                   group.add[table[:, :, None], table[:, None, :]], False)
    report.require("multiplication is not associative and biadditive")
    return TrussStructure(heap_from_group(group), table)


def validate_derivation(dmap, truss: TrussStructure,
                        collect_all: bool = False) -> ViolationReport:
    """Heap-endomorphism property plus the Leibniz rule over all pairs."""
    d = np.asarray(dmap)
    if d.shape != (truss.n,):
        raise StructureError("derivation map must cover the carrier")
    d = d.astype(DTYPE)
    report = ViolationReport()
    for v in validate_heap_hom(d, truss.heap, truss.heap, collect_all).violations:
        report.add("heap-endomorphism", v.witness, v.lhs, v.rhs)
    if not report.ok and not collect_all:
        return report
    mul = truss.mul
    lhs = d[mul]
    rhs = heap_word(truss.heap.base, (mul[d], mul, mul[:, d]))
    add_mismatches(report, "leibniz", lhs, rhs, collect_all)
    return report


def enumerate_derivations(truss: TrussStructure) -> np.ndarray:
    """All derivations, as an (m, n) array of value tables, sorted.

    Candidates are exactly the heap endomorphisms x -> g(x) + t; the
    Leibniz rule is then checked exhaustively on each.
    """
    cands = truss.heap.endomorphisms()
    base = truss.heap.base
    mul = truss.mul
    idx = np.arange(truss.n, dtype=DTYPE)
    lhs = cands[:, mul]                                  # D(ab)
    t_left = mul[cands[:, :, None], idx[None, None, :]]  # D(a) b
    t_right = mul[idx[None, :, None], cands[:, None, :]] # a D(b)
    rhs = heap_word(base, (t_left, mul[None], t_right))
    good = cands[(lhs == rhs).all(axis=(1, 2))]
    order = np.lexsort(good.T[::-1])
    return good[order]
