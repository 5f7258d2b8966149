"""Finite abelian heaps.

A heap is stored as a backing abelian group plus the basepoint it was
retracted at: the ternary operation is always [a, b, c] = a - b + c in the
backing group.  Raw ternary tables are accepted, exhaustively validated,
retracted at element 0 and then discarded, so downstream algebra reduces
to O(n) group arithmetic instead of O(n^3) table storage.
"""
from __future__ import annotations

import numpy as np

from .groups import DTYPE, MAX_CARRIER, AbelianGroup, as_table
from .reports import StructureError, ViolationReport, add_mismatches

# full quintuple sweeps stop here; above this an equivalent O(n^3) check runs
SWEEP_LIMIT = 32


def heap_word(group: AbelianGroup, items):
    """Alternating fold x1 - x2 + x3 - ... for an odd list of arrays/ints."""
    if len(items) % 2 == 0:
        raise StructureError("heap words must have odd length")
    acc = np.asarray(items[0], dtype=DTYPE)
    for i in range(1, len(items), 2):
        acc = group.add[group.add[acc, group.neg[np.asarray(items[i])]],
                        np.asarray(items[i + 1])]
    return acc


class FiniteHeap:
    """Abelian heap with [a, b, c] = a - b + c in the backing group."""

    def __init__(self, base: AbelianGroup, basepoint: int, provenance: str):
        self.base = base
        self.basepoint = int(basepoint)
        self.provenance = provenance
        self._table: np.ndarray | None = None

    @classmethod
    def from_group(cls, group: AbelianGroup) -> "FiniteHeap":
        return cls(group, group.identity, "from_group")

    @classmethod
    def from_table(cls, table, collect_all: bool = False) -> "FiniteHeap":
        report = validate_heap(table, collect_all)
        report.require("not an abelian heap table")
        arr = np.asarray(table).astype(DTYPE)
        base = AbelianGroup.from_table(arr[:, 0, :])
        return cls(base, 0, "from_table")

    @property
    def n(self) -> int:
        return self.base.n

    def op(self, a: int, b: int, c: int) -> int:
        g = self.base
        return int(g.add[g.add[a, g.neg[b]], c])

    def op_arrays(self, a, b, c):
        return heap_word(self.base, (a, b, c))

    def word(self, elements) -> int:
        """Value of the odd heap word [e1, e2, ..., e_{2k+1}]."""
        elements = list(elements)
        if not elements or len(elements) % 2 == 0:
            raise StructureError("heap words must have odd length >= 1")
        if any(not 0 <= e < self.n for e in elements):
            raise StructureError("word entry out of carrier range")
        return int(heap_word(self.base, [np.asarray(e) for e in elements]))

    def table(self) -> np.ndarray:
        if self._table is None:
            g = self.base
            sub = g.add[:, g.neg]            # sub[a, b] = a - b
            self._table = g.add[sub]         # [a, b, c] = (a-b) + c
        return self._table

    def retract_at(self, o: int) -> AbelianGroup:
        """The abelian group with a + b = [a, o, b], neutral element o."""
        if not 0 <= o < self.n:
            raise StructureError(f"basepoint {o} out of range 0..{self.n - 1}")
        if o == self.base.identity:
            return self.base
        g = self.base
        shifted = g.add[g.add[np.arange(self.n, dtype=DTYPE), g.neg[o]]]
        return AbelianGroup.from_table(shifted)

    def endomorphisms(self) -> np.ndarray:
        """All heap self-homomorphisms x -> g(x) + t, as value tables."""
        return _affine_maps(self.base, self.base.endomorphisms())

    def automorphisms(self) -> np.ndarray:
        return _affine_maps(self.base, self.base.automorphisms())

    def __repr__(self):
        return f"FiniteHeap(n={self.n}, base={self.base!r}, provenance={self.provenance})"


def _affine_maps(group: AbelianGroup, linear_parts: np.ndarray) -> np.ndarray:
    shifts = np.arange(group.n, dtype=DTYPE)
    maps = group.add[linear_parts[:, None, :], shifts[None, :, None]]
    return maps.reshape(-1, group.n)


def heap_from_group(group: AbelianGroup) -> FiniteHeap:
    return FiniteHeap.from_group(group)


def retract_at(heap: FiniteHeap, o: int) -> AbelianGroup:
    return heap.retract_at(o)


def eval_word(heap: FiniteHeap, elements) -> int:
    return heap.word(elements)


def validate_heap(table, collect_all: bool = False) -> ViolationReport:
    """Exhaustively check the three heap axioms on a raw ternary table.

    Placement associativity is swept over all quintuples up to carriers of
    SWEEP_LIMIT; larger tables (up to 64) get the equivalent check that the
    retract at 0 is an abelian group reproducing the table, falling back to
    the real sweep only to extract a faithful witness.
    """
    arr = np.asarray(table)
    if arr.ndim != 3 or len(set(arr.shape)) != 1:
        raise StructureError("heap table must have shape (n, n, n)")
    n = arr.shape[0]
    if n > MAX_CARRIER:
        raise StructureError(f"carrier size {n} exceeds the {MAX_CARRIER} limit")
    t = as_table(arr, (n, n, n), "heap table")
    report = ViolationReport()
    idx = np.arange(n, dtype=DTYPE)

    left = t[:, idx, idx]                   # [a, b, b]
    add_mismatches(report, "heap-malcev", left, idx[:, None], collect_all)
    if not report.ok and not collect_all:
        return report
    right = t[idx, idx, :]                  # [b, b, a]
    add_mismatches(report, "heap-malcev", right, idx[None, :], collect_all,
                   witness_fn=lambda key: (key[1], key[0]))
    if not report.ok and not collect_all:
        return report

    add_mismatches(report, "heap-symmetry", t, t.transpose(2, 1, 0), collect_all)
    if not report.ok and not collect_all:
        return report

    if n <= SWEEP_LIMIT:
        _assoc_sweep(report, t, collect_all)
    else:
        _assoc_via_retract(report, t, collect_all)
    return report


def _assoc_sweep(report, t, collect_all, start=0):
    n = t.shape[0]
    for a in range(start, n):
        x = t[a]
        lhs = t[x]                          # [[a,b,c], d, e]
        rhs = x[:, t]                       # [a, b, [c,d,e]]
        add_mismatches(report, "heap-associativity", lhs, rhs, collect_all,
                       witness_fn=lambda key, a=a: (a,) + key)
        if not report.ok and not collect_all:
            return


def _assoc_via_retract(report, t, collect_all):
    # Mal'cev + symmetry already hold here, so 0 is neutral for a+b = [a,0,b]
    # and the table is a heap iff that retract is a group reproducing it.
    n = t.shape[0]
    add = t[:, 0, :]
    lhs = add[add]
    rhs = add[:, add]
    if add_mismatches(report, "heap-associativity", lhs, rhs, collect_all,
                      witness_fn=lambda key: (key[0], 0, key[1], 0, key[2])):
        if not collect_all:
            return
    if not report.ok:
        return

    missing = np.nonzero(~(add == 0).any(axis=1))[0]
    for a in missing[: 1 if not collect_all else len(missing)]:
        b = int(t[0, a, 0])
        report.add("heap-associativity", (int(a), 0, 0, int(a), 0),
                   t[t[a, 0, 0], a, 0], t[a, 0, b])
    if not report.ok:
        return

    neg = np.empty(n, dtype=DTYPE)
    rows, cols = np.nonzero(add == 0)
    neg[rows] = cols
    rebuilt = add[add[:, neg]]
    if not np.array_equal(rebuilt, t):
        # sound but indirect; rerun the genuine sweep for a faithful witness
        fallback = ViolationReport()
        _assoc_sweep(fallback, t, collect_all)
        report.merge(fallback)


def validate_heap_hom(f, source: FiniteHeap, target: FiniteHeap,
                      collect_all: bool = False) -> ViolationReport:
    """Check f([a,b,c]) = [f(a), f(b), f(c)] over all triples."""
    fmap = np.asarray(f)
    if fmap.shape != (source.n,):
        raise StructureError(f"map must assign all {source.n} source elements")
    if fmap.min() < 0 or fmap.max() >= target.n:
        raise StructureError("map value out of target range")
    fmap = fmap.astype(DTYPE)
    report = ViolationReport()
    lhs = fmap[source.table()]
    rhs = heap_word(target.base, (fmap[:, None, None], fmap[None, :, None],
                                  fmap[None, None, :]))
    add_mismatches(report, "heap-hom", lhs, rhs, collect_all)
    return report
