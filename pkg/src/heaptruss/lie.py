"""Ternary Lie brackets on heaps and affine spaces.

A Lie truss is a heap with a ternary bracket that is a heap endomorphism
in every slot and satisfies nilpotency {a,b,a} = b, ternary antisymmetry
[{a,b,c}, b, {c,b,a}] = b, and the four-point Jacobi identity.  On an
affine base the slot maps must preserve the scalar action as well, and the
structure is called a heap of Lie affebras.  Fixing an origin o turns such
a structure into a Lie affebra (binary bracket valued in the vector space
at o), and any Lie truss retracts to a Lie ring at every point.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .affine import AffineStructure
from .groups import DTYPE, AbelianGroup, as_table
from .heaps import FiniteHeap, heap_word
from .reports import (
    BudgetError,
    CharacteristicTwoError,
    ClosureError,
    StructureError,
    ViolationReport,
    add_mismatches,
)
from .truss import TrussStructure, enumerate_derivations

STRONG_SWEEP_LIMIT = 32


class LieTernary:
    """A heap (or affine space) carrying a candidate ternary Lie bracket."""

    def __init__(self, base, bracket3):
        if isinstance(base, AffineStructure):
            self.affine: AffineStructure | None = base
            self.heap = base.heap
        elif isinstance(base, FiniteHeap):
            self.affine = None
            self.heap = base
        else:
            raise StructureError("base must be a heap or an affine structure")
        n = self.heap.n
        self.bracket3 = as_table(np.asarray(bracket3), (n, n, n), "ternary bracket")

    @property
    def base(self):
        return self.affine if self.affine is not None else self.heap

    @property
    def n(self) -> int:
        return self.heap.n

    def bracket(self, a: int, b: int, c: int) -> int:
        return int(self.bracket3[a, b, c])

    def __repr__(self):
        kind = "affine" if self.affine is not None else "heap"
        return f"LieTernary(n={self.n}, base={kind})"


class LieAffebra:
    """Affine space with an origin and a binary bracket read in A(origin)."""

    def __init__(self, affine: AffineStructure, origin: int, bracket2):
        self.affine = affine
        if not 0 <= origin < affine.n:
            raise StructureError(f"origin {origin} out of range")
        self.origin = int(origin)
        self.bracket2 = as_table(np.asarray(bracket2), (affine.n, affine.n),
                                 "binary bracket")

    @property
    def n(self) -> int:
        return self.affine.n

    def bracket(self, a: int, b: int) -> int:
        return int(self.bracket2[a, b])

    def __repr__(self):
        return f"LieAffebra(n={self.n}, origin={self.origin})"


@dataclass
class LieRingView:
    """Retract group of a Lie truss together with its binary bracket."""

    group: AbelianGroup
    bracket: np.ndarray


@dataclass
class DerivationAlgebra:
    """The derivations of a truss with their pointwise heap and bracket."""

    lie: LieTernary
    derivations: np.ndarray


def _add_at(heap: FiniteHeap, o: int, x, y):
    """x + y in the retract A(o), elementwise on arrays."""
    return heap_word(heap.base, (x, np.asarray(o), y))


def _sub_at(heap: FiniteHeap, o: int, x, y):
    """x - y in the retract A(o), elementwise on arrays."""
    return heap_word(heap.base, (x, y, np.asarray(o)))


def validate_lie_truss(lt: LieTernary, collect_all: bool = False) -> ViolationReport:
    """Full check of the ternary Lie bracket axioms.

    Slot witnesses have the shape (fixed slot arguments..., x, e, y): the
    heap-homomorphism triple [x, e, y] at the base identity e that the slot
    map fails on.
    """
    b3 = lt.bracket3
    base = lt.heap.base
    n = lt.n
    idx = np.arange(n, dtype=DTYPE)
    report = ViolationReport()

    def bail():
        return not report.ok and not collect_all

    # {a, b, a} = b
    add_mismatches(report, "bracket-nilpotency",
                   b3[idx[:, None], idx[None, :], idx[:, None]],
                   idx[None, :], collect_all)
    if bail():
        return report

    # [{a,b,c}, b, {c,b,a}] = b
    lhs = heap_word(base, (b3, idx[None, :, None], b3.transpose(2, 1, 0)))
    add_mismatches(report, "bracket-antisymmetry", lhs, idx[None, :, None], collect_all)
    if bail():
        return report

    for axis, name in ((2, "bracket-slot3-heap"), (0, "bracket-slot1-heap"),
                       (1, "bracket-slot2-heap")):
        _slot_heap_check(report, lt, axis, name, collect_all)
        if bail():
            return report

    if lt.affine is not None:
        for axis, name in ((2, "bracket-slot3-affine"), (0, "bracket-slot1-affine"),
                           (1, "bracket-slot2-affine")):
            _slot_affine_check(report, lt, axis, name, collect_all)
            if bail():
                return report

    # {{a,o,b},o,c} = [{o,o,a}, {{b,o,c},o,a}, {o,o,b}, {{c,o,a},o,b}, {o,o,c}]
    bI = idx[:, None, None]
    cI = idx[None, :, None]
    oI = idx[None, None, :]
    for a in range(n):
        lhs = b3[b3[a, oI, bI], oI, cI]
        rhs = heap_word(base, (b3[oI, oI, a],
                               b3[b3[bI, oI, cI], oI, a],
                               b3[oI, oI, bI],
                               b3[b3[cI, oI, a], oI, bI],
                               b3[oI, oI, cI]))
        add_mismatches(report, "bracket-jacobi", lhs, rhs, collect_all,
                       witness_fn=lambda key, a=a: (a,) + key)
        if bail():
            return report
    return report


def _slot_heap_check(report, lt, axis, name, collect_all):
    # a slot map f is a heap hom iff f(x + y) = f(x) + f(y) - f(e) at the
    # base identity e; a failure yields the violated hom triple [x, e, y]
    base = lt.heap.base
    e = base.identity
    f = np.moveaxis(lt.bracket3, axis, -1)       # (fixed, fixed, argument)
    lhs = f[:, :, base.add]
    rhs = heap_word(base, (f[:, :, :, None], f[:, :, e][:, :, None, None],
                           f[:, :, None, :]))
    add_mismatches(report, name, lhs, rhs, collect_all,
                   witness_fn=lambda key: key[:2] + (key[2], e, key[3]))


def _slot_affine_check(report, lt, axis, name, collect_all):
    lam = lt.affine.lam
    p = lam.shape[0]
    f = np.moveaxis(lt.bracket3, axis, -1)
    lhs = f[:, :, lam]                           # f(lam(alpha, x, y))
    rhs = lam[np.arange(p)[None, None, :, None, None],
              f[:, :, None, :, None], f[:, :, None, None, :]]
    add_mismatches(report, name, lhs, rhs, collect_all)


def validate_strong_jacobi(lt: LieTernary, collect_all: bool = False) -> ViolationReport:
    """Five-variable Jacobi sweep, O(n^5), chunked by the leading index."""
    n = lt.n
    if n > STRONG_SWEEP_LIMIT:
        raise BudgetError(f"carrier {n} is beyond the {STRONG_SWEEP_LIMIT} sweep limit")
    b3 = lt.bracket3
    base = lt.heap.base
    idx = np.arange(n, dtype=DTYPE)
    bI = idx[:, None, None, None]
    cI = idx[None, :, None, None]
    dI = idx[None, None, :, None]
    eI = idx[None, None, None, :]
    report = ViolationReport()
    for a in range(n):
        lhs = b3[b3[a, dI, bI], eI, cI]
        rhs = heap_word(base, (b3[dI, eI, a],
                               b3[b3[bI, dI, cI], eI, a],
                               b3[dI, eI, bI],
                               b3[b3[cI, dI, a], eI, bI],
                               b3[dI, eI, cI]))
        add_mismatches(report, "bracket-strong-jacobi", lhs, rhs, collect_all,
                       witness_fn=lambda key, a=a: (a,) + key)
        if not report.ok and not collect_all:
            return report
    return report


def bracket_from_truss(truss: TrussStructure) -> LieTernary:
    """The commutator-style bracket {a,b,c} = [ac, ca, b] of a truss."""
    mul = truss.mul
    base = truss.heap.base
    b3 = heap_word(base, (mul[:, None, :], mul.T[:, None, :],
                          np.arange(truss.n, dtype=DTYPE)[None, :, None]))
    return LieTernary(truss.heap, b3)


def derivations_lie_truss(truss: TrussStructure,
                          derivations: np.ndarray | None = None) -> DerivationAlgebra:
    """The Lie truss of all derivations of a truss.

    Carrier elements are the derivations themselves; the heap operation is
    pointwise and the bracket is [D1 D3, D3 D1, D2].  Both are verified to
    land back in the derivation set.
    """
    maps = enumerate_derivations(truss) if derivations is None else np.asarray(derivations)
    maps = maps.astype(DTYPE)
    m = maps.shape[0]
    base = truss.heap.base
    lookup = {row.tobytes(): i for i, row in enumerate(maps)}

    def indices(stack, what):
        flat = stack.reshape(-1, truss.n)
        out = np.empty(flat.shape[0], dtype=DTYPE)
        for i, row in enumerate(flat):
            key = row.tobytes()
            if key not in lookup:
                raise ClosureError(f"{what} left the derivation set")
            out[i] = lookup[key]
        return out.reshape(stack.shape[:-1])

    pointwise = heap_word(base, (maps[:, None, None, :], maps[None, :, None, :],
                                 maps[None, None, :, :]))
    heap_table = indices(pointwise, "pointwise heap combination")

    comp = maps[:, maps]                         # comp[i, k] = D_i after D_k
    bracket_maps = heap_word(base, (comp[:, None, :, :],
                                    comp.transpose(1, 0, 2)[:, None, :, :],
                                    maps[None, :, None, :]))
    bracket_table = indices(bracket_maps, "derivation bracket")

    lie = LieTernary(FiniteHeap.from_table(heap_table), bracket_table)
    return DerivationAlgebra(lie, maps)


def validate_lie_affebra(la: LieAffebra, collect_all: bool = False) -> ViolationReport:
    """Bi-affineness, antisymmetry, linearization consistency and the
    cyclic vector-valued Jacobi identity, all exhaustive."""
    b2 = la.bracket2
    aff = la.affine
    heap = aff.heap
    base = heap.base
    lam = aff.lam
    n, p = la.n, aff.field.p
    o = la.origin
    idx = np.arange(n, dtype=DTYPE)
    t3 = heap.table()
    report = ViolationReport()

    def bail():
        return not report.ok and not collect_all

    # each {-, b} is an affine map; witness (b, hom arguments...)
    lhs = b2[t3]                                 # (x, y, z, b)
    rhs = heap_word(base, (b2[:, None, None, :], b2[None, :, None, :],
                           b2[None, None, :, :]))
    add_mismatches(report, "bracket-affine-in-first", lhs, rhs, collect_all,
                   witness_fn=lambda key: (key[3],) + key[:3])
    if bail():
        return report
    lhs = b2[lam]                                # (alpha, x, y, b)
    rhs = lam[np.arange(p)[:, None, None, None],
              b2[None, :, None, :], b2[None, None, :, :]]
    add_mismatches(report, "bracket-affine-in-first", lhs, rhs, collect_all,
                   witness_fn=lambda key: (key[3], key[0], key[1], key[2]))
    if bail():
        return report

    # each {a, -} is an affine map
    lhs = b2[:, t3]                              # (a, x, y, z)
    rhs = heap_word(base, (b2[:, :, None, None], b2[:, None, :, None],
                           b2[:, None, None, :]))
    add_mismatches(report, "bracket-affine-in-second", lhs, rhs, collect_all)
    if bail():
        return report
    lhs = b2[:, lam]                             # (a, alpha, x, y)
    rhs = lam[np.arange(p)[None, :, None, None],
              b2[:, None, :, None], b2[:, None, None, :]]
    add_mismatches(report, "bracket-affine-in-second", lhs, rhs, collect_all)
    if bail():
        return report

    # {a,b} + {b,a} = o in A(o)
    add_mismatches(report, "vector-antisymmetry", _add_at(heap, o, b2, b2.T),
                   np.asarray(o, dtype=DTYPE), collect_all)
    if bail():
        return report

    lin, dep = _linearization(la)
    for key in dep[: 1 if not collect_all else len(dep)]:
        report.add("linearization-well-defined", key)
    if bail() or not report.ok:
        return report

    # v{{a,b},c} + v{{b,c},a} + v{{c,a},b} = o
    q = lin[b2[:, :, None], idx[None, None, :]]  # q[x, y, z] = v{{x,y}, z}
    cyc = _add_at(heap, o, _add_at(heap, o, q, q.transpose(2, 0, 1)),
                  q.transpose(1, 2, 0))
    add_mismatches(report, "vector-jacobi", cyc, np.asarray(o, dtype=DTYPE), collect_all)
    return report


def _linearization(la: LieAffebra):
    """Table lin[v, c] = {a0 + v, c} - {a0, c} plus any a0-dependence."""
    heap = la.affine.heap
    o = la.origin
    b2 = la.bracket2
    n = la.n
    idx = np.arange(n, dtype=DTYPE)
    shifted = _add_at(heap, o, idx[:, None], idx[None, :])     # a0 + v
    stack = _sub_at(heap, o, b2[shifted], b2[:, None, :])      # (a0, v, c)
    lin = stack[o]
    dependence = [tuple(int(i) for i in key)
                  for key in np.argwhere(stack != lin[None]).tolist()]
    return lin, dependence


def linearized_bracket(la: LieAffebra, v: int, c: int) -> int:
    """Value of the linearized bracket v{v, c} in A(origin)."""
    if not 0 <= v < la.n or not 0 <= c < la.n:
        raise StructureError("element out of carrier range")
    lin, dependence = _linearization(la)
    if dependence:
        report = ViolationReport()
        report.add("linearization-well-defined", dependence[0])
        report.require("bracket is not affine in its first argument")
    return int(lin[v, c])


def affebra_to_ternary(la: LieAffebra, force_char2: bool = False) -> LieTernary:
    """The ternary bracket {a,b,c} = b + {a,c} of a Lie affebra.

    Needs odd characteristic; pass force_char2=True to build the (generally
    invalid) characteristic-2 structure anyway for negative testing.
    """
    if la.affine.field.p == 2 and not force_char2:
        raise CharacteristicTwoError(
            "the ternary bracket of a Lie affebra needs characteristic != 2")
    heap = la.affine.heap
    idx = np.arange(la.n, dtype=DTYPE)
    b3 = _add_at(heap, la.origin, idx[None, :, None], la.bracket2[:, None, :])
    return LieTernary(la.affine, b3)


def ternary_to_affebra(lt: LieTernary, o: int) -> LieAffebra:
    """Read {a, o, b} as the binary bracket of a Lie affebra at o."""
    if lt.affine is None:
        raise StructureError("conversion needs an affine base")
    if not 0 <= o < lt.n:
        raise StructureError(f"origin {o} out of range")
    return LieAffebra(lt.affine, o, lt.bracket3[:, o, :])


def retract_lie_ring(lt: LieTernary, o: int) -> LieRingView:
    """The Lie ring on A(o) with [a,b] = {a,o,b} - {a,o,o} - {o,o,b}."""
    if not 0 <= o < lt.n:
        raise StructureError(f"basepoint {o} out of range")
    heap = lt.heap
    b3 = lt.bracket3
    bracket = _sub_at(heap, o,
                      _sub_at(heap, o, b3[:, o, :], b3[:, o, o][:, None]),
                      b3[o, o, :][None, :])
    return LieRingView(heap.retract_at(o), bracket.astype(DTYPE))


def validate_lie_ring(view: LieRingView, scal: np.ndarray | None = None,
                      collect_all: bool = False) -> ViolationReport:
    """Biadditivity, alternation, antisymmetry and the cyclic Jacobi sum.

    When `scal` (a (p, n) scalar-action table) is given, compatibility of
    the bracket with scalars is checked too, making this a Lie algebra
    validator.
    """
    br = view.bracket
    add = view.group.add
    e = view.group.identity
    n = view.group.n
    report = ViolationReport()

    def bail():
        return not report.ok and not collect_all

    add_mismatches(report, "ring-biadditive-left", br[add],
                   add[br[:, None, :], br[None, :, :]], collect_all)
    if bail():
        return report
    add_mismatches(report, "ring-biadditive-right", br[:, add],
                   add[br[:, :, None], br[:, None, :]], collect_all)
    if bail():
        return report
    idx = np.arange(n, dtype=DTYPE)
    add_mismatches(report, "ring-alternating", br[idx, idx],
                   np.asarray(e, dtype=DTYPE), collect_all)
    if bail():
        return report
    add_mismatches(report, "ring-antisymmetry", add[br, br.T],
                   np.asarray(e, dtype=DTYPE), collect_all)
    if bail():
        return report
    jac = add[add[br[br], br[br].transpose(2, 0, 1)], br[br].transpose(1, 2, 0)]
    add_mismatches(report, "ring-jacobi", jac, np.asarray(e, dtype=DTYPE), collect_all)
    if bail():
        return report
    if scal is not None:
        p = scal.shape[0]
        lhs = br[scal[:, :, None], idx[None, None, :]]
        rhs = scal[np.arange(p)[:, None, None], br[None]]
        add_mismatches(report, "ring-scalar", lhs, rhs, collect_all)
    return report


def strengthen_bracket(lt: LieTernary, o: int) -> LieTernary:
    """The bracket [{a,o,c}, {a,o,o}, o, {o,o,c}, b], which always
    satisfies the five-variable Jacobi identity."""
    if not 0 <= o < lt.n:
        raise StructureError(f"basepoint {o} out of range")
    b3 = lt.bracket3
    base = lt.heap.base
    idx = np.arange(lt.n, dtype=DTYPE)
    strengthened = heap_word(base, (b3[:, o, :][:, None, :],
                                    b3[:, o, o][:, None, None],
                                    np.asarray(o, dtype=DTYPE),
                                    b3[o, o, :][None, None, :],
                                    idx[None, :, None]))
    return LieTernary(lt.base, strengthened)
