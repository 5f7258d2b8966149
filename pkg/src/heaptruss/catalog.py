"""Ready-made small structures used by tests, demos and the falsifier pool."""
from __future__ import annotations

import numpy as np

from .affine import AffineStructure
from .groups import DTYPE, AbelianGroup
from .heaps import FiniteHeap, heap_from_group
from .lie import LieAffebra, LieTernary
from .truss import TrussStructure, truss_from_ring


def cyclic_heap(n: int) -> FiniteHeap:
    return heap_from_group(AbelianGroup.cyclic(n))


def ring_truss(n: int) -> TrussStructure:
    """Z_n with its ring multiplication."""
    group = AbelianGroup.cyclic(n)
    idx = np.arange(n)
    return truss_from_ring(group, (idx[:, None] * idx[None, :]) % n)


def zero_truss(n: int) -> TrussStructure:
    group = AbelianGroup.cyclic(n)
    return truss_from_ring(group, np.zeros((n, n), dtype=DTYPE))


def addition_truss(n: int) -> TrussStructure:
    """Z_n with a * b = a + b, a truss that is not a ring."""
    group = AbelianGroup.cyclic(n)
    return TrussStructure(heap_from_group(group), group.add)


def constant_truss(n: int, k: int) -> TrussStructure:
    group = AbelianGroup.cyclic(n)
    return TrussStructure(heap_from_group(group), np.full((n, n), k, dtype=DTYPE))


def boolean_or_truss() -> TrussStructure:
    group = AbelianGroup.cyclic(2)
    idx = np.arange(2)
    mul = (idx[:, None] + idx[None, :] + idx[:, None] * idx[None, :]) % 2
    return TrussStructure(heap_from_group(group), mul)


def upper_triangular_truss() -> TrussStructure:
    """Upper-triangular 2x2 matrices over F_2: eight elements, noncommutative.

    Digits encode (a11, a12, a22) with the first digit varying fastest.
    """
    group = AbelianGroup.direct_product((2, 2, 2))
    n = group.n
    mul = np.zeros((n, n), dtype=DTYPE)
    for a in range(n):
        x11, x12, x22 = group.decode(a)
        for b in range(n):
            y11, y12, y22 = group.decode(b)
            mul[a, b] = group.encode(((x11 * y11) % 2,
                                      (x11 * y12 + x12 * y22) % 2,
                                      (x22 * y22) % 2))
    return TrussStructure(heap_from_group(group), mul)


def affine_space(p: int, d: int) -> AffineStructure:
    return AffineStructure.from_vector_space(p, d)


def affine_line(p: int) -> AffineStructure:
    return AffineStructure.from_vector_space(p, 1)


def trivial_bracket(heap: FiniteHeap) -> LieTernary:
    """The bracket {a, b, c} = b, a Lie bracket on every heap."""
    n = heap.n
    b3 = np.broadcast_to(np.arange(n, dtype=DTYPE)[None, :, None], (n, n, n))
    return LieTernary(heap, np.ascontiguousarray(b3))


def solvable_affebra(p: int) -> LieAffebra:
    """The two-dimensional Lie algebra [e1, e2] = e2 over F_p, seen as a
    Lie affebra at the origin 0."""
    aff = AffineStructure.from_vector_space(p, 2)
    group = aff.heap.base
    n = aff.n
    bracket = np.zeros((n, n), dtype=DTYPE)
    for a in range(n):
        u1, u2 = group.decode(a)
        for b in range(n):
            v1, v2 = group.decode(b)
            bracket[a, b] = group.encode((0, (u1 * v2 - u2 * v1) % p))
    return LieAffebra(aff, 0, bracket)


def zero_bracket_affebra(aff: AffineStructure, origin: int = 0) -> LieAffebra:
    return LieAffebra(aff, origin,
                      np.full((aff.n, aff.n), origin, dtype=DTYPE))


def constant_bracket_affebra(aff: AffineStructure, value: int,
                             origin: int = 0) -> LieAffebra:
    return LieAffebra(aff, origin, np.full((aff.n, aff.n), value, dtype=DTYPE))


def falsifier_heap_pool() -> list[tuple[str, FiniteHeap]]:
    pool = [(f"Z{n} heap", cyclic_heap(n)) for n in range(2, 9)]
    for orders in ((2, 2), (2, 4), (2, 2, 2)):
        name = "x".join(f"Z{m}" for m in orders) + " heap"
        pool.append((name, heap_from_group(AbelianGroup.direct_product(orders))))
    return pool


def falsifier_truss_pool() -> list[tuple[str, TrussStructure]]:
    pool: list[tuple[str, TrussStructure]] = []
    pool.extend((f"Z{n} ring", ring_truss(n)) for n in range(2, 9))
    pool.append(("Z3 zero ring", zero_truss(3)))
    pool.append(("Z4 addition truss", addition_truss(4)))
    pool.append(("Z4 constant truss", constant_truss(4, 3)))
    pool.append(("boolean OR", boolean_or_truss()))
    pool.append(("UT2(F2)", upper_triangular_truss()))
    return pool
