"""JSON structure files.

Every file is a JSON object with a "kind" and either "group": {"orders":
[...]} or "heap_table": [flattened n^3] for the carrier, plus the tables
the kind needs.  All tables are flattened row-major; elements are 0-based
mixed-radix integers.  Parsing checks shapes only; axiom checking is a
separate step so that invalid structures can be loaded and reported on.

Beyond the core kinds, "lie_ring" files (a group plus a binary bracket)
are read and written so that every conversion output can be fed back to
the checker, and "group" files may carry a raw "add_table".
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .affine import AffineStructure, PrimeField, validate_affine
from .groups import DTYPE, AbelianGroup, validate_group_table
from .heaps import FiniteHeap, heap_from_group, validate_heap
from .lie import (
    LieAffebra,
    LieRingView,
    LieTernary,
    validate_lie_affebra,
    validate_lie_ring,
    validate_lie_truss,
    validate_strong_jacobi,
)
from .reports import StructureError, ViolationReport
from .truss import TrussStructure, validate_truss

KINDS = ("heap", "group", "truss", "lie_truss", "affine", "lie_affebra",
         "heap_lie_affebra", "lie_ring")

_AFFINE_KINDS = ("affine", "lie_affebra", "heap_lie_affebra")


@dataclass
class StructureFile:
    kind: str
    n: int
    orders: tuple[int, ...] | None = None
    heap_table: np.ndarray | None = None
    add_table: np.ndarray | None = None
    mul_table: np.ndarray | None = None
    bracket3: np.ndarray | None = None
    bracket2: np.ndarray | None = None
    origin: int | None = None
    field_p: int | None = None
    lam: np.ndarray | None = None


def _flat_table(obj, key, shape, n):
    if key not in obj:
        raise StructureError(f"kind {obj.get('kind')!r} needs a {key!r} field")
    values = obj[key]
    size = math.prod(shape)
    if not isinstance(values, list) or len(values) != size:
        raise StructureError(f"{key!r} must be a flat list of {size} integers")
    arr = np.asarray(values)
    if arr.dtype.kind not in "iu" or (arr.size and (arr.min() < 0 or arr.max() >= n)):
        raise StructureError(f"{key!r} entries must be integers in 0..{n - 1}")
    return arr.astype(DTYPE).reshape(shape)


def parse_structure(obj: dict) -> StructureFile:
    """Shape-check a JSON object into a StructureFile."""
    if not isinstance(obj, dict):
        raise StructureError("a structure file must be a JSON object")
    kind = obj.get("kind")
    if kind not in KINDS:
        raise StructureError(f"unknown kind {kind!r}")

    has_group = "group" in obj
    has_table = "heap_table" in obj
    has_add = "add_table" in obj and kind in ("group", "lie_ring")
    if sum((has_group, has_table, has_add)) != 1:
        raise StructureError("exactly one of 'group'/'heap_table' must be present")

    sf = StructureFile(kind=kind, n=0)
    if has_group:
        spec = obj["group"]
        if not isinstance(spec, dict) or "orders" not in spec:
            raise StructureError("'group' must be an object with 'orders'")
        orders = spec["orders"]
        if (not isinstance(orders, list) or
                any(not isinstance(m, int) or m < 2 for m in orders)):
            raise StructureError("'orders' must be a list of integers >= 2")
        sf.orders = tuple(orders)
        sf.n = math.prod(sf.orders)
    elif has_add:
        values = obj["add_table"]
        n = math.isqrt(len(values)) if isinstance(values, list) else 0
        if n * n != len(values) or n == 0:
            raise StructureError("'add_table' must flatten an n x n table")
        sf.n = n
        sf.add_table = _flat_table(obj, "add_table", (n, n), n)
    else:
        values = obj["heap_table"]
        n = round(len(values) ** (1 / 3)) if isinstance(values, list) else 0
        if n == 0 or n ** 3 != len(values):
            raise StructureError("'heap_table' must flatten an n x n x n table")
        sf.n = n
        sf.heap_table = _flat_table(obj, "heap_table", (n, n, n), n)

    n = sf.n
    if kind == "truss":
        sf.mul_table = _flat_table(obj, "mul_table", (n, n), n)
    if kind in ("lie_truss", "heap_lie_affebra"):
        sf.bracket3 = _flat_table(obj, "bracket3", (n, n, n), n)
    if kind in ("lie_affebra", "lie_ring"):
        sf.bracket2 = _flat_table(obj, "bracket2", (n, n), n)
    if kind in _AFFINE_KINDS:
        p = obj.get("field_p")
        if not isinstance(p, int):
            raise StructureError("'field_p' must be an integer")
        PrimeField(p)
        sf.field_p = p
        sf.lam = _flat_table(obj, "lambda", (p, n, n), n)
    if kind == "lie_affebra":
        origin = obj.get("origin")
        if not isinstance(origin, int) or not 0 <= origin < n:
            raise StructureError("'origin' must be an element index")
        sf.origin = origin
    return sf


def check_structure(sf: StructureFile, strong: bool = False,
                    collect_all: bool = False) -> ViolationReport:
    """Run the validators matching the file kind, reporting violations."""
    if sf.kind == "group":
        if sf.orders is not None:
            return validate_group_table(AbelianGroup.direct_product(sf.orders).add,
                                        collect_all)
        return validate_group_table(sf.add_table, collect_all)

    if sf.kind == "lie_ring":
        if sf.orders is not None:
            group = AbelianGroup.direct_product(sf.orders)
        else:
            report = validate_group_table(sf.add_table, collect_all)
            if not report.ok:
                return report
            group = AbelianGroup.from_table(sf.add_table)
        return validate_lie_ring(LieRingView(group, sf.bracket2), collect_all=collect_all)

    if sf.orders is not None:
        heap = heap_from_group(AbelianGroup.direct_product(sf.orders))
        report = validate_heap(heap.table(), collect_all)
    else:
        report = validate_heap(sf.heap_table, collect_all)
        heap = None
        if report.ok:
            base = AbelianGroup.from_table(sf.heap_table[:, 0, :])
            heap = FiniteHeap(base, 0, "from_table")
    if not report.ok or sf.kind == "heap":
        return report

    if sf.kind == "truss":
        return validate_truss(TrussStructure(heap, sf.mul_table), collect_all)

    if sf.kind == "lie_truss":
        lie = LieTernary(heap, sf.bracket3)
        report = validate_lie_truss(lie, collect_all)
        if report.ok and strong:
            report.merge(validate_strong_jacobi(lie, collect_all))
        return report

    aff = AffineStructure(heap, PrimeField(sf.field_p), sf.lam)
    report = validate_affine(aff, collect_all)
    if not report.ok or sf.kind == "affine":
        return report
    if sf.kind == "lie_affebra":
        return validate_lie_affebra(LieAffebra(aff, sf.origin, sf.bracket2), collect_all)
    lie = LieTernary(aff, sf.bracket3)
    report = validate_lie_truss(lie, collect_all)
    if report.ok and strong:
        report.merge(validate_strong_jacobi(lie, collect_all))
    return report


def realize_structure(sf: StructureFile):
    """Turn a parsed file into a typed object, requiring valid axioms."""
    if sf.kind == "group":
        if sf.orders is not None:
            return AbelianGroup.direct_product(sf.orders)
        return AbelianGroup.from_table(sf.add_table)
    if sf.kind == "lie_ring":
        group = (AbelianGroup.direct_product(sf.orders) if sf.orders is not None
                 else AbelianGroup.from_table(sf.add_table))
        view = LieRingView(group, sf.bracket2)
        validate_lie_ring(view).require("not a Lie ring")
        return view

    if sf.orders is not None:
        heap = heap_from_group(AbelianGroup.direct_product(sf.orders))
    else:
        heap = FiniteHeap.from_table(sf.heap_table)
    if sf.kind == "heap":
        return heap
    if sf.kind == "truss":
        truss = TrussStructure(heap, sf.mul_table)
        validate_truss(truss).require("not a truss")
        return truss
    if sf.kind == "lie_truss":
        lie = LieTernary(heap, sf.bracket3)
        validate_lie_truss(lie).require("not a Lie truss")
        return lie

    aff = AffineStructure(heap, PrimeField(sf.field_p), sf.lam)
    validate_affine(aff).require("not an affine space")
    if sf.kind == "affine":
        return aff
    if sf.kind == "lie_affebra":
        la = LieAffebra(aff, sf.origin, sf.bracket2)
        validate_lie_affebra(la).require("not a Lie affebra")
        return la
    lie = LieTernary(aff, sf.bracket3)
    validate_lie_truss(lie).require("not a heap of Lie affebras")
    return lie


def load_structure(obj: dict):
    return realize_structure(parse_structure(obj))


def _carrier_fields(heap: FiniteHeap) -> dict:
    if heap.provenance == "from_group" and heap.base.orders is not None:
        return {"group": {"orders": list(heap.base.orders)}}
    return {"heap_table": [int(x) for x in heap.table().ravel()]}


def _affine_fields(aff: AffineStructure) -> dict:
    out = _carrier_fields(aff.heap)
    out["field_p"] = aff.field.p
    out["lambda"] = [int(x) for x in aff.lam.ravel()]
    return out


def dump_structure(struct) -> dict:
    """Serialize a structure to its JSON object form."""
    if isinstance(struct, AbelianGroup):
        if struct.orders is not None:
            return {"kind": "group", "group": {"orders": list(struct.orders)}}
        return {"kind": "group", "add_table": [int(x) for x in struct.add.ravel()]}
    if isinstance(struct, FiniteHeap):
        return {"kind": "heap", **_carrier_fields(struct)}
    if isinstance(struct, TrussStructure):
        return {"kind": "truss", **_carrier_fields(struct.heap),
                "mul_table": [int(x) for x in struct.mul.ravel()]}
    if isinstance(struct, AffineStructure):
        return {"kind": "affine", **_affine_fields(struct)}
    if isinstance(struct, LieAffebra):
        return {"kind": "lie_affebra", **_affine_fields(struct.affine),
                "origin": struct.origin,
                "bracket2": [int(x) for x in struct.bracket2.ravel()]}
    if isinstance(struct, LieTernary):
        flat = [int(x) for x in struct.bracket3.ravel()]
        if struct.affine is not None:
            return {"kind": "heap_lie_affebra", **_affine_fields(struct.affine),
                    "bracket3": flat}
        return {"kind": "lie_truss", **_carrier_fields(struct.heap), "bracket3": flat}
    if isinstance(struct, LieRingView):
        if struct.group.orders is not None and struct.group.identity == 0:
            carrier: dict = {"group": {"orders": list(struct.group.orders)}}
        else:
            carrier = {"add_table": [int(x) for x in struct.group.add.ravel()]}
        return {"kind": "lie_ring", **carrier,
                "bracket2": [int(x) for x in struct.bracket.ravel()]}
    raise StructureError(f"cannot serialize {type(struct).__name__}")
