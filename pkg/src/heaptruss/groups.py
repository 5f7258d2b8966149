"""Finite abelian groups with dense operation tables.

Elements are plain integers 0..n-1.  A group built as a direct product of
cyclic factors uses mixed-radix encoding with the first factor varying
fastest; a group recovered from a raw Cayley table keeps the labeling the
table came with.  Carriers are capped at 64 so that every sweep in the
package stays desk-sized.
"""
from __future__ import annotations

import itertools
import math

import numpy as np

from .reports import (
    BudgetError,
    StructureError,
    ViolationReport,
    add_mismatches,
)

DTYPE = np.int16
MAX_CARRIER = 64

# enumerating endomorphisms walks the product of annihilator sets; cap it
ENDO_BUDGET = 1 << 21


def as_table(table, shape, what: str) -> np.ndarray:
    arr = np.asarray(table)
    if arr.shape != shape:
        raise StructureError(f"{what}: expected shape {shape}, got {arr.shape}")
    if arr.size and (arr.dtype.kind not in "iu" or arr.min() < 0 or arr.max() >= shape[-1]):
        raise StructureError(f"{what}: entries must be integers in 0..{shape[-1] - 1}")
    return arr.astype(DTYPE)


def validate_group_table(table, collect_all: bool = False) -> ViolationReport:
    """Exhaustively check that a Cayley table is an abelian group."""
    arr = np.asarray(table)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise StructureError("group table must be square")
    n = arr.shape[0]
    if n > MAX_CARRIER:
        raise StructureError(f"carrier size {n} exceeds the {MAX_CARRIER} limit")
    add = as_table(arr, (n, n), "group table")
    report = ViolationReport()

    add_mismatches(report, "group-commutativity", add, add.T, collect_all)
    if not report.ok and not collect_all:
        return report

    lhs = add[add]                # (a, b, c) -> (a+b)+c
    rhs = add[:, add]             # (a, b, c) -> a+(b+c)
    add_mismatches(report, "group-associativity", lhs, rhs, collect_all)
    if not report.ok and not collect_all:
        return report

    idx = np.arange(n, dtype=DTYPE)
    identities = np.nonzero((add == idx[None, :]).all(axis=1))[0]
    if identities.size == 0:
        report.add("group-identity", ())
        return report
    e = int(identities[0])

    has_inverse = (add == e).any(axis=1)
    for a in np.nonzero(~has_inverse)[0]:
        report.add("group-inverse", (int(a),))
        if not collect_all:
            break
    return report


class AbelianGroup:
    """A finite abelian group given by its addition table.

    `orders` is kept when the group was built as a product of cyclic
    factors; it drives element encoding and endomorphism enumeration.
    """

    def __init__(self, add: np.ndarray, identity: int, orders=None):
        self.add = add
        self.identity = int(identity)
        self.orders = None if orders is None else tuple(int(m) for m in orders)
        self.n = add.shape[0]
        eq = np.nonzero(add[np.arange(self.n), :] == identity)
        # inverse of a is the unique b with a+b = identity
        self.neg = np.empty(self.n, dtype=DTYPE)
        self.neg[eq[0]] = eq[1]
        self._scalars: np.ndarray | None = None
        self._digits: np.ndarray | None = None

    # -- construction -------------------------------------------------

    @classmethod
    def direct_product(cls, orders) -> "AbelianGroup":
        orders = tuple(int(m) for m in orders)
        if any(m < 2 for m in orders):
            raise StructureError("cyclic factor orders must be at least 2")
        n = math.prod(orders)
        if n > MAX_CARRIER:
            raise StructureError(f"carrier size {n} exceeds the {MAX_CARRIER} limit")
        digits = _digit_matrix(orders)
        mods = np.array(orders, dtype=np.int64)
        summed = (digits[:, None, :] + digits[None, :, :]) % mods
        add = _encode_digits(summed, orders).astype(DTYPE)
        group = cls(add, 0, orders)
        group._digits = digits
        return group

    @classmethod
    def cyclic(cls, n: int) -> "AbelianGroup":
        return cls.direct_product((n,))

    @classmethod
    def from_table(cls, table, collect_all: bool = False) -> "AbelianGroup":
        report = validate_group_table(table, collect_all)
        report.require("not an abelian group table")
        arr = np.asarray(table).astype(DTYPE)
        n = arr.shape[0]
        idx = np.arange(n, dtype=DTYPE)
        e = int(np.nonzero((arr == idx[None, :]).all(axis=1))[0][0])
        return cls(arr, e)

    # -- basic arithmetic ---------------------------------------------

    def op(self, a: int, b: int) -> int:
        return int(self.add[a, b])

    def sub(self, a, b):
        return self.add[a, self.neg[b]]

    @property
    def exponent(self) -> int:
        if self.orders is not None:
            return math.lcm(*self.orders) if self.orders else 1
        return self._scalar_block().shape[0]

    def _scalar_block(self) -> np.ndarray:
        # S[k, a] = k*a; rows repeat with period = group exponent
        if self._scalars is None:
            rows = [np.full(self.n, self.identity, dtype=DTYPE)]
            idx = np.arange(self.n, dtype=DTYPE)
            cur = self.add[rows[0], idx]
            while not np.array_equal(cur, rows[0]):
                rows.append(cur)
                cur = self.add[cur, idx]
            self._scalars = np.stack(rows)
        return self._scalars

    def scalar_table(self, k: int) -> np.ndarray:
        block = self._scalar_block()
        return block[k % block.shape[0]]

    def scalar(self, k: int, a: int) -> int:
        return int(self.scalar_table(k)[a])

    # -- mixed-radix encoding -----------------------------------------

    def digit_matrix(self) -> np.ndarray:
        if self.orders is None:
            raise StructureError("element digits need a product-of-cyclics group")
        if self._digits is None:
            self._digits = _digit_matrix(self.orders)
        return self._digits

    def decode(self, a: int) -> tuple[int, ...]:
        return tuple(int(d) for d in self.digit_matrix()[a])

    def encode(self, digits) -> int:
        digits = np.asarray(digits, dtype=np.int64) % np.array(self.orders)
        return int(_encode_digits(digits, self.orders))

    def generators(self) -> list[int]:
        orders = self.orders
        if orders is None:
            raise StructureError("generators need a product-of-cyclics group")
        gens = []
        for i in range(len(orders)):
            unit = [0] * len(orders)
            unit[i] = 1
            gens.append(self.encode(unit))
        return gens

    def killed_by(self, m: int) -> np.ndarray:
        """Elements x with m*x = identity, ascending."""
        return np.nonzero(self.scalar_table(m) == self.identity)[0].astype(DTYPE)

    # -- structure maps ------------------------------------------------

    def endomorphisms(self) -> np.ndarray:
        """All additive self-maps, as an (m, n) array of value tables.

        Enumeration walks generator images in lexicographic order, so the
        result is deterministic.
        """
        if self.orders is None:
            raise StructureError("endomorphism enumeration needs cyclic factor orders")
        orders = self.orders
        if not orders:
            return np.zeros((1, 1), dtype=DTYPE)
        anns = [self.killed_by(m) for m in orders]
        count = math.prod(len(a) for a in anns)
        if count * self.n > ENDO_BUDGET:
            raise BudgetError(f"{count} endomorphism candidates exceed the budget")
        digits = self.digit_matrix()
        block = self._scalar_block()
        period = block.shape[0]
        maps = np.full((count, self.n), self.identity, dtype=DTYPE)
        combos = np.array(list(itertools.product(*anns)), dtype=DTYPE)
        for i in range(len(orders)):
            contrib = block[digits[:, i] % period][:, combos[:, i]].T
            maps = self.add[maps, contrib]
        return maps

    def automorphisms(self) -> np.ndarray:
        maps = self.endomorphisms()
        sorted_rows = np.sort(maps, axis=1)
        bij = (sorted_rows == np.arange(self.n, dtype=DTYPE)[None, :]).all(axis=1)
        return maps[bij]

    # -- misc -----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, AbelianGroup):
            return NotImplemented
        return self.identity == other.identity and np.array_equal(self.add, other.add)

    def __hash__(self):
        return hash((self.identity, self.add.tobytes()))

    def __repr__(self):
        if self.orders is not None:
            name = " x ".join(f"Z{m}" for m in self.orders) or "Z1"
            return f"AbelianGroup({name})"
        return f"AbelianGroup(n={self.n}, from table)"


def _digit_matrix(orders) -> np.ndarray:
    n = math.prod(orders) if orders else 1
    digits = np.zeros((n, len(orders)), dtype=DTYPE)
    idx = np.arange(n)
    for i, m in enumerate(orders):
        digits[:, i] = idx % m
        idx = idx // m
    return digits


def _encode_digits(digits, orders):
    stride = 1
    out = np.zeros(np.asarray(digits).shape[:-1], dtype=np.int64)
    for i, m in enumerate(orders):
        out = out + np.asarray(digits)[..., i] * stride
        stride *= m
    return out
