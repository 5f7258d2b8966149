"""Exact normal forms in the free abelian heap and the free truss.

The free truss on a set X is realized inside the integer semigroup algebra
on nonempty words over X as the slice of coefficient-sum one: heap words
normalize to alternating integer combinations and the distributive laws
force products to expand bilinearly, so equality of normal forms decides
the free theory.  Coefficients are exact Python integers; nested products
square term counts and can push coefficients past machine range.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .expressions import Bracket3, HeapOp, Mul, Var, variables
from .heaps import FiniteHeap
from .lie import LieTernary
from .reports import StructureError, TheoryError
from .truss import TrussStructure

FREE_HEAP = "free-heap"
FREE_TRUSS = "free-truss"


class FreeElement:
    """Integer combination of generators (free heap) or words (free truss)
    with coefficient sum one."""

    def __init__(self, theory: str, coeffs: dict):
        if theory not in (FREE_HEAP, FREE_TRUSS):
            raise TheoryError(f"unknown theory {theory!r}")
        if sum(coeffs.values()) != 1:
            raise StructureError("free element coefficients must sum to 1")
        self.theory = theory
        self.coeffs = dict(coeffs)

    def terms(self):
        return sorted(self.coeffs.items(), key=lambda kv: _basis_key(kv[0]))

    def __eq__(self, other):
        if not isinstance(other, FreeElement):
            return NotImplemented
        return self.theory == other.theory and self.coeffs == other.coeffs

    def to_text(self) -> str:
        parts = []
        for basis, coeff in self.terms():
            magnitude = "" if abs(coeff) == 1 else f"{abs(coeff)}*"
            parts.append(f"{'+' if coeff > 0 else '-'}{magnitude}{_basis_text(basis)}")
        return " ".join(parts)

    def __repr__(self):
        return f"FreeElement({self.theory}: {self.to_text()})"


def _basis_key(basis):
    if isinstance(basis, tuple):
        return (len(basis), basis)
    return basis


def _basis_text(basis) -> str:
    if isinstance(basis, tuple):
        return "*".join(basis)
    return basis


@dataclass
class Verdict:
    equal: bool
    lhs_nf: FreeElement
    rhs_nf: FreeElement
    diff: dict


def _merge(target: dict, source: dict, sign: int) -> None:
    for key, coeff in source.items():
        new = target.get(key, 0) + sign * coeff
        if new:
            target[key] = new
        else:
            target.pop(key, None)


def _heap_collect(expr, sign: int, out: dict) -> None:
    if isinstance(expr, Var):
        out[expr.name] = out.get(expr.name, 0) + sign
        if out[expr.name] == 0:
            del out[expr.name]
        return
    if isinstance(expr, HeapOp):
        for i, item in enumerate(expr.items):
            _heap_collect(item, sign if i % 2 == 0 else -sign, out)
        return
    raise TheoryError("the free heap has no products or brackets; "
                      "use the free-truss theory or expand the macro")


def normalize_free_heap(expr) -> FreeElement:
    """Alternating-sum normal form over the generators."""
    out: dict = {}
    _heap_collect(expr, 1, out)
    return FreeElement(FREE_HEAP, out)


def _truss_collect(expr) -> dict:
    if isinstance(expr, Var):
        return {(expr.name,): 1}
    if isinstance(expr, HeapOp):
        out: dict = {}
        for i, item in enumerate(expr.items):
            _merge(out, _truss_collect(item), 1 if i % 2 == 0 else -1)
        return out
    if isinstance(expr, Mul):
        left = _truss_collect(expr.left)
        right = _truss_collect(expr.right)
        out = {}
        for wl, cl in left.items():
            for wr, cr in right.items():
                key = wl + wr
                new = out.get(key, 0) + cl * cr
                if new:
                    out[key] = new
                else:
                    out.pop(key, None)
        return out
    raise TheoryError("expand ternary brackets before truss normalization")


def normalize_free_truss(expr) -> FreeElement:
    """Normal form in the integer span of nonempty generator words."""
    return FreeElement(FREE_TRUSS, _truss_collect(expr))


def normalize(expr, theory: str) -> FreeElement:
    if theory == FREE_HEAP:
        return normalize_free_heap(expr)
    if theory == FREE_TRUSS:
        return normalize_free_truss(expand_lie_macro(expr))
    raise TheoryError(f"unknown theory {theory!r}")


def expand_lie_macro(expr, mode: str = "truss-commutator", structure=None):
    """Rewrite {a,b,c} to [a*c, c*a, b], innermost first.

    In "table" mode brackets are left intact for evaluation against a
    concrete structure, which must then be supplied.
    """
    if mode == "table":
        if structure is None:
            raise TheoryError("table mode needs a structure with a bracket table")
        return expr
    if mode != "truss-commutator":
        raise TheoryError(f"unknown macro mode {mode!r}")
    if isinstance(expr, Var):
        return expr
    if isinstance(expr, HeapOp):
        return HeapOp(tuple(expand_lie_macro(item) for item in expr.items))
    if isinstance(expr, Mul):
        return Mul(expand_lie_macro(expr.left), expand_lie_macro(expr.right))
    if isinstance(expr, Bracket3):
        first = expand_lie_macro(expr.first)
        middle = expand_lie_macro(expr.middle)
        last = expand_lie_macro(expr.last)
        return HeapOp((Mul(first, last), Mul(last, first), middle))
    raise TypeError(f"not an expression: {expr!r}")


def prove_identity(lhs, rhs, theory: str) -> Verdict:
    """Decide an identity of the free theory by comparing normal forms."""
    lhs_nf = normalize(lhs, theory)
    rhs_nf = normalize(rhs, theory)
    diff = dict(lhs_nf.coeffs)
    _merge(diff, rhs_nf.coeffs, -1)
    return Verdict(not diff, lhs_nf, rhs_nf, diff)


# -- concrete evaluation -------------------------------------------------


def _heap_of(structure) -> FiniteHeap:
    if isinstance(structure, FiniteHeap):
        return structure
    if isinstance(structure, (TrussStructure, LieTernary)):
        return structure.heap
    raise StructureError(f"cannot evaluate inside {type(structure).__name__}")


def eval_expr(expr, structure, env: dict) -> int:
    """Evaluate an expression in a finite structure under an assignment."""
    if isinstance(expr, Var):
        if expr.name not in env:
            raise StructureError(f"variable {expr.name!r} has no value")
        return int(env[expr.name])
    if isinstance(expr, HeapOp):
        return _heap_of(structure).word([eval_expr(x, structure, env)
                                         for x in expr.items])
    if isinstance(expr, Mul):
        if not isinstance(structure, TrussStructure):
            raise TheoryError("products need a truss")
        return structure.times(eval_expr(expr.left, structure, env),
                               eval_expr(expr.right, structure, env))
    if isinstance(expr, Bracket3):
        if not isinstance(structure, LieTernary):
            raise TheoryError("table brackets need a ternary Lie structure")
        return structure.bracket(eval_expr(expr.first, structure, env),
                                 eval_expr(expr.middle, structure, env),
                                 eval_expr(expr.last, structure, env))
    raise TypeError(f"not an expression: {expr!r}")


def eval_free_element(element: FreeElement, structure, env: dict) -> int:
    """Evaluate a normal form: an affine integer combination is the same in
    every retract, so it is computed in the backing group directly."""
    heap = _heap_of(structure)
    group = heap.base
    acc = group.identity
    for basis, coeff in element.terms():
        if element.theory == FREE_HEAP:
            value = int(env[basis])
        else:
            value = int(env[basis[0]])
            for name in basis[1:]:
                if not isinstance(structure, TrussStructure):
                    raise TheoryError("word basis evaluation needs a truss")
                value = structure.times(value, int(env[name]))
        acc = group.op(acc, group.scalar(coeff, value))
    return acc


@dataclass
class Counterexample:
    structure: str
    assignment: dict
    lhs: int
    rhs: int


def random_falsify(lhs, rhs, samples: int = 200, seed: int = 0,
                   structures=None) -> Counterexample | None:
    """Hunt for a refuting assignment in random small structures.

    Brackets are expanded through the commutator macro, so a returned
    counterexample is a genuine refutation in some truss (or heap) of
    order at most eight.
    """
    from . import catalog

    lhs = expand_lie_macro(lhs)
    rhs = expand_lie_macro(rhs)
    names = sorted(variables(lhs) | variables(rhs))
    if len(names) > 8:
        raise StructureError("falsification supports at most 8 variables")
    needs_mul = _mentions_mul(lhs) or _mentions_mul(rhs)
    if structures is None:
        structures = (catalog.falsifier_truss_pool() if needs_mul
                      else catalog.falsifier_heap_pool())
    rng = random.Random(seed)
    for _ in range(samples):
        name, struct = structures[rng.randrange(len(structures))]
        n = _heap_of(struct).n
        env = {v: rng.randrange(n) for v in names}
        left = eval_expr(lhs, struct, env)
        right = eval_expr(rhs, struct, env)
        if left != right:
            return Counterexample(name, env, left, right)
    return None


def _mentions_mul(expr) -> bool:
    if isinstance(expr, Var):
        return False
    if isinstance(expr, Mul):
        return True
    if isinstance(expr, HeapOp):
        return any(_mentions_mul(x) for x in expr.items)
    if isinstance(expr, Bracket3):
        return any(_mentions_mul(x) for x in (expr.first, expr.middle, expr.last))
    raise TypeError(f"not an expression: {expr!r}")
