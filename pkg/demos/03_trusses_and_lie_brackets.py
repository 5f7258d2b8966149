"""Trusses and the ternary Lie brackets they generate.

A truss is a heap with an associative multiplication distributing over the
ternary operation.  Every truss carries the bracket {a,b,c} = [ac, ca, b],
which satisfies the five-variable strong Jacobi identity; fixing a point
retracts any Lie truss to an honest Lie ring.
"""
import numpy as np

from heaptruss import (
    affebra_to_ternary,
    bracket_from_truss,
    retract_lie_ring,
    strengthen_bracket,
    ternary_to_affebra,
    validate_lie_affebra,
    validate_lie_ring,
    validate_lie_truss,
    validate_strong_jacobi,
    validate_truss,
)
from heaptruss.catalog import (
    addition_truss,
    constant_truss,
    ring_truss,
    solvable_affebra,
    upper_triangular_truss,
)

# trusses beyond rings: addition as multiplication, constants
for name, truss in (("Z6 ring", ring_truss(6)),
                    ("(Z4, a*b = a+b)", addition_truss(4)),
                    ("(Z4, a*b = 3)", constant_truss(4, 3))):
    print(f"{name}: truss axioms pass: {validate_truss(truss).ok}")

# a noncommutative example: upper-triangular 2x2 matrices over F2
ut2 = upper_triangular_truss()
lie = bracket_from_truss(ut2)
print("\nUT2(F2) bracket is a Lie truss:", validate_lie_truss(lie).ok)
print("and satisfies the strong Jacobi identity:", validate_strong_jacobi(lie).ok)
g = ut2.heap.base
e11, e12 = g.encode((1, 0, 0)), g.encode((0, 1, 0))
print("{E11, 0, E12} =", lie.bracket(e11, 0, e12), "= E12 =", e12)

# commutative trusses give the trivial bracket {a,b,c} = b
flat = bracket_from_truss(addition_truss(4))
print("\ncommutative truss bracket collapses to the middle slot:",
      bool((flat.bracket3 == np.arange(4)[None, :, None]).all()))

# a Lie algebra becomes a basepoint-free ternary structure and back
la = solvable_affebra(3)                      # [e1, e2] = e2 over F3
ternary = affebra_to_ternary(la)
print("\n[e1,e2]=e2 over F3 as a heap of Lie affebras:",
      validate_lie_truss(ternary).ok, "/ strong:",
      validate_strong_jacobi(ternary).ok)
back = ternary_to_affebra(ternary, 0)
print("converting back at the origin recovers the bracket exactly:",
      np.array_equal(back.bracket2, la.bracket2))
print("any other origin still gives a Lie affebra:",
      validate_lie_affebra(ternary_to_affebra(ternary, 5)).ok)

# every basepoint retracts the ternary structure to a Lie algebra
ring = retract_lie_ring(ternary, 4)
print("retract at 4 is a Lie ring:", validate_lie_ring(ring).ok)

# and any Lie truss can be strengthened at a point
strong = strengthen_bracket(ternary, 7)
print("strengthened at 7:", validate_strong_jacobi(strong).ok)
