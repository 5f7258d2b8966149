"""Affine spaces over prime fields as heaps with a scalar action.

The scalar action lam(alpha, a, b) = a + alpha * (vector from a to b)
makes an affine space out of a heap with no origin chosen.  Vector spaces
reappear only when you pick one.
"""
import numpy as np

from heaptruss import (
    affine_from_vector_action,
    arrow,
    linearize,
    validate_affine,
    validate_affine_hom,
    vector_space_at,
)

# the affine line over F3
line = affine_from_vector_action(3, 1)
print("lam(2, 1, 0) on the F3 line:", line.scale(2, 1, 0))
print("axioms pass:", validate_affine(line).ok)

# every point is a legitimate origin, each giving a vector space
for o in range(3):
    view = vector_space_at(line, o)
    print(f"origin {o}: scalar table {view.scal.tolist()}")

# arrows: the unique vector moving a to b, living at the chosen origin
plane = affine_from_vector_action(5, 2)
o, a, b = 7, 3, 21
v = arrow(plane, o, a, b)
print(f"\narrow from {a} to {b} at origin {o} is {v};",
      "a + v =", plane.heap.retract_at(o).op(a, v), "= b")

# affine maps linearize once origins are fixed on both sides
f = np.array([(2 * x + 1) % 3 for x in range(3)])
print("\nx -> 2x+1 is an affine endomorphism:", validate_affine_hom(f, line, line).ok)
print("its linear part at origin 0:", linearize(f, line, line, 0, 0).tolist())

# on a 3-point line *every* permutation is affine (AGL(1,3) is all of S3):
swap = np.array([1, 0, 2])
print("the 0<->1 swap equals x -> 2x+1, hence affine:",
      validate_affine_hom(swap, line, line).ok)
# squaring is not affine
print("x -> x^2 is affine:", validate_affine_hom(np.array([0, 1, 1]), line, line).ok)
