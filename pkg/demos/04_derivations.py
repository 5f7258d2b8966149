"""Derivations of trusses and their Lie truss.

A derivation is a heap endomorphism D with D(ab) = [D(a)b, ab, aD(b)].
The derivations of a truss close under the pointwise heap operation and
under the bracket {D1, D2, D3} = [D1 D3, D3 D1, D2], forming a Lie truss.
"""
import numpy as np

from heaptruss import (
    derivations_lie_truss,
    enumerate_derivations,
    validate_derivation,
    validate_lie_truss,
    validate_strong_jacobi,
)
from heaptruss.catalog import addition_truss, ring_truss, upper_triangular_truss

# the field F2 admits only the identity derivation
print("derivations of the F2 ring:", enumerate_derivations(ring_truss(2)).tolist())

# with a*b = a+b on Z4 the Leibniz rule degenerates to additivity
z4 = addition_truss(4)
ders = enumerate_derivations(z4)
print("derivations of (Z4, a+b):", ders.tolist())

algebra = derivations_lie_truss(z4, ders)
print("their Lie truss has", algebra.lie.n, "elements;",
      "valid:", validate_lie_truss(algebra.lie).ok,
      "strong:", validate_strong_jacobi(algebra.lie).ok)
print("compositions commute here, so {D1,D2,D3} = D2:",
      bool((algebra.lie.bracket3 == np.arange(4)[None, :, None]).all()))

# a noncommutative host
ut2 = upper_triangular_truss()
ut_ders = enumerate_derivations(ut2)
print("\nUT2(F2) has", ut_ders.shape[0], "derivations")
ut_algebra = derivations_lie_truss(ut2, ut_ders)
print("their Lie truss is valid and strong:",
      validate_lie_truss(ut_algebra.lie).ok,
      validate_strong_jacobi(ut_algebra.lie).ok)

# the Leibniz rule really filters: a shift map fails on the F2 ring
print("\nx -> x+1 on the F2 ring:",
      validate_derivation(np.array([1, 0]), ring_truss(2)).to_json())
