"""Heaps from groups, retracts, and the word calculus.

An abelian heap is what is left of an abelian group when you forget which
element is zero: a ternary operation [a, b, c] that behaves like a - b + c.
This script builds heaps, recovers groups at arbitrary basepoints, and
plays with the cancellation and reshuffling rules for odd words.
"""
from heaptruss import AbelianGroup, FiniteHeap, eval_word, heap_from_group, validate_heap

# the heap of Z4: [a, b, c] = a - b + c mod 4
z4 = AbelianGroup.cyclic(4)
heap = heap_from_group(z4)
print("[1, 2, 3] in the Z4 heap:", heap.op(1, 2, 3))
print("Mal'cev collapse [a, a, b] = b:", heap.op(2, 2, 3))

# the same carrier becomes a group again at *any* basepoint
for o in range(4):
    retract = heap.retract_at(o)
    print(f"retract at {o}: neutral element {retract.identity}, "
          f"2 + 3 = {retract.op(2, 3)}")

# a heap word of any odd length is well-defined without brackets
z5 = heap_from_group(AbelianGroup.cyclic(5))
word = [1, 2, 3, 4, 0]
print("\n[1,2,3,4,0] over Z5 =", eval_word(z5, word), "(alternating sum 1-2+3-4+0)")

# cancellation: adjacent duplicates vanish
print("[3,1,1,2,0] =", eval_word(z5, [3, 1, 1, 2, 0]), "= [3,2,0] =",
      eval_word(z5, [3, 2, 0]))

# reshuffling: odd positions may permute among themselves, even likewise
print("[1,2,3,4,0] =", eval_word(z5, [3, 4, 0, 2, 1]),
      "after reshuffling odd/even slots")

# raw ternary tables are validated exhaustively, then stored as a group
table = heap.table()
print("\nZ4 heap table passes the axiom sweep:", validate_heap(table).ok)
rebuilt = FiniteHeap.from_table(table)
print("rebuilt from its table, retracted at 0:", rebuilt.retract_at(0) == z4)

# one wrong entry is caught with a witness
broken = table.copy()
broken[1, 2, 3] = 0
report = validate_heap(broken)
first = report.violations[0]
print(f"corrupting one cell: axiom {first.axiom}, witness {first.witness}")
