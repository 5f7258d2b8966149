import numpy as np
import pytest

from heaptruss import (
    AbelianGroup,
    BudgetError,
    SearchSpec,
    TrussStructure,
    canonical_form,
    canonical_table,
    enumerate_lie_brackets,
    enumerate_rings,
    enumerate_trusses,
    heap_from_group,
    reference_comparison,
    search_weak_not_strong,
    validate_lie_truss,
    validate_strong_jacobi,
    validate_truss,
)
from heaptruss.catalog import cyclic_heap
from heaptruss.search import (
    alternating_biadditive_tables,
    biadditive_tables,
    outer_alternating_triadditive_tables,
)

from _oracles import is_lie_bracket, lie_brackets_on_z2, mod_heap, trusses_on_zn


def spec(group, kind, **kw):
    return SearchSpec(group=group, kind=kind, **kw)


def tables(structs):
    return [s.mul.tolist() if isinstance(s, TrussStructure) else s.bracket3.tolist()
            for s in structs]


def test_biadditive_enumeration_counts():
    assert biadditive_tables(AbelianGroup.cyclic(2)).shape[0] == 2
    assert biadditive_tables(AbelianGroup.cyclic(4)).shape[0] == 4
    assert biadditive_tables(AbelianGroup.direct_product((2, 2))).shape[0] == 256
    assert alternating_biadditive_tables(AbelianGroup.cyclic(5)).shape[0] == 1
    assert alternating_biadditive_tables(AbelianGroup.direct_product((2, 2))).shape[0] == 4
    assert outer_alternating_triadditive_tables(AbelianGroup.cyclic(8)).shape[0] == 1
    assert outer_alternating_triadditive_tables(
        AbelianGroup.direct_product((2, 2))).shape[0] == 16


def test_biadditive_tables_are_biadditive():
    g = AbelianGroup.direct_product((2, 4))
    stack = biadditive_tables(g)
    assert stack.shape[0] == 512
    sample = stack[::37]
    for b in sample:
        assert np.array_equal(b[g.add], g.add[b[:, None, :], b[None, :, :]])
        assert np.array_equal(b[:, g.add], g.add[b[:, :, None], b[:, None, :]])


def test_z2_trusses_match_naive_all_tables():
    found = enumerate_trusses(spec(AbelianGroup.cyclic(2), "truss"))
    assert len(found) == 8
    assert sorted(tables(found)) == sorted(trusses_on_zn(2))
    classes = {canonical_form(t) for t in found}
    assert len(classes) == 5


def test_z3_trusses_match_naive_all_tables():
    found = enumerate_trusses(spec(AbelianGroup.cyclic(3), "truss"))
    assert sorted(tables(found)) == sorted(trusses_on_zn(3))


def test_truss_strategies_agree():
    for orders in ((2,), (3,), (4,), (2, 2)):
        g = AbelianGroup.direct_product(orders)
        structured = tables(enumerate_trusses(spec(g, "truss", strategy="structured")))
        rows = tables(enumerate_trusses(spec(g, "truss", strategy="rows")))
        solved = tables(enumerate_trusses(spec(g, "truss", strategy="solved")))
        assert structured == rows == solved


def test_klein_truss_and_ring_counts():
    g = AbelianGroup.direct_product((2, 2))
    trusses = enumerate_trusses(spec(g, "truss"))
    assert len(trusses) == 280
    assert len({canonical_form(t) for t in trusses}) == 23
    rings = enumerate_rings(spec(g, "ring"))
    assert len(rings) == 28
    assert len({canonical_form(r) for r in rings}) == 8
    ring_set = {str(t) for t in tables(rings)}
    truss_set = {str(t) for t in tables(trusses)}
    assert ring_set <= truss_set


def test_z2_rings():
    rings = enumerate_rings(spec(AbelianGroup.cyclic(2), "ring"))
    assert sorted(tables(rings)) == [[[0, 0], [0, 0]], [[0, 0], [0, 1]]]
    assert len({canonical_form(r) for r in rings}) == 2


def test_z3_ring_count():
    rings = enumerate_rings(spec(AbelianGroup.cyclic(3), "ring"))
    assert len(rings) == 3            # 1*1 may be 0, 1 or 2
    assert len({canonical_form(r) for r in rings}) == 2


def test_ring_counts_invariant_under_factor_order():
    a = enumerate_rings(spec(AbelianGroup.direct_product((2, 4)), "ring"))
    b = enumerate_rings(spec(AbelianGroup.direct_product((4, 2)), "ring"))
    assert len(a) == len(b)
    assert (len({canonical_form(r) for r in a})
            == len({canonical_form(r) for r in b}))


def test_z2_lie_brackets_match_naive_all_tables():
    found = enumerate_lie_brackets(spec(AbelianGroup.cyclic(2), "lie-truss"))
    naive = lie_brackets_on_z2()
    assert len(found) == 4 and len(naive) == 4
    assert sorted(tables(found)) == sorted(naive)
    assert len({canonical_form(l) for l in found}) == 3


def test_z3_lie_brackets_match_triaffine_oracle():
    import itertools
    found = enumerate_lie_brackets(spec(AbelianGroup.cyclic(3), "lie-truss"))
    idx = np.arange(3)
    a, b, c = np.meshgrid(idx, idx, idx, indexing="ij")
    hop = mod_heap(3)
    oracle = set()
    for coeffs in itertools.product(range(3), repeat=8):
        t_, p, q, r, u, v, w, x = coeffs
        tab = (t_ + p * a + q * b + r * c + u * a * b + v * a * c + w * b * c
               + x * a * b * c) % 3
        if is_lie_bracket(tab.tolist(), 3, hop):
            oracle.add(str(tab.tolist()))
    assert oracle == {str(t) for t in tables(found)}
    assert len(found) == 9


def test_z4_lie_bracket_count_and_validity():
    found = enumerate_lie_brackets(spec(AbelianGroup.cyclic(4), "lie-truss"))
    assert len(found) == 16
    for lie in found:
        assert validate_lie_truss(lie).ok


def test_canonical_form_basics():
    h2 = cyclic_heap(2)
    and_t = np.array([[0, 0], [0, 1]])
    or_t = np.array([[0, 1], [1, 1]])
    left = np.array([[0, 0], [1, 1]])
    right = np.array([[0, 1], [0, 1]])
    assert canonical_table(h2, and_t) == canonical_table(h2, or_t)
    assert canonical_table(h2, left) != canonical_table(h2, right)
    rep = np.frombuffer(canonical_table(h2, or_t), dtype=np.uint8).reshape(2, 2)
    assert canonical_table(h2, rep) == canonical_table(h2, or_t)


def test_canonical_form_is_isomorphism_invariant():
    g = AbelianGroup.direct_product((2, 2))
    h = heap_from_group(g)
    trusses = enumerate_trusses(spec(g, "truss", limit=12))
    autos = h.automorphisms()
    rng = np.random.default_rng(5)
    for t in trusses:
        phi = autos[rng.integers(0, autos.shape[0])]
        inv = np.empty_like(phi)
        inv[phi] = np.arange(g.n, dtype=phi.dtype)
        relabeled = inv[t.mul[phi[:, None], phi[None, :]]]
        assert canonical_table(h, relabeled) == canonical_form(t)


def test_up_to_iso_representatives_are_canonical():
    g = AbelianGroup.cyclic(2)
    reps = enumerate_trusses(spec(g, "truss", up_to_iso=True))
    assert len(reps) == 5
    for rep in reps:
        assert canonical_form(rep) == rep.mul.astype(np.uint8).tobytes()
        assert validate_truss(rep).ok


def test_limit_and_determinism_across_workers():
    g = AbelianGroup.direct_product((2, 2))
    one = enumerate_trusses(spec(g, "truss", workers=1))
    four = enumerate_trusses(spec(g, "truss", workers=4))
    assert [t.mul.tobytes() for t in one] == [t.mul.tobytes() for t in four]
    limited = enumerate_trusses(spec(g, "truss", limit=7))
    assert tables(limited) == tables(one)[:7]
    lone = enumerate_lie_brackets(spec(AbelianGroup.cyclic(4), "lie-truss", workers=1))
    lfour = enumerate_lie_brackets(spec(AbelianGroup.cyclic(4), "lie-truss", workers=4))
    assert [l.bracket3.tobytes() for l in lone] == [l.bracket3.tobytes() for l in lfour]


def test_budget_gates():
    with pytest.raises(BudgetError):
        SearchSpec(group=AbelianGroup.cyclic(16), kind="truss")
    g9 = AbelianGroup.direct_product((3, 3))
    with pytest.raises(BudgetError):
        enumerate_trusses(spec(g9, "truss"))
    with pytest.raises(BudgetError):
        enumerate_lie_brackets(spec(AbelianGroup.direct_product((2, 4)), "lie-truss"))


def test_weak_not_strong_on_cyclic_groups_is_empty():
    for n in (2, 3, 4):
        assert search_weak_not_strong(spec(AbelianGroup.cyclic(n), "lie-truss")) == []


@pytest.mark.slow
def test_weak_not_strong_counterexamples_on_klein():
    g = AbelianGroup.direct_product((2, 2))
    found = enumerate_lie_brackets(spec(g, "lie-truss"))
    assert len(found) == 10720
    gaps = search_weak_not_strong(spec(g, "lie-truss"))
    assert len(gaps) == 6120
    lie, report = gaps[0]
    assert validate_lie_truss(lie).ok
    assert not validate_strong_jacobi(lie).ok
    a, b, c, d, e = report.violations[0].witness
    b3 = lie.bracket3
    heap = lie.heap

    def w5(x1, x2, x3, x4, x5):
        return heap.word([x1, x2, x3, x4, x5])

    lhs = int(b3[b3[a, d, b], e, c])
    rhs = w5(int(b3[d, e, a]), int(b3[b3[b, d, c], e, a]), int(b3[d, e, b]),
             int(b3[b3[c, d, a], e, b]), int(b3[d, e, c]))
    assert lhs != rhs


@pytest.mark.slow
def test_klein_square_odd_prime_classification():
    g = AbelianGroup.direct_product((3, 3))
    trusses = enumerate_trusses(spec(g, "truss", allow_large=True, workers=2))
    assert len(trusses) == 1940
    classes = len({canonical_form(t) for t in trusses})
    assert reference_comparison(g, "truss", classes) == {
        "reference_classes": 23, "matches_reference": True}
    rings = enumerate_rings(spec(g, "ring"))
    ring_classes = len({canonical_form(r) for r in rings})
    assert reference_comparison(g, "ring", ring_classes) == {
        "reference_classes": 8, "matches_reference": True}


def test_reference_comparison_scope():
    assert reference_comparison(AbelianGroup.cyclic(4), "truss", 5) is None
    assert reference_comparison(AbelianGroup.direct_product((2, 3)), "ring", 5) is None
    out = reference_comparison(AbelianGroup.direct_product((2, 2)), "truss", 22)
    assert out == {"reference_classes": 23, "matches_reference": False}


def test_every_enumerated_truss_gives_strong_bracket():
    from heaptruss import bracket_from_truss
    for orders in ((2,), (3,), (4,)):
        g = AbelianGroup.direct_product(orders)
        for truss in enumerate_trusses(spec(g, "truss")):
            lie = bracket_from_truss(truss)
            assert validate_lie_truss(lie).ok
            assert validate_strong_jacobi(lie).ok
