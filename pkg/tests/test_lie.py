import numpy as np
import pytest

from heaptruss import (
    AbelianGroup,
    CharacteristicTwoError,
    LieAffebra,
    LieTernary,
    StructureError,
    affebra_to_ternary,
    bracket_from_truss,
    derivations_lie_truss,
    heap_from_group,
    linearized_bracket,
    retract_lie_ring,
    strengthen_bracket,
    ternary_to_affebra,
    validate_lie_affebra,
    validate_lie_ring,
    validate_lie_truss,
    validate_strong_jacobi,
    vector_space_at,
)
from heaptruss.catalog import (
    addition_truss,
    affine_line,
    constant_bracket_affebra,
    cyclic_heap,
    ring_truss,
    solvable_affebra,
    trivial_bracket,
    upper_triangular_truss,
    zero_bracket_affebra,
)

from _oracles import is_lie_bracket, mod_heap, satisfies_strong_jacobi


def table_on_z2(fn):
    return np.array([[[fn(a, b, c) % 2 for c in range(2)] for b in range(2)]
                     for a in range(2)])


def test_z2_bracket_examples():
    h2 = cyclic_heap(2)
    assert validate_lie_truss(LieTernary(h2, table_on_z2(lambda a, b, c: a + b + c))).ok
    assert validate_lie_truss(trivial_bracket(h2)).ok
    report = validate_lie_truss(LieTernary(h2, table_on_z2(lambda a, b, c: a + b)))
    assert not report.ok
    first = report.violations[0]
    assert first.axiom == "bracket-nilpotency" and first.witness == (1, 0)


def test_validator_matches_loop_oracle_on_z2():
    h2 = cyclic_heap(2)
    hop = mod_heap(2)
    rng = np.random.default_rng(3)
    for _ in range(60):
        t = rng.integers(0, 2, size=(2, 2, 2))
        assert validate_lie_truss(LieTernary(h2, t)).ok == is_lie_bracket(t.tolist(), 2, hop)
    for _ in range(40):
        t = rng.integers(0, 3, size=(3, 3, 3))
        ok = validate_lie_truss(LieTernary(cyclic_heap(3), t)).ok
        assert ok == is_lie_bracket(t.tolist(), 3, mod_heap(3))


def test_strong_jacobi_matches_loop_oracle():
    h2 = cyclic_heap(2)
    hop = mod_heap(2)
    for fn in (lambda a, b, c: b, lambda a, b, c: a + b + c,
               lambda a, b, c: b * (1 + a + c), lambda a, b, c: b + (a + c) * (1 + b)):
        t = table_on_z2(fn)
        mine = validate_strong_jacobi(LieTernary(h2, t)).ok
        assert mine == satisfies_strong_jacobi(t.tolist(), 2, hop)
        assert mine


def test_bracket_from_truss():
    commutative = bracket_from_truss(addition_truss(4))
    assert (commutative.bracket3 == np.arange(4)[None, :, None]).all()
    ut = upper_triangular_truss()
    lie = bracket_from_truss(ut)
    g = ut.heap.base
    e11, e12 = g.encode((1, 0, 0)), g.encode((0, 1, 0))
    assert lie.bracket(e11, 0, e12) == e12
    assert validate_lie_truss(lie).ok
    assert validate_strong_jacobi(lie).ok
    for truss in (ring_truss(4), ring_truss(3), addition_truss(6)):
        lt = bracket_from_truss(truss)
        assert validate_lie_truss(lt).ok and validate_strong_jacobi(lt).ok


def test_derivation_lie_truss_on_z4_addition():
    algebra = derivations_lie_truss(addition_truss(4))
    assert algebra.lie.n == 4
    assert validate_lie_truss(algebra.lie).ok
    assert validate_strong_jacobi(algebra.lie).ok
    # compositions commute, so the bracket collapses to the middle slot
    assert (algebra.lie.bracket3 == np.arange(4)[None, :, None]).all()
    one = derivations_lie_truss(ring_truss(2))
    assert one.lie.n == 1


def test_derivation_bracket_nilpotency_axiom():
    algebra = derivations_lie_truss(upper_triangular_truss())
    b3 = algebra.lie.bracket3
    m = algebra.lie.n
    idx = np.arange(m)
    assert (b3[idx[:, None], idx[None, :], idx[:, None]] == idx[None, :]).all()


def test_lie_affebra_examples():
    assert validate_lie_affebra(solvable_affebra(3)).ok
    assert validate_lie_affebra(solvable_affebra(5)).ok
    assert validate_lie_affebra(zero_bracket_affebra(affine_line(3))).ok
    assert validate_lie_affebra(constant_bracket_affebra(affine_line(2), 1)).ok


def test_lie_affebra_broken_jacobi_detected():
    la = solvable_affebra(3)
    b2 = la.bracket2.copy()
    b2[1, 3] = (b2[1, 3] + 1) % 9
    report = validate_lie_affebra(LieAffebra(la.affine, 0, b2))
    assert not report.ok


def test_linearized_bracket():
    la = solvable_affebra(3)
    for v in range(9):
        for c in range(9):
            assert linearized_bracket(la, v, c) == la.bracket(v, c)
    zero = zero_bracket_affebra(affine_line(5))
    assert all(linearized_bracket(zero, v, c) == 0 for v in range(5) for c in range(5))
    const = constant_bracket_affebra(affine_line(2), 1)
    assert all(linearized_bracket(const, v, c) == 0 for v in range(2) for c in range(2))


def test_affebra_round_trip():
    for p in (3, 5):
        la = solvable_affebra(p)
        lt = affebra_to_ternary(la)
        assert validate_lie_truss(lt).ok
        assert validate_strong_jacobi(lt).ok
        back = ternary_to_affebra(lt, 0)
        assert np.array_equal(back.bracket2, la.bracket2)
        for o in range(la.n):
            assert validate_lie_affebra(ternary_to_affebra(lt, o)).ok


def test_zero_bracket_gives_trivial_ternary():
    la = zero_bracket_affebra(affine_line(3))
    lt = affebra_to_ternary(la)
    assert (lt.bracket3 == np.arange(3)[None, :, None]).all()


def test_char2_guard_and_forced_failure():
    const = constant_bracket_affebra(affine_line(2), 1)
    with pytest.raises(CharacteristicTwoError):
        affebra_to_ternary(const)
    forced = affebra_to_ternary(const, force_char2=True)
    report = validate_lie_truss(forced)
    assert not report.ok
    assert report.violations[0].axiom == "bracket-nilpotency"
    # {a, b, a} = b + 1 on the two-point line
    assert forced.bracket(0, 0, 0) == 1


def test_retract_lie_ring():
    la = solvable_affebra(3)
    lt = affebra_to_ternary(la)
    for o in range(9):
        view = retract_lie_ring(lt, o)
        scal = vector_space_at(la.affine, o).scal
        assert validate_lie_ring(view, scal=scal).ok
        n = view.group.n
        assert (view.bracket[np.arange(n), np.arange(n)] == view.group.identity).all()
    triv = trivial_bracket(cyclic_heap(4))
    ring = retract_lie_ring(triv, 2)
    assert (ring.bracket == 2).all()            # zero Lie ring at identity 2


def test_strengthen_bracket():
    triv = trivial_bracket(cyclic_heap(2))
    for o in range(2):
        assert np.array_equal(strengthen_bracket(triv, o).bracket3, triv.bracket3)
    la = solvable_affebra(3)
    lt = affebra_to_ternary(la)
    for o in range(9):
        st = strengthen_bracket(lt, o)
        assert validate_lie_truss(st).ok and validate_strong_jacobi(st).ok
    # already-strong canonical form is fixed at its defining origin
    assert np.array_equal(strengthen_bracket(lt, 0).bracket3, lt.bracket3)


def test_ternary_to_affebra_needs_affine_base():
    with pytest.raises(StructureError):
        ternary_to_affebra(trivial_bracket(cyclic_heap(2)), 0)


def test_strong_sweep_budget():
    from heaptruss import BudgetError
    big = trivial_bracket(heap_from_group(AbelianGroup.direct_product((6, 6))))
    with pytest.raises(BudgetError):
        validate_strong_jacobi(big)
