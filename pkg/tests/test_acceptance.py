"""Acceptance suite.

Each test exercises one numbered acceptance criterion end to end at its
stated tolerance and prints one PASS line on success (run with -s to see
them).  Shared enumerations live in module-scoped fixtures.
"""
import time

import numpy as np
import pytest

import heaptruss as ht
from heaptruss import (
    AbelianGroup,
    SearchSpec,
    bracket_from_truss,
    canonical_form,
    enumerate_derivations,
    enumerate_lie_brackets,
    enumerate_rings,
    enumerate_trusses,
    heap_from_group,
    prove_identity,
    random_falsify,
    retract_lie_ring,
    strengthen_bracket,
    validate_derivation,
    validate_lie_affebra,
    validate_lie_ring,
    validate_lie_truss,
    validate_strong_jacobi,
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
    zero_truss,
)
from heaptruss.expressions import Bracket3, HeapOp, Var
from heaptruss.freealg import eval_expr, eval_free_element, expand_lie_macro, normalize

from _oracles import rings_on_zn, trusses_on_zn


def report(num, text):
    print(f"criterion {num:02d} PASS: {text}")


@pytest.fixture(scope="module")
def z2_trusses():
    return enumerate_trusses(SearchSpec(group=AbelianGroup.cyclic(2), kind="truss"))


@pytest.fixture(scope="module")
def z4_trusses():
    return enumerate_trusses(SearchSpec(group=AbelianGroup.cyclic(4), kind="truss"))


@pytest.fixture(scope="module")
def klein_trusses():
    g = AbelianGroup.direct_product((2, 2))
    return enumerate_trusses(SearchSpec(group=g, kind="truss", strategy="structured"))


@pytest.fixture(scope="module")
def klein_trusses_rows():
    g = AbelianGroup.direct_product((2, 2))
    return enumerate_trusses(SearchSpec(group=g, kind="truss", strategy="rows"))


@pytest.fixture(scope="module")
def lie_trusses_z234():
    return {n: enumerate_lie_brackets(SearchSpec(group=AbelianGroup.cyclic(n),
                                                 kind="lie-truss"))
            for n in (2, 3, 4)}


def _bracket(x, y, z):
    return Bracket3(x, y, z)


def _strong_jacobi_sides(bracket, names="abcde"):
    a, b, c, d, e = (Var(x) for x in names)
    lhs = bracket(bracket(a, d, b), e, c)
    rhs = HeapOp((bracket(d, e, a), bracket(bracket(b, d, c), e, a),
                  bracket(d, e, b), bracket(bracket(c, d, a), e, b),
                  bracket(d, e, c)))
    return lhs, rhs


def test_criterion_01_symbolic_strong_jacobi():
    start = time.time()
    lhs, rhs = _strong_jacobi_sides(_bracket)
    verdict = prove_identity(lhs, rhs, "free-truss")
    assert verdict.equal
    assert verdict.lhs_nf.coeffs == verdict.rhs_nf.coeffs

    a, b, c = Var("a"), Var("b"), Var("c")
    nil = prove_identity(_bracket(a, b, a), b, "free-truss")
    anti = prove_identity(HeapOp((_bracket(a, b, c), b, _bracket(c, b, a))), b,
                          "free-truss")
    assert nil.equal and anti.equal
    elapsed = time.time() - start
    assert elapsed < 5.0
    report(1, f"strong Jacobi plus nilpotency and antisymmetry replay EQUAL "
              f"in {elapsed:.3f}s")


def test_criterion_02_symbolic_strengthened_bracket():
    start = time.time()
    o = Var("o")

    def strengthened(x, y, z):
        return HeapOp((_bracket(x, o, z), _bracket(x, o, o), o,
                       _bracket(o, o, z), y))

    lhs, rhs = _strong_jacobi_sides(strengthened)
    verdict = prove_identity(lhs, rhs, "free-truss")
    assert verdict.equal
    elapsed = time.time() - start
    assert elapsed < 30.0
    report(2, f"strengthened bracket satisfies strong Jacobi on six "
              f"generators in {elapsed:.3f}s")


def test_criterion_03_bracket_from_truss_at_scale(z2_trusses, z4_trusses,
                                                  klein_trusses):
    structures = [*z2_trusses, *z4_trusses, *klein_trusses,
                  upper_triangular_truss()]
    assert len(z2_trusses) == 8
    for truss in structures:
        lie = bracket_from_truss(truss)
        assert validate_lie_truss(lie).ok
        assert validate_strong_jacobi(lie).ok
    report(3, f"commutator bracket valid and strong on {len(structures)} "
              f"trusses (Z2, Z4, Z2xZ2, UT2(F2))")


def test_criterion_04_affebra_round_trip():
    start = time.time()
    for p in (3, 5):
        la = solvable_affebra(p)
        assert validate_lie_affebra(la).ok
        ternary = ht.affebra_to_ternary(la)
        back = ht.ternary_to_affebra(ternary, 0)
        assert np.array_equal(back.bracket2, la.bracket2)
        for o in range(la.n):
            assert validate_lie_affebra(ht.ternary_to_affebra(ternary, o)).ok
    elapsed = time.time() - start
    assert elapsed < 60.0
    report(4, f"round trip exact at 0 and valid at all origins over F3 and F5 "
              f"in {elapsed:.1f}s")


def test_criterion_05_retract_lie_rings(lie_trusses_z234):
    checked = 0
    for n, brackets in lie_trusses_z234.items():
        for lie in brackets:
            for o in range(n):
                assert validate_lie_ring(retract_lie_ring(lie, o)).ok
                checked += 1
    report(5, f"retract Lie ring valid for {checked} (bracket, basepoint) pairs "
              f"on Z2, Z3, Z4")


def test_criterion_06_strengthening(lie_trusses_z234):
    checked = 0
    for n, brackets in lie_trusses_z234.items():
        for lie in brackets:
            for o in range(n):
                strong = strengthen_bracket(lie, o)
                assert validate_lie_truss(strong).ok
                assert validate_strong_jacobi(strong).ok
                checked += 1
    triv = trivial_bracket(cyclic_heap(3))
    for o in range(3):
        assert np.array_equal(strengthen_bracket(triv, o).bracket3, triv.bracket3)
    report(6, f"strengthened bracket strong in {checked} cases; trivial bracket fixed")


def test_criterion_07_char2_sentinel():
    const = constant_bracket_affebra(affine_line(2), 1)
    assert validate_lie_affebra(const).ok
    with pytest.raises(ht.CharacteristicTwoError):
        ht.affebra_to_ternary(const)
    forced = ht.affebra_to_ternary(const, force_char2=True)
    failure = validate_lie_truss(forced)
    assert not failure.ok
    witness = failure.violations[0]
    assert witness.axiom == "bracket-nilpotency"
    report(7, f"characteristic-2 construction fails nilpotency at witness "
              f"{witness.witness} as required")


def test_criterion_08_classification(z2_trusses, klein_trusses, klein_trusses_rows):
    assert len(z2_trusses) == 8
    assert len({canonical_form(t) for t in z2_trusses}) == 5
    assert sorted(t.mul.tolist() for t in z2_trusses) == sorted(trusses_on_zn(2))

    z2_rings = enumerate_rings(SearchSpec(group=AbelianGroup.cyclic(2), kind="ring"))
    assert len(z2_rings) == 2
    assert len({canonical_form(r) for r in z2_rings}) == 2
    assert sorted(r.mul.tolist() for r in z2_rings) == sorted(rings_on_zn(2))

    structured = [t.mul.tolist() for t in klein_trusses]
    rows = [t.mul.tolist() for t in klein_trusses_rows]
    assert structured == rows
    truss_classes = len({canonical_form(t) for t in klein_trusses})

    g = AbelianGroup.direct_product((2, 2))
    rings_structured = enumerate_rings(SearchSpec(group=g, kind="ring"))
    add = g.add
    rings_rows = [t for t in klein_trusses_rows
                  if np.array_equal(t.mul[add], add[t.mul[:, None, :], t.mul[None, :, :]])
                  and np.array_equal(t.mul[:, add], add[t.mul[:, :, None], t.mul[:, None, :]])]
    assert sorted(str(t.mul.tolist()) for t in rings_structured) == \
        sorted(str(t.mul.tolist()) for t in rings_rows)
    ring_classes = len({canonical_form(r) for r in rings_structured})

    truss_ref = ht.reference_comparison(g, "truss", truss_classes)
    ring_ref = ht.reference_comparison(g, "ring", ring_classes)
    flag = ("matches" if truss_ref["matches_reference"] else "DIFFERS FROM")
    ring_flag = ("matches" if ring_ref["matches_reference"] else "DIFFERS FROM")
    report(8, f"Z2: 8/5 trusses and 2/2 rings match the all-tables oracle; "
              f"Z2xZ2 strategies agree, {truss_classes} truss classes ({flag} "
              f"reference 23), {ring_classes} ring classes ({ring_flag} reference 8)")


def test_criterion_09_derivations(z2_trusses, z4_trusses):
    z4add = addition_truss(4)
    ders = enumerate_derivations(z4add)
    expected = sorted(tuple((g * x) % 4 for x in range(4)) for g in range(4))
    assert sorted(map(tuple, ders.tolist())) == expected

    algebra = ht.derivations_lie_truss(z4add, ders)
    assert validate_lie_truss(algebra.lie).ok
    assert validate_strong_jacobi(algebra.lie).ok

    for truss in [*z2_trusses, *z4_trusses, upper_triangular_truss()]:
        assert validate_derivation(np.arange(truss.n), truss).ok
    report(9, "derivations of (Z4, a+b) are the four linear maps, their Lie "
              "truss is strong, and the identity derives every enumerated truss")


REGRESSION_CORPUS = [
    ("[a,b,c] == [c,b,a]", "free-heap", True),
    ("[[a,b,c],d,e] == [a,b,[c,d,e]]", "free-heap", True),
    ("[x,y,y] == x", "free-heap", True),
    ("[a,b,c] == [b,a,c]", "free-heap", False),
    ("[a,b,c] == a", "free-heap", False),
    ("a*[b,c,d] == [a*b,a*c,a*d]", "free-truss", True),
    ("[a,b,c]*d == [a*d,b*d,c*d]", "free-truss", True),
    ("(a*b)*c == a*(b*c)", "free-truss", True),
    ("{a,b,a} == b", "free-truss", True),
    ("[{a,b,c},b,{c,b,a}] == b", "free-truss", True),
    ("{{a,d,b},e,c} == [{d,e,a},{{b,d,c},e,a},{d,e,b},{{c,d,a},e,b},{d,e,c}]",
     "free-truss", True),
    ("a*b == b*a", "free-truss", False),
    ("a*a == a", "free-truss", False),
    ("{a,b,c} == b", "free-truss", False),
]


def _random_expr(rng, names, depth, allow_mul):
    if depth == 0 or rng.random() < 0.3:
        return Var(rng.choice(names))
    kinds = ["heap"] * 2 + (["mul"] if allow_mul else []) + ["bracket"]
    kind = rng.choice(kinds)
    if kind == "mul":
        return ht.Mul(_random_expr(rng, names, depth - 1, allow_mul),
                      _random_expr(rng, names, depth - 1, allow_mul))
    if kind == "bracket" and allow_mul:
        return Bracket3(*(_random_expr(rng, names, depth - 1, allow_mul)
                          for _ in range(3)))
    arity = rng.choice([3, 3, 5])
    return HeapOp(tuple(_random_expr(rng, names, depth - 1, allow_mul)
                        for _ in range(arity)))


def test_criterion_10_normalization_soundness():
    import random
    rng = random.Random(20240817)
    names = ["a", "b", "c", "x", "y", "z"]
    heap_pool = [cyclic_heap(n) for n in (2, 3, 5, 8)] + \
        [heap_from_group(AbelianGroup.direct_product((2, 2))),
         heap_from_group(AbelianGroup.direct_product((2, 4)))]
    truss_pool = [ring_truss(2), ring_truss(4), ring_truss(7), zero_truss(3),
                  addition_truss(4), upper_triangular_truss()]
    agreements = 0
    for i in range(1000):
        expr = expand_lie_macro(_random_expr(rng, names, depth=5,
                                             allow_mul=i % 2 == 1))
        if _uses_mul(expr):
            structure = rng.choice(truss_pool)
            nf = normalize(expr, "free-truss")
        else:
            structure = rng.choice(heap_pool)
            nf = normalize(expr, "free-heap")
        env = {v: rng.randrange(structure.n) for v in names}
        assert eval_expr(expr, structure, env) == eval_free_element(nf, structure, env)
        agreements += 1
    assert agreements == 1000

    for text, theory, expected in REGRESSION_CORPUS:
        lhs, rhs = ht.parse_identity(text)
        verdict = prove_identity(lhs, rhs, theory)
        assert verdict.equal is expected
        counter = random_falsify(lhs, rhs, samples=200)
        if verdict.equal:
            assert counter is None
        else:
            assert counter is not None
    report(10, "1000/1000 random expressions evaluate identically to their "
               "normal forms; prover agrees with 200-sample falsification on "
               f"{len(REGRESSION_CORPUS)} corpus identities")


def _uses_mul(expr):
    from heaptruss.freealg import _mentions_mul
    return _mentions_mul(expr)


def test_criterion_11_performance_and_determinism():
    lie27 = trivial_bracket(cyclic_heap(27))
    start = time.time()
    assert validate_strong_jacobi(lie27).ok
    elapsed = time.time() - start
    assert elapsed < 10.0

    g = AbelianGroup.direct_product((2, 2))
    runs = []
    for workers in (1, 4):
        found = enumerate_trusses(SearchSpec(group=g, kind="truss", workers=workers))
        runs.append(b"".join(t.mul.tobytes() for t in found))
    assert runs[0] == runs[1]
    report(11, f"27-element strong-Jacobi sweep in {elapsed:.2f}s; enumeration "
               f"byte-identical across 1 and 4 workers")
