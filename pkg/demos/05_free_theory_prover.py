"""Machine-checking bracket identities in the free heap and free truss.

The free truss on a set of generators lives inside the integer span of
nonempty words, sliced at coefficient sum one.  Equality of normal forms
decides any identity of the theory, so the bracket laws of the commutator
bracket {a,b,c} = [a*c, c*a, b] can be proved once and for all.
"""
from heaptruss import normalize, parse, parse_identity, prove_identity, random_falsify

# cancellation and reshuffling are theorems of the free heap
for text in ("[x,y,y]", "[a,b,[c,d,e]]", "[a,b,a]"):
    print(f"{text}  ~>  {normalize(parse(text), 'free-heap').to_text()}")

# distributivity in the free truss
lhs, rhs = parse_identity("a*[b,c,d] == [a*b,a*c,a*d]")
print("\na*[b,c,d] == [a*b,a*c,a*d]:",
      "EQUAL" if prove_identity(lhs, rhs, "free-truss").equal else "NOT-EQUAL")

# the free truss is noncommutative, and the falsifier exhibits a witness
lhs, rhs = parse_identity("a*b == b*a")
verdict = prove_identity(lhs, rhs, "free-truss")
print("a*b == b*a:", "EQUAL" if verdict.equal else f"NOT-EQUAL, diff {verdict.diff}")
print("counterexample:", random_falsify(lhs, rhs, samples=400))

# bracket axioms expand through the macro {x,y,z} -> [x*z, z*x, y]
for text in ("{a,b,a} == b", "[{a,b,c},b,{c,b,a}] == b"):
    lhs, rhs = parse_identity(text)
    print(text, "->", "EQUAL" if prove_identity(lhs, rhs, "free-truss").equal
          else "NOT-EQUAL")

# the strong Jacobi identity in five generators, proved symbolically
strong = ("{{a,d,b},e,c} == "
          "[{d,e,a},{{b,d,c},e,a},{d,e,b},{{c,d,a},e,b},{d,e,c}]")
lhs, rhs = parse_identity(strong)
verdict = prove_identity(lhs, rhs, "free-truss")
print("\nstrong Jacobi for the commutator bracket:",
      "EQUAL" if verdict.equal else "NOT-EQUAL")
print("normal form has", len(verdict.lhs_nf.coeffs), "terms:",
      verdict.lhs_nf.to_text())

# the strengthened bracket at an extra generator o is again strong
def s(x, y, z):
    return f"[{{{x},o,{z}}},{{{x},o,o}},o,{{o,o,{z}}},{y}]"

lhs_text = s(s("a", "d", "b"), "e", "c")
rhs_text = (f"[{s('d','e','a')},{s(s('b','d','c'),'e','a')},{s('d','e','b')},"
            f"{s(s('c','d','a'),'e','b')},{s('d','e','c')}]")
verdict = prove_identity(parse(lhs_text), parse(rhs_text), "free-truss")
print("\nstrengthened bracket satisfies strong Jacobi over {a,..,e,o}:",
      "EQUAL" if verdict.equal else "NOT-EQUAL")
