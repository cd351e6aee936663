"""Classify a commuting pair of 2x2 matrices, then compare the closed-form
reducibility test for the third SB_2 family against the Burnside oracle."""

from sbrep import Matrix, audit, sb2_classify, sb2_family

S = Matrix([[2, 1], [0, 2]])
T = Matrix([[3, 5], [0, 3]])
cls = sb2_classify(S, T)

def show(M):
    return "[" + ", ".join("[" + ", ".join(map(str, r)) + "]" for r in M.rows) + "]"


print("pair", show(S), show(T), "->", cls.family)

# a point where the published condition and the algebra disagree
rep = sb2_family("rho3", {"w": 2, "a": 0, "b": 1, "c": 1, "d": 0})
for record in audit(rep):
    print(record.predicate_name, "says", record.predicate_verdict,
          "but the span closure says", record.oracle_verdict)
