"""
Recovering the companion pair
=============================

Hide a hypergeometric pair behind a random unimodular change of basis and
recover the companion matrices from the conjugated pair alone.
"""

import random

from hypermono import ExactMatrix, build_group, cyclotomic, levelt_normal_form, parse_poly

f = parse_poly("C1^2*C3")
g = cyclotomic(8)
H = build_group(f, g)

rng = random.Random(4)
Q = ExactMatrix.identity(4)
for _ in range(10):
    i, j = rng.sample(range(4), 2)
    E = [[int(r == c) for c in range(4)] for r in range(4)]
    E[i][j] = rng.choice([-1, 1])
    Q = ExactMatrix(E) @ Q

a = Q @ H.A @ Q.inverse()
b = Q @ H.B @ Q.inverse()
print("conjugated a =")
for row in a.to_int_rows():
    print("   ", row)

# a - b has rank one; the cyclic vector comes from the kernel of the
# stacked rows (a - b) a^i
nf = levelt_normal_form(a, b)
print("cyclic vector:", [str(x) for x in nf.cyclic_vector])
print("recovered A == companion(f):", nf.A == H.A)
print("recovered B == companion(g):", nf.B == H.B)
print("P^-1 a P == A:", nf.P.inverse() @ a @ nf.P == nf.A)
