"""
The Dwork family
================

Classify the hypergeometric group with alpha = {0, 0, 0, 0} and
beta = {1/5, 2/5, 3/5, 4/5}, print the invariant symplectic form and
check it against the generators.
"""

from fractions import Fraction

from hypermono import ParameterList, build_group, zariski_classification
from hypermono.classify import arithmeticity_criterion

alpha = ParameterList([0, 0, 0, 0])
beta = ParameterList([Fraction(k, 5) for k in range(1, 5)])
report = zariski_classification(alpha, beta)

print("f =", report.f)
print("g =", report.g)
print("verdict:", report.verdict, " c =", report.c)

# the reflection C = A^-1 B differs from the identity in one column
H = build_group(report.f, report.g)
print("C =")
for row in H.C.to_int_rows():
    print("   ", row)

# the form is exact and integral; both generators preserve it
omega = report.omega
for row in omega.to_int_rows():
    print("   ", row)
print("A^T omega A == omega:", H.A.T @ omega @ H.A == omega)
print("B^T omega B == omega:", H.B.T @ omega @ H.B == omega)

# the leading coefficient of f - g is -5, too large for the criterion;
# the status comes from the family catalog instead
crit = arithmeticity_criterion(report.f, report.g)
print("f - g =", crit.difference, " leading coefficient", crit.c_d)
print("arithmeticity:", report.arithmeticity, "-", report.provenance)
