"""
Monodromy by analytic continuation
==================================

Continue a fundamental matrix of the hypergeometric equation around 0 and 1
and compare the spectra with the exact companion-matrix model.
"""

from fractions import Fraction

import numpy as np

from hypermono.odeflow import cross_validate, numeric_monodromy

np.set_printoptions(precision=6, suppress=True)

m = numeric_monodromy([Fraction(1, 4), Fraction(3, 4)], [1, Fraction(1, 2)])
print("M0 =\n", m.M0)
print("M1 =\n", m.M1)
print("Minf =\n", m.Minf)
print("eigenvalues of Minf:", np.linalg.eigvals(m.Minf))
print("|Minf M_big - I| =", m.loop_relation_residual)

# M1 - I has rank one: its second singular value vanishes
print("sigma_2(M1 - I) / |M1| =", m.reflection_sigma2)

# the same comparison through characteristic polynomials, for the Dwork family
cv = cross_validate([0, 0, 0, 0], ["1/5", "2/5", "3/5", "4/5"])
print("charpoly(Minf) vs (x-1)^4:", cv.charpoly_inf_error)
print("charpoly(M0^-1) vs Phi5:  ", cv.charpoly_zero_inv_error)
