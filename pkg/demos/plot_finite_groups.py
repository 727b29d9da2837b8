"""
Interlacing and finite groups
=============================

Run through all coprime pairs of cyclotomic products of degree 2 and 3,
compare the interlacing test with a brute-force closure of the group.
"""

import itertools

from hypermono import build_group, finite_closure, interlace_check, parameters_from_poly, poly_gcd
from hypermono.exactpoly import factor_spec, parse_poly

specs = {
    2: ["C3", "C4", "C6", "C1^2", "C1*C2", "C2^2"],
    3: ["C1*C3", "C1*C4", "C1*C6", "C2*C3", "C2*C4", "C2*C6", "C1^3", "C1^2*C2", "C1*C2^2", "C2^3"],
}

for degree, names in specs.items():
    print(f"degree {degree}")
    for f, g in itertools.combinations([parse_poly(s) for s in names], 2):
        if poly_gcd(f, g).degree > 0:
            continue
        ok, pattern = interlace_check(parameters_from_poly(f), parameters_from_poly(g))
        res = finite_closure(build_group(f, g), cap=20_000)
        size = getattr(res, "order", None)
        print(f"  {factor_spec(f):>7} {factor_spec(g):>7}  {pattern:<8} interlacing={ok!s:<5} order={size}")
