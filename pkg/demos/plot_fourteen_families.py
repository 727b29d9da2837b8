"""
The fourteen symplectic families
================================

List every g of degree 4 built from cyclotomic factors with g(1) != 0,
paired with f = (x - 1)^4, and what is recorded about each.
"""

from hypermono import fourteen_families
from hypermono.classify import catalog_metadata, classify_polys

for entry in fourteen_families():
    rep = classify_polys(entry.f, entry.g)
    print(f"{entry.g_spec:<10} {str(entry.g):<24} {rep.verdict:<12} {entry.status:<10} {entry.provenance}")

meta = catalog_metadata()
print()
print("aggregate claim:", meta["aggregate_claim"], "-", meta["aggregate_source"])
