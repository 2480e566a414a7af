"""Milnor invariants of the builtin links, step by step.

Walks from the raw planar diagram of the whitehead link through the
Wirtinger presentation, the meridian reduction of a longitude, its
truncated expansion, and the invariant table mu / Delta / mubar.

Run:  python3 demos/milnor_invariants.py
"""

from toroshrink import (
    builtin,
    expand,
    format_pd,
    format_series,
    format_word,
    longitudes,
    mu,
    mubar,
    pd_fixture,
    reduce_longitude,
    wirtinger,
)
from toroshrink.milnor import all_multi_indices, longitude_word

print("=" * 72)
print("1. The whitehead link as a planar diagram")
print("=" * 72)
pd = pd_fixture("whitehead")
print(format_pd(pd))
print(f"\ncomponents {pd.component_labels}, {pd.n_crossings} crossings, "
      f"crossing signs {pd.signs()}")
print(f"linking number lk(0,1) = {pd.linking_number(0, 1)}  (the two strands "
      f"pass the axis disc in opposite directions)")

print()
print("=" * 72)
print("2. Wirtinger presentation and arc-level longitudes")
print("=" * 72)
wp = wirtinger(pd)
print(f"{wp.n_arcs} arc generators, {wp.n_relators} conjugation relators")
for label, word in longitudes(pd).items():
    print(f"longitude of component {label} in arc generators: {format_word(word)}")

print()
print("=" * 72)
print("3. Meridian reduction: the longitude modulo the lower central series")
print("=" * 72)
for q in (2, 3, 4):
    w = reduce_longitude(wp, 1, q)
    print(f"class {q}: lambda_1 = {format_word(w)}")
w4 = reduce_longitude(wp, 1, 4)
print("\nexpansion to degree 4:")
print("  " + format_series(expand(w4, 4)))
print("the coefficient of k0*k0*k1 is the invariant mu(0,0,1,1)")

print()
print("=" * 72)
print("4. Invariant records")
print("=" * 72)
for name, index in [
    ("whitehead", (0, 0, 1, 1)),
    ("bing", (0, 1, 2)),
    ("borromean", (1, 2, 3)),
    ("hopf", (1, 2)),
]:
    rec = mubar(builtin(name), index)
    print(f"{name:10s} {rec}")

print()
print("=" * 72)
print("5. The borromean rings: vanishing pairwise, essential triple")
print("=" * 72)
link = builtin("borromean")
for index in all_multi_indices(link.labels, 3):
    value = mu(link, index)
    if (len(index) == 2 and index[0] < index[1]) or value:
        print(f"  mu{index} = {value}")
print("\nlongitude of component 3 (a commutator of the other meridians):")
print("  " + format_word(longitude_word(link, 3, 3)))
