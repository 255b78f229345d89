# Local algebras as truncated polynomial rings.
from dualpolar.presentations import (
    ring_basis, monomial_str, theorem1_map, theorem2_presentation_map, d_quotient_map,
)
from dualpolar.algebra import is_isomorphism

print([monomial_str(m) for m in ring_basis(3, 5)])

f = theorem1_map(8, 2, 3)      # Hermitian rank 8, r = 2, p = 3
for j, m in enumerate(ring_basis(3, 8)):
    col = f.matrix[:, j]
    i = int(col.nonzero()[0][0])
    print(f"  {monomial_str(m):>9} -> {col[i]}*C{i}")
print("isomorphism:", is_isomorphism(f))

# symplectic odd rank splits as a tensor product
g = theorem2_presentation_map(2, 2, 3)
print(len(g.target.labels), "dim target, iso:", is_isomorphism(g))

# orthogonal even rank is a quotient of that tensor product by its socle
h = d_quotient_map(2, 2, 3)
print(h.target.labels, is_isomorphism(h))
