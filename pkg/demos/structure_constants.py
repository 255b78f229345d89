# Structure constants of the Riemann basis, exact integers.
import numpy as np

from dualpolar.scheme import (
    SchemeParams, structure_tensor, rho, rho_semilattice,
    riemann_base_change, adjacency_intersection_numbers,
)

params = SchemeParams("C", 3, 2)   # symplectic, rank 3, q = 2
t = structure_tensor(params).rho
print(params, "has", t[0, 0, 0], "points")   # C_0 = J, so rho_00^0 = |X|

# G_s is the regular representation of C_s, lower triangular
print("G_1 =")
print(t[1])

# two independent formulas for the same number
print(rho(params, 1, 2, 0), rho_semilattice(params, 1, 2, 0))

# Hermitian families carry half-integer exponents, handled by doubling
herm = SchemeParams("2A-even", 2, 2)   # r = 2, q = 4
print(herm, "size", structure_tensor(herm).rho[0, 0, 0])

# back to the adjacency basis A_0..A_d
bc = riemann_base_change(params)
print("C_i in terms of A_k:")
print(bc.c_from_a)
p = adjacency_intersection_numbers(params)
print("valencies:", [p[i, i, 0] for i in range(params.d + 1)])
