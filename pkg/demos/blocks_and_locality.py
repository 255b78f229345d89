# When is the adjacency algebra local mod p?
from dualpolar.scheme import SchemeParams
from dualpolar.modular import locality_report, check_matrix_of_local, local_tensor

for fam, d, b, p in [("C", 3, 2, 3), ("C", 2, 2, 3), ("D", 2, 2, 3), ("C", 2, 3, 5), ("C", 3, 3, 3)]:
    rep = locality_report(SchemeParams(fam, d, b), p)
    print(f"{fam}_{d}({b}) mod {p}: k = {rep.k_blocks}, contributing {rep.contributing_indices},"
          f" closed form says local = {rep.closed_form_verdict}")

# the local case has a very sparse table: rho_st^u = [d-u, s-u] when d-s = t-u
params = SchemeParams("C", 3, 2)
print(check_matrix_of_local(params, 3))
print(local_tensor(params, 3)[1])

# rank one is just span{I, J}; it is local exactly when p divides |X|
rep = locality_report(SchemeParams("2D", 1, 2), 5)   # the 5-point ovoid
print("2D_1(2) mod 5: k =", rep.k_blocks, "closed form:", rep.closed_form_verdict)
