# Build actual polar spaces and measure the structure constants.
import tempfile, os

from dualpolar.scheme import SchemeParams, structure_tensor
from dualpolar.geometry import build_polar_space, empirical_rho, save_space, load_space

for fam, d, b in [("C", 2, 2), ("D", 2, 3), ("2A-odd", 2, 2), ("2D", 2, 2)]:
    params = SchemeParams(fam, d, b)
    space = build_polar_space(params)
    same = (empirical_rho(space) == structure_tensor(params).rho).all()
    print(f"{fam}_{d}({b}): {len(space)} maximal subspaces, formula matches: {same}")

space = build_polar_space(SchemeParams("C", 2, 3))
path = os.path.join(tempfile.mkdtemp(), "c2_3.txt")
save_space(space, path)
print(open(path).read().splitlines()[:4])
print(len(load_space(path)), "subspaces reloaded")
