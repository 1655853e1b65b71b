"""Finding special structures numerically, and where that fails.

Start from the special structure on so(6,1)/u(3), push it off by a random
symplectic conjugation, and let the search walk back. Then run the same search
on aff(R) x R^2, where rho = zeta(e2) e^12 with zeta(e2) = -2 g(e2, e2) < 0:
no compatible structure is special, yet the residual can be made arbitrarily
small by degenerating the metric, so the search stalls against its
metric-condition guard instead of converging.
"""
import numpy as np

from almost_kahler import CompatibleStructure, LieAlgebra, catalog, symplectic_group_model
from almost_kahler.search import SearchConfig, perturb, random_compatible, search_special

entry = catalog.so_twistor(3)
model = entry.model()
start = perturb(CompatibleStructure(entry.H_hint, model.sigma_m), 1e-2, seed=0)
result = search_special(model, start, SearchConfig(residual_target=1e-7))
for rec in result.trace:
    print(f"sweep {rec['iteration']:>2}: residual {rec['residual']:.2e}  lambda {rec['lambda']:.8f}")
print("converged:", result.converged, "in", result.iterations, "sweeps\n")

alg = LieAlgebra(4, ((0, 1, 1, 1.0),))
sigma = np.zeros((4, 4))
sigma[0, 1] = sigma[2, 3] = 1.0
sigma -= sigma.T
affine = symplectic_group_model(alg, sigma)
res = search_special(affine, random_compatible(sigma, seed=0), SearchConfig(max_iters=60))
G = sigma @ res.H.H
w = np.linalg.eigvalsh(0.5 * (G + G.T))
print(f"aff(R) x R^2: residual {res.residual:.2e} after {res.iterations} sweeps, "
      f"converged {res.converged}, metric condition {w[-1] / w[0]:.1e}")
