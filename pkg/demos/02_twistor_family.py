"""Coadjoint orbits of so(2n,1) and their special structures.

theta = B(V, .) with V the rotation diag(J0, 0) has isotropy u(n); the orbit
SO(2n,1)/U(n) carries the orbit form sigma(X, Y) = theta([X, Y]). The
eigenspaces of ad_V on m (eigenvalues +-i, +-2i) give a compatible structure
H that is special: rho = (2n - 4) sigma. We check the closed forms for
n = 1..4 and also the identity V' = lambda V, where V' is dual to zeta.
"""
import numpy as np

from almost_kahler import adV_blocks, catalog, curvature_report

print(f"{'n':>2} {'dim m':>5} {'dim k':>5} {'lambda':>9} {'s':>9} {'|N|^2':>9} {'|V-lam V|':>10}")
for n in range(1, 5):
    entry = catalog.so_twistor(n)
    model = entry.model()
    blocks = adV_blocks(model)
    r = curvature_report(model, entry.H_hint)
    gap = np.abs(r.v_prime - r.lam * model.V).max()
    print(f"{n:>2} {model.dim_m:>5} {model.dim_k:>5} {r.lam:>9.4f} {r.s:>9.4f} "
          f"{r.nijenhuis_sq:>9.4f} {gap:>10.1e}")
    assert r.flags["special"]

print("\nblock eigenvalue moduli for n = 3:", sorted({float(x) for x in np.round(blocks.lambdas, 9)}))
print("expected: lambda = 2n - 4, s = n(n+1)(n-2), |N|^2 = 3n(n-1)")
