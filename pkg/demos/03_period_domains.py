"""so(2p,q) orbits: a special structure and an integrable indefinite one.

On SO(2p,q)/(U(p) x SO(q)) the ad_V-blocks come in two kinds: boosts
(|eigenvalue| 1) and rotation pairs of the 2p block (|eigenvalue| 2). Dividing
ad_V by the eigenvalue modulus, with a sign flip on the rotation pairs, gives
the compatible special structure. Without the sign flip the result is still
sigma-preserving and integrable, but its metric is indefinite once p > 1.
"""
import numpy as np

from almost_kahler import catalog, curvature_report, nijenhuis_norm_direct

print(f"{'(p,q)':>6} {'lambda':>8} {'s':>8} {'|N|^2':>8} {'|N(H~)|^2':>10} {'H~ metric signs':>16}")
for p in (1, 2):
    for q in (1, 2, 3):
        entry = catalog.so_period_domain(p, q)
        model = entry.model()
        r = curvature_report(model, entry.H_hint)
        Ht = entry.H_tilde
        n_tilde = nijenhuis_norm_direct(model, Ht, metric=np.eye(model.dim_m))
        G = model.sigma_m @ Ht
        w = np.linalg.eigvalsh(0.5 * (G + G.T))
        signs = f"+{(w > 0).sum()}/-{(w < 0).sum()}"
        print(f"{str((p, q)):>6} {r.lam:>8.3f} {r.s:>8.3f} {r.nijenhuis_sq:>8.3f} "
              f"{n_tilde:>10.1e} {signs:>16}")
print("expected: lambda = 2p-2q-2, s = p(p+2q-1)(p-q-1), |N|^2 = 3pq(p-1)")
