"""A symplectic Lie group, one compatible structure, every invariant.

The Kodaira-Thurston algebra has one bracket, [e1, e2] = e4. The form
sigma = e^13 + e^24 is closed, so the group itself is symplectic (the
isotropy k is zero and m is the whole algebra). The structure H e1 = e3,
H e2 = e4 is compatible but not integrable.
"""
import numpy as np

from almost_kahler import catalog, curvature_report, nijenhuis

np.set_printoptions(precision=6, suppress=True)

entry = catalog.kodaira_thurston()
model = entry.model()
H = entry.H_hint
print("sigma in m-coordinates:\n", model.sigma_m)
print("H:\n", H)

report = curvature_report(model, H)
print("zeta  (trace one-form):", report.zeta)
print("rho   (Chern-Ricci form) vanishes:", np.abs(report.rho_m).max() == 0)
print("s     (Hermitian scalar):", report.s)
print("|N|^2 (Nijenhuis norm)  :", report.nijenhuis_sq, "formula:", report.nijenhuis_sq_formula)
print("scal  (Riemannian)      :", report.scal)
print("check s = scal + 2|N|^2 :", report.scal + 2 * report.nijenhuis_sq)

# The failure of integrability is concrete: N_H(e1, e2) is a nonzero vector.
e = np.eye(4)
print("N_H(e1, e2) =", nijenhuis(model, H, e[0], e[1]))
