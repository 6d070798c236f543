# Special and limiting cases reached by substituting parameters.
import numpy as np

from qaskey import (AWParams, Family, FamilySpec, ParameterChain, asc_poly, aw_poly,
                    dual_qhahn_poly, mv_poly, specialize)

q = 0.5
t = np.linspace(0.2, 2.9, 5)

# d = 0 gives the continuous dual q-Hahn polynomials
print(dual_qhahn_poly(3, t, 0.3, 0.2, -0.4, q).real)
print(aw_poly(3, t, AWParams(0.3, 0.2, -0.4, 0.0, q)).real)

# letting one more parameter go to zero gives Al-Salam-Chihara
for a in (1e-2, 1e-4, 1e-8):
    gap = np.abs(dual_qhahn_poly(3, t, 0.2, -0.4, a, q) - asc_poly(3, t, 0.2, -0.4, q)).max()
    print(a, gap)

# the q-Hermite substitution: even/odd in x, three-term recurrence in base q^2
herm = specialize("qhermite", q)
x = np.cos(t)
h = [np.ones_like(x), 2 * x]
for n in range(1, 5):
    h.append(2 * x * h[n] - (1 - q ** (2 * n)) * h[n - 1])
for n in range(6):
    print(n, np.abs(herm.poly(n, t).real - h[n]).max())

# q-Jacobi as a two-variable system
jac = specialize("qjacobi", q, alpha=0.5, beta=0.25).params
spec = FamilySpec(Family.AW, ParameterChain(q, *jac.abcd, chain=(0.4,)))
print(mv_poly(spec, (1, 1), (0.7, 1.9)))
