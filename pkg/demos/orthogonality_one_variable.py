# Orthogonality of the one-variable Askey-Wilson polynomials, checked numerically.
import numpy as np

from qaskey import AWParams, aw_norm, aw_poly, aw_theta_weight

p = AWParams(0.3, 0.2, -0.4, 0.1, q=0.5)

# With x = cos(theta) the weight's (1 - x^2)^(-1/2) cancels against dx, so the
# integral over (-1, 1) becomes a smooth integral over (0, pi).
M = 256
theta = (np.arange(M) + 0.5) * np.pi / M
w = aw_theta_weight(theta, p)
print("weight range on the grid:", w.min(), w.max())

P = np.array([aw_poly(n, theta, p).real for n in range(6)])
G = (P * w) @ P.T * (np.pi / M)

norms = np.array([aw_norm(n, p) for n in range(6)])
print("diagonal / closed form:")
print(np.diag(G) / norms)

off = G / np.sqrt(np.outer(norms, norms))
np.fill_diagonal(off, 0)
print("largest normalized off-diagonal entry:", np.abs(off).max())

# The midpoint rule converges geometrically; a few dozen nodes already reach rounding level.
for m in (16, 32, 64, 128):
    t = (np.arange(m) + 0.5) * np.pi / m
    v = np.sum(aw_poly(3, t, p).real ** 2 * aw_theta_weight(t, p)) * np.pi / m
    print(m, abs(v / norms[3] - 1))
