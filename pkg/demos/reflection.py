# The reflection a<->c, b<->d with reversed chain, angles and degrees.
import numpy as np

from qaskey import (Family, FamilySpec, ParameterChain, mv_poly, mv_weight, permute_29,
                    tilde_from_permutation)

chain = ParameterChain(0.5, 0.3, 0.2, -0.4, 0.1, (0.5, 0.3))
spec = FamilySpec(Family.AW, chain)

rng = np.random.default_rng(0)
theta = [rng.uniform(0, np.pi, 5) for _ in range(3)]

flipped, n, theta_r = permute_29(spec, (1, 0, 2), theta)
print("reflected chain:", flipped.chain)
print("reversed degrees:", n)

# the weight does not change
print(mv_weight(spec, theta) / mv_weight(flipped, theta_r))

# but the polynomials do; the reflected first system is the second system
direct = mv_poly(FamilySpec(Family.AW_TILDE, chain), (1, 0, 2), theta)
via = mv_poly(flipped, n, theta_r)
print(np.abs(direct - via).max())
print(tilde_from_permutation((1, 0, 2), theta, chain))
