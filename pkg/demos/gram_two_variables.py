# Gram matrix of the two-variable system, through the library's quadrature driver.
from qaskey import Family, FamilySpec, ParameterChain, QuadratureGrid, gram

chain = ParameterChain(q=0.5, a=0.3, b=0.2, c=-0.4, d=0.1, chain=(0.5,))
spec = FamilySpec(Family.AW, chain)

report = gram(spec, max_total_degree=3, grid=QuadratureGrid(128, s=2))
print(len(report.indices), "polynomials of total degree <= 3")
for n, err in zip(report.indices, report.diag_rel_err):
    print(n, f"{err:.2e}")
print("offdiag max", report.offdiag_max)
print("passes 1e-6 / 1e-7:", report.passed(1e-6, 1e-7))
print(f"{report.nodes_used} nodes, {report.runtime:.3f} s")

# The same chain with the second system, built from the (c, d) end.
tilde = FamilySpec(Family.AW_TILDE, chain)
r = gram(tilde, 3, QuadratureGrid(128, s=2))
print("tilde system:", r.max_diag_rel_err, r.offdiag_max)

# Three variables: 96^3 nodes is still under a second.
spec3 = FamilySpec(Family.AW, ParameterChain(0.5, 0.3, 0.2, -0.4, 0.1, (0.5, 0.3)))
r3 = gram(spec3, 2, QuadratureGrid(96, s=3))
print("s=3:", r3.max_diag_rel_err, r3.offdiag_max, f"{r3.runtime:.2f} s")
