"""
Box Laplacian spectra: enumeration, gaps, and the integer audit
===============================================================

"""

from imhyp import BoxDomain, enumerate_spectrum

# enumerate eigenvalues of the Laplacian on a box, with multiplicities
for dim, bc in [(1, "dirichlet"), (2, "neumann"), (3, "neumann")]:
    domain = BoxDomain(dim=dim, bc=bc)
    spec = enumerate_spectrum(domain, 200.0)
    print(
        f"dim={dim} {bc:9s}: {spec.total_count:5d} modes, "
        f"{len(spec):4d} distinct values up to 200"
    )

# gap statistics on the cube: the largest gap stabilizes at 3 and the
# witness pair never moves past (110, 113)
from imhyp import gap_stats

cube = BoxDomain(dim=3)
spec = enumerate_spectrum(cube, 2000.0)
report = gap_stats(spec)
print("\ncube up to 2000:")
print(f"largest gap: {report.max_gap:g} at {report.witness}")
print("gap histogram:", report.gap_histogram)
print("running max by checkpoint:", report.sup_trend[-4:])

# the reason the cube's gaps stay bounded is arithmetic: every integer
# outside the 4^a(8b+7) family is a sum of three squares
from imhyp import three_square_gap_audit

audit = three_square_gap_audit(100_000)
print("\ninteger audit up to 10^5:")
print(f"{audit.excluded.size} integers are not sums of three squares")
print(f"max induced gap: {audit.max_gap} at {audit.gap_witness}")
print(f"longest excluded run: {audit.max_excluded_run}")

# growth exponents: lambda_n ~ c * n^(2/dim)
from imhyp import weyl_fit

print("\ngrowth exponents at cutoff 10^4:")
for dim, bc in [(1, "dirichlet"), (2, "neumann"), (3, "neumann")]:
    spec = enumerate_spectrum(BoxDomain(dim=dim, bc=bc), 1.0e4)
    fit = weyl_fit(spec, dim)
    print(
        f"dim={dim}: fitted {fit.exponent:.4f}, expected {fit.expected:.4f} "
        f"(residual {fit.residual:.2e}, {fit.n_used} points)"
    )

# a strong sufficient condition comparing gap size to level: on the cube
# the ratio peaks at the bottom of the spectrum and never reaches 1
from imhyp import JumpQuery, jump_condition_scan

spec = enumerate_spectrum(cube, 2000.0)
scan = jump_condition_scan(spec, JumpQuery(theta=0.5, lip=1.0, cconst=1.0, nu=1.0))
print("\njump-ratio scan on the cube:")
print(f"best ratio {scan.best_ratio:.6f} at n={scan.best_n}, pair {scan.best_pair}")
print(f"condition satisfied: {scan.satisfied}")
print("ratio trend:", [(int(x), round(r, 4)) for x, r in scan.ratio_trend[-5:]])
