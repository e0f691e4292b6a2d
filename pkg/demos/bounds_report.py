"""Closed-form bounds for a few parameter settings.

Prints the Bhattacharyya and chi-square upper bounds for goodness-of-fit
testability, the entropy bound on the partition overlap term, and the
converse bound on two-sample risk where it applies (tau < 1/4).
"""

from sbmtest import gamma_entropy_upper, gof_bc_bound, gof_chi2_bound, nu, tst_converse

settings = [
    (1000, 100, 15, 5),
    (1000, 10, 15, 5),
    (1000, 100, 6, 4),
    (200, 20, 12, 4),
]

for n, s, a, b in settings:
    chi2, near_quarter = gof_chi2_bound(n, s, a, b)
    report = tst_converse(n, s, a, b)
    print(f"n={n} s={s} a={a} b={b}")
    print(f"  nu = {nu(n, a, b):.4f}")
    print(f"  gof Bhattacharyya bound = {gof_bc_bound(n, s, a, b):.3e}")
    print(f"  gof chi-square bound = {chi2:.3e}"
          + ("  (within the risk-1/4 regime)" if near_quarter else ""))
    print(f"  gamma entropy bound = {gamma_entropy_upper(n, s):.3e}")
    print(f"  tau = {report.tau:.4f}")
    if report.beta_upper is not None:
        print(f"  beta upper = {report.beta_upper:.4f}, "
              f"tst risk lower = {report.tst_risk_lower:.4f}")
    else:
        print("  converse bound not applicable (tau >= 1/4)")
    print()
