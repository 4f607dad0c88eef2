"""Closed-form pinching constants and their cross-checks.

Run: python demos/05_pinching.py
"""

from aloffwallach import pinching as pn

co = pn.coefficients((1, 2))
print("a =", [str(v) for v in co.a])
print("lambda_hat  (ternary)   :", pn.lambda_hat(co))
print("lambda_hat  (candidates):", pn.lambda_hat(co, "candidates"))
print("c(1) radical form       :", pn.c_family(1))

lb = pn.lambda_bar(pn.simplex_quadratic(co), co)
print("lambda_bar (simplex)    :", lb.value, "closed form det A / sum D:", lb.closed_form)
print("published rational form:", pn.lambda_bar_printed(1, 2), "(differs from the simplex minimum)")

km = pn.k_max(co)
print("Lambda_0 =", km.capital_lambda0, "gates:", km.lambda0_gate, km.kmax_gate, "nu =", km.nu1, km.nu2)

for n in (1, 5, 50):
    r = pn.pinch((n, n + 1), oracle_budget=None)
    print(f"W({n},{n + 1}): {r.k_min:.8f} <= K <= {r.k_max:.8f}")
