"""Goodness-of-fit testing, step by step.

Samples a sparse two-community graph, computes the across-communities edge
count, and compares it to the concentration threshold: under the null the
across count sits near bn/4, and a change of s nodes inflates it by about
s(n - s)(a - b) / (2n). The same graph is then handed to the naive
recover-and-compare baseline.
"""

from sbmtest import (
    GofConfig,
    SbmParams,
    balanced_partition,
    cut_counts,
    gof_test,
    naive_gof,
    perturb_partition,
    sample_sbm,
)

n, a, b, s = 1000, 30, 10, 200
params = SbmParams(n, a, b)
x = balanced_partition(n)
y = perturb_partition(x, s, mode="shift")

null_graph = sample_sbm(params, x, seed=1)
alt_graph = sample_sbm(params, y, seed=2)

print(f"null across count:  {cut_counts(null_graph, x).across}  (bn/4 = {b * n / 4:.0f})")
print(f"alt  across count:  {cut_counts(alt_graph, x).across}  "
      f"(expected shift ~ {s * (n - s) * (a - b) / (2 * n):.0f})")

config = GofConfig(delta=0.05)
for name, graph in [("null", null_graph), ("alt", alt_graph)]:
    result = gof_test(graph, x, params, config)
    print(f"gof on {name}: statistic {result.statistic:.0f} vs threshold "
          f"{result.threshold:.1f} -> {'reject' if result.reject else 'accept'}")

for name, graph in [("null", null_graph), ("alt", alt_graph)]:
    result = naive_gof(graph, x, s)
    print(f"naive gof on {name}: distortion {result.statistic:.0f} vs s/2 = "
          f"{result.threshold:.0f} -> {'reject' if result.reject else 'accept'}")
