"""Why the signs come out right: ensemble statistics.

A single molecule decodes correctly with probability p_I p_S, barely above
1/4 at weak polarization. Summing over n molecules shrinks the relative
width like 1/sqrt(n), and the error probability collapses.
"""
from nmrsdc.ensemble import (
    ensemble_stats, error_prob_exact, error_prob_gaussian, sample_magnetizations, summarize_samples,
)
from nmrsdc.protocol import Message

m = Message(0, 1)
print(ensemble_stats(10**4, 0.1, 0.1, m))

samples = sample_magnetizations(10**4, 0.1, 0.1, m, seed=1, shots=10**5)
summary = summarize_samples(samples)
print("sample mean", summary["mean"], "+/-", summary["mean_se"])
print("sample var ", summary["var"], "+/-", summary["var_se"])

print("\n     n    eps   log10 Pe exact   log10 Pe closed form")
for n, eps in [(100, 0.2), (1000, 0.1), (10**4, 0.05), (10**4, 0.3)]:
    print(f"{n:6d} {eps:5.2f} {error_prob_exact(n, eps).log10_p:16.3f} {error_prob_gaussian(n, eps).log10_p:22.3f}")

print("\nmacroscopic sample n=1e18, eps=1e-5: log10 Pe =", error_prob_gaussian(10**18, 1e-5).log10_p)
