"""Independent reference values frozen into the C++ tests.

Run with python3; prints every value the tests pin. Uses only the closed
forms and scipy, never the C++ code.
"""
import math
from fractions import Fraction

import numpy as np
from scipy import stats


def discrete_gaussian_counts(n, mu, sigma, size):
    w = [math.exp(-0.5 * ((m - mu) / sigma) ** 2) for m in range(1, n + 1)]
    total = sum(w)
    quota = [size * x / total for x in w]
    # Python's round() is half-to-even; quotas here never sit on .5.
    base = [int(math.floor(q + 0.5)) for q in quota]
    rem = [q - b for q, b in zip(quota, base)]
    if sum(base) < size:
        order = sorted(range(n), key=lambda i: (-rem[i], abs(i + 1 - mu), i))
        for j in range(size - sum(base)):
            base[order[j % n]] += 1
    else:
        order = sorted(range(n), key=lambda i: (rem[i], -abs(i + 1 - mu), -i))
        for floor_count in (1, 0):
            while sum(base) > size and any(base[i] > floor_count for i in order):
                for i in order:
                    if sum(base) > size and base[i] > floor_count:
                        base[i] -= 1
    return {m + 1: c for m, c in enumerate(base) if c}


def raw_rounded(n, mu, sigma, size):
    pdf = [stats.norm.pdf(m, mu, sigma) for m in range(1, n + 1)]
    return {m + 1: round(size * p) for m, p in enumerate(pdf) if round(size * p)}


print("upper coefficient", 2 / math.sqrt(2 * math.pi) * math.exp(-4.5))
print("tribe-count coefficient", math.sqrt(2 * math.pi) / (6 * math.exp(-4.5)))

print("alloc(9,5,0.75,600)", discrete_gaussian_counts(9, 5, 0.75, 600))
print("raw rounded", raw_rounded(9, 5, 0.75, 600), sum(raw_rounded(9, 5, 0.75, 600).values()))
print("alloc(9,5,0.75,601)", discrete_gaussian_counts(9, 5, 0.75, 601))
print("alloc(9,5,0.75,599)", discrete_gaussian_counts(9, 5, 0.75, 599))
print("alloc(9,2,0.75,600)", discrete_gaussian_counts(9, 2, 0.75, 600))
print("alloc(60,30,5,600)", discrete_gaussian_counts(60, 30, 5, 600))
# N = 121 derives 7 tribes, sigma 121/24; the outer edge quota is about 0.57.
print("alloc(121,15,121/24,600)", discrete_gaussian_counts(121, 15, 121 / 24, 600))
print("alloc(5,3,2,7)", discrete_gaussian_counts(5, 3, 2.0, 7))

# sigma = N / (3 (N_T + 1)) for every row of the three parameter tables.
rows = [("WBCD", 9, 3), ("Hill-Valley", 100, 3), ("KR vs KP", 36, 3), ("Sonar", 60, 3),
        ("Musk1", 166, 6), ("Musk2", 166, 6), ("Colon", 2000, 13), ("Arrhythmia", 279, 6)]
for name, n, nt in rows:
    print("sigma", name, n, nt, n / (3 * (nt + 1)))

c = math.sqrt(2 * math.pi) / (6 * math.exp(-4.5))
for name, n, ntk in [("WBCD", 9, 600), ("Colon", 2000, 6000), ("Arrhythmia", 279, 2000)]:
    print("tribe count", name, max(3, math.ceil(c * n / ntk - 1)), c * n / ntk - 1)

# Friedman, k = 2 methods, n = 20 datasets, method A always better.
k, n = 2, 20
R = [1.0, 2.0]
chi = 12 * n / (k * (k + 1)) * (sum(r * r for r in R) - k * (k + 1) ** 2 / 4)
print("friedman k2 n20", chi, stats.chi2.sf(chi, k - 1))
print("chi2 sf(5.47, 1)", stats.chi2.sf(5.47, 1))

# Friedman on a fixed 3 x 6 matrix with ties, cross-checked with scipy.
m = np.array([[90.0, 85.0, 70.0, 88.0, 91.0, 60.0],
              [92.0, 85.0, 71.0, 80.0, 91.0, 65.0],
              [89.0, 80.0, 72.0, 80.0, 93.0, 61.0]])
print("friedman 3x6 scipy (tie-corrected)", stats.friedmanchisquare(*m))
ranks = np.array([stats.rankdata(-m[:, i]) for i in range(m.shape[1])]).T
Rm = ranks.mean(axis=1)
kk, nn = m.shape
plain = 12 * nn / (kk * (kk + 1)) * ((Rm ** 2).sum() - kk * (kk + 1) ** 2 / 4)
print("friedman 3x6 plain", plain, stats.chi2.sf(plain, kk - 1), "ranks", Rm)

# Paired t on a fixed 20-pair sample.
a = np.array([81.2, 77.5, 90.1, 66.3, 72.8, 88.8, 94.0, 59.9, 70.4, 83.3,
              79.9, 91.5, 68.2, 74.4, 86.6, 62.0, 97.1, 80.8, 75.5, 69.0])
b = np.array([80.1, 78.0, 88.7, 65.0, 71.9, 88.1, 92.5, 60.2, 68.8, 82.0,
              79.1, 90.3, 67.5, 74.9, 85.2, 61.1, 96.0, 79.6, 74.7, 68.4])
d = a - b
t = d.mean() / (d.std(ddof=1) / math.sqrt(len(d)))
print("paired t", t, 2 * stats.t.sf(abs(t), len(d) - 1), stats.ttest_rel(a, b))
