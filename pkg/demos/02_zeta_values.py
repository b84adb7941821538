# %% [markdown]
# # Exact zeta values
#
# Bernoulli numbers give zeta(2n) / pi^(2n) as a rational, so ratios like zeta(2)^2 / zeta(4) come out exact.

# %%
from eulerbound.zeta import bernoulli, zeta_even_coefficient, zeta_ratio_exact, zeta_interval

print([str(bernoulli(m)) for m in range(0, 13, 2)])
print([str(zeta_even_coefficient(n)) for n in (1, 2, 3)])
print(zeta_ratio_exact(1), zeta_ratio_exact(2))

# %% [markdown]
# For a verdict we need zeta(s) itself, not a multiple of pi. A partial sum plus a bracketed tail gives a rational interval.

# %%
for terms in (10, 100, 1000):
    z = zeta_interval(2, terms)
    print(terms, z.approx(12), f"{float(z.width):.2e}")
