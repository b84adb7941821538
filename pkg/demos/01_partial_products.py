# %% [markdown]
# # Partial Euler products
#
# Each product over primes p <= x is kept as a reduced fraction. No floats are involved.

# %%
from fractions import Fraction

from eulerbound.products import euler_partial, ratio_partial, l_chi4_partial, growth_check_euler

for x in (2, 5, 10, 100):
    r = euler_partial(2, x)
    print(x, r.pi_x, r.fraction if x <= 10 else f"{float(r.fraction):.10f}")

# %% [markdown]
# The ratio product heads for 2/5. The error stays under 1/x.

# %%
for x in (10, 100, 1000, 10000):
    err = abs(ratio_partial(1, x).fraction - Fraction(2, 5))
    print(x, f"{float(err):.3e}", err <= Fraction(1, x))

# %% [markdown]
# The mod-4 character product converges slowly toward 1/2.

# %%
for x in (10**3, 10**4):
    print(x, f"{float(l_chi4_partial(x).fraction):.8f}")

# %% [markdown]
# 2-adic bookkeeping: valuations of the un-reduced numerator and denominator.

# %%
v = growth_check_euler(euler_partial(2, 1000))
print(v.holds, v.checks)
print(v.slack)
