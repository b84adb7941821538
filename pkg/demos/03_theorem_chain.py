# %% [markdown]
# # The pi(x) lower-bound chain
#
# Every link is an exact comparison: rationals, or rational intervals with a three-valued verdict.

# %%
from fractions import Fraction

from eulerbound.bounds import IrrationalityParams, verify_chain, sweep_euler, sweep_ratio

params = IrrationalityParams(Fraction(2), Fraction(1, 10))
report = verify_chain("euler", 2, 1000, params)
for link in report.links:
    print(f"{link.name:20s} {link.verdict.value:13s} required={link.required}")
print("pi(1000) =", report.pi_x, " bound ~", report.final_bound.approx(6))

# %% [markdown]
# pi is flat between primes and the bound keeps rising, so a sweep over every integer reduces to one bisection per prime gap.

# %%
res = sweep_euler(2, params, 10**6)
print(res.to_dict())

res = sweep_ratio(IrrationalityParams(Fraction(1), Fraction(1, 10)), 10**6)
print(res.to_dict())

# %% [markdown]
# The small-x failures are genuine. The inequality only holds from x0 on.
