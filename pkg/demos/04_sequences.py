# %% [markdown]
# # Euclid and Hermite sequences

# %%
from eulerbound.sequences import euclid_sequence, hermite_sequence, prime_harmonic_sums

for t in euclid_sequence(12):
    print(t.index, t.extracted, t.paper_match)

# %% [markdown]
# Hermite terms use Wilson's theorem instead of factoring (p-1)! + 1.

# %%
print([t.extracted for t in hermite_sequence(15)])

# %% [markdown]
# The prime harmonic sum minus log log x settles near 0.2615.

# %%
for h in prime_harmonic_sums([10, 100, 10**4, 10**6]):
    print(h.x, h.drift.approx(6))
