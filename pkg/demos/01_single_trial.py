"""Throw n balls into capacity-r urns and inspect one allocation trial.

Shows the three statistics of interest -- overflow V, full urns L, exactly
full urns M -- and checks the telescoping identities that tie them to the
overflow at neighboring capacities.
"""

import numpy as np

from urnoverflow import Uniform, run_trial, streaming_overflow

rng = np.random.default_rng(42)
dist = Uniform(50)
n, r = 200, 3

outcome = run_trial(dist, n, r, rng, keep_sequence=True)
print(f"{n} balls into {dist.urn_count} urns, capacity {r}")
print(f"  overflow V        = {outcome.overflow}")
print(f"  full urns L       = {outcome.full_urns}")
print(f"  exactly full M    = {outcome.exactly_full}")

# L = V_{r-1} - V_r and M = V_{r-1} - 2 V_r + V_{r+1}, exactly, per trial
balls = outcome.sequence
v_lo = streaming_overflow(balls, r - 1)
v_hi = streaming_overflow(balls, r + 1)
assert outcome.full_urns == v_lo - outcome.overflow
assert outcome.exactly_full == v_lo - 2 * outcome.overflow + v_hi
print("telescoping identities hold exactly on this trial")
