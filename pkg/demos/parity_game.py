"""
The three-player parity game
============================

"""

from qubitfts.game import best_classical, ghz_strategy, optimize_strategy, quantum_win_probability, winstate
from qubitfts.states import QubitState

# no deterministic strategy does better than 3/4
value, maximizers = best_classical()
print("classical:", value, "attained by", len(maximizers), "strategies")

# the shared state with the right measurements wins every round
state, measurements = ghz_strategy()
print("quantum:", quantum_win_probability(state, measurements))

# starting from random angles the optimizer finds the perfect strategy again
best, found = optimize_strategy(winstate(), restarts=8, seed=0)
print("optimized on the winning state:", best)

# which the W state cannot reach
w = QubitState(3, {"001": 1, "010": 1, "100": 1})
best_w, _ = optimize_strategy(w, restarts=8, seed=0)
print("optimized on W:", best_w)
