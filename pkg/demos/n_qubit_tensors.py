"""
Symmetric tensors over n qubits and the degree-two invariant
============================================================

"""

import random

from qubitfts.states import QubitState, random_state
from qubitfts.symtensor import (
    apply_ntransform,
    bilinear_invariant,
    from_amplitudes,
    random_ntransform,
    two_qubit_reduce,
)

rng = random.Random(11)

# the invariant is symmetric for even n and antisymmetric for odd n
for n in range(2, 6):
    t, u = from_amplitudes(random_state(rng, n)), from_amplitudes(random_state(rng, n))
    print(n, bilinear_invariant(t, u) == (-1) ** n * bilinear_invariant(u, t))

# and it is unchanged by the local generators
t, u = from_amplitudes(random_state(rng, 4)), from_amplitudes(random_state(rng, 4))
g = random_ntransform(rng, 4, zed=False)
print("invariant:", bilinear_invariant(t, u) == bilinear_invariant(apply_ntransform(g, t), apply_ntransform(g, u)))

# two qubits reduce to 1 + k|11>, and k = 0 exactly when the state is a product
for s in (QubitState(2, {"00": 1, "11": 1}), QubitState(2, {"00": 2, "01": 4, "10": 1, "11": 2})):
    r = two_qubit_reduce(from_amplitudes(s))
    print(s, "-> k =", r.k)
