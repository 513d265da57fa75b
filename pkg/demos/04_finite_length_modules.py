"""F-stable submodules of small Frobenius modules, and what breaks over an imperfect field."""

from fsing.fields import GF
from fsing.finlen import FinLenFrobeniusModule, fstable_submodules, is_anti_nilpotent, nonperfect_counterexample

k = GF(2)
M = FinLenFrobeniusModule(k, [[1, 0], [0, 1]])
print("F-stable submodules of F_2^2 with F = id:", len(list(fstable_submodules(M))))
print("anti-nilpotent:", bool(is_anti_nilpotent(M)))

M, L = nonperfect_counterexample(3)
print("over F_3(t): F injective on M:", M.F_injective())
print("L is F-stable:", M.is_F_stable(L))
print("F injective on M/L:", M.F_injective_mod(L))
