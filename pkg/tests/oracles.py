"""Independent brute-force oracles used by the tests."""
from collections import Counter
from itertools import product


def cycle_count(mapping) -> int:
    """Number of cycles in the functional graph of ``i -> mapping[i]``."""
    n = len(mapping)
    state = [0] * n  # 0 unseen, 1 on current path, 2 done
    cycles = 0
    for start in range(n):
        path = []
        i = start
        while state[i] == 0:
            state[i] = 1
            path.append(i)
            i = mapping[i]
        if state[i] == 1:
            cycles += 1
        for j in path:
            state[j] = 2
    return cycles


def self_maps_by_cycles(n: int) -> list:
    """``counts[k-1]`` = number of maps of an n-set to itself with k cycles."""
    counts = Counter(cycle_count(m) for m in product(range(n), repeat=n))
    return [counts[k] for k in range(1, n + 1)]


def idempotent_maps_by_fixed_points(n: int) -> list:
    """``counts[k-1]`` = number of idempotent self-maps with k fixed points (= k cycles)."""
    counts = Counter()
    for m in product(range(n), repeat=n):
        if all(m[m[i]] == m[i] for i in range(n)):
            counts[sum(m[i] == i for i in range(n))] += 1
    return [counts[k] for k in range(1, n + 1)]
