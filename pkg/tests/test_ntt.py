from __future__ import annotations

import random
from itertools import product

import pytest

from antifactor import ntt
from antifactor.countdp import _norm_tracked_convolution


def test_prime_helpers():
    assert [n for n in range(30) if ntt.is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    for q in (1, 2, 3, 4):
        for p in ntt.primes_one_mod(q, 3):
            assert ntt.is_prime(p) and p % q == 1 % q and p > ntt.PRIME_FLOOR
            w = ntt.root_of_unity(q, p)
            assert pow(w, q, p) == 1
            assert all(pow(w, j, p) != 1 for j in range(1, q))


def _direct(A, B, k, q):
    out = {}
    for i, a in A.items():
        for j, b in B.items():
            idx = tuple((x + y) % q for x, y in zip(i, j))
            acc = out.setdefault(idx, [0] * (len(a) + len(b) - 1))
            acc.extend([0] * (len(a) + len(b) - 1 - len(acc)))
            for s, x in enumerate(a):
                for t, y in enumerate(b):
                    acc[s + t] += x * y
    return {i: c for i, c in out.items() if any(c)}


@pytest.mark.parametrize("seed", range(25))
def test_cyclic_convolution_exact(seed):
    rng = random.Random(seed)
    k, q = rng.randint(0, 2), rng.randint(1, 4)
    cells = list(product(range(q), repeat=k))

    def rand():
        return {c: [rng.randint(0, 10**12) for _ in range(rng.randint(1, 3))] for c in rng.sample(cells, rng.randint(1, len(cells)))}

    A, B = rand(), rand()
    bound = sum(map(sum, A.values())) * sum(map(sum, B.values())) + 1
    got = {i: c for i, c in ntt.cyclic_convolution(A, B, k, q, bound).items()}
    want = {i: c[: max(j for j, x in enumerate(c) if x) + 1] for i, c in _direct(A, B, k, q).items()}
    assert got == want


@pytest.mark.parametrize("seed", range(25))
def test_norm_tracked_matches_reference(seed):
    rng = random.Random(seed)
    k, M = rng.randint(0, 3), rng.randint(0, 2)
    cells = list(product(range(M + 1), repeat=k))

    def rand():
        return {c: [rng.randint(0, 50) for _ in range(rng.randint(1, 4))] for c in rng.sample(cells, rng.randint(0, len(cells)))}

    a1, a2 = rand(), rand()
    ref = {key: p for key, p in _norm_tracked_convolution(a1, a2, k, M).items() if any(p)}
    ref = {key: p[: max(j for j, x in enumerate(p) if x) + 1] for key, p in ref.items()}
    assert ntt.norm_tracked_convolution_ntt(a1, a2, k, M) == ref
