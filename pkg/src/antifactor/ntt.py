"""Exact multidimensional cyclic convolution through number-theoretic transforms.

Residues are computed modulo several primes ``p = 1 (mod q)`` and
recombined with the Chinese remainder theorem, so the output equals the
integer convolution as long as all true coefficients are below the
product of the primes (chosen from an a-priori bound).
"""

from __future__ import annotations

import itertools
from math import prod

PRIME_FLOOR = 1 << 30


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def primes_one_mod(q: int, count: int, floor: int = PRIME_FLOOR) -> list[int]:
    """The ``count`` smallest primes ``p > floor`` with ``p = 1 (mod q)``."""
    out = []
    c = floor // q + 1
    while len(out) < count:
        p = c * q + 1
        if is_prime(p):
            out.append(p)
        c += 1
    return out


def root_of_unity(q: int, p: int) -> int:
    """An element of exact multiplicative order ``q`` modulo prime ``p``."""
    if (p - 1) % q:
        raise ValueError(f"{p} - 1 is not divisible by {q}")
    if q == 1:
        return 1
    factors = _prime_factors(q)
    for x in itertools.count(2):
        w = pow(x, (p - 1) // q, p)
        if all(pow(w, q // r, p) != 1 for r in factors):
            return w
    raise AssertionError("unreachable")


def _dft_axis(grid: dict, shape_k: int, q: int, axis: int, w: int, p: int) -> dict:
    """Length-``q`` DFT along one axis; grid cells are coefficient lists mod ``p``."""
    powers = [pow(w, e, p) for e in range(q)]
    out = {}
    for idx in itertools.product(range(q), repeat=shape_k):
        if idx[axis] != 0:
            continue
        column = [grid.get(idx[:axis] + (j,) + idx[axis + 1:]) for j in range(q)]
        if all(c is None for c in column):
            continue
        length = max(len(c) for c in column if c is not None)
        for t in range(q):
            acc = [0] * length
            for j, c in enumerate(column):
                if c is None:
                    continue
                wt = powers[(t * j) % q]
                for i, x in enumerate(c):
                    acc[i] = (acc[i] + wt * x) % p
            out[idx[:axis] + (t,) + idx[axis + 1:]] = acc
    return out


def _mulmod(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def cyclic_convolution(A: dict, B: dict, k: int, q: int, bound: int) -> dict:
    """Convolve ``A`` and ``B`` (``Z_q^k`` index -> integer coefficient list).

    Cyclic in the index, ordinary in the list position. ``bound`` must
    exceed every true output coefficient (all assumed nonnegative).
    """
    if not A or not B:
        return {}
    primes = []
    need = 1
    while need <= bound:
        primes = primes_one_mod(q, len(primes) + 1)
        need = prod(primes)
    residues = []
    for p in primes:
        w = root_of_unity(q, p)
        ta = {i: [x % p for x in c] for i, c in A.items()}
        tb = {i: [x % p for x in c] for i, c in B.items()}
        for axis in range(k):
            ta = _dft_axis(ta, k, q, axis, w, p)
            tb = _dft_axis(tb, k, q, axis, w, p)
        tc = {i: _mulmod(ta[i], tb[i], p) for i in ta.keys() & tb.keys()}
        winv = pow(w, p - 2, p)
        for axis in range(k):
            tc = _dft_axis(tc, k, q, axis, winv, p)
        scale = pow(pow(q, k, p), p - 2, p)
        residues.append((p, {i: [x * scale % p for x in c] for i, c in tc.items()}))
    out = {}
    for idx in residues[0][1]:
        length = len(residues[0][1][idx])
        coeffs = []
        for pos in range(length):
            coeffs.append(_crt([(p, r[idx][pos]) for p, r in residues]))
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if coeffs:
            out[idx] = coeffs
    return out


def _crt(pairs: list[tuple[int, int]]) -> int:
    x, mod = 0, 1
    for p, r in pairs:
        t = ((r - x) * pow(mod, -1, p)) % p
        x += mod * t
        mod *= p
    return x


def norm_tracked_convolution_ntt(a1: dict, a2: dict, k: int, M: int) -> dict:
    """Transform-based counterpart of the reference norm-tracked convolution.

    Each TOP-free state ``f`` carries its size polynomial at norm ``sum(f)``;
    norm and size are flattened into one ordinary index (norm-major) whose
    stride leaves room for the full product in the size direction.
    """
    q = M + 1
    smax = max((len(p) for p in a1.values()), default=1) + max((len(p) for p in a2.values()), default=1)
    stride = smax

    def embed(a):
        out = {}
        for f, poly in a.items():
            out[f] = [0] * (sum(f) * stride) + list(poly)
        return out

    bound = sum(sum(p) for p in a1.values()) * sum(sum(p) for p in a2.values())
    conv = cyclic_convolution(embed(a1), embed(a2), k, q, bound)
    result = {}
    for f, flat in conv.items():
        for F in range(0, len(flat) // stride + 1):
            poly = flat[F * stride:(F + 1) * stride]
            while poly and poly[-1] == 0:
                poly.pop()
            if poly:
                result[(f, F)] = poly
    return result
