"""Exact arithmetic in F_p: primitive roots, discrete logs, and the coset partition.

The multiplicative group F_p^x is split by the subgroup generated by g^d into d
cosets of size k = (p-1)/d; together with {0} these form the d+1 classes that
everything downstream (periods, structure constants, curve counts) is built on.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import CompositeInput, DivisorMismatch


def is_prime(n: int) -> bool:
    """Deterministic trial division; intended for desk-scale n (< 10^7)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def find_primitive_root(p: int) -> int:
    """Smallest positive generator of F_p^x.

    Deterministic so that the labelling of cosets (which one is X_1, etc.)
    is reproducible across runs.
    """
    if not is_prime(p) or p == 2:
        raise CompositeInput(f"{p} is not an odd prime")
    factors = _prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    raise CompositeInput(f"no generator found for {p}")  # unreachable for prime p


@dataclass(frozen=True)
class FieldContext:
    """Immutable description of the coset partition of F_p under <g^d>.

    coset_index[x] is the class of x: the exponent of x's coset for x != 0,
    and d for x = 0.  cosets[i] lists X_i in ascending power order
    g^i, g^{i+d}, g^{i+2d}, ..., which fixes the summation order used by the
    period computation.
    """

    p: int
    g: int
    d: int
    k: int
    alpha: int
    dlog: np.ndarray = field(repr=False)
    coset_index: np.ndarray = field(repr=False)
    cosets: tuple = field(repr=False)

    def class_size(self, i: int) -> int:
        return self.k if i < self.d else 1

    def class_representative(self, i: int) -> int:
        return pow(self.g, i, self.p) if i < self.d else 0


def build_context(p: int, d: int) -> FieldContext:
    """Build the full discrete-log and class-index tables for (p, d)."""
    if not is_prime(p) or p == 2:
        raise CompositeInput(f"{p} is not an odd prime")
    if d < 1 or (p - 1) % d != 0:
        raise DivisorMismatch(f"d={d} does not divide p-1={p - 1}")
    g = find_primitive_root(p)
    k = (p - 1) // d

    # powers table g^e for e = 0..p-2, filled in O(sqrt(p)) Python steps via
    # baby-step/giant-step blocks and one vectorized modular multiply
    m = int((p - 1) ** 0.5) + 1
    baby = np.empty(m, dtype=np.int64)
    x = 1
    for i in range(m):
        baby[i] = x
        x = x * g % p
    giant = np.empty(m + 1, dtype=np.int64)
    gm = pow(g, m, p)
    x = 1
    for j in range(m + 1):
        giant[j] = x
        x = x * gm % p
    g_pows = (giant[:, None] * baby[None, :] % p).reshape(-1)[:p - 1]

    dlog = np.full(p, -1, dtype=np.int64)
    dlog[g_pows] = np.arange(p - 1)
    coset_index = np.empty(p, dtype=np.int64)
    coset_index[1:] = dlog[1:] % d
    coset_index[0] = d

    # X_i in ascending power order g^i, g^{i+d}, ...
    cosets = [g_pows[i::d].copy() for i in range(d)]
    cosets.append(np.array([0], dtype=np.int64))

    alpha = ((p - 1) // 2) % d
    return FieldContext(p=p, g=g, d=d, k=k, alpha=alpha, dlog=dlog,
                        coset_index=coset_index, cosets=tuple(cosets))


def primes_in_range(lo: int, hi: int,
                    residue_filter: tuple[int, int] | None = None) -> list[int]:
    """Ascending primes in [lo, hi], optionally only p = residue (mod modulus)."""
    if hi < lo or hi < 2:
        return []
    sieve = np.ones(hi + 1, dtype=bool)
    sieve[:2] = False
    for q in range(2, int(hi ** 0.5) + 1):
        if sieve[q]:
            sieve[q * q::q] = False
    ps = np.flatnonzero(sieve)
    ps = ps[ps >= lo]
    if residue_filter is not None:
        modulus, residue = residue_filter
        ps = ps[ps % modulus == residue % modulus]
    return [int(p) for p in ps]
