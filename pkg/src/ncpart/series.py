"""Exact enumeration and partition functions via coefficient extraction.

The weighted count over non-crossing partitions of [n] equals the same
product-weight sum over plane trees with n+1 vertices; both are the
coefficient extraction (1/(n+1)) [t^n] Phi(t)^{n+1} where Phi collects the
weights. Everything here is exact integer or Fraction arithmetic unless
float weights are passed explicitly.
"""

from __future__ import annotations

import math
import warnings
from fractions import Fraction
from typing import Callable, Iterator

import numpy as np

from . import _kernels
from .core import NCPartition
from .errors import NonconvergentSeries, NotDivisible, TooLarge

BRUTE_FORCE_LIMIT = 16


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


def _poly_mul_trunc(a: list, b: list, deg: int) -> list:
    out = [0] * (min(len(a) + len(b) - 1, deg + 1))
    for i, ai in enumerate(a):
        if not ai:
            continue
        top = min(len(b), deg + 1 - i)
        for j in range(top):
            if b[j]:
                out[i + j] += ai * b[j]
    return out


def _poly_pow_trunc(base: list, e: int, deg: int) -> list:
    result = [1]
    acc = list(base[: deg + 1])
    while e:
        if e & 1:
            result = _poly_mul_trunc(result, acc, deg)
        e >>= 1
        if e:
            acc = _poly_mul_trunc(acc, acc, deg)
    return result + [0] * (deg + 1 - len(result))


def _weight_list(weights, n: int) -> list:
    """Values w(1..n) from a WeightSeq, mapping, sequence or callable."""
    if hasattr(weights, "value"):
        return [weights.value(k) for k in range(1, n + 1)]
    if isinstance(weights, dict):
        return [weights.get(k, 0) for k in range(1, n + 1)]
    if callable(weights):
        return [weights(k) for k in range(1, n + 1)]
    seq = list(weights)  # w(1), w(2), ...
    return [seq[k - 1] if k - 1 < len(seq) else 0 for k in range(1, n + 1)]


def tree_partition_function(weights, n: int):
    """Sum over non-crossing partitions of [n] of the product of block weights.

    Equals (1/(n+1)) [t^n] Phi(t)^{n+1} with Phi(t) = 1 + sum_k w(k) t^k.
    Exact for int/Fraction weights; float weights lose precision and emit
    a warning.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return 1
    w = _weight_list(weights, n)
    exact = all(isinstance(v, (int, Fraction)) for v in w)
    if not exact:
        warnings.warn(
            "float weights: partition function computed in float arithmetic",
            stacklevel=2,
        )
        w = [float(v) for v in w]
    phi = [1] + w
    coeff = _poly_pow_trunc(phi, n + 1, n)[n]
    if exact:
        if isinstance(coeff, Fraction):
            val = coeff / (n + 1)
            return int(val) if val.denominator == 1 else val
        if coeff % (n + 1) == 0:
            return coeff // (n + 1)
        return Fraction(coeff, n + 1)
    return coeff / (n + 1)


def count_constrained(sizes, n: int) -> int:
    """Number of non-crossing partitions of [n] with all block sizes in ``sizes``.

    ``sizes`` is a SizeSet (or anything with ``members_upto``). Zero when n
    is not a sum of allowed sizes.
    """
    if n == 0:
        return 1
    members = [int(k) for k in sizes.members_upto(n)]
    w = {k: 1 for k in members}
    val = tree_partition_function(w, n)
    return int(val)


def closed_form_counts(k: int, n: int, mode: str) -> int:
    """Closed-form counts of constrained partitions of [k*n] with n blocks scale.

    ``mode='equal'``: all blocks of size exactly k; ``mode='divisible'``:
    all block sizes divisible by k.
    """
    if k < 2 or n < 1:
        raise ValueError("need k >= 2 and n >= 1")
    if mode == "equal":
        num = math.comb(k * n, n)
        den = (k - 1) * n + 1
    elif mode == "divisible":
        num = math.comb((k + 1) * n, n)
        den = k * n + 1
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if num % den:
        raise AssertionError("closed-form count is not an integer")
    return num // den


def asymptotic_count(sizes, n: int) -> float:
    """First-order asymptotic for :func:`count_constrained`.

    gcd(A) * sqrt(Phi(xi) / (2 pi Phi''(xi))) * (Phi(xi)/xi)^(n+1) * n^(-3/2),
    valid along n divisible by gcd(A).
    """
    from .weights import xi_for_set  # deferred: weights imports series helpers

    g = sizes.gcd()
    if n % g:
        raise NotDivisible(f"n={n} is not divisible by gcd={g}")
    xi, law = xi_for_set(sizes)
    phi = law.phi_at_xi
    phi_pp = law._phi_pp(xi)
    if not math.isfinite(phi_pp) or phi_pp <= 0:
        raise NonconvergentSeries("Phi'' did not evaluate to a positive finite value")
    log_val = (
        math.log(g)
        + 0.5 * (math.log(phi) - math.log(2 * math.pi * phi_pp))
        + (n + 1) * (math.log(phi) - math.log(xi))
        - 1.5 * math.log(n)
    )
    if log_val > 700:
        return math.inf
    return math.exp(log_val)


def enumerate_walk_degrees(n: int) -> Iterator[list[int]]:
    """All outdegree sequences of plane trees with n+1 vertices, lex DFS order.

    The same list object is reused between yields; copy it if you keep it.
    """
    degrees = [0] * (n + 1)

    def rec(j: int, s: int) -> Iterator[list[int]]:
        # s is the walk height before step j; feasibility keeps s <= n - j
        if j == n:
            degrees[j] = 0
            yield degrees
            return
        lo = 0 if s > 0 else 1
        hi = n - j - s
        for d in range(lo, hi + 1):
            degrees[j] = d
            yield from rec(j + 1, s + d - 1)

    if n == 0:
        yield [0]
    else:
        yield from rec(0, 0)


def brute_force_enumerate(n: int) -> Iterator[NCPartition]:
    """Every non-crossing partition of [n], exactly once, via tree enumeration."""
    if n > BRUTE_FORCE_LIMIT:
        raise TooLarge(f"refusing exhaustive enumeration beyond n={BRUTE_FORCE_LIMIT}")
    if n == 0:
        yield NCPartition(n=0, blocks=())
        return
    for deg in enumerate_walk_degrees(n):
        elems, offsets = _kernels.blocks_csr(np.asarray(deg, dtype=np.int64))
        yield NCPartition._from_csr(n, elems, offsets)


def partition_weight(p: NCPartition, weights):
    """Product of block-size weights of a partition."""
    w = _weight_list(weights, p.n if p.n else 1)
    out = 1
    for b in p.blocks:
        out *= w[len(b) - 1]
    return out


def exact_distribution(weights, n: int) -> dict[NCPartition, Fraction | float]:
    """Exact law on the non-crossing partitions of [n] for product weights.

    Brute force; intended as a test / selftest oracle for small n.
    """
    table = {}
    total = 0
    for p in brute_force_enumerate(n):
        wgt = partition_weight(p, weights)
        if wgt:
            table[p] = wgt
            total += wgt
    if not table:
        return {}
    if isinstance(total, (int, Fraction)):
        return {p: Fraction(v) / total for p, v in table.items()}
    return {p: v / total for p, v in table.items()}
