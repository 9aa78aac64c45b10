"""Shared memoized tables of the base-ring F_n and L_n polynomials.

The identity catalog and the identity-language evaluator both reference
F and L at indices up to a few hundred, many times per run; recomputing
each one from scratch would dominate the runtime.  The tables live here,
outside the generator module, which stays cache-free.
"""

from __future__ import annotations

import threading

from .poly import BivarPoly, ONE, X, Y, ZERO

_lock = threading.Lock()
_fib: list[BivarPoly] = [ZERO, ONE]
_luc: list[BivarPoly] = [BivarPoly.const(2), X]


def fib_poly(n: int) -> BivarPoly:
    """F_n(x, y), memoized."""
    if n < 0:
        raise ValueError(f"index must be nonnegative, got {n}")
    with _lock:
        while len(_fib) <= n:
            _fib.append(X * _fib[-1] + Y * _fib[-2])
        return _fib[n]


def luc_poly(n: int) -> BivarPoly:
    """L_n(x, y), memoized."""
    if n < 0:
        raise ValueError(f"index must be nonnegative, got {n}")
    with _lock:
        while len(_luc) <= n:
            _luc.append(X * _luc[-1] + Y * _luc[-2])
        return _luc[n]
