"""Exact integer elimination backend, chosen once at import.

Both entry points first strip unit pivots from a sparse copy of the matrix
(boundary matrices are mostly unit entries), then hand the dense leftover
core to the compiled module when it was built and ``SALVETTI_PURE_PYTHON`` is
unset.

The compiled rank is multi-modular: ranks modulo 31-bit primes are lower
bounds for the rational rank r, and if the rank were larger than the best
bound b then every prime tried would divide one fixed nonzero
(b+1)-minor.  Once the product of the primes exceeds the Hadamard bound for
such minors, b is the rank.  The compiled Smith form works on int64 storage
and signals overflow, in which case the dense step is repeated with
arbitrary-precision Python ints.
"""

import math
import os

from . import _pykernels

_compiled = None
if not os.environ.get("SALVETTI_PURE_PYTHON"):
    try:
        from . import _ckernels as _compiled
    except ImportError:
        _compiled = None

BACKEND = "cython" if _compiled is not None else "python"


_PRIMES = []


def _is_prime(n):
    # deterministic Miller-Rabin for n < 3.4e14
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes():
    """Primes below 2**31 in decreasing order, cached."""
    k = 0
    while True:
        if k == len(_PRIMES):
            n = _PRIMES[-1] - 2 if _PRIMES else 2**31 - 1
            while not _is_prime(n):
                n -= 2
            _PRIMES.append(n)
        yield _PRIMES[k]
        k += 1


def certified_rank(rows, ncols, rank_mod):
    """Rational rank from ranks modulo successive primes, stopped by the Hadamard bound."""
    rows = [list(r) for r in rows]
    full = min(len(rows), ncols)
    # squared row norms, largest first: prod of the first k bounds any k-minor squared
    norms = sorted((sum(v * v for v in r) for r in rows), reverse=True)
    best, product = 0, 1
    for p in primes():
        best = max(best, rank_mod(rows, ncols, p))
        product *= p
        if best == full or product * product > math.prod(norms[: best + 1]):
            return best


def dense_rank(rows, ncols, backend=None):
    """Rank of a dense integer matrix (list of lists) with the chosen backend."""
    if (backend or BACKEND) == "cython" and _compiled is not None:
        return certified_rank(rows, ncols, _compiled.rank_mod)
    return _pykernels._dense_rank([list(r) for r in rows], ncols)


def dense_smith(rows, ncols, backend=None):
    """Nonzero invariant factors of a dense integer matrix, sorted."""
    if (backend or BACKEND) == "cython" and _compiled is not None:
        try:
            return _compiled.smith_invariants(rows, ncols)
        except OverflowError:
            pass
    return sorted(_pykernels._dense_smith([list(r) for r in rows], ncols))


def integer_rank(rows, ncols, backend=None):
    """Rank over Q of the integer matrix whose rows are dicts or sequences."""
    units, rest = _pykernels._strip_unit_pivots(_pykernels._sparse_rows(rows))
    if not rest:
        return units
    dense, n = _pykernels._densify(rest)
    return units + dense_rank(dense, n, backend)


def smith_invariants(rows, ncols, backend=None):
    """Nonzero Smith invariant factors (each divides the next)."""
    units, rest = _pykernels._strip_unit_pivots(_pykernels._sparse_rows(rows))
    diag = [1] * units
    if rest:
        dense, n = _pykernels._densify(rest)
        diag.extend(dense_smith(dense, n, backend))
    return sorted(diag)
