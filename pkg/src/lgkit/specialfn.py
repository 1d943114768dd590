"""Polynomial families used throughout the package.

All evaluators accept scalars or numpy arrays (real or complex) and
broadcast elementwise.  Degrees and orders are plain non-negative ints.
"""
import math

import numpy as np

__all__ = ["log_factorial", "factorial_ratio", "laguerre", "hermite", "hermite2v"]

#: default relative tolerance for polynomial identities
POLY_RTOL = 1e-10


def log_factorial(k):
    """Return ln(k!) for a non-negative integer k."""
    k = int(k)
    if k < 0:
        raise ValueError(f"log_factorial needs k >= 0, got {k}")
    return math.lgamma(k + 1)


def factorial_ratio(num, den):
    """prod(num_i!) / prod(den_i!) evaluated through log-factorials."""
    return math.exp(sum(log_factorial(k) for k in num) - sum(log_factorial(k) for k in den))


def _check_degree(n, name="degree"):
    n = int(n)
    if n < 0:
        raise ValueError(f"{name} must be >= 0, got {n}")
    return n


def laguerre(n, k, x):
    """Associated Laguerre polynomial L_n^k(x) by forward recurrence in n.

    (j+1) L_{j+1} = (2j + 1 + k - x) L_j - (j + k) L_{j-1}
    """
    n = _check_degree(n)
    k = _check_degree(k, "order")
    x = np.asarray(x)
    prev = np.ones_like(x, dtype=np.result_type(x, float))
    if n == 0:
        return prev[()]
    cur = (1 + k) - x
    for j in range(1, n):
        prev, cur = cur, ((2 * j + 1 + k - x) * cur - (j + k) * prev) / (j + 1)
    return cur[()] if isinstance(cur, np.ndarray) else cur


def hermite(m, x):
    """Physicists' Hermite polynomial H_m(x)."""
    m = _check_degree(m)
    x = np.asarray(x)
    prev = np.ones_like(x, dtype=np.result_type(x, float))
    if m == 0:
        return prev[()]
    cur = 2 * x
    for j in range(1, m):
        prev, cur = cur, 2 * x * cur - 2 * j * prev
    return cur[()] if isinstance(cur, np.ndarray) else cur


def hermite2v(m, n, x, y):
    r"""Two-variable Hermite polynomial H_{m,n}(x, y).

    Defined by the generating function
    exp(-t t' + t x + t' y) = sum_{m,n} H_{m,n}(x, y) t^m t'^n / (m! n!),
    equivalently

        H_{m,n}(x, y) = sum_k (-1)^k m! n! x^{m-k} y^{n-k} / (k! (m-k)! (n-k)!).

    Evaluated by the recurrence H_{i+1,j} = x H_{i,j} - j H_{i,j-1} from
    H_{0,j} = y^j, which loses far less to cancellation than the explicit
    sum.  For y = conj(x) this reduces to an associated Laguerre polynomial.
    """
    m = _check_degree(m)
    n = _check_degree(n)
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    if m > n:
        # H_{m,n}(x, y) = H_{n,m}(y, x); iterate over the smaller degree
        m, n, x, y = n, m, y, x
    x, y = np.broadcast_arrays(x, y)
    row = [np.ones(x.shape, dtype=complex)]
    for _ in range(n):
        row.append(row[-1] * y)
    for _ in range(m):
        row = [x * row[0]] + [x * row[j] - j * row[j - 1] for j in range(1, n + 1)]
    return row[n][()]
