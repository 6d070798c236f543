"""q-shifted factorials and parameter-chain bookkeeping.

All products are evaluated in ascending index order so that results are
bit-reproducible. Every function accepts NumPy arrays for the q-argument and
broadcasts, which is what lets the polynomial and weight routines run over a
whole quadrature grid at once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from .errors import InvalidParams, NonConvergence

#: Default truncation tolerance for infinite products.
DEFAULT_TOL = 1e-16

#: Hard cap on the number of factors taken in an infinite product.
MAX_TERMS = 10**6


def _unwrap(value):
    """Return a Python scalar for 0-d arrays, the array otherwise."""
    if isinstance(value, np.ndarray) and value.ndim == 0:
        return value[()]
    return value


def check_q(q: float) -> float:
    """Validate the base ``q`` and return it as a float.

    Only real ``0 < q < 1`` is supported.
    """
    if isinstance(q, complex) or np.iscomplexobj(q):
        raise InvalidParams(f"q must be real, got {q!r}")
    q = float(q)
    if not 0.0 < q < 1.0:
        raise InvalidParams(f"q must satisfy 0 < q < 1, got {q!r}")
    return q


def qpochhammer(a, q: float, n: int):
    r"""Finite q-shifted factorial :math:`(a;q)_n = \prod_{k=0}^{n-1}(1 - a q^k)`.

    Parameters
    ----------
    a : complex or array_like
        Argument; arrays are handled elementwise.
    q : float
        Base, ``0 < q < 1``.
    n : int
        Number of factors, ``n >= 0``.

    Returns
    -------
    complex, float or ndarray
        The product, same shape as ``a``.
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    a = np.asarray(a)
    result = np.ones(a.shape, dtype=np.result_type(a, float))
    for k in range(int(n)):
        result = result * (1 - a * q**k)
    return _unwrap(result)


def qpochhammer_inf(a, q: float, tol: float = DEFAULT_TOL, max_terms: int = MAX_TERMS):
    r"""Infinite q-shifted factorial :math:`(a;q)_\infty`.

    The product is truncated at the first ``k`` with
    ``max|a| q**k < tol * (1 - q)``. The neglected tail then satisfies
    ``|log tail| <= tol / (1 - tol)``, so the relative truncation error is
    at most ``exp(tol / (1 - tol)) - 1``, i.e. about ``tol``.

    Raises
    ------
    NonConvergence
        If more than ``max_terms`` factors would be needed.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    a = np.asarray(a)
    result = np.ones(a.shape, dtype=np.result_type(a, float))
    amax = float(np.max(np.abs(a))) if a.size else 0.0
    bound = tol * (1.0 - q)
    k = 0
    while amax * q**k >= bound:
        if k >= max_terms:
            raise NonConvergence(
                f"(a;q)_inf needs more than {max_terms} factors (|a|={amax:g}, q={q:g})"
            )
        result = result * (1 - a * q**k)
        k += 1
    return _unwrap(result)


def qpochhammer_multi(values: Sequence, q: float, n: Optional[float] = None,
                      tol: float = DEFAULT_TOL):
    """Product ``(v_1, v_2, ...; q)_n`` of q-shifted factorials.

    ``n`` may be a nonnegative integer, or ``None`` / ``math.inf`` for the
    infinite product.
    """
    if len(values) == 0:
        raise ValueError("values must be nonempty")
    result = 1.0
    for v in values:
        if n is None or n == math.inf:
            result = result * qpochhammer_inf(v, q, tol)
        else:
            result = result * qpochhammer(v, q, int(n))
    return result


def as_multi_index(n: Sequence[int]) -> Tuple[int, ...]:
    """Validate a degree vector and return it as a tuple of ints."""
    out = tuple(int(v) for v in n)
    if len(out) < 1:
        raise InvalidParams("a multi-index needs at least one entry")
    if any(v < 0 or v != w for v, w in zip(out, n)):
        raise InvalidParams(f"multi-index entries must be nonnegative integers, got {n!r}")
    return out


def index_sum(n: Sequence[int], j: int, k: int) -> int:
    """Partial degree sum ``N_{j,k} = n_j + ... + n_k`` (1-based, inclusive).

    The empty sum ``j = k + 1`` is 0.
    """
    s = len(n)
    if not (1 <= j <= k + 1 and 0 <= k <= s):
        raise IndexError(f"N_{{{j},{k}}} out of range for s={s}")
    return int(sum(n[j - 1:k]))


@dataclass(frozen=True)
class ParameterChain:
    """The parameters ``(q; a, b, c, d; a_2, ..., a_s)`` of a multivariable system.

    ``a``, ``b``, ``c``, ``d`` may be ``None`` for families that do not use
    them (the dual q-Hahn system has no ``d``, Al-Salam-Chihara has neither
    ``a`` nor ``d``). The boundary quantities ``a_1**2 = a*b`` and
    ``a_{s+1}**2 = c*d`` are only ever used as products.
    """

    q: float
    a: Optional[complex] = None
    b: Optional[complex] = None
    c: Optional[complex] = None
    d: Optional[complex] = None
    chain: Tuple[float, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "q", check_q(self.q))
        object.__setattr__(self, "chain", tuple(float(v) for v in self.chain))

    @property
    def s(self) -> int:
        return len(self.chain) + 1

    def coupling(self, i: int) -> float:
        """The chain parameter ``a_i`` for ``2 <= i <= s``."""
        if not 2 <= i <= self.s:
            raise IndexError(f"a_{i} is not a chain parameter (s={self.s})")
        return self.chain[i - 2]

    def moduli(self) -> dict:
        named = {k: getattr(self, k) for k in "abcd" if getattr(self, k) is not None}
        named.update({f"a_{i + 2}": v for i, v in enumerate(self.chain)})
        return {k: abs(v) for k, v in named.items()}

    def check_admissible(self) -> "ParameterChain":
        """Raise :class:`InvalidParams` unless every parameter modulus is < 1."""
        for name, mod in self.moduli().items():
            if not mod < 1.0:
                raise InvalidParams(f"|{name}| = {mod:g} violates the bound |{name}| < 1")
        return self

    def chain_product(self, j: int, k: int) -> float:
        """``A_{j,k} = a_j * ... * a_k`` over chain parameters, 1 when ``j = k + 1``.

        Only ``2 <= j`` and ``k <= s`` are available: ``a_1`` and ``a_{s+1}``
        exist only through their squares, see :meth:`chain_product_squared`.
        """
        s = self.s
        if not (2 <= j <= k + 1 and 1 <= k <= s):
            raise IndexError(f"A_{{{j},{k}}} out of range for s={s} (use chain_product_squared)")
        result = 1.0
        for i in range(j, k + 1):
            result *= self.chain[i - 2]
        return result

    def square(self, i: int):
        """``a_i**2`` with ``a_1**2 = a*b`` and ``a_{s+1}**2 = c*d``."""
        s = self.s
        if i == 1:
            return self.a * self.b
        if i == s + 1:
            return self.c * self.d
        return self.coupling(i) ** 2

    def chain_product_squared(self, j: int, k: int):
        """``A_{j,k}**2`` for ``1 <= j <= k + 1 <= s + 2``, boundary squares substituted."""
        s = self.s
        if not (1 <= j <= k + 1 and 0 <= k <= s + 1):
            raise IndexError(f"A_{{{j},{k}}}^2 out of range for s={s}")
        result = 1.0
        for i in range(j, k + 1):
            result = result * self.square(i)
        return result
