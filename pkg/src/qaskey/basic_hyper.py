"""Terminating basic hypergeometric series.

Only the balanced shape that every polynomial family here needs is provided:
one numerator parameter ``q**-n`` plus ``r`` further numerator parameters over
``r`` denominator parameters,

    r+1 phi r [q^-n, u_1, ..., u_r; l_1, ..., l_r; q, z].
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Tuple

import numpy as np

from .errors import DivisionByZero, InvalidParams
from .qcore import _unwrap, check_q


@dataclass(frozen=True)
class TerminatingSeriesSpec:
    """Parameters of a terminating series with top parameter ``q**-n``.

    ``upper`` and ``lower`` entries may be scalars or broadcastable arrays.
    """

    n: int
    upper: Tuple = ()
    lower: Tuple = ()
    q: float = 0.5
    z: complex = field(default=None)

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise InvalidParams(f"termination degree must be a nonnegative integer, got {self.n!r}")
        object.__setattr__(self, "q", check_q(self.q))
        object.__setattr__(self, "upper", tuple(self.upper))
        object.__setattr__(self, "lower", tuple(self.lower))
        if self.z is None:
            object.__setattr__(self, "z", self.q)


def eval_terminating_phi(spec: TerminatingSeriesSpec):
    """Sum the series by its term-ratio recurrence.

    ``t_0 = 1`` and

        t_{k+1} / t_k = (1 - q^{k-n}) prod_i (1 - u_i q^k) z
                        / ((1 - q^{k+1}) prod_j (1 - l_j q^k)),

    summed for ``k = 0 .. n`` in ascending order.

    Raises
    ------
    DivisionByZero
        If some ``1 - l_j q^k`` vanishes for ``k < n``.
    """
    n, q, z = int(spec.n), spec.q, spec.z
    upper = [np.asarray(u) for u in spec.upper]
    lower = [np.asarray(b) for b in spec.lower]
    shape = np.broadcast_shapes(*(u.shape for u in upper), *(b.shape for b in lower),
                                np.shape(z))
    dtype = np.result_type(float, z, *upper, *lower)
    term = np.ones(shape, dtype=dtype)
    total = np.ones(shape, dtype=dtype)
    for k in range(n):
        qk = q**k
        num = (1.0 - q**(k - n)) * z
        for u in upper:
            num = num * (1 - u * qk)
        den = 1.0 - q**(k + 1)
        for j, b in enumerate(lower):
            factor = 1 - b * qk
            if np.any(factor == 0):
                raise DivisionByZero(f"lower parameter {j} gives a zero factor at k={k}")
            den = den * factor
        term = term * (num / den)
        total = total + term
    return _unwrap(total)


def phi(n: int, upper: Sequence, lower: Sequence, q: float, z=None):
    """Shorthand for ``eval_terminating_phi(TerminatingSeriesSpec(...))``."""
    return eval_terminating_phi(TerminatingSeriesSpec(n, tuple(upper), tuple(lower), q, z))
