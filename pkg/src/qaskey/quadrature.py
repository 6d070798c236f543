"""Tensor-product quadrature in angle coordinates and Gram-matrix verification.

With ``x_k = cos(theta_k)`` each ``(1 - x_k**2)**-1/2 dx_k`` becomes
``dtheta_k``, so every orthogonality integral over ``(-1, 1)**s`` turns into
an integral of a smooth function over ``(0, pi)**s``. The integrand extends
to an even, ``2 pi``-periodic analytic function of each angle, and the
midpoint rule on ``M`` nodes per axis converges geometrically in ``M``.

Sums are reduced with a fixed pairwise tree over the C-ordered node array,
so results do not depend on NumPy's internal blocking.
"""

from __future__ import annotations

import itertools
import math
import os
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import BudgetExceeded, InvalidParams, NumericalError
from .multivar import Family, FamilySpec, _factors, _pair_factor, mv_norm, mv_poly, mv_theta_weight
from .askey_wilson import real_part
from .qcore import DEFAULT_TOL, as_multi_index, index_sum, qpochhammer_multi

DEFAULT_NODE_BUDGET = 10**7


def node_budget() -> int:
    """Node cap, overridable through the ``QASKEY_NODE_BUDGET`` environment variable."""
    raw = os.environ.get("QASKEY_NODE_BUDGET")
    if raw is None:
        return DEFAULT_NODE_BUDGET
    try:
        return int(float(raw))
    except ValueError:
        raise InvalidParams(f"QASKEY_NODE_BUDGET must be an integer, got {raw!r}") from None


def default_nodes(s: int) -> int:
    """Nodes per axis used when none are requested."""
    return 256 if s <= 2 else 96 if s == 3 else 32


@dataclass(frozen=True)
class QuadratureGrid:
    """``M`` midpoint nodes ``theta_j = (j + 1/2) pi / M`` on each of ``s`` axes."""

    nodes_per_dim: int
    s: int = 1
    rule: str = "midpoint-theta"
    budget: Optional[int] = None

    def __post_init__(self):
        if self.rule != "midpoint-theta":
            raise InvalidParams(f"unknown quadrature rule {self.rule!r}")
        if int(self.nodes_per_dim) < 8:
            raise InvalidParams(f"need at least 8 nodes per dimension, got {self.nodes_per_dim}")
        if int(self.s) < 1:
            raise InvalidParams("dimension must be >= 1")
        budget = node_budget() if self.budget is None else int(self.budget)
        if self.total_nodes > budget:
            raise BudgetExceeded(f"{self.nodes_per_dim}^{self.s} = {self.total_nodes} nodes "
                                 f"exceeds the budget of {budget}")

    @property
    def total_nodes(self) -> int:
        return int(self.nodes_per_dim) ** int(self.s)

    @property
    def shape(self) -> Tuple[int, ...]:
        return (int(self.nodes_per_dim),) * int(self.s)

    def nodes(self) -> np.ndarray:
        M = int(self.nodes_per_dim)
        return (np.arange(M) + 0.5) * (np.pi / M)

    def axes(self) -> List[np.ndarray]:
        """Open-mesh angle arrays, axis ``k`` varying along dimension ``k``."""
        t = self.nodes()
        s = int(self.s)
        return [t.reshape((1,) * k + (-1,) + (1,) * (s - k - 1)) for k in range(s)]

    @property
    def cell_volume(self) -> float:
        return (math.pi / int(self.nodes_per_dim)) ** int(self.s)


def pairwise_sum(values) -> float:
    """Sum ``values`` (flattened in C order) with a fixed binary tree.

    The array is zero-padded to a power of two and adjacent pairs are added
    level by level, so the rounding pattern depends only on the length.
    """
    v = np.ascontiguousarray(values, dtype=float).ravel()
    if v.size == 0:
        return 0.0
    size = 1 << (v.size - 1).bit_length()
    if size != v.size:
        v = np.concatenate([v, np.zeros(size - v.size)])
    while v.size > 1:
        v = v[0::2] + v[1::2]
    return float(v[0])


def integrate_theta(f: Callable, s: int, grid: QuadratureGrid) -> float:
    """Midpoint-rule integral of ``f`` over ``(0, pi)**s``.

    ``f`` receives the open-mesh axes of ``grid`` (a list of ``s`` arrays)
    and returns values broadcastable to the full grid.
    """
    if grid.s != s:
        raise InvalidParams(f"grid has dimension {grid.s}, integrand has {s}")
    values = np.broadcast_to(np.asarray(f(grid.axes()), dtype=float), grid.shape)
    return pairwise_sum(values) * grid.cell_volume


def multi_indices(s: int, max_total_degree: int) -> List[Tuple[int, ...]]:
    """All degree vectors of length ``s`` with total degree <= ``max_total_degree``.

    Ordered by total degree, then lexicographically.
    """
    out = []
    for total in range(max_total_degree + 1):
        out.extend(n for n in itertools.product(range(total + 1), repeat=s) if sum(n) == total)
    return out


@dataclass
class GramReport:
    """Numerical Gram matrix of a family against its closed-form norms."""

    family: FamilySpec
    max_total_degree: int
    indices: List[Tuple[int, ...]]
    matrix: np.ndarray
    norms: np.ndarray
    nodes_per_dim: int
    nodes_used: int
    runtime: float
    diag_rel_err: np.ndarray = field(init=False)
    offdiag_max: float = field(init=False)

    def __post_init__(self):
        self.diag_rel_err = np.abs(np.diag(self.matrix) - self.norms) / np.abs(self.norms)
        scale = np.sqrt(np.outer(self.norms, self.norms))
        off = np.abs(self.matrix) / scale
        np.fill_diagonal(off, 0.0)
        self.offdiag_max = float(off.max()) if off.size else 0.0

    @property
    def entries(self) -> Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], float]:
        return {(n, m): float(self.matrix[i, j])
                for i, n in enumerate(self.indices) for j, m in enumerate(self.indices)}

    @property
    def max_diag_rel_err(self) -> float:
        return float(self.diag_rel_err.max())

    def passed(self, tol_diag: float, tol_offdiag: float) -> bool:
        return self.max_diag_rel_err < tol_diag and self.offdiag_max < tol_offdiag

    def to_dict(self) -> dict:
        ch = self.family.chain
        pairs = []
        for i, n in enumerate(self.indices):
            for j in range(i, len(self.indices)):
                pairs.append({"n": list(n), "m": list(self.indices[j]),
                              "value": float(self.matrix[i, j])})
        return {
            "family": self.family.kind.value,
            "s": self.family.s,
            "q": ch.q,
            "params": {k: _jsonable(getattr(ch, k)) for k in "abcd" if getattr(ch, k) is not None},
            "chain": list(ch.chain),
            "max_total_degree": self.max_total_degree,
            "nodes_per_dim": self.nodes_per_dim,
            "nodes_used": self.nodes_used,
            "runtime_seconds": self.runtime,
            "norms": [{"n": list(n), "value": float(v)} for n, v in zip(self.indices, self.norms)],
            "diag_rel_err": [{"n": list(n), "value": float(v)}
                             for n, v in zip(self.indices, self.diag_rel_err)],
            "max_diag_rel_err": self.max_diag_rel_err,
            "offdiag_max": self.offdiag_max,
            "entries": pairs,
        }


def _jsonable(v):
    if isinstance(v, complex):
        return [v.real, v.imag] if v.imag else v.real
    return float(v)


def gram(spec: FamilySpec, max_total_degree: int, grid: QuadratureGrid,
         tol: float = DEFAULT_TOL, norm: Callable = mv_norm) -> GramReport:
    """Gram matrix of all polynomials of total degree <= ``max_total_degree``.

    ``norm(spec, n)`` supplies the closed-form diagonal the report compares
    against; the default is :func:`~qaskey.multivar.mv_norm`.

    Raises
    ------
    NumericalError
        If any sample of the weight is not finite and strictly positive.
    """
    if max_total_degree < 0:
        raise InvalidParams("max_total_degree must be >= 0")
    if grid.s != spec.s:
        raise InvalidParams(f"grid dimension {grid.s} does not match s={spec.s}")
    start = time.perf_counter()
    axes = grid.axes()
    w = np.broadcast_to(mv_theta_weight(spec, axes, tol), grid.shape)
    if not np.all(np.isfinite(w)) or not np.all(w > 0):
        bad = np.unravel_index(np.argmin(np.where(np.isfinite(w), w, -np.inf)), grid.shape)
        raise NumericalError(f"weight sample at node {bad} is not positive: {w[bad]!r}")
    indices = multi_indices(spec.s, max_total_degree)
    polys = [np.broadcast_to(mv_poly(spec, n, axes), grid.shape) for n in indices]
    weighted = [p * w for p in polys]
    size = len(indices)
    G = np.zeros((size, size))
    h = grid.cell_volume
    for i in range(size):
        for j in range(i, size):
            G[i, j] = G[j, i] = pairwise_sum(weighted[i] * polys[j]) * h
    norms = np.array([norm(spec, n) for n in indices])
    return GramReport(spec, max_total_degree, indices, G, norms, int(grid.nodes_per_dim),
                      grid.total_nodes, time.perf_counter() - start)


def _partial_theta_weight(spec: FamilySpec, theta, j: int, tol: float):
    """The truncated weight over the first ``j`` angles, without ``(1 - x**2)**-1/2``."""
    ch = spec.chain
    q = ch.q
    e = [np.exp(1j * np.asarray(t, dtype=float)) for t in theta[:j + 1]]
    w = 1.0 / real_part(_pair_factor(ch.a, e[0], q, tol) * _pair_factor(ch.b, e[0], q, tol))
    for k in range(1, j + 1):
        ek, ek1 = e[k - 1], e[k]
        ak1 = ch.coupling(k + 1)
        num = real_part(qpochhammer_multi([ek * ek, 1 / (ek * ek)], q, None, tol))
        den = real_part(_pair_factor(ak1, ek1 * ek, q, tol) * _pair_factor(ak1, ek1 / ek, q, tol))
        w = w * (num / den)
    return w


def partial_integral_rhs(spec: FamilySpec, n: Sequence[int], m: Sequence[int], j: int,
                         theta_next: float, tol: float = DEFAULT_TOL) -> float:
    """Closed form of the integral over the first ``j`` angles at fixed ``theta_{j+1}``."""
    ch = spec.chain
    q = ch.q
    if any(n[k] != m[k] for k in range(j)):
        return 0.0
    value = (2 * math.pi) ** j
    for k in range(1, j + 1):
        nk, Nk, Nk1 = n[k - 1], index_sum(n, 1, k), index_sum(n, 1, k - 1)
        A2k, A2k1 = ch.chain_product_squared(1, k), ch.chain_product_squared(1, k + 1)
        value *= (qpochhammer_multi([q, A2k1 * q ** (Nk + Nk1 - 1)], q, nk)
                  * qpochhammer_multi([A2k1 * q ** (2 * Nk)], q, None, tol)
                  / qpochhammer_multi([q, A2k * q ** (Nk + Nk1), ch.square(k + 1) * q**nk],
                                      q, None, tol))
    e = np.exp(1j * theta_next)
    A = ch.chain_product(2, j + 1) * q ** index_sum(n, 1, j)
    tail = _pair_factor(ch.a * A, e, q, tol) * _pair_factor(ch.b * A, e, q, tol)
    return float(real_part(value / tail, what="partial-integral closed form"))


def verify_partial_integral(spec: FamilySpec, n: Sequence[int], m: Sequence[int], j: int,
                            theta_rest: Sequence[float], grid: QuadratureGrid,
                            tol: float = DEFAULT_TOL) -> Tuple[float, float]:
    """Integrate the first ``j`` factors against the truncated weight at fixed later angles.

    Returns ``(lhs, rhs)``: the ``j``-dimensional quadrature value and the
    closed form from :func:`partial_integral_rhs`. Only ``n[:j]``, ``m[:j]``
    and ``theta_rest[0]`` (the angle ``theta_{j+1}``) enter.
    """
    if spec.kind is not Family.AW:
        raise InvalidParams("partial integrals are defined for the mv-aw family only")
    s = spec.s
    if not 1 <= j <= s - 1:
        raise InvalidParams(f"need 1 <= j <= s-1, got j={j}, s={s}")
    if grid.s != j:
        raise InvalidParams(f"grid dimension {grid.s} must equal j={j}")
    theta_rest = [float(t) for t in theta_rest]
    if len(theta_rest) != s - j:
        raise InvalidParams(f"need {s - j} fixed angles, got {len(theta_rest)}")
    n = as_multi_index(tuple(n[:j]) + (0,) * (s - j))
    m = as_multi_index(tuple(m[:j]) + (0,) * (s - j))
    theta = grid.axes() + [np.asarray(t) for t in theta_rest]

    def first_factors(idx):
        value = 1.0
        for factor in itertools.islice(_factors(spec, idx, theta), j):
            value = value * factor
        return real_part(value, what="partial product")

    def integrand(_axes):
        return first_factors(n) * first_factors(m) * _partial_theta_weight(spec, theta, j, tol)

    lhs = integrate_theta(integrand, j, grid)
    rhs = partial_integral_rhs(spec, n, m, j, theta_rest[0], tol)
    return lhs, rhs
