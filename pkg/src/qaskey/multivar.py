"""Multivariable Askey-Wilson type systems.

Four families share one interface:

* ``Family.AW``: products of Askey-Wilson polynomials whose parameters are
  chained through ``a A_{2,k} q^{N_{k-1}}``, ``b A_{2,k} q^{N_{k-1}}`` and
  the coupling pair ``a_{k+1} e^{+-i theta_{k+1}}``;
* ``Family.AW_TILDE``: the second system, chained from the ``c, d`` end;
* ``Family.DUAL_QHAHN``: the continuous dual q-Hahn system (no ``d``);
* ``Family.ASC``: the Al-Salam-Chihara system (no ``a``, no ``d``).

A point is a sequence ``theta = (theta_1, ..., theta_s)`` whose entries may
be arrays; they are broadcast together, so passing open-mesh axes such as
``(t[:, None], t[None, :])`` evaluates on a whole tensor grid.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from typing import Sequence, Tuple

import numpy as np

from .askey_wilson import (AWParams, asc_poly, aw_poly, check_interior, dual_qhahn_poly,
                           real_part)
from .errors import InvalidParams, NumericalError
from .qcore import (DEFAULT_TOL, ParameterChain, as_multi_index, index_sum, qpochhammer_multi)

#: Relative imaginary residue tolerated in multivariable polynomial values.
MV_REAL_RTOL = 1e-9


class Family(str, enum.Enum):
    AW = "mv-aw"
    AW_TILDE = "mv-aw-tilde"
    DUAL_QHAHN = "mv-dual-qhahn"
    ASC = "mv-asc"


# Which of a, b, c, d each family uses.
_USES = {
    Family.AW: "abcd",
    Family.AW_TILDE: "abcd",
    Family.DUAL_QHAHN: "abc",
    Family.ASC: "bc",
}


@dataclass(frozen=True)
class FamilySpec:
    """A polynomial system together with its (validated) parameter chain."""

    kind: Family
    chain: ParameterChain

    def __post_init__(self):
        kind = Family(self.kind)
        object.__setattr__(self, "kind", kind)
        used = _USES[kind]
        for name in "abcd":
            value = getattr(self.chain, name)
            if name in used and value is None:
                raise InvalidParams(f"{kind.value} needs parameter {name}")
            if name not in used and value is not None:
                raise InvalidParams(f"{kind.value} does not take parameter {name}")
        self.chain.check_admissible()

    @property
    def s(self) -> int:
        return self.chain.s


def _point(theta, s: int):
    if not isinstance(theta, (list, tuple)):
        theta = list(theta) if np.ndim(theta) > 0 else [theta]
    theta = [np.asarray(t, dtype=float) for t in theta]
    if len(theta) != s:
        raise InvalidParams(f"point has {len(theta)} angles, expected s={s}")
    return theta


def _index(n, s: int):
    n = as_multi_index(n)
    if len(n) != s:
        raise InvalidParams(f"multi-index has {len(n)} entries, expected s={s}")
    return n


def _factors(spec: FamilySpec, n: Tuple[int, ...], theta):
    """Yield the complex single-variable factors of the product, k = 1 .. s."""
    ch = spec.chain
    q, s = ch.q, ch.s
    kind = spec.kind

    def coupling(i, t):
        u = ch.coupling(i) * np.exp(1j * t)
        return u, np.conj(u)

    for k in range(1, s + 1):
        x = theta[k - 1]
        if kind is Family.AW:
            scale = ch.chain_product(2, k) * q ** index_sum(n, 1, k - 1)
            if k < s:
                u, v = coupling(k + 1, theta[k])
            else:
                u, v = ch.c, ch.d
            yield aw_poly(n[k - 1], x, AWParams(ch.a * scale, ch.b * scale, u, v, q))
        elif kind is Family.AW_TILDE:
            scale = ch.chain_product(k + 1, s) * q ** index_sum(n, k + 1, s)
            if k == 1:
                u, v = ch.a, ch.b
            else:
                u, v = coupling(k, theta[k - 2])
            yield aw_poly(n[k - 1], x, AWParams(ch.c * scale, ch.d * scale, u, v, q))
        elif kind is Family.DUAL_QHAHN:
            last = ch.a * ch.chain_product(2, k) * q ** index_sum(n, 1, k - 1)
            if k < s:
                u, v = coupling(k + 1, theta[k])
            else:
                u, v = ch.b, ch.c
            yield dual_qhahn_poly(n[k - 1], x, u, v, last, q)
        else:
            if k < s:
                u, v = coupling(k + 1, theta[k])
            else:
                u, v = ch.b, ch.c
            yield asc_poly(n[k - 1], x, u, v, q)


def mv_poly(spec: FamilySpec, n: Sequence[int], theta):
    """Evaluate the multivariable polynomial of degree vector ``n`` at angles ``theta``.

    Returns a real float or array (the complex product is checked to be real
    to relative ``MV_REAL_RTOL``).
    """
    n = _index(n, spec.s)
    theta = _point(theta, spec.s)
    value = 1.0
    for factor in _factors(spec, n, theta):
        value = value * factor
    return real_part(value, MV_REAL_RTOL, what=f"{spec.kind.value} polynomial")


def _pair_factor(u, e, q, tol):
    """``(u e, u / e; q)_inf`` for a complex unit ``e``."""
    return qpochhammer_multi([u * e, u / e], q, None, tol)


def mv_theta_weight(spec: FamilySpec, theta, tol: float = DEFAULT_TOL):
    """Weight density in the angle variables.

    ``rho(x) dx_1 ... dx_s = mv_theta_weight(theta) dtheta_1 ... dtheta_s``; this
    is the weight with every ``(1 - x_k**2)**-1/2`` factor removed.
    """
    ch = spec.chain
    q, s = ch.q, ch.s
    theta = [check_interior(t) for t in _point(theta, s)]
    e = [np.exp(1j * t) for t in theta]
    what = f"{spec.kind.value} weight"

    def real(z):
        return real_part(z, what=what)

    weight = 1.0
    if spec.kind in (Family.AW, Family.AW_TILDE):
        weight = weight / real(_pair_factor(ch.a, e[0], q, tol) * _pair_factor(ch.b, e[0], q, tol))
    elif spec.kind is Family.DUAL_QHAHN:
        weight = weight / real(_pair_factor(ch.a, e[0], q, tol))
    for k in range(1, s):
        ek, ek1 = e[k - 1], e[k]
        num = real(qpochhammer_multi([ek * ek, 1 / (ek * ek)], q, None, tol))
        ak1 = ch.coupling(k + 1)
        den = real(_pair_factor(ak1, ek1 * ek, q, tol) * _pair_factor(ak1, ek1 / ek, q, tol))
        weight = weight * (num / den)
    es = e[s - 1]
    u, v = (ch.c, ch.d) if spec.kind in (Family.AW, Family.AW_TILDE) else (ch.b, ch.c)
    num = real(qpochhammer_multi([es * es, 1 / (es * es)], q, None, tol))
    den = real(_pair_factor(u, es, q, tol) * _pair_factor(v, es, q, tol))
    return weight * (num / den)


def mv_weight(spec: FamilySpec, theta, tol: float = DEFAULT_TOL):
    """Orthogonality weight ``rho(x | q)`` at ``x_k = cos theta_k``."""
    theta = _point(theta, spec.s)
    w = mv_theta_weight(spec, theta, tol)
    for t in theta:
        w = w / np.sin(t)
    return w


def mv_norm(spec: FamilySpec, n: Sequence[int], tol: float = DEFAULT_TOL) -> float:
    """Closed-form squared norm of the polynomial with degree vector ``n``."""
    ch = spec.chain
    q, s = ch.q, ch.s
    n = _index(n, s)
    N = lambda j, k: index_sum(n, j, k)  # noqa: E731
    inf = None
    value = (2 * math.pi) ** s

    if spec.kind is Family.AW:
        for k in range(1, s + 1):
            nk, Nk, Nk1 = n[k - 1], N(1, k), N(1, k - 1)
            A2k, A2k1 = ch.chain_product_squared(1, k), ch.chain_product_squared(1, k + 1)
            value *= (qpochhammer_multi([q, A2k1 * q ** (Nk + Nk1 - 1)], q, nk)
                      * qpochhammer_multi([A2k1 * q ** (2 * Nk)], q, inf, tol)
                      / qpochhammer_multi([q, A2k * q ** (Nk + Nk1), ch.square(k + 1) * q**nk],
                                          q, inf, tol))
        value /= _tail(ch, N(1, s), tol)
    elif spec.kind is Family.AW_TILDE:
        for k in range(1, s + 1):
            nk, Nks, Nk1s = n[k - 1], N(k, s), N(k + 1, s)
            A2 = ch.chain_product_squared(k, s + 1)
            A2n = ch.chain_product_squared(k + 1, s + 1)
            value *= (qpochhammer_multi([q, A2 * q ** (Nks + Nk1s - 1)], q, nk)
                      * qpochhammer_multi([A2 * q ** (2 * Nks)], q, inf, tol)
                      / qpochhammer_multi([q, A2n * q ** (Nks + Nk1s), ch.square(k) * q**nk],
                                          q, inf, tol))
        value /= _tail(ch, N(1, s), tol)
    else:
        for k in range(1, s + 1):
            nk = n[k - 1]
            sq = ch.b * ch.c if k == s else ch.coupling(k + 1) ** 2
            value /= qpochhammer_multi([q ** (nk + 1), sq * q**nk], q, inf, tol)
        if spec.kind is Family.DUAL_QHAHN:
            A = ch.chain_product(2, s) * q ** N(1, s)
            value /= qpochhammer_multi([ch.a * ch.b * A, ch.a * ch.c * A], q, inf, tol)
    value = real_part(value, what=f"{spec.kind.value} norm")
    if not value > 0:
        raise NumericalError(f"{spec.kind.value} norm is not positive ({value!r})")
    return float(value)


def _tail(ch: ParameterChain, Ns: int, tol: float):
    A = ch.chain_product(2, ch.s) * ch.q**Ns
    return qpochhammer_multi([ch.a * ch.c * A, ch.a * ch.d * A, ch.b * ch.c * A, ch.b * ch.d * A],
                             ch.q, None, tol)


def permute_29(spec: FamilySpec, n: Sequence[int], theta):
    """Apply the reflection ``a <-> c``, ``b <-> d``, ``a_{k+1} <-> a_{s-k+1}``,
    ``theta_k <-> theta_{s-k+1}``, ``n_k <-> n_{s-k+1}``.

    The weight of the first Askey-Wilson system is invariant under it. Only
    defined for ``Family.AW``; applying it twice is the identity.
    """
    if spec.kind is not Family.AW:
        raise InvalidParams("permute_29 is defined for the mv-aw family only")
    ch = spec.chain
    n = _index(n, spec.s)
    theta = _point(theta, spec.s)
    chain = replace(ch, a=ch.c, b=ch.d, c=ch.a, d=ch.b, chain=tuple(reversed(ch.chain)))
    return FamilySpec(Family.AW, chain), tuple(reversed(n)), list(reversed(theta))


def tilde_from_permutation(n: Sequence[int], theta, chain: ParameterChain,
                           rtol: float = 1e-10):
    """Evaluate the second system both directly and as the reflected first system.

    Returns the direct value; raises :class:`NumericalError` if the two
    evaluations differ by more than ``rtol`` relative to their scale.
    """
    direct = mv_poly(FamilySpec(Family.AW_TILDE, chain), n, theta)
    spec_p, n_p, theta_p = permute_29(FamilySpec(Family.AW, chain), n, theta)
    via = mv_poly(spec_p, n_p, theta_p)
    diff = np.max(np.abs(np.asarray(direct) - via))
    scale = np.max(np.abs(direct))
    if diff > rtol * scale:
        raise NumericalError(f"tilde evaluations disagree: |diff| = {diff:.3e}, scale {scale:.3e}")
    return direct
