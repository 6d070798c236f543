"""Single-variable Askey-Wilson polynomials, their weight, norm and special cases.

Points are given by the angle ``theta`` with ``x = cos(theta)``; ``theta``
may be a float or an array. Parameters may be complex (and may themselves be
arrays that broadcast against ``theta``), which is how the multivariable
systems feed ``a_{k+1} e^{+-i theta_{k+1}}`` into these routines.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .basic_hyper import phi
from .errors import DomainError, InvalidParams, NumericalError
from .qcore import DEFAULT_TOL, check_q, qpochhammer, qpochhammer_inf, qpochhammer_multi

#: Relative bound on the imaginary residue accepted when a quantity must be real.
REAL_RTOL = 1e-10


def real_part(value, rtol: float = REAL_RTOL, what: str = "value"):
    """Return ``value.real`` after checking that the imaginary part is rounding noise.

    The residue is measured against the largest modulus in ``value``.
    """
    arr = np.asarray(value)
    if not np.iscomplexobj(arr):
        return value
    scale = float(np.max(np.abs(arr))) if arr.size else 0.0
    if not np.all(np.isfinite(arr)):
        raise NumericalError(f"{what} is not finite")
    resid = float(np.max(np.abs(arr.imag))) if arr.size else 0.0
    if resid > rtol * scale:
        raise NumericalError(f"{what} has imaginary residue {resid:.3e} (scale {scale:.3e})")
    out = arr.real
    return out[()] if out.ndim == 0 else out


def check_interior(theta) -> np.ndarray:
    """Return ``theta`` as an array, raising :class:`DomainError` unless 0 < theta < pi."""
    theta = np.asarray(theta, dtype=float)
    if not np.all((theta > 0.0) & (theta < np.pi)):
        raise DomainError("weights are only defined for 0 < theta < pi (|x| < 1)")
    return theta


@dataclass(frozen=True)
class AWParams:
    """Parameters ``(a, b, c, d; q)`` of a one-variable Askey-Wilson polynomial."""

    a: complex
    b: complex
    c: complex
    d: complex
    q: float

    def __post_init__(self):
        object.__setattr__(self, "q", check_q(self.q))

    @property
    def abcd(self):
        return (self.a, self.b, self.c, self.d)

    def check_orthogonality(self) -> "AWParams":
        """Require moduli < 1 and parameters that are real or come in conjugate pairs."""
        vals = [complex(v) for v in self.abcd]
        for name, v in zip("abcd", vals):
            if not abs(v) < 1.0:
                raise InvalidParams(f"|{name}| = {abs(v):g} violates the bound |{name}| < 1")
        if sorted(vals, key=_sort_key) != sorted((v.conjugate() for v in vals), key=_sort_key):
            raise InvalidParams("parameters must be real or occur in complex-conjugate pairs")
        return self


def _sort_key(z: complex):
    return (round(z.real, 14), round(z.imag, 14))


def aw_poly(n: int, theta, p: AWParams):
    """Askey-Wilson polynomial ``p_n(cos theta; a, b, c, d | q)``.

    ``a**-n (ab, ac, ad; q)_n 4phi3[q^-n, abcd q^{n-1}, a e^{i theta}, a e^{-i theta};
    ab, ac, ad; q, q]``, returned as a complex number (or array).

    Raises
    ------
    InvalidParams
        If ``a == 0``; use :func:`dual_qhahn_poly` or :func:`asc_poly` with a
        nonzero leading parameter instead.
    """
    a, b, c, d = p.abcd
    q = p.q
    if np.any(np.asarray(a) == 0):
        raise InvalidParams("aw_poly needs a != 0 (the a**-n prefactor)")
    e = np.exp(1j * np.asarray(theta, dtype=float))
    pref = np.asarray(a, dtype=complex) ** (-n) * qpochhammer_multi([a * b, a * c, a * d], q, n)
    series = phi(n, [a * b * c * d * q ** (n - 1), a * e, a / e], [a * b, a * c, a * d], q)
    return pref * series


def aw_theta_weight(theta, p: AWParams, tol: float = DEFAULT_TOL):
    """Weight in the angle variable: ``rho(x) dx = aw_theta_weight(theta) dtheta``.

    This is the Askey-Wilson weight without its ``(1 - x**2)**-1/2`` factor.
    """
    theta = check_interior(theta)
    e = np.exp(1j * theta)
    q = p.q
    num = qpochhammer_multi([e * e, 1 / (e * e)], q, None, tol)
    den = qpochhammer_multi([v * z for v in p.abcd for z in (e, 1 / e)], q, None, tol)
    return real_part(num / den, what="Askey-Wilson weight")


def aw_weight(theta, p: AWParams, tol: float = DEFAULT_TOL):
    """Askey-Wilson weight ``rho(x | q)`` at ``x = cos theta``, including ``(1 - x**2)**-1/2``."""
    return aw_theta_weight(theta, p, tol) / np.sin(np.asarray(theta, dtype=float))


def aw_norm(n: int, p: AWParams, tol: float = DEFAULT_TOL) -> float:
    """Closed-form squared norm ``lambda_n(q)`` of ``p_n`` against :func:`aw_weight`."""
    a, b, c, d = p.abcd
    q = p.q
    pairs = [q, a * b, a * c, a * d, b * c, b * d, c * d]
    abcd = a * b * c * d
    value = (2 * math.pi * qpochhammer_inf(abcd, q, tol) / qpochhammer_multi(pairs, q, None, tol)
             * qpochhammer_multi(pairs, q, n) * (1 - abcd / q)
             / (qpochhammer(abcd / q, q, n) * (1 - abcd * q ** (2 * n - 1))))
    return float(real_part(value, what="Askey-Wilson norm"))


def dual_qhahn_poly(n: int, theta, a, b, c, q: float):
    """Continuous dual q-Hahn polynomial ``d_n(cos theta; a, b, c | q)``.

    ``a**-n (ab, ac; q)_n 3phi2[q^-n, a e^{i theta}, a e^{-i theta}; ab, ac; q, q]``.
    Symmetric in ``(a, b, c)``; ``a`` must be nonzero.
    """
    q = check_q(q)
    if np.any(np.asarray(a) == 0):
        raise InvalidParams("dual_qhahn_poly needs a != 0 (the a**-n prefactor)")
    e = np.exp(1j * np.asarray(theta, dtype=float))
    pref = np.asarray(a, dtype=complex) ** (-n) * qpochhammer_multi([a * b, a * c], q, n)
    return pref * phi(n, [a * e, a / e], [a * b, a * c], q)


def asc_poly(n: int, theta, b, c, q: float):
    """Al-Salam-Chihara polynomial ``p_n(cos theta; b, c | q)``.

    ``b**-n (bc; q)_n 3phi2[q^-n, b e^{i theta}, b e^{-i theta}; bc, 0; q, q]``.
    """
    q = check_q(q)
    if np.any(np.asarray(b) == 0):
        raise InvalidParams("asc_poly needs b != 0 (the b**-n prefactor)")
    e = np.exp(1j * np.asarray(theta, dtype=float))
    pref = np.asarray(b, dtype=complex) ** (-n) * qpochhammer(b * c, q, n)
    return pref * phi(n, [b * e, b / e], [b * c, 0.0], q)


# Parameter substitutions onto the Askey-Wilson family.

@dataclass(frozen=True)
class Specialization:
    """Askey-Wilson parameters for a special family plus its angle convention.

    The family's polynomial at angle ``theta`` is ``aw_poly`` evaluated at
    ``theta + angle_shift``; ``angle_shift`` is nonzero only for the
    continuous q-Hahn case.
    """

    kind: str
    params: AWParams
    angle_shift: float = 0.0

    def poly(self, n: int, theta):
        return aw_poly(n, np.asarray(theta, dtype=float) + self.angle_shift, self.params)


def _checked(kind: str, params: AWParams, angle_shift: float = 0.0) -> Specialization:
    for name, v in zip("abcd", params.abcd):
        if not abs(v) < 1.0:
            raise InvalidParams(f"{kind}: substituted |{name}| = {abs(v):g} is not < 1")
    return Specialization(kind, params, angle_shift)


def q_jacobi_params(alpha: float, beta: float, q: float) -> Specialization:
    """Continuous q-Jacobi substitution ``a = q^{(2 alpha + 1)/4}``, ``b = q^{(2 alpha + 3)/4}``,
    ``c = -q^{(2 beta + 1)/4}``, ``d = -q^{(2 beta + 3)/4}``."""
    q = check_q(q)
    return _checked("qjacobi", AWParams(q ** ((2 * alpha + 1) / 4), q ** ((2 * alpha + 3) / 4),
                                        -q ** ((2 * beta + 1) / 4), -q ** ((2 * beta + 3) / 4), q))


def q_jacobi_alt_params(alpha: float, beta: float, q: float) -> Specialization:
    """Second q-Jacobi substitution ``(q^{1/2}, q^{alpha + 1/2}, -q^{beta + 1/2}, -q^{1/2})``."""
    q = check_q(q)
    return _checked("qjacobi-alt", AWParams(q**0.5, q ** (alpha + 0.5), -q ** (beta + 0.5),
                                            -q**0.5, q))


def q_ultraspherical_params(lam: float, q: float) -> Specialization:
    """Continuous q-ultraspherical case: the second q-Jacobi substitution at alpha = beta = lam - 1/2."""
    spec = q_jacobi_alt_params(lam - 0.5, lam - 0.5, q)
    return Specialization("qultraspherical", spec.params)


def q_hermite_params(q: float) -> Specialization:
    """Continuous q-Hermite case ``a = -d = q^{1/2}``, ``b = c = 0``."""
    q = check_q(q)
    return _checked("qhermite", AWParams(q**0.5, 0.0, 0.0, -q**0.5, q))


def q_hahn_params(a1: float, a_last: float, phi_: float, q: float) -> Specialization:
    """Continuous q-Hahn case: ``(a, b, c, d) = (a1 e^{i phi}, a1 e^{-i phi},
    a_last e^{i phi}, a_last e^{-i phi})`` with angles shifted by ``phi``."""
    q = check_q(q)
    u, v = np.exp(1j * phi_), np.exp(-1j * phi_)
    return _checked("qhahn", AWParams(a1 * u, a1 * v, a_last * u, a_last * v, q), float(phi_))


def q_hahn_poly(n: int, theta, a: float, b: float, phi_: float, q: float):
    """Continuous q-Hahn polynomial ``p_n(cos(theta + phi); a, b | q)`` from its own series.

    ``(a^2, ab, ab e^{2i phi}; q)_n (a e^{i phi})^{-n} 4phi3[q^-n, a^2 b^2 q^{n-1},
    a e^{2i phi + i theta}, a e^{-i theta}; a^2, ab, ab e^{2i phi}; q, q]``.
    """
    q = check_q(q)
    e = np.exp(1j * np.asarray(theta, dtype=float))
    w = np.exp(2j * phi_)
    pref = (a * np.exp(1j * phi_)) ** (-n) * qpochhammer_multi([a * a, a * b, a * b * w], q, n)
    return pref * phi(n, [a * a * b * b * q ** (n - 1), a * w * e, a / e],
                      [a * a, a * b, a * b * w], q)


_SPECIALIZERS = {
    "qjacobi": q_jacobi_params,
    "qjacobi-alt": q_jacobi_alt_params,
    "qultraspherical": q_ultraspherical_params,
    "qhermite": q_hermite_params,
    "qhahn": q_hahn_params,
}

SPECIALIZATION_KINDS = tuple(_SPECIALIZERS)


def specialize(kind: str, q: float, *, alpha: Optional[float] = None, beta: Optional[float] = None,
               lam: Optional[float] = None, a1: Optional[float] = None,
               a_last: Optional[float] = None, phi: Optional[float] = None) -> Specialization:
    """Build the Askey-Wilson parameters of a named special family.

    ``kind`` is one of :data:`SPECIALIZATION_KINDS`; the keyword arguments
    needed depend on the kind (``alpha``/``beta`` for the q-Jacobi cases,
    ``lam`` for q-ultraspherical, ``a1``/``a_last``/``phi`` for q-Hahn).
    """
    if kind not in _SPECIALIZERS:
        raise InvalidParams(f"unknown specialization {kind!r}; expected one of {SPECIALIZATION_KINDS}")
    try:
        if kind in ("qjacobi", "qjacobi-alt"):
            return _SPECIALIZERS[kind](float(alpha), float(beta), q)
        if kind == "qultraspherical":
            return q_ultraspherical_params(float(lam), q)
        if kind == "qhermite":
            return q_hermite_params(q)
        return q_hahn_params(float(a1), float(a_last), float(phi), q)
    except TypeError as exc:
        raise InvalidParams(f"{kind}: missing parameter ({exc})") from None
