"""Residue kernels of the spectral-curve recursion, in formal-series form.

Two families of polynomial kernels are produced by extracting the
polynomial-in-t part of Laurent expansions along the curve:

* pair kernels P_{a,b}(t), built from the eta series, with an independent
  cross-check form built from phi compositions and the deck involution;
* point kernels P_b(t, t_i), built from geometric expansions of the
  double-pole factor 1/(. - t_i)^2, again with a symmetrized cross-check.

Every kernel must decompose exactly in the phi' basis; a nonzero residual
aborts the computation, since the whole bracket extraction relies on it.
"""

from __future__ import annotations

import threading

from .curve import build_curve_series
from .curvefun import (build_eta_family, build_phi_tower, phi_prime_decompose,
                       phi_prime_decompose_pair, plus_part)
from .errors import DegreeCapExceeded
from .ratfunc import FR_ONE, FRational
from .tpoly import TPolynomial
from .vseries import VSeries, compose_polynomial

_F = FRational.variable()
_HALF = FRational.from_fraction("1/2")


def default_trunc(pair_budget, margin=0):
    """Truncation order covering pair kernels with a+b <= pair_budget."""
    return 2 * pair_budget + 12 + margin


class KernelWorkspace:
    """Curve, eta family, phi tower and kernel caches for one truncation."""

    def __init__(self, pair_budget, point_budget, b_max, margin=0):
        self.pair_budget = pair_budget
        self.point_budget = point_budget
        self.margin = margin
        self.trunc = default_trunc(max(pair_budget, 0), margin)
        self.curve = build_curve_series(self.trunc)
        self.tower = build_phi_tower(b_max)
        self.eta = build_eta_family(self.curve, max(pair_budget + 1, 0))
        self._pair = {}
        self._point = {}
        self._pair_dec = {}
        self._point_dec = {}
        self._lock = threading.Lock()

    # -- pair kernels -------------------------------------------------------

    def kernel_I(self, a, b):
        key = (a, b) if a <= b else (b, a)
        with self._lock:
            got = self._pair.get(key)
        if got is None:
            got = kernel_I(key[0], key[1], self.eta, self.curve)
            with self._lock:
                self._pair[key] = got
        return got

    def kernel_II(self, b):
        with self._lock:
            got = self._point.get(b)
        if got is None:
            got = kernel_II(b, self.curve, self.tower)
            with self._lock:
                self._point[b] = got
        return got

    def decompose_pair_kernel(self, a, b):
        """phi' coefficients of P_{a,b}; zero residual enforced."""
        key = (a, b) if a <= b else (b, a)
        with self._lock:
            got = self._pair_dec.get(key)
        if got is None:
            dec = phi_prime_decompose(self.kernel_I(a, b), self.tower)
            got = dec.coefficients
            with self._lock:
                self._pair_dec[key] = got
        return got

    def decompose_point_kernel(self, b):
        """(c, d) -> coefficient for P_b(t_0, t_1); zero residual enforced."""
        with self._lock:
            got = self._point_dec.get(b)
        if got is None:
            got = phi_prime_decompose_pair(self.kernel_II(b), self.tower)
            with self._lock:
                self._point_dec[b] = got
        return got


def kernel_I(a, b, eta, curve):
    """Pair kernel P_{a,b}(t).

    Expand eta_{a+1} eta_{b+1} / eta_{-1} * ((f+1)/f) v as a one-form in
    v dv, convert to the t chart by dividing by dt/dv, and keep the
    polynomial part, times -1/2.
    """
    x = eta.eta(a + 1) * eta.eta(b + 1) / eta.eta(-1)
    x = x.shift(1) * ((_F + 1) / _F)
    x = x / curve.dt_dv
    poly, _ = plus_part(x * (-_HALF), curve)
    return poly


def kernel_I_via_involution(a, b, curve, tower):
    """Cross-check form of P_{a,b} from phi compositions and the involution.

    -1/(4 eta_{-1}) (phi_{a+1}(t) phi_{b+1}(s(t)) + phi_{a+1}(s(t)) phi_{b+1}(t))
    times (f+1)/(t(t-1)(ft+1)), polynomial part.
    """
    pa_t = compose_polynomial(tower.phi_coeffs(a + 1), curve.t_of_v)
    pa_s = compose_polynomial(tower.phi_coeffs(a + 1), curve.s_t_of_v)
    if a == b:
        pb_t, pb_s = pa_t, pa_s
    else:
        pb_t = compose_polynomial(tower.phi_coeffs(b + 1), curve.t_of_v)
        pb_s = compose_polynomial(tower.phi_coeffs(b + 1), curve.s_t_of_v)
    numer = pa_t * pb_s + pa_s * pb_t
    eta_m1 = _eta_minus_one(curve)
    cubic = curve.t_of_v * (curve.t_of_v - VSeries.one(curve.trunc)) \
        * (curve.t_of_v * _F + VSeries.one(curve.trunc))
    x = numer / (eta_m1 * cubic)
    x = x * (-(_F + 1) / 4)
    poly, _ = plus_part(x, curve)
    return poly


def _eta_minus_one(curve):
    from .vseries import log_unit
    one = VSeries.one(curve.trunc)
    inv_f = FR_ONE / _F
    lp = log_unit(one + curve.z_of_v * inv_f)
    lm = log_unit(one + curve.zbar_of_v * inv_f)
    return (lm - lp) * _HALF


def kernel_II(b, curve, tower, cap=None):
    """Point kernel P_b(t, t_i) as a two-variable polynomial.

    The double poles expand geometrically at t = infinity:
    1/(t - t_i)^2    = sum_k (k+1) t_i^k z^{k+2},        z   = 1/t,
    1/(s(t) - t_i)^2 = sum_k (k+1) t_i^k zbar^{k+2},     zbar = 1/s(t),
    and the factor from B(s(t), t_i) carries s'(t).  Each t_i-coefficient
    gets its own polynomial-part extraction.
    """
    if cap is None:
        cap = 2 * b + 6
    if cap < 2 * b + 4:
        raise ValueError("degree cap %d below safe bound %d" % (cap, 2 * b + 4))
    phi_t = compose_polynomial(tower.phi_coeffs(b + 1), curve.t_of_v)
    phi_s = compose_polynomial(tower.phi_coeffs(b + 1), curve.s_t_of_v)
    phi_t_sp = phi_t * curve.sprime
    denom = (_eta_minus_one(curve) * (-2)).reciprocal()
    z_pow = curve.z_of_v ** 2
    zbar_pow = curve.zbar_of_v ** 2
    terms = {}
    for k in range(cap + 1):
        numer = phi_t_sp * zbar_pow + phi_s * z_pow
        q, _ = plus_part(numer * denom, curve)
        q = q * FRational.from_int(k + 1)
        if not q.is_zero:
            if k == cap:
                raise DegreeCapExceeded(
                    "point kernel b=%d has a t_i^%d term" % (b, cap))
            for (e,), c in q.terms():
                terms[(e, k)] = c
        if k < cap:
            z_pow = z_pow * curve.z_of_v
            zbar_pow = zbar_pow * curve.zbar_of_v
    return TPolynomial(2, terms.items())


def kernel_II_symmetrized(b, curve, tower, cap=None):
    """Alternate form of the point kernel: both summands on one sheet each.

    (phi_{b+1}(t) B(t, t_i) + phi_{b+1}(s(t)) B(s(t), t_i)) / (2 eta_{-1}),
    polynomial part per t_i-coefficient.  Must agree with ``kernel_II``.
    """
    if cap is None:
        cap = 2 * b + 6
    phi_t = compose_polynomial(tower.phi_coeffs(b + 1), curve.t_of_v)
    phi_s = compose_polynomial(tower.phi_coeffs(b + 1), curve.s_t_of_v)
    phi_s_sp = phi_s * curve.sprime
    denom = (_eta_minus_one(curve) * 2).reciprocal()
    z_pow = curve.z_of_v ** 2
    zbar_pow = curve.zbar_of_v ** 2
    terms = {}
    for k in range(cap + 1):
        numer = phi_t * z_pow + phi_s_sp * zbar_pow
        q, _ = plus_part(numer * denom, curve)
        q = q * FRational.from_int(k + 1)
        if not q.is_zero:
            if k == cap:
                raise DegreeCapExceeded(
                    "symmetrized point kernel b=%d has a t_i^%d term" % (b, cap))
            for (e,), c in q.terms():
                terms[(e, k)] = c
        if k < cap:
            z_pow = z_pow * curve.z_of_v
            zbar_pow = zbar_pow * curve.zbar_of_v
    return TPolynomial(2, terms.items())
