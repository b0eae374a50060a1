"""Independent numerical checks of the two closed-form gate models.

* The fourth-order energy shift is recovered from the exact eigenvalues of
  the 3x3 non-Hermitian single-excitation-ladder matrix. A cross
  difference in the two couplings cancels every term except those that
  contain both ``g1`` and ``g2``, leaving the fourth-order shift plus
  sixth-order corrections.
* The Zeno success probability is recovered by integrating the
  ``|1,1>`` amplitude together with the symmetric doubly-occupied
  amplitude ``(|2,0> + |0,2>) / sqrt(2)`` over one swap time.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.linalg import expm

from gatecmp.errors import EigenvalueTrackingFailure, StepCountTooSmall
from gatecmp.params import DimensionalParams
from gatecmp.zeno import ZenoRates

__all__ = [
    "three_level_matrix",
    "cubic_roots",
    "ground_eigenvalue",
    "cross_difference_shift",
    "ZenoTwoAmplitude",
    "zeno_generator",
    "rk4",
    "integrate_zeno",
    "zeno_expm",
    "MIN_STEPS",
]

MIN_STEPS = 1000
_CONTINUATION = np.geomspace(0.1, 1.0, 4)
_SPACING_RTOL = 1e-9


# --------------------------------------------------------------------------
# three-level eigenvalue oracle
# --------------------------------------------------------------------------


def three_level_matrix(p: DimensionalParams) -> np.ndarray:
    """Rotating-frame generator for ``|1,w1 w2>, |2,w2>, |3,vac>`` (rad/s).

    The direct ``|1> -> |3>`` element is zero (dipole forbidden).
    """
    a = complex(-p.Delta, -p.gamma2 / 2)
    b = complex(-p.delta, -p.gamma3 / 2)
    k1, k2 = p.g1 / p.hbar, p.g2 / p.hbar
    return np.array([[0, k1, 0], [k1, a, k2], [0, k2, b]], dtype=complex)


def _cubic(c2: complex, c1: complex, c0: complex, z: complex) -> complex:
    return ((z + c2) * z + c1) * z + c0


def _cubic_deriv(c2: complex, c1: complex, z: complex) -> complex:
    return (3 * z + 2 * c2) * z + c1


def cubic_roots(c2: complex, c1: complex, c0: complex) -> list[complex]:
    """Roots of ``z^3 + c2 z^2 + c1 z + c0`` (Cardano, then Newton polish).

    The polish restores full relative precision to small roots, which the
    closed form alone loses to cancellation.
    """
    c2, c1, c0 = complex(c2), complex(c1), complex(c0)
    shift = c2 / 3
    p = c1 - c2 * shift
    q = 2 * shift**3 - c1 * shift + c0
    disc = cmath.sqrt(q * q / 4 + p**3 / 27)
    u3 = -q / 2 + disc
    alt = -q / 2 - disc
    if abs(alt) > abs(u3):
        u3 = alt
    roots = []
    if u3 == 0:
        roots = [-shift] * 3
    else:
        u = u3 ** (1 / 3)
        for k in range(3):
            uk = u * cmath.exp(2j * cmath.pi * k / 3)
            roots.append(uk - p / (3 * uk) - shift)

    polished = []
    for z in roots:
        best, best_res = z, abs(_cubic(c2, c1, c0, z))
        for _ in range(8):
            d = _cubic_deriv(c2, c1, z)
            if d == 0:
                break
            z = z - _cubic(c2, c1, c0, z) / d
            # a near-zero derivative at a multiple root can overflow the step
            if not cmath.isfinite(z):
                break
            res = abs(_cubic(c2, c1, c0, z))
            if not res < best_res:
                break
            best, best_res = z, res
        polished.append(best)
    return polished


def _ground_root(k1: float, k2: float, a: complex, b: complex, prev: complex,
                 scale: float) -> complex:
    # det(z - M) = z^3 - (a + b) z^2 + (ab - k1^2 - k2^2) z + k1^2 b
    roots = cubic_roots(-(a + b), a * b - k1 * k1 - k2 * k2, k1 * k1 * b)
    dist = sorted((abs(z - prev), i) for i, z in enumerate(roots))
    chosen = roots[dist[0][1]]
    for _, i in dist[1:]:
        if abs(roots[i] - chosen) < _SPACING_RTOL * scale:
            raise EigenvalueTrackingFailure(
                "ground branch is degenerate with another eigenvalue"
            )
    return chosen


def ground_eigenvalue(p: DimensionalParams, g1: float | None = None,
                      g2: float | None = None) -> complex:
    """Energy of the eigenvalue branch that tends to zero as the couplings vanish.

    The branch is followed by continuation: the couplings are scaled up
    geometrically from a tenth of their value and at each stage the root
    nearest the previous one is kept. Returns ``hbar * lambda``.
    """
    g1 = p.g1 if g1 is None else g1
    g2 = p.g2 if g2 is None else g2
    if g1 == 0:
        # |1> is decoupled; its eigenvalue is exactly zero
        return 0j
    a = complex(-p.Delta, -p.gamma2 / 2)
    b = complex(-p.delta, -p.gamma3 / 2)
    k1, k2 = g1 / p.hbar, g2 / p.hbar
    scale = max(abs(a), abs(b), k1, k2)
    prev = 0j
    for s in _CONTINUATION:
        prev = _ground_root(s * k1, s * k2, a, b, prev, scale)
    return p.hbar * prev


def _two_level_ground(k1: float, a: complex) -> complex:
    # small root of z^2 - a z - k1^2, taken as -k1^2 / (large root)
    root = cmath.sqrt(a * a + 4 * k1 * k1)
    large = (a + root) / 2 if abs(a + root) >= abs(a - root) else (a - root) / 2
    return -k1 * k1 / large


def cross_difference_shift(p: DimensionalParams) -> complex:
    """``E(g1, g2) - E(g1, 0) - E(0, g2) + E(0, 0)`` of the ground branch.

    This isolates the fourth-order cross term with an ``O(g^6)``
    remainder, so it approaches the closed-form shift as ``g -> 0``.

    With ``g1 = 0`` the bare state decouples, so the last two terms vanish
    exactly. The remaining difference ``z - w`` between the three-level
    root ``z`` and the two-level root ``w`` is formed without
    cancellation: writing ``f(z) = z (z - a) - k1^2``, the cubic reads
    ``(z - b) f(z) = k2^2 z`` and ``f(z) - f(w) = (z - w)(z + w - a)``.
    """
    if p.g1 == 0:
        return 0j
    a = complex(-p.Delta, -p.gamma2 / 2)
    b = complex(-p.delta, -p.gamma3 / 2)
    k1, k2 = p.g1 / p.hbar, p.g2 / p.hbar
    z = ground_eigenvalue(p) / p.hbar
    w = _two_level_ground(k1, a)
    return p.hbar * k2 * k2 * z / ((z - b) * (z + w - a))


# --------------------------------------------------------------------------
# Zeno two-amplitude oracle
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ZenoTwoAmplitude:
    """Amplitude-damped two-level model in normalized time ``tau = t / t_s``.

    ``coupling`` is ``2 eps t_s / hbar = pi``: the symmetric combination
    couples to ``|1,1>`` with a bosonic factor of two. ``decay11`` and
    ``decayplus`` are amplitude decay rates times ``t_s``.
    """

    decay11: float
    decayplus: float
    coupling: float = np.pi

    @classmethod
    def from_rates(cls, rates: ZenoRates) -> "ZenoTwoAmplitude":
        return cls(decay11=rates.r1_ts, decayplus=rates.r1_ts + rates.r2_ts / 2)


def zeno_generator(model: ZenoTwoAmplitude) -> np.ndarray:
    """Matrix ``A`` with ``d/dtau (c11, cplus) = A (c11, cplus)``."""
    return np.array(
        [[-model.decay11, -1j * model.coupling],
         [-1j * model.coupling, -model.decayplus]],
        dtype=complex,
    )


def rk4(f: Callable[[float, np.ndarray], np.ndarray], y0, t0: float, t1: float,
        steps: int) -> np.ndarray:
    """Classic fixed-step fourth-order Runge-Kutta from ``t0`` to ``t1``."""
    y = np.array(y0, dtype=complex)
    h = (t1 - t0) / steps
    t = t0
    for i in range(steps):
        k1 = f(t, y)
        k2 = f(t + h / 2, y + (h / 2) * k1)
        k3 = f(t + h / 2, y + (h / 2) * k2)
        k4 = f(t + h, y + h * k3)
        y = y + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
        t = t0 + (i + 1) * h
    return y


def integrate_zeno(rates: ZenoRates, steps: int = 20000) -> float:
    """``|c11(t_s)|^2`` from RK4 integration of the two-amplitude model.

    The rate fields may be numpy arrays, in which case every parameter set
    is integrated in one pass and an array is returned.
    """
    if steps < MIN_STEPS:
        raise StepCountTooSmall(f"need at least {MIN_STEPS} steps, got {steps}")
    d11 = np.asarray(rates.r1_ts, dtype=float)
    dplus = d11 + np.asarray(rates.r2_ts, dtype=float) / 2
    coupling = np.pi

    def rhs(_t, y):
        c11, cplus = y
        return np.stack([
            -d11 * c11 - 1j * coupling * cplus,
            -dplus * cplus - 1j * coupling * c11,
        ])

    y0 = np.stack([np.ones_like(d11, dtype=complex), np.zeros_like(d11, dtype=complex)])
    c11 = rk4(rhs, y0, 0.0, 1.0, steps)[0]
    out = np.abs(c11) ** 2
    return float(out) if out.ndim == 0 else out


def zeno_expm(rates: ZenoRates) -> complex:
    """``c11(t_s)`` from the matrix exponential of the same 2x2 generator."""
    gen = zeno_generator(ZenoTwoAmplitude.from_rates(rates))
    return complex(expm(gen)[0, 0])
