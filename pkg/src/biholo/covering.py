"""Kobayashi geometry of the punctured disc through its universal cover.

The cover is the upper half-plane with projection ``z -> exp(i z)``; deck
transformations are the horizontal translations ``z -> z + 2 pi k``.
Distances on the punctured disc descend as an infimum over deck
translates.  The distance to the slit ``(-1, 0]`` and the supremum of the
distance over a centred circle both reduce to elementary closed forms, and
a composed chain of elementary maps realizes the uniformization of the
slit disc by the disc.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .domains import SlitDisc, contains
from .hyperbolic import MetricMode, halfplane_distance
from .maps import Chain, Mobius, PrincipalSqrt, Square

__all__ = [
    "TWO_PI",
    "DeckRangeWarning",
    "SlitMapError",
    "principal_lift",
    "DeckDistance",
    "punctured_distance_detail",
    "punctured_distance",
    "deck_minimum",
    "slit_distance",
    "circle_supremum",
    "deck_minimum_enumerated",
    "grid_slit_distance",
    "grid_circle_supremum",
    "SlitDiscMap",
    "build_slit_map",
]

TWO_PI = 2.0 * math.pi

# Hard ceiling for automatic widening of the deck enumeration.
_DECK_RANGE_CAP = 1 << 16


class DeckRangeWarning(UserWarning):
    """The deck-transform argmin hit the enumeration boundary; range widened."""


class SlitMapError(RuntimeError):
    """A constructed slit-disc uniformization failed its validation."""


def principal_lift(q: complex) -> complex:
    """Principal preimage of ``q`` under ``z -> exp(i z)``.

    The result has real part in ``[0, 2 pi)`` and imaginary part
    ``-log |q| > 0``.
    """
    q = complex(q)
    m = abs(q)
    if m == 0.0:
        raise ValueError("the puncture has no preimage")
    if m >= 1.0:
        raise ValueError(f"point {q!r} is not in the punctured unit disc")
    x = math.atan2(q.imag, q.real) % TWO_PI
    if x >= TWO_PI:  # a tiny negative phase can round up to the period
        x = 0.0
    return complex(x, -math.log(m))


@dataclass(frozen=True)
class DeckDistance:
    """Distance together with the achieving deck index and range used."""

    value: float
    deck_index: int
    deck_range: int
    widened: bool


def punctured_distance_detail(
    p: complex,
    q: complex,
    mode: MetricMode = MetricMode.POINCARE,
    deck_range: int = 100,
) -> DeckDistance:
    """Punctured-disc distance as a minimum over deck translates of the lifts.

    Enumerates ``k`` in ``[-K, K]``; if the argmin lands on the boundary the
    range is doubled (with a :class:`DeckRangeWarning`) until it is interior.
    """
    if deck_range < 1:
        raise ValueError("deck_range must be >= 1")
    zp = principal_lift(p)
    zq = principal_lift(q)
    k_range = deck_range
    widened = False
    while True:
        best = math.inf
        best_k = 0
        for k in range(-k_range, k_range + 1):
            d = halfplane_distance(zp, zq + TWO_PI * k, mode)
            if d < best:
                best, best_k = d, k
        if abs(best_k) < k_range or k_range >= _DECK_RANGE_CAP:
            return DeckDistance(best, best_k, k_range, widened)
        warnings.warn(
            f"deck argmin k={best_k} hit the enumeration boundary K={k_range}; widening",
            DeckRangeWarning,
            stacklevel=2,
        )
        k_range *= 2
        widened = True


def punctured_distance(
    p: complex,
    q: complex,
    mode: MetricMode = MetricMode.POINCARE,
    deck_range: int = 100,
) -> float:
    return punctured_distance_detail(p, q, mode, deck_range).value


def _mode_scale(mode: MetricMode) -> float:
    return 1.0 if mode is MetricMode.POINCARE else 0.5


def deck_minimum(p: float, theta: float, mode: MetricMode = MetricMode.POINCARE) -> float:
    """Closed form of the lifted distance at horizontal offset ``theta``:

        log((theta^2 + 2 (log p)^2 + theta sqrt(theta^2 + 4 (log p)^2))
            / (2 (log p)^2))

    For ``theta <= pi`` this equals the deck infimum, hence the
    punctured-disc distance between two points of modulus ``p`` with that
    angular offset.  For larger offsets the infimum wraps around the
    puncture (deck index -1), so the metric distance is the closed form at
    ``2 pi - theta``; the form itself keeps increasing and its value at
    ``theta = 2 pi`` is the circle supremum.
    """
    if not 0.0 < p < 1.0:
        raise ValueError("modulus must lie in (0, 1)")
    if not 0.0 <= theta <= TWO_PI:
        raise ValueError("angular offset must lie in [0, 2*pi]")
    y2 = math.log(p) ** 2
    value = math.log((theta * theta + 2.0 * y2 + theta * math.sqrt(theta * theta + 4.0 * y2)) / (2.0 * y2))
    return _mode_scale(mode) * value


def slit_distance(p: float, mode: MetricMode = MetricMode.POINCARE) -> float:
    """Distance from ``p`` in (0, 1) to the slit ``(-1, 0]``:

        log(x + sqrt(x^2 + 1)),  x = -pi / log p.
    """
    if not 0.0 < p < 1.0:
        raise ValueError("base point must lie in (0, 1)")
    x = -math.pi / math.log(p)
    return _mode_scale(mode) * math.asinh(x)


def circle_supremum(p: float, mode: MetricMode = MetricMode.POINCARE) -> float:
    """Supremum over the circle ``|q| = p`` of the distance from ``p``:

        log(2 x^2 + 1 + 2 x sqrt(x^2 + 1)),  x = -pi / log p.

    This is the positive-root form (the sign carried by ``2 pi / log p``
    would make the argument of the log smaller than 1); it agrees with the
    ``theta -> 2 pi`` limit of :func:`deck_minimum` and algebraically equals
    twice :func:`slit_distance`, which is asserted by tests, not assumed.
    """
    if not 0.0 < p < 1.0:
        raise ValueError("base point must lie in (0, 1)")
    x = -math.pi / math.log(p)
    value = math.log(2.0 * x * x + 1.0 + 2.0 * x * math.sqrt(x * x + 1.0))
    return _mode_scale(mode) * value


# ---------------------------------------------------------------------------
# brute-force oracles
# ---------------------------------------------------------------------------


def deck_minimum_enumerated(
    p: float,
    theta: float,
    deck_range: int = 100,
    mode: MetricMode = MetricMode.POINCARE,
) -> float:
    """Oracle for :func:`deck_minimum`: direct enumeration of deck translates."""
    if not 0.0 < p < 1.0:
        raise ValueError("modulus must lie in (0, 1)")
    y = -math.log(p)
    z = complex(0.0, y)
    return min(
        halfplane_distance(z, complex(theta + TWO_PI * k, y), mode)
        for k in range(-deck_range, deck_range + 1)
    )


def _acosh_rows(dx: np.ndarray, y1: float, y2: np.ndarray | float) -> np.ndarray:
    s = (dx * dx + (y1 - y2) ** 2) / (2.0 * y1 * y2)
    return np.log1p(s + np.sqrt(s * (s + 2.0)))


def grid_slit_distance(
    p: float,
    grid: int = 100_000,
    deck_range: int = 5,
    mode: MetricMode = MetricMode.POINCARE,
) -> float:
    """Oracle for :func:`slit_distance`: minimize the punctured-disc distance
    from ``p`` over a grid of points of the slit ``(-1, 0)``."""
    if not 0.0 < p < 1.0:
        raise ValueError("base point must lie in (0, 1)")
    yp = -math.log(p)
    moduli = np.linspace(0.0, 1.0, grid + 2)[1:-1]
    yq = -np.log(moduli)
    best = np.full(moduli.shape, np.inf)
    for k in range(-deck_range, deck_range + 1):
        dx = math.pi + TWO_PI * k
        np.minimum(best, _acosh_rows(np.full(moduli.shape, dx), yp, yq), out=best)
    return _mode_scale(mode) * float(best.min())


def grid_circle_supremum(
    p: float,
    grid: int = 1_000_000,
    mode: MetricMode = MetricMode.POINCARE,
) -> tuple[float, float]:
    """Oracle for :func:`circle_supremum`: maximize the deck minimum over an
    angular grid of ``[0, 2 pi)``.  Returns ``(supremum, argmax angle)``."""
    if not 0.0 < p < 1.0:
        raise ValueError("base point must lie in (0, 1)")
    theta = np.linspace(0.0, TWO_PI, grid, endpoint=False)
    y2 = math.log(p) ** 2
    vals = np.log((theta**2 + 2.0 * y2 + theta * np.sqrt(theta**2 + 4.0 * y2)) / (2.0 * y2))
    idx = int(vals.argmax())
    return _mode_scale(mode) * float(vals[idx]), float(theta[idx])


# ---------------------------------------------------------------------------
# the slit-disc uniformization
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SlitDiscMap:
    """Conformal bijection of the unit disc onto the slit disc with 0 -> target."""

    target: float
    chain: Chain

    def __call__(self, z: complex) -> complex:
        return self.chain.apply(z)

    def inverse(self, w: complex) -> complex:
        return self.chain.unapply(w)

    def contains_image(self, w: complex, tol: float = 1e-9) -> bool:
        """Membership of ``w`` in the image (the slit disc), decided by the
        defining inequality plus an inverse round-trip."""
        if not contains(SlitDisc(), w):
            return False
        try:
            z = self.inverse(w)
        except ZeroDivisionError:
            return False
        if not abs(z) < 1.0:
            return False
        return abs(self.chain.apply(z) - w) <= tol * (1.0 + abs(w))


def _base_slit_chain() -> Chain:
    return Chain(
        (
            Mobius.cayley_disc_to_halfplane(),  # disc -> upper half-plane
            PrincipalSqrt(),  # half-plane -> first quadrant
            Mobius.quadrant_to_upper_half_disc(),  # quadrant -> upper half-disc
            Mobius.rotation(-1j),  # -> right half-disc
            Square(),  # right half-disc -> disc minus (-1, 0]
        )
    )


def build_slit_map(p: float, validate: bool = True, samples: int = 10_000, seed: int = 0) -> SlitDiscMap:
    """Construct (and validate) the uniformization of the slit disc sending
    0 to ``p`` in (0, 1).

    The chain is: disc automorphism, Cayley transform to the half-plane,
    principal square root to the first quadrant, a Mobius map to the upper
    half-disc, rotation to the right half-disc, and the squaring map onto
    the slit disc.  Validation failure raises :class:`SlitMapError`.
    """
    if not 0.0 < p < 1.0:
        raise ValueError("target must lie in (0, 1)")
    base = _base_slit_chain()
    a = base.unapply(complex(p))
    if not abs(a) < 1.0:
        raise SlitMapError(f"pulled-back basepoint {a!r} is not inside the disc")
    chain = Chain((Mobius.disc_automorphism(a),) + base.steps)
    slit_map = SlitDiscMap(float(p), chain)
    if validate:
        _validate_slit_map(slit_map, samples=samples, seed=seed)
    return slit_map


def _validate_slit_map(m: SlitDiscMap, samples: int, seed: int) -> None:
    origin_image = m(0j)
    if abs(origin_image - m.target) > 1e-10:
        raise SlitMapError(f"normalization failure: map(0) = {origin_image!r}, wanted {m.target!r}")
    rng = np.random.default_rng(seed)
    slit = SlitDisc()
    # boundary-approaching radii exercise the slit and circle edges
    radii = 1.0 - np.geomspace(1e-4, 1.0, samples)
    angles = rng.uniform(0.0, TWO_PI, samples)
    for r, t in zip(radii, angles):
        w = m(complex(r * math.cos(t), r * math.sin(t)))
        if not contains(slit, w):
            raise SlitMapError(f"image point {w!r} escaped the slit disc")
    grid = [
        complex(r * math.cos(t), r * math.sin(t))
        for r in np.linspace(0.1, 0.95, 18)
        for t in np.linspace(0.0, TWO_PI, 18, endpoint=False)
    ]
    images = [m(z) for z in grid]
    min_sep = min(
        abs(u - v) for i, u in enumerate(images) for v in images[i + 1 :]
    )
    if not min_sep > 0.0:
        raise SlitMapError("images of distinct grid points collide")
