"""Monte Carlo area estimation, polling simulation, and sample-size math.

Estimates carry a confidence half-width. The default half-width comes from
the Hoeffding bound P(|mean - p| > eps) <= 2 exp(-2 n eps^2), which is
distribution-free and conservative; the normal-approximation calculator is
provided alongside because it matches the familiar poll-size numbers (385
responses for +-5% at 95%, versus Hoeffding's 738). Neither formula involves
the population size.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .rng import BitStream


@dataclass(frozen=True)
class Estimate:
    value: float
    half_width: float
    confidence: float
    samples: int
    method: str

    def __post_init__(self):
        if not 0 < self.confidence < 1:
            raise ValueError("confidence must be in (0, 1)")
        if self.half_width < 0:
            raise ValueError("half width must be nonnegative")
        if self.samples < 1:
            raise ValueError("samples must be >= 1")


@dataclass(frozen=True)
class Region:
    """Membership oracle on the unit square (optionally vectorized)."""

    name: str
    contains: Callable[[float, float], bool]
    contains_many: Optional[Callable[[np.ndarray, np.ndarray], np.ndarray]] = None


REGIONS = {
    "quarter-disk": Region(
        "quarter-disk",
        lambda x, y: x * x + y * y <= 1.0,
        lambda x, y: x * x + y * y <= 1.0,
    ),
    "box": Region("box", lambda x, y: True, lambda x, y: np.ones_like(x, dtype=bool)),
    "annulus": Region(
        "annulus",
        lambda x, y: 0.25**2 <= (x - 0.5) ** 2 + (y - 0.5) ** 2 <= 0.5**2,
        lambda x, y: (0.25**2 <= (x - 0.5) ** 2 + (y - 0.5) ** 2)
        & ((x - 0.5) ** 2 + (y - 0.5) ** 2 <= 0.5**2),
    ),
}

QUARTER_DISK_AREA = math.pi / 4
ANNULUS_AREA = math.pi * (0.5**2 - 0.25**2)


def hoeffding_half_width(n: int, confidence: float) -> float:
    """eps with 2 exp(-2 n eps^2) = 1 - confidence."""
    return math.sqrt(math.log(2.0 / (1.0 - confidence)) / (2.0 * n))


def estimate_area(
    region: Region,
    n: int,
    confidence: float = 0.95,
    rng: BitStream | None = None,
) -> Estimate:
    """Hit fraction of n uniform points in the unit square, with Hoeffding width.

    Coordinates carry 53 bits of precision. A region without a vectorized
    membership test falls back to a per-point loop.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if rng is None:
        rng = BitStream()
    pts = rng.uniforms((n, 2))
    x, y = pts[:, 0], pts[:, 1]
    if region.contains_many is not None:
        hits = int(np.count_nonzero(region.contains_many(x, y)))
    else:
        hits = sum(1 for i in range(n) if region.contains(float(x[i]), float(y[i])))
    return Estimate(
        value=hits / n,
        half_width=hoeffding_half_width(n, confidence),
        confidence=confidence,
        samples=n,
        method="hoeffding",
    )


def poll_simulate(
    true_fraction: float, n: int, rng: BitStream | None = None
) -> Estimate:
    """Ask n simulated voters, each a biased coin; Hoeffding width at 95%."""
    if not 0 <= true_fraction <= 1:
        raise ValueError("true_fraction must be in [0, 1]")
    if n < 1:
        raise ValueError("n must be >= 1")
    if rng is None:
        rng = BitStream()
    hits = int(np.count_nonzero(rng.uniforms(n) < true_fraction))
    return Estimate(
        value=hits / n,
        half_width=hoeffding_half_width(n, 0.95),
        confidence=0.95,
        samples=n,
        method="hoeffding",
    )


# two-sided normal quantiles z_{1 - delta/2}, keyed by delta
Z_TABLE = (
    (0.50, 0.6744897501960817),
    (0.20, 1.2815515655446004),
    (0.10, 1.6448536269514722),
    (0.05, 1.959963984540054),
    (0.02, 2.3263478740408408),
    (0.01, 2.5758293035489004),
    (0.005, 2.807033768343811),
    (0.002, 3.0902323061678132),
    (0.001, 3.2905267314919255),
)


def required_samples(epsilon: float, delta: float, method: str = "hoeffding") -> int:
    """Samples needed for error at most epsilon with probability 1 - delta.

    hoeffding: ceil(ln(2/delta) / (2 epsilon^2)), a guarantee for any p.
    normal: ceil(z^2 / (4 epsilon^2)) at worst-case p = 1/2, with z taken
    from a fixed quantile table; deltas between table entries round down to
    the next smaller (stricter) entry.
    """
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must be in (0, 1)")
    if not 0 < delta < 1:
        raise ValueError("delta must be in (0, 1)")
    if method == "hoeffding":
        return math.ceil(math.log(2.0 / delta) / (2.0 * epsilon * epsilon))
    if method == "normal":
        usable = [(d, z) for d, z in Z_TABLE if d <= delta]
        if not usable:
            raise ValueError(
                f"delta {delta} below the quantile table; use method='hoeffding'"
            )
        _, z = max(usable)
        return math.ceil(z * z * 0.25 / (epsilon * epsilon))
    raise ValueError(f"unknown method {method!r}; expected 'hoeffding' or 'normal'")
