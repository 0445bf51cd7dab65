"""Wide lattice stencils for the monotone scheme."""

import math
from dataclasses import dataclass, field

from ..linalg import InputError


def _half_arm(v):
    a, b = v
    if a < 0 or (a == 0 and b < 0):
        return (-a, -b)
    return (a, b)


@dataclass(frozen=True)
class Stencil:
    """Integer lattice directions v, gcd(components) = 1, |v| <= width.

    Closed under negation (one representative per +/- pair is stored);
    always contains the axis directions. For the order-2 operator the
    orthogonal arm pairs (v, v-perp) are enumerated as well.
    """

    width: int
    arms: tuple = field(init=False)
    pairs: tuple = field(init=False)

    def __post_init__(self):
        if self.width < 1:
            raise InputError("stencil width must be >= 1")
        m2 = self.width * self.width
        arms = []
        for a in range(0, self.width + 1):
            for b in range(-self.width, self.width + 1):
                if a == 0 and b <= 0:
                    continue
                if a < 0 or (a == 0 and b < 0):
                    continue
                if a * a + b * b > m2:
                    continue
                if math.gcd(abs(a), abs(b)) != 1:
                    continue
                arms.append((a, b))
        arms.sort(key=lambda v: math.atan2(v[1], v[0]) % math.pi)
        object.__setattr__(self, "arms", tuple(arms))
        index = {v: i for i, v in enumerate(arms)}
        pairs = set()
        for i, (a, b) in enumerate(arms):
            perp = _half_arm((-b, a))
            j = index.get(perp)
            if j is not None and j != i:
                pairs.add((min(i, j), max(i, j)))
        object.__setattr__(self, "pairs", tuple(sorted(pairs)))

    @property
    def full_arms(self):
        return self.arms + tuple((-a, -b) for a, b in self.arms)

    @property
    def lengths(self):
        return tuple(math.hypot(a, b) for a, b in self.arms)

    def max_angular_gap(self):
        """Largest angular gap between consecutive arm directions."""
        angles = sorted(
            math.atan2(b, a) % (2.0 * math.pi) for a, b in self.full_arms
        )
        gaps = [
            angles[(i + 1) % len(angles)] - angles[i]
            for i in range(len(angles) - 1)
        ]
        gaps.append(2.0 * math.pi - angles[-1] + angles[0])
        return max(gaps)
