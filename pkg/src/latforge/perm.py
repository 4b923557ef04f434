"""Permutations of basis rows as a metric space.

The distance between two permutations is the Hamming distance of their
Cartesian forms; the radius of a permutation is its distance from the
identity, i.e. its number of non-fixed points.  Radii split S_m into left
(r <= m/2) and right (r > m/2) permutations, and the samplers here draw
uniformly from the sphere of a given radius.
"""

from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass

from .core import Basis
from .errors import (
    DegreeMismatchError,
    DegreeTooSmallError,
    InfeasibleRadiusError,
    NotPrimeError,
)


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class Permutation:
    """Element of S_m in Cartesian form: images[i-1] = pi(i), 1-based values."""

    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(int(x) for x in self.images))
        m = len(self.images)
        if sorted(self.images) != list(range(1, m + 1)):
            raise ValueError(f"not a bijection on 1..{m}: {self.images}")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, img in enumerate(self.images, start=1):
            inv[img - 1] = i
        return Permutation(tuple(inv))

    def compose(self, other: "Permutation") -> "Permutation":
        """(self . other)(i) = self(other(i))."""
        if self.degree != other.degree:
            raise DegreeMismatchError("cannot compose permutations of unequal degree")
        return Permutation(tuple(self.images[j - 1] for j in other.images))

    @classmethod
    def identity(cls, m: int) -> "Permutation":
        return cls(tuple(range(1, m + 1)))


@dataclass(frozen=True)
class RadiusClass:
    radius: int
    side: Side


def hamming_distance(x: Permutation, y: Permutation) -> int:
    if x.degree != y.degree:
        raise DegreeMismatchError(
            f"degrees differ: {x.degree} vs {y.degree}"
        )
    return sum(a != b for a, b in zip(x.images, y.images))


def radius(p: Permutation) -> RadiusClass:
    """Hamming distance from the identity; left iff r <= m/2 (ties left)."""
    r = sum(img != i for i, img in enumerate(p.images, start=1))
    side = Side.LEFT if 2 * r <= p.degree else Side.RIGHT
    return RadiusClass(radius=r, side=side)


def derangement_count(r: int) -> int:
    d_prev, d = 1, 0  # D_0, D_1
    if r == 0:
        return 1
    for k in range(2, r + 1):
        d_prev, d = d, (k - 1) * (d + d_prev)
    return d


def count_at_radius(m: int, r: int) -> int:
    """Number of permutations in S_m at exact radius r: C(m,r) * D_r."""
    if r < 0 or r > m:
        return 0
    return math.comb(m, r) * derangement_count(r)


def sample_at_radius(m: int, r: int, rng: random.Random) -> Permutation:
    """Uniform draw from the sphere of radius r around the identity.

    Picks an r-subset of positions uniformly, then a uniform derangement of
    it by rejection from random shuffles (expected < e retries).
    """
    if r == 0:
        return Permutation.identity(m)
    if r == 1 or r < 0 or r > m:
        raise InfeasibleRadiusError(
            f"no permutation of degree {m} moves exactly {r} points"
        )
    positions = sorted(rng.sample(range(m), r))
    shuffled = positions[:]
    while True:
        rng.shuffle(shuffled)
        if all(a != b for a, b in zip(shuffled, positions)):
            break
    images = list(range(1, m + 1))
    for pos, img in zip(positions, shuffled):
        images[pos] = img + 1
    return Permutation(tuple(images))


def sample_right(m: int, rng: random.Random) -> Permutation:
    """Uniform radius in (m/2, m], then a uniform permutation at that radius."""
    if m < 3:
        raise DegreeTooSmallError(f"right sampling needs degree >= 3, got {m}")
    r = rng.randint(m // 2 + 1, m)
    return sample_at_radius(m, r, rng)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def _moebius_permutation(a: int, b: int, c: int, d: int, p: int) -> Permutation:
    """Action of x -> (ax+b)/(cx+d) on the projective line over F_p.

    Points are indexed 1..p+1: index i <= p is the field element i-1, and
    index p+1 is the point at infinity.
    """
    infinity = p + 1
    images = []
    for i in range(1, p + 1):
        x = i - 1
        den = (c * x + d) % p
        if den == 0:
            images.append(infinity)
        else:
            images.append((a * x + b) * pow(den, -1, p) % p + 1)
    if c % p == 0:
        images.append(infinity)
    else:
        images.append(a * pow(c, -1, p) % p + 1)
    return Permutation(tuple(images))


def psl2_permutations(p: int, count: int, rng: random.Random) -> list[Permutation]:
    """``count`` independent uniform elements of PSL(2,p) acting on the
    projective line, as permutations of degree p+1.

    Sampling draws matrices (a,b,c,d) until ad-bc is a nonzero square; each
    group element corresponds to the same number of such matrices, so the
    induced distribution is uniform.
    """
    if not _is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    out = []
    while len(out) < count:
        a, b, c, d = (rng.randrange(p) for _ in range(4))
        det = (a * d - b * c) % p
        if det == 0:
            continue
        if p > 2 and pow(det, (p - 1) // 2, p) != 1:
            continue
        out.append(_moebius_permutation(a, b, c, d, p))
    return out


def apply(b: Basis, p: Permutation) -> Basis:
    """Row reordering: output row i is input row p(i).  Same lattice."""
    if p.degree != b.m:
        raise DegreeMismatchError(
            f"permutation degree {p.degree} != basis rank {b.m}"
        )
    return Basis(tuple(b.rows[img - 1] for img in p.images))
