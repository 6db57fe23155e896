"""Finitely generated groups with word-length structure.

Supplies ball enumeration in a canonical (lexicographic) order, empirical
growth-order fits, and the exponential length weights used by the averaging
operator.  Two families ship built in: free-abelian groups of finite rank and
finite cyclic groups.  Any object exposing the same ball/length/weight
interface can be used in their place.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatchError, EnumerationCapError

DEFAULT_ENUMERATION_CAP = 10**6

GroupElement = tuple[int, ...]


@dataclass(frozen=True)
class GroupSpec:
    """Declarative description of a built-in group."""

    kind: str  # "free-abelian" or "cyclic"
    rank: int = 0  # free-abelian only
    order: int = 0  # cyclic only
    generator_labels: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind == "free-abelian":
            if self.rank < 1:
                raise ValueError("free-abelian rank must be >= 1")
        elif self.kind == "cyclic":
            if self.order < 2:
                raise ValueError("cyclic order must be >= 2")
        else:
            raise ValueError(f"unknown group kind {self.kind!r}")
        if not self.generator_labels:
            n = self.rank if self.kind == "free-abelian" else 1
            labels = ("u",) if n == 1 else tuple(f"u{i + 1}" for i in range(n))
            object.__setattr__(self, "generator_labels", labels)
        expected = self.rank if self.kind == "free-abelian" else 1
        if len(self.generator_labels) != expected:
            raise ValueError("generator label count does not match rank")


@dataclass
class GrowthFit:
    """Least-squares estimate of the polynomial growth order."""

    radii: list[int]
    ball_sizes: list[int]
    fitted_order: float
    residual: float


class Group:
    """Common ball/length/weight machinery; subclasses fix the geometry."""

    def __init__(self, spec: GroupSpec, enumeration_cap: int = DEFAULT_ENUMERATION_CAP):
        self.spec = spec
        self.enumeration_cap = enumeration_cap

    # -- geometry hooks -------------------------------------------------
    @property
    def num_generators(self) -> int:
        raise NotImplementedError

    def canonical(self, g: GroupElement) -> GroupElement:
        raise NotImplementedError

    def length(self, g: GroupElement) -> int:
        raise NotImplementedError

    def ball_size(self, k: int) -> int:
        raise NotImplementedError

    def _enumerate_ball(self, k: int) -> list[GroupElement]:
        raise NotImplementedError

    @property
    def is_finite(self) -> bool:
        return False

    @property
    def growth_order(self) -> int:
        """Declared polynomial growth order of ball cardinalities."""
        raise NotImplementedError

    # -- shared operations ----------------------------------------------
    def _check_element(self, g: GroupElement):
        if len(g) != self.num_generators:
            raise DimensionMismatchError(
                f"element has {len(g)} exponents, group has {self.num_generators} generators"
            )

    def identity(self) -> GroupElement:
        return (0,) * self.num_generators

    def compose(self, g: GroupElement, h: GroupElement) -> GroupElement:
        self._check_element(g)
        self._check_element(h)
        return self.canonical(tuple(a + b for a, b in zip(g, h)))

    def inverse(self, g: GroupElement) -> GroupElement:
        self._check_element(g)
        return self.canonical(tuple(-a for a in g))

    def ball(self, k: int) -> list[GroupElement]:
        """Elements of length <= k, sorted lexicographically on exponents."""
        if k < 0:
            raise ValueError("ball radius must be >= 0")
        size = self.ball_size(k)
        if size > self.enumeration_cap:
            raise EnumerationCapError(
                f"ball of radius {k} holds {size} elements, cap is {self.enumeration_cap}"
            )
        return sorted(self._enumerate_ball(k))

    def sphere_size(self, k: int) -> int:
        return self.ball_size(k) - (self.ball_size(k - 1) if k > 0 else 0)

    def weight(self, g: GroupElement) -> float:
        """Averaging weight exp(-(1 + length))."""
        self._check_element(g)
        return math.exp(-(1.0 + self.length(g)))

    def weighted_ball(self, k: int) -> tuple[list[GroupElement], np.ndarray]:
        elements = self.ball(k)
        weights = np.array([self.weight(g) for g in elements])
        return elements, weights

    def weight_sum(self, k: int) -> float:
        """Sum of weights over the ball of radius k, via exact sphere counts."""
        return sum(self.sphere_size(j) * math.exp(-(1.0 + j)) for j in range(k + 1))

    def growth_constant(self, k_max: int = 200) -> float:
        """Empirical constant C with sphere sizes <= C * (1+k)^r up to k_max."""
        r = self.growth_order
        return max(self.sphere_size(k) / (1.0 + k) ** r for k in range(k_max + 1))

    def weight_tail_bound(self, k: int, k_max_exact: int = 200) -> float:
        """Upper bound on the weight mass outside the radius-k ball.

        Exact sphere sums up to ``k_max_exact`` plus an analytic remainder
        controlled by the growth constant.
        """
        if k > k_max_exact:
            raise ValueError("k must not exceed k_max_exact")
        exact = sum(
            self.sphere_size(j) * math.exp(-(1.0 + j)) for j in range(k + 1, k_max_exact + 1)
        )
        if self.is_finite:
            return exact  # spheres are empty beyond the diameter
        c = self.growth_constant(k_max_exact)
        r = self.growth_order
        tail = 0.0
        j = k_max_exact + 1
        while True:
            term = c * (1.0 + j) ** r * math.exp(-(1.0 + j))
            tail += term
            if term < 1e-300:
                break
            j += 1
        return exact + tail

    def fit_growth_order(self, k_max: int) -> GrowthFit:
        """Slope of log ball size against log(1+k) over k = 1..k_max."""
        if k_max < 3:
            raise ValueError("k_max must be >= 3")
        radii = list(range(1, k_max + 1))
        sizes = [self.ball_size(k) for k in radii]
        if sizes[-1] > self.enumeration_cap:
            raise EnumerationCapError(f"ball size {sizes[-1]} exceeds cap")
        x = np.log1p(np.array(radii, dtype=float))
        y = np.log(np.array(sizes, dtype=float))
        slope, intercept = np.polyfit(x, y, 1)
        residual = float(np.sqrt(np.mean((y - (slope * x + intercept)) ** 2)))
        return GrowthFit(radii, sizes, float(slope), residual)


class FreeAbelianGroup(Group):
    """Z^r with the standard symmetric generators; length is the l1 norm."""

    def __init__(self, rank: int, enumeration_cap: int = DEFAULT_ENUMERATION_CAP):
        super().__init__(GroupSpec(kind="free-abelian", rank=rank), enumeration_cap)
        self.rank = rank
        self._ball_size_cache: dict[tuple[int, int], int] = {}

    @property
    def num_generators(self) -> int:
        return self.rank

    @property
    def growth_order(self) -> int:
        return self.rank

    def canonical(self, g: GroupElement) -> GroupElement:
        return tuple(int(a) for a in g)

    def length(self, g: GroupElement) -> int:
        self._check_element(g)
        return sum(abs(a) for a in g)

    def ball_size(self, k: int) -> int:
        # lattice points with |x|_1 <= k in dimension r, by recursion on r
        def count(r, k):
            if r == 0:
                return 1
            key = (r, k)
            if key not in self._ball_size_cache:
                self._ball_size_cache[key] = sum(
                    count(r - 1, k - abs(j)) for j in range(-k, k + 1)
                )
            return self._ball_size_cache[key]

        return count(self.rank, k)

    def _enumerate_ball(self, k: int) -> list[GroupElement]:
        out = []
        for g in itertools.product(range(-k, k + 1), repeat=self.rank):
            if sum(abs(a) for a in g) <= k:
                out.append(g)
        return out


class CyclicGroup(Group):
    """Z/n with one generator; exponents are reduced to (-n/2, n/2]."""

    def __init__(self, order: int, enumeration_cap: int = DEFAULT_ENUMERATION_CAP):
        super().__init__(GroupSpec(kind="cyclic", order=order), enumeration_cap)
        self.order = order

    @property
    def num_generators(self) -> int:
        return 1

    @property
    def is_finite(self) -> bool:
        return True

    @property
    def growth_order(self) -> int:
        return 0

    def canonical(self, g: GroupElement) -> GroupElement:
        n = self.order
        half = (n - 1) // 2
        return (((int(g[0]) + half) % n) - half,)

    def length(self, g: GroupElement) -> int:
        self._check_element(g)
        e = int(g[0]) % self.order
        return min(e, self.order - e)

    def ball_size(self, k: int) -> int:
        return len(self._enumerate_ball(k))

    def _enumerate_ball(self, k: int) -> list[GroupElement]:
        half_lo = -((self.order - 1) // 2)
        half_hi = self.order // 2
        return [(e,) for e in range(half_lo, half_hi + 1) if abs(e) <= k]


def group_from_spec(spec: GroupSpec, enumeration_cap: int = DEFAULT_ENUMERATION_CAP) -> Group:
    if spec.kind == "free-abelian":
        return FreeAbelianGroup(spec.rank, enumeration_cap)
    return CyclicGroup(spec.order, enumeration_cap)
