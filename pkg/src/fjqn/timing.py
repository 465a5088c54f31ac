"""Per-cycle service-time sampling with reproducible counter-based streams.

Every draw is a pure function of (seed, cycle, node): uniforms come from a
SplitMix64 counter stream, so batch sampling, pointwise sampling, and
concurrent workers all see bit-identical values. Service times are produced
by inverse transform from one uniform per node per cycle.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaincinv

from .maxplus import MaxPlusMatrix

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15  # SplitMix64 increment

_FAMILIES = ("deterministic", "exponential", "uniform", "erlang")
_COUPLINGS = ("independent", "common-shock")


def _mix64_int(z: int) -> int:
    """SplitMix64 finalizer on a Python int."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def _mix64(z: np.ndarray) -> np.ndarray:
    """SplitMix64 finalizer, vectorized over uint64 arrays."""
    z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


def counter_uniforms(seed: int, counters) -> np.ndarray:
    """Uniform(0,1) draws at absolute positions of the SplitMix64 stream `seed`.

    The value at counter c is the (c+1)-th output of SplitMix64 started at
    `seed`, mapped to the open interval (0,1). Pure function of its inputs.
    """
    ctr = np.asarray(counters, dtype=np.uint64)
    with np.errstate(over="ignore"):
        state = np.uint64(seed & _MASK64) + (ctr + np.uint64(1)) * np.uint64(_GOLDEN)
        bits = _mix64(state)
    return ((bits >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0**-53


def derive_seed(seed: int, stream: int) -> int:
    """Child seed for a numbered substream (e.g. one per replication)."""
    if stream < 0:
        raise ValueError("stream index must be nonnegative")
    z = (seed & _MASK64) ^ _mix64_int((stream + 1) * _GOLDEN)
    return _mix64_int(z)


@dataclass(frozen=True, slots=True)
class DistributionSpec:
    """A nonnegative service-time law with a closed-form mean and variance.

    Families and params:
      deterministic(value), exponential(mean), uniform(low, high),
      erlang(shape, mean)  -- erlang is parameterized by its mean, shape >= 1.
    """

    family: str
    params: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))
        if self.family not in _FAMILIES:
            raise ValueError(f"unknown distribution family {self.family!r}")
        p = self.params
        if self.family == "deterministic":
            if len(p) != 1 or p[0] < 0:
                raise ValueError("deterministic needs a single value >= 0")
        elif self.family == "exponential":
            if len(p) != 1 or p[0] < 0:
                raise ValueError("exponential needs a single mean >= 0")
        elif self.family == "uniform":
            if len(p) != 2 or p[0] < 0 or p[0] > p[1]:
                raise ValueError("uniform needs 0 <= low <= high")
        elif self.family == "erlang":
            if len(p) != 2 or not float(p[0]).is_integer() or p[0] < 1 or p[1] < 0:
                raise ValueError("erlang needs an integer shape >= 1 and a mean >= 0")

    @classmethod
    def deterministic(cls, value: float) -> "DistributionSpec":
        return cls("deterministic", (value,))

    @classmethod
    def exponential(cls, mean: float) -> "DistributionSpec":
        return cls("exponential", (mean,))

    @classmethod
    def uniform(cls, low: float, high: float) -> "DistributionSpec":
        return cls("uniform", (low, high))

    @classmethod
    def erlang(cls, shape: int, mean: float) -> "DistributionSpec":
        return cls("erlang", (shape, mean))

    def mean(self) -> float:
        if self.family == "deterministic":
            return self.params[0]
        if self.family == "exponential":
            return self.params[0]
        if self.family == "uniform":
            return (self.params[0] + self.params[1]) / 2.0
        return self.params[1]

    def variance(self) -> float:
        if self.family == "deterministic":
            return 0.0
        if self.family == "exponential":
            return self.params[0] ** 2
        if self.family == "uniform":
            return (self.params[1] - self.params[0]) ** 2 / 12.0
        shape, mean = self.params
        return mean**2 / shape

    def quantile(self, u: np.ndarray) -> np.ndarray:
        """Inverse CDF, vectorized; u must lie strictly inside (0,1)."""
        u = np.asarray(u, dtype=np.float64)
        if self.family == "deterministic":
            return np.full_like(u, self.params[0])
        if self.family == "exponential":
            return self.params[0] * -np.log1p(-u)
        if self.family == "uniform":
            low, high = self.params
            return low + (high - low) * u
        shape, mean = self.params
        return (mean / shape) * gammaincinv(shape, u)

    def scaled(self, factor: float) -> "DistributionSpec":
        """Same family with every time parameter multiplied by `factor` > 0."""
        if factor <= 0:
            raise ValueError("scale factor must be positive")
        if self.family == "erlang":
            return DistributionSpec("erlang", (self.params[0], self.params[1] * factor))
        return DistributionSpec(self.family, tuple(p * factor for p in self.params))


def _blend_cdf(w: np.ndarray, lam: float) -> np.ndarray:
    """CDF of lam*U + (1-lam)*U' at w, for independent U, U' ~ Uniform(0,1).

    Applying this to the blend itself is the probability-integral transform
    that makes the common-shock copula marginal-preserving. The density is
    trapezoidal on [0,1]; endpoints are nudged off {0,1} so downstream
    quantile functions never see a boundary probability.
    """
    lo, hi = min(lam, 1.0 - lam), max(lam, 1.0 - lam)
    if lo == 0.0:
        p = w  # degenerate blend: already uniform
    else:
        rising = w * w / (2.0 * lo * hi)
        middle = (2.0 * w - lo) / (2.0 * hi)
        falling = 1.0 - (1.0 - w) ** 2 / (2.0 * lo * hi)
        p = np.where(w <= lo, rising, np.where(w < hi, middle, falling))
    tiny = np.nextafter(0.0, 1.0)
    top = np.nextafter(1.0, 0.0)
    return np.clip(p, tiny, top)


@dataclass(frozen=True)
class ScenarioSampler:
    """Immutable sampling configuration for one network's service times.

    `coupling` controls within-cycle dependence: "independent" draws one
    private uniform per node; "common-shock" blends a per-cycle shared
    uniform into each node's private uniform with weight `shock_weight`,
    then restores uniformity via the blend's own CDF, so each node's
    marginal law is preserved exactly. Across cycles everything is i.i.d.
    """

    distributions: tuple[DistributionSpec, ...]
    seed: int = 0
    coupling: str = "independent"
    shock_weight: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "distributions", tuple(self.distributions))
        if not self.distributions:
            raise ValueError("sampler needs at least one node distribution")
        if self.coupling not in _COUPLINGS:
            raise ValueError(f"unknown coupling {self.coupling!r}")
        if not 0.0 <= self.shock_weight <= 1.0:
            raise ValueError("shock weight must lie in [0, 1]")

    @property
    def n(self) -> int:
        return len(self.distributions)

    def means(self) -> tuple[float, ...]:
        return tuple(d.mean() for d in self.distributions)

    def sample_table(self, cycles: int, first_cycle: int = 1) -> np.ndarray:
        """Service times for cycles first_cycle .. first_cycle+cycles-1.

        Returns an (n, cycles) array; row i holds node i+1's times. Column c
        depends only on (seed, first_cycle + c), never on the requested range.
        """
        if cycles < 1:
            raise ValueError("cycles must be >= 1")
        if first_cycle < 1:
            raise ValueError("cycle indices start at 1")
        n = self.n
        ks = np.arange(first_cycle - 1, first_cycle - 1 + cycles, dtype=np.uint64)
        # Slot layout per cycle: 0..n-1 private node uniforms, slot n the shared shock.
        base = ks * np.uint64(n + 1)
        private = counter_uniforms(self.seed, base[None, :] + np.arange(n, dtype=np.uint64)[:, None])
        if self.coupling == "common-shock":
            shared = counter_uniforms(self.seed, base + np.uint64(n))
            blend = self.shock_weight * shared[None, :] + (1.0 - self.shock_weight) * private
            probs = _blend_cdf(blend, self.shock_weight)
        else:
            probs = private
        table = np.empty((n, cycles), dtype=np.float64)
        for i, dist in enumerate(self.distributions):
            table[i] = dist.quantile(probs[i])
        return table

    def sample_vector(self, k: int) -> np.ndarray:
        """Service times (tau_1k, ..., tau_nk) for cycle k >= 1."""
        return self.sample_table(1, first_cycle=k)[:, 0]

    def sample_cycle(self, k: int) -> MaxPlusMatrix:
        """Diagonal service-time matrix for cycle k (off-diagonal EPS)."""
        return MaxPlusMatrix.diagonal(self.sample_vector(k))

    def set_node_to_zero(self, node: int) -> "ScenarioSampler":
        """Copy with node's law replaced by deterministic(0) (1-based index)."""
        if not 1 <= node <= self.n:
            raise ValueError(f"node index {node} out of range 1..{self.n}")
        dists = list(self.distributions)
        dists[node - 1] = DistributionSpec.deterministic(0.0)
        return dataclasses.replace(self, distributions=tuple(dists))

    def reseeded(self, seed: int) -> "ScenarioSampler":
        return dataclasses.replace(self, seed=seed)
