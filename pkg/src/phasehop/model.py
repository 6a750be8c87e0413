"""Scenario description and shared channel-model vocabulary.

A Scenario fixes the surface size, the Bernoulli link availabilities, the
LOS amplitude and the phase-adjustment scheme. Capacities are computed in
bits per channel use with |H|^2 playing the role of the post-processing
SNR (transmit power and noise are normalized away).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .specfun import DiscreteDistribution, binomial, poisson_binomial

__all__ = [
    "Scheme",
    "Scenario",
    "SlowRealization",
    "CurveKind",
    "OutageCurve",
    "effective_channel",
    "instantaneous_capacity",
]


class Scheme(enum.Enum):
    """Phase-adjustment strategy at the surface."""

    HOPPING = "hopping"
    QUANTIZED = "quantized"
    STATIC = "static"
    PERFECT = "perfect"


@dataclass(frozen=True)
class Scenario:
    """One link configuration.

    link_probs is either a scalar p applied to all elements or a length-n
    vector of per-element connection probabilities. los_amplitude = 0
    encodes the NLOS case. quant_levels is only meaningful for the
    quantized scheme.
    """

    n_elements: int
    link_probs: float | tuple[float, ...]
    los_amplitude: float = 0.0
    scheme: Scheme = Scheme.HOPPING
    quant_levels: int | None = None

    def __post_init__(self):
        if self.n_elements < 1:
            raise ValueError(f"n_elements must be >= 1, got {self.n_elements}")
        p = np.atleast_1d(np.asarray(self.link_probs, dtype=float))
        if p.size not in (1, self.n_elements):
            raise ValueError(
                f"link_probs must be scalar or length {self.n_elements}, "
                f"got length {p.size}"
            )
        if np.any(p < 0) or np.any(p > 1):
            raise ValueError("connection probabilities must lie in [0, 1]")
        if self.los_amplitude < 0:
            raise ValueError(f"los_amplitude must be >= 0, got {self.los_amplitude}")
        if self.scheme is Scheme.QUANTIZED:
            if self.quant_levels is None or self.quant_levels < 2:
                raise ValueError("quantized scheme requires quant_levels >= 2")
        if isinstance(self.link_probs, (list, np.ndarray)):
            object.__setattr__(self, "link_probs", tuple(float(v) for v in p))

    @property
    def prob_vector(self) -> np.ndarray:
        """Per-element connection probabilities as a length-n array."""
        p = np.atleast_1d(np.asarray(self.link_probs, dtype=float))
        if p.size == 1:
            return np.full(self.n_elements, float(p[0]))
        return p

    @property
    def is_homogeneous(self) -> bool:
        p = self.prob_vector
        return bool(np.all(p == p[0]))

    def link_count_distribution(self) -> DiscreteDistribution:
        """Law of the number of available links."""
        p = self.prob_vector
        if self.is_homogeneous:
            return binomial(self.n_elements, float(p[0]))
        return poisson_binomial(p)

    def to_dict(self) -> dict:
        """JSON-friendly representation, inverse of from_dict."""
        d = {
            "n": self.n_elements,
            "p": self.link_probs if np.isscalar(self.link_probs)
            else list(self.link_probs),
            "a": self.los_amplitude,
            "scheme": self.scheme.value,
        }
        if self.quant_levels is not None:
            d["k"] = self.quant_levels
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Scenario":
        p = d["p"]
        return cls(
            n_elements=int(d["n"]),
            link_probs=tuple(p) if isinstance(p, (list, tuple)) else float(p),
            los_amplitude=float(d.get("a", 0.0)),
            scheme=Scheme(d.get("scheme", "hopping")),
            quant_levels=int(d["k"]) if "k" in d else None,
        )


@dataclass(frozen=True)
class SlowRealization:
    """One draw of the slow-fading state: link availabilities and the
    channel phases that stay constant over a codeword."""

    c: np.ndarray
    phi_tilde: np.ndarray
    phi_los: float = 0.0

    def __post_init__(self):
        c = np.asarray(self.c, dtype=float)
        phi = np.asarray(self.phi_tilde, dtype=float)
        if c.shape != phi.shape or c.ndim != 1:
            raise ValueError("c and phi_tilde must be 1-d vectors of equal length")
        if np.any((phi < 0) | (phi >= 2 * np.pi)):
            raise ValueError("phases must lie in [0, 2*pi)")
        if not 0.0 <= self.phi_los < 2 * np.pi:
            raise ValueError(f"phi_los must lie in [0, 2*pi), got {self.phi_los}")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "phi_tilde", phi)

    @property
    def n_avail(self) -> int:
        return int(np.count_nonzero(self.c))


class CurveKind(enum.Enum):
    ANALYTIC_STEP_MIXTURE = "analytic-step-mixture"
    ANALYTIC_SMOOTH = "analytic-smooth"
    MC_ECDF = "mc-ecdf"


@dataclass(frozen=True)
class OutageCurve:
    """Outage probability sampled on a sorted rate grid."""

    rates: np.ndarray
    eps: np.ndarray
    kind: CurveKind = CurveKind.ANALYTIC_STEP_MIXTURE

    def __post_init__(self):
        r = np.asarray(self.rates, dtype=float)
        e = np.asarray(self.eps, dtype=float)
        if r.shape != e.shape or r.ndim != 1:
            raise ValueError("rates and eps must be 1-d vectors of equal length")
        if np.any(np.diff(r) < 0):
            raise ValueError("rates must be sorted ascending")
        if np.any((e < -1e-12) | (e > 1 + 1e-12)):
            raise ValueError("outage probabilities must lie in [0, 1]")
        if np.any(np.diff(e) < -1e-9):
            raise ValueError("outage must be nondecreasing in rate")
        object.__setattr__(self, "rates", r)
        object.__setattr__(self, "eps", np.clip(e, 0.0, 1.0))


def effective_channel(slow: SlowRealization, theta, a: float) -> complex:
    """Effective channel a*exp(j*phi_los) + sum_i c_i*exp(j*(phi_tilde_i+theta_i))."""
    theta = np.asarray(theta, dtype=float)
    if theta.shape != slow.phi_tilde.shape:
        raise ValueError(
            f"theta length {theta.size} does not match {slow.phi_tilde.size}"
        )
    h = a * np.exp(1j * slow.phi_los)
    h += np.sum(slow.c * np.exp(1j * (slow.phi_tilde + theta)))
    return complex(h)


def instantaneous_capacity(h: complex) -> float:
    """Shannon capacity log2(1+|h|^2) of one symbol."""
    return float(np.log2(1.0 + abs(h) ** 2))
