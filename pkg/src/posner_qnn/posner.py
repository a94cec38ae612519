"""Binding statistics of entangled pseudo-spin pairs.

A pair state is a 3x3 complex coefficient matrix ``C[s, s']`` over pseudo-spins
stored in the order ``(-1, 0, +1)``. Two molecules bind when their total
pseudo-spin is zero.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import NormalizationError

PSEUDO_SPINS = (-1, 0, 1)
TOL = 1e-12


@dataclass(frozen=True, eq=False)
class JointPseudoSpinState:
    coefficients: np.ndarray

    def __post_init__(self):
        c = np.array(self.coefficients, dtype=np.complex128)
        if c.shape != (3, 3):
            raise ValueError(f"coefficient matrix must be 3x3, got {c.shape}")
        c.setflags(write=False)
        object.__setattr__(self, "coefficients", c)

    @property
    def weights(self) -> np.ndarray:
        return np.abs(self.coefficients) ** 2

    def check(self, tol: float = TOL) -> None:
        total = float(self.weights.sum())
        if abs(total - 1.0) > tol:
            raise NormalizationError(f"pseudo-spin state has total weight {total!r}")

    @classmethod
    def product(cls, c_first, c_second) -> JointPseudoSpinState:
        """Unentangled state ``C[s, s'] = c_first[s] * c_second[s']``."""
        return cls(np.outer(c_first, c_second))

    @classmethod
    def from_terms(cls, terms: dict[tuple[int, int], complex]) -> JointPseudoSpinState:
        """Build from ``{(sigma, sigma'): amplitude}`` keyed by pseudo-spin values."""
        c = np.zeros((3, 3), dtype=np.complex128)
        for (s, t), amp in terms.items():
            c[PSEUDO_SPINS.index(s), PSEUDO_SPINS.index(t)] = amp
        return cls(c)

    def to_json(self) -> str:
        return json.dumps(
            [[[z.real, z.imag] for z in row] for row in self.coefficients.tolist()]
        )

    @classmethod
    def from_json(cls, text: str | list) -> JointPseudoSpinState:
        rows = json.loads(text) if isinstance(text, str) else text
        return cls(np.array([[complex(re, im) for re, im in row] for row in rows]))


@dataclass(frozen=True, eq=False)
class BindingDistribution:
    """``p[r, r']`` for binding indicators ``r`` (first pair) and ``r'`` (second)."""

    p: np.ndarray

    def __post_init__(self):
        p = np.array(self.p, dtype=float)
        if p.shape != (2, 2):
            raise ValueError(f"binding distribution must be 2x2, got {p.shape}")
        if (p < -TOL).any() or abs(p.sum() - 1.0) > TOL:
            raise NormalizationError(f"not a probability table: {p.tolist()}")
        p.setflags(write=False)
        object.__setattr__(self, "p", p)

    def as_tuple(self) -> tuple[float, float, float, float]:
        """``(P11, P10, P01, P00)``."""
        p = self.p
        return (float(p[1, 1]), float(p[1, 0]), float(p[0, 1]), float(p[0, 0]))


def binds(s: int, t: int) -> int:
    return 1 if s + t == 0 else 0


def g(r: int, s: int, t: int) -> int:
    return binds(s, t) if r == 1 else 1 - binds(s, t)


def p_react(state: JointPseudoSpinState) -> float:
    """Probability that the two molecules of ``state`` bind."""
    state.check()
    w = state.weights
    return float(
        sum(
            w[i, j]
            for i, s in enumerate(PSEUDO_SPINS)
            for j, t in enumerate(PSEUDO_SPINS)
            if binds(s, t)
        )
    )


def joint_probs(c_aa: JointPseudoSpinState, c_bb: JointPseudoSpinState) -> BindingDistribution:
    """Joint binding distribution of pairs ``(a, a')`` and ``(b, b')``.

    ``r`` records whether ``a`` binds ``b`` (first neuron) and ``r'`` whether
    ``a'`` binds ``b'`` (second neuron). Direct 81-term sum for each ``(r, r')``.
    """
    c_aa.check()
    c_bb.check()
    wa, wb = c_aa.weights, c_bb.weights
    p = np.zeros((2, 2))
    for r in (0, 1):
        for rp in (0, 1):
            total = 0.0
            for ia, sa in enumerate(PSEUDO_SPINS):
                for iap, sap in enumerate(PSEUDO_SPINS):
                    for ib, sb in enumerate(PSEUDO_SPINS):
                        for ibp, sbp in enumerate(PSEUDO_SPINS):
                            total += wa[ia, iap] * wb[ib, ibp] * g(r, sa, sb) * g(rp, sap, sbp)
            p[r, rp] = total
    return BindingDistribution(p)


def entanglement_measure(dist: BindingDistribution) -> float:
    """Covariance of the two binding indicators; positive means correlated binding."""
    p = dist.p
    r_mean = p[1, 0] + p[1, 1]
    rp_mean = p[0, 1] + p[1, 1]
    return float(
        sum(p[r, rp] * (r - r_mean) * (rp - rp_mean) for r in (0, 1) for rp in (0, 1))
    )
