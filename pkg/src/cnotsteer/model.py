"""System parameters and RWA Hamiltonian generators for two coupled qubits.

The physical setting is a pair of weakly coupled phase qubits, one of them
driven by a resonant Rabi pulse.  After moving to a rotating frame and
dropping fast-oscillating terms (rotating-wave approximation), the dynamics
is generated by skew-Hermitian combinations of the scaled Pauli products

    X_k = (i/2) sigma_k^x,   Y_k = (i/2) sigma_k^y,   Z_k = (i/2) sigma_k^z,
    XX  = (i/2) sigma_2^x sigma_1^x,   ...,   YX = (i/2) sigma_2^y sigma_1^x.

Two frame choices are supported:

* frame 1 -- both qubits rotate at the drive frequency; the generator is
  time-independent and carries an explicit detuning term ``-delta * Z2``;
* frame 2 -- each qubit rotates at its own splitting; the detuning moves
  into a slowly rotating transverse coupling, and the generator is
  periodic in time with period ``2*pi/|delta|``.

All rates are quoted in units of the transverse coupling ``g``; time is in
units of ``1/g``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .qmat import ID2, SIGMA_X, SIGMA_Y, SIGMA_Z, Generator4, kron2


@dataclass(frozen=True)
class SystemParams:
    """Physical rates of the coupled pair, all in frequency units of ``g``.

    Attributes:
        g: transverse (XX+YY) coupling strength; sets the scale, must be > 0.
        g_tilde: longitudinal ZZ coupling, >= 0 (zero for capacitive coupling).
        delta: qubit-qubit detuning, signed.
        omega1: Rabi amplitude of the drive on qubit 1, >= 0.
    """

    g: float = 1.0
    g_tilde: float = 0.0
    delta: float = 0.0
    omega1: float = 0.0

    def __post_init__(self) -> None:
        if not self.g > 0:
            raise ValueError(f"coupling g must be positive, got {self.g}")
        if self.g_tilde < 0:
            raise ValueError(f"ZZ coupling g_tilde must be >= 0, got {self.g_tilde}")
        if self.omega1 < 0:
            raise ValueError(f"Rabi amplitude omega1 must be >= 0, got {self.omega1}")

    @classmethod
    def from_ratios(
        cls,
        delta_over_g: float = 0.0,
        omega1_over_g: float = 0.0,
        gtilde_over_g: float = 0.0,
    ) -> "SystemParams":
        """Build params with g = 1, i.e. directly from dimensionless ratios."""
        return cls(g=1.0, g_tilde=gtilde_over_g, delta=delta_over_g, omega1=omega1_over_g)

    @property
    def delta_over_g(self) -> float:
        return self.delta / self.g

    @property
    def omega1_over_g(self) -> float:
        return self.omega1 / self.g

    @property
    def gtilde_over_g(self) -> float:
        return self.g_tilde / self.g


class GeneratorName(enum.Enum):
    """Names of the scaled Pauli-product generators."""

    X1 = "X1"
    Y1 = "Y1"
    Z1 = "Z1"
    X2 = "X2"
    Y2 = "Y2"
    Z2 = "Z2"
    XX = "XX"
    YY = "YY"
    ZZ = "ZZ"
    XY = "XY"
    YX = "YX"


def _build_basis() -> dict[GeneratorName, np.ndarray]:
    half_i = 0.5j
    return {
        GeneratorName.X1: half_i * kron2(ID2, SIGMA_X),
        GeneratorName.Y1: half_i * kron2(ID2, SIGMA_Y),
        GeneratorName.Z1: half_i * kron2(ID2, SIGMA_Z),
        GeneratorName.X2: half_i * kron2(SIGMA_X, ID2),
        GeneratorName.Y2: half_i * kron2(SIGMA_Y, ID2),
        GeneratorName.Z2: half_i * kron2(SIGMA_Z, ID2),
        GeneratorName.XX: half_i * kron2(SIGMA_X, SIGMA_X),
        GeneratorName.YY: half_i * kron2(SIGMA_Y, SIGMA_Y),
        GeneratorName.ZZ: half_i * kron2(SIGMA_Z, SIGMA_Z),
        GeneratorName.XY: half_i * kron2(SIGMA_X, SIGMA_Y),
        GeneratorName.YX: half_i * kron2(SIGMA_Y, SIGMA_X),
    }


_BASIS = _build_basis()
for _m in _BASIS.values():
    _m.setflags(write=False)

# Convenience handles used throughout the package.
X1 = _BASIS[GeneratorName.X1]
Y1 = _BASIS[GeneratorName.Y1]
Z1 = _BASIS[GeneratorName.Z1]
X2 = _BASIS[GeneratorName.X2]
Y2 = _BASIS[GeneratorName.Y2]
Z2 = _BASIS[GeneratorName.Z2]
XX = _BASIS[GeneratorName.XX]
YY = _BASIS[GeneratorName.YY]
ZZ = _BASIS[GeneratorName.ZZ]
XY = _BASIS[GeneratorName.XY]
YX = _BASIS[GeneratorName.YX]


def generator(name: GeneratorName | str) -> Generator4:
    """Return the (i/2)-scaled Pauli product for ``name`` (a fresh copy)."""
    if isinstance(name, str):
        name = GeneratorName(name)
    return _BASIS[name].copy()


def h_rwa_frame1(p: SystemParams) -> Generator4:
    """Time-independent frame-1 generator.

    Returns ``-delta*Z2 + omega1*X1 + g*(XX + YY) + g_tilde*ZZ``; the
    evolution operator over a time ``t`` is ``expm_skew(-t * h_rwa_frame1(p))``.
    """
    return -p.delta * Z2 + p.omega1 * X1 + p.g * (XX + YY) + p.g_tilde * ZZ


def h_rwa_frame2(p: SystemParams, t: float) -> Generator4:
    """Frame-2 generator at time ``t``.

    The detuning appears as a rotating transverse coupling:
    ``omega1*X1 + g*[(XX+YY)cos(delta t) + (YX-XY)sin(delta t)] + g_tilde*ZZ``.
    Periodic in ``t`` with period ``2*pi/|delta|`` for nonzero detuning.
    """
    phase = p.delta * t
    coupling = (XX + YY) * math.cos(phase) + (YX - XY) * math.sin(phase)
    return p.omega1 * X1 + p.g * coupling + p.g_tilde * ZZ
