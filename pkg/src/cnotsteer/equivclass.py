"""Local-equivalence-class machinery for two-qubit gates.

Two gates that differ only by single-qubit rotations (and a global phase)
are *locally equivalent*; the hard, entangling content of a gate is its
equivalence class.  Classes are labelled here in two interchangeable ways:

* **Makhlin invariants** ``(G1, G2)`` with ``G1`` complex and ``G2`` real,
  computed from the gate in the magic (Bell) basis.  The controlled-NOT
  class is ``(0, 1)``; the identity class is ``(1, 3)``.
* **Weyl-chamber coordinates** ``(c1, c2, c3)``: the class of
  ``exp(-c1*XX - c2*YY - c3*ZZ)`` canonicalized into
  ``pi/2 >= c1 >= c2 >= c3 >= 0``.  CNOT sits at ``(pi/2, 0, 0)``.

Conventions
-----------
The magic-basis transform is fixed once (module constant ``MAGIC_BASIS``)
and pinned by the CNOT -> (0, 1) unit test.  Determinant normalization
makes both labels insensitive to a global phase, so inputs may be U(4).

The reduced chamber above identifies mirror-image classes: points strictly
inside it generate gates with a definite sign of Im(G1), and a gate whose
class carries the opposite sign is mapped to the coordinates of its complex
conjugate class (same Re(G1), |Im(G1)| and G2).  Classes with Im(G1) = 0 --
in particular every gate produced by the sequences in this package, which
stay on the c3 = 0 face -- are represented exactly.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .model import SystemParams, XX, YY, ZZ, h_rwa_frame1
from .qmat import Operator4, SIGMA_Y, expm_skew, kron2, require_unitary

#: Magic-basis column vectors (Bell states with fixed phases), indexed by
#: computational basis rows |00>, |01>, |10>, |11>.
MAGIC_BASIS = (1.0 / np.sqrt(2.0)) * np.array(
    [
        [1, 0, 0, 1j],
        [0, 1j, 1, 0],
        [0, 1j, -1, 0],
        [1, 0, 0, -1j],
    ],
    dtype=complex,
)

_SYSY = kron2(SIGMA_Y, SIGMA_Y)

_WEYL_TOL = 1e-9
_HALF_PI = math.pi / 2
# Even sign changes and permutations generate the class symmetries of the
# canonical coordinates (together with shifts by pi along each axis).
_EVEN_SIGNS = ((1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1))
_PERMS = tuple(itertools.permutations(range(3)))


@dataclass(frozen=True)
class InvariantPair:
    """Makhlin invariants of a local equivalence class."""

    g1: complex
    g2: float

    def as_tuple(self) -> tuple[complex, float]:
        return (self.g1, self.g2)


@dataclass(frozen=True)
class WeylPoint:
    """Canonical class coordinates, pi/2 >= c1 >= c2 >= c3 >= 0 (radians)."""

    c1: float
    c2: float
    c3: float

    def __post_init__(self) -> None:
        ok = (
            -_WEYL_TOL <= self.c3 <= self.c2 + _WEYL_TOL
            and self.c2 <= self.c1 + _WEYL_TOL
            and self.c1 <= _HALF_PI + _WEYL_TOL
        )
        if not ok:
            raise ValueError(f"({self.c1}, {self.c2}, {self.c3}) is outside the chamber")

    def as_array(self) -> np.ndarray:
        return np.array([self.c1, self.c2, self.c3])


@dataclass(frozen=True)
class TrajectorySample:
    """One steering-trajectory sample: time (units of 1/g) and class point."""

    t: float
    point: WeylPoint


def to_magic(u: np.ndarray) -> np.ndarray:
    """Rewrite a computational-basis matrix in the magic basis."""
    return MAGIC_BASIS.conj().T @ u @ MAGIC_BASIS


def makhlin_invariants(u: Operator4, tol: float = 1e-8) -> InvariantPair:
    """Makhlin invariants (G1, G2) of a two-qubit unitary.

    Forms ``m = U_B^T U_B`` in the magic basis and evaluates

        G1 = tr(m)^2 / (16 det U),
        G2 = (tr(m)^2 - tr(m^2)) / (4 det U).

    Both are unchanged under left/right multiplication by single-qubit
    rotations and under global phases.  G2 is real for unitary input; a
    residual imaginary part above 1e-10 (scaled) trips an assertion.

    Raises:
        ContractViolationError: ``u`` is not unitary within ``tol``.
    """
    u = require_unitary(u, tol=tol, what="gate")
    det = np.linalg.det(u)
    ub = to_magic(u)
    m = ub.T @ ub
    tr = np.trace(m)
    g1 = tr**2 / (16.0 * det)
    g2 = (tr**2 - np.trace(m @ m)) / (4.0 * det)
    assert abs(g2.imag) < 1e-10 * max(1.0, abs(g2)), f"G2 not real: {g2!r}"
    return InvariantPair(g1=complex(g1), g2=float(g2.real))


def two_step_invariants_closed(t: float, p: SystemParams) -> InvariantPair:
    """Closed-form invariants of the two-step entangler U(t) e^{-pi X1} U(t).

    Valid for any detuning and independent of the ZZ coupling and of the
    frame in which the segments are evolved.
    """
    d2 = p.delta**2
    g2_ = p.g**2
    lam2 = d2 + 4.0 * g2_
    lam = math.sqrt(lam2)
    g1 = ((d2 + 8.0 * g2_ * math.cos(0.5 * lam * t) ** 2 - 4.0 * g2_) / lam2) ** 2
    g2 = (
        3.0 * d2**2
        + 8.0 * d2 * g2_ * (1.0 + 2.0 * math.cos(lam * t))
        + 16.0 * g2_**2 * (2.0 + math.cos(2.0 * lam * t))
    ) / lam2**2
    return InvariantPair(g1=complex(g1), g2=g2)


def invariants_from_weyl(point: WeylPoint | tuple[float, float, float]) -> InvariantPair:
    """Invariants of the canonical gate exp(-c1*XX - c2*YY - c3*ZZ)."""
    c1, c2, c3 = (point.c1, point.c2, point.c3) if isinstance(point, WeylPoint) else point
    re = (
        math.cos(c1) ** 2 * math.cos(c2) ** 2 * math.cos(c3) ** 2
        - math.sin(c1) ** 2 * math.sin(c2) ** 2 * math.sin(c3) ** 2
    )
    im = -0.25 * math.sin(2 * c1) * math.sin(2 * c2) * math.sin(2 * c3)
    g2 = 4.0 * re - math.cos(2 * c1) * math.cos(2 * c2) * math.cos(2 * c3)
    return InvariantPair(g1=re + 1j * im, g2=g2)


def canonical_class_gate(point: WeylPoint | tuple[float, float, float]) -> Operator4:
    """The representative gate exp(-c1*XX - c2*YY - c3*ZZ)."""
    c1, c2, c3 = (point.c1, point.c2, point.c3) if isinstance(point, WeylPoint) else point
    return expm_skew(-(c1 * XX + c2 * YY + c3 * ZZ))


def cnot_distance(inv: InvariantPair) -> float:
    """Squared invariant distance d^2 = |G1|^2 + |G2 - 1|^2 to the CNOT class."""
    return abs(inv.g1) ** 2 + abs(inv.g2 - 1.0) ** 2


def _raw_coordinates(u: np.ndarray) -> np.ndarray:
    """Some representative (c1, c2, c3) of the class of ``u``, in radians.

    Spectral extraction: the eigenphases of U (sy sy U^T sy sy) / sqrt(det U)
    are the exponent combinations +/-c1 -/+c2 +/-c3; half-angle bookkeeping
    on the sorted phases recovers a representative with c3 >= 0.
    """
    u_tilde = _SYSY @ u.T @ _SYSY
    ev = np.linalg.eigvals((u @ u_tilde) / np.sqrt(complex(np.linalg.det(u))))
    two_s = np.angle(ev) / math.pi
    two_s[two_s <= -0.5] += 2.0
    s = np.sort(two_s / 2.0)[::-1]
    n = int(round(s.sum()))
    s = s - np.r_[np.ones(n), np.zeros(4 - n)]
    s = np.roll(s, -n)
    combine = np.array([[1.0, 1.0, 0.0], [1.0, 0.0, 1.0], [0.0, 1.0, 1.0]])
    c = combine @ s[:3]
    if c[2] < 0:
        c[0] = 1.0 - c[0]
        c[2] = -c[2]
    return c * math.pi


def _chamber_candidates(c: np.ndarray) -> list[np.ndarray]:
    """Class-preserving images of ``c`` that land in the reduced chamber."""
    out: list[np.ndarray] = []
    for perm in _PERMS:
        pc = c[list(perm)]
        for signs in _EVEN_SIGNS:
            v = np.mod(np.array(signs) * pc, math.pi)
            v[v > math.pi - _WEYL_TOL] -= math.pi  # snap values hugging pi to 0
            v = np.clip(v, 0.0, None)
            if (
                np.all(v <= _HALF_PI + _WEYL_TOL)
                and v[0] >= v[1] - _WEYL_TOL
                and v[1] >= v[2] - _WEYL_TOL
            ):
                v = np.minimum(v, _HALF_PI)
                v[1] = min(v[1], v[0])
                v[2] = min(v[2], v[1])
                out.append(v)
    return out


def weyl_coordinates(u: Operator4, tol: float = 1e-8) -> WeylPoint:
    """Canonical Weyl-chamber coordinates of the class of ``u``.

    Extracts the eigenphases of the magic-basis symmetric product, then
    canonicalizes with the class symmetries (coordinate permutations, even
    sign changes, shifts by pi).  Among the candidates inside the chamber
    the one whose closed-form invariants best match ``makhlin_invariants(u)``
    is returned, with lexicographic tie-breaking; mirror-image classes (see
    module docstring) therefore come back as their conjugate representative.

    Raises:
        ContractViolationError: ``u`` is not unitary within ``tol``.
    """
    u = require_unitary(u, tol=tol, what="gate")
    target = makhlin_invariants(u)
    raw = _raw_coordinates(u)
    best: np.ndarray | None = None
    best_err = math.inf
    for mirrored in (False, True):
        base = raw.copy()
        if mirrored:
            base[2] = -base[2]
        for cand in _chamber_candidates(base):
            inv = invariants_from_weyl((cand[0], cand[1], cand[2]))
            err = abs(inv.g1 - target.g1) + abs(inv.g2 - target.g2)
            if err < best_err - 1e-12:
                best, best_err = cand, err
            elif err < best_err + 1e-12 and best is not None and tuple(cand) > tuple(best):
                best = cand
    assert best is not None, "canonicalization produced no chamber candidate"
    return WeylPoint(c1=float(best[0]), c2=float(best[1]), c3=float(best[2]))


def weyl_trajectory(
    p: SystemParams, t_max: float, n_samples: int = 2048
) -> list[TrajectorySample]:
    """Steering trajectory of U(t) = exp(-t * h_rwa_frame1(p)) through the chamber.

    Samples a uniform time grid from 0 to ``t_max`` (inclusive) and returns
    the canonical coordinates per sample; the first sample is the origin.
    Canonicalization is applied independently per sample, so apparent kinks
    can only occur at chamber boundaries; the default grid is fine enough to
    render the curves smoothly.
    """
    if n_samples < 2:
        raise ValueError(f"n_samples must be >= 2, got {n_samples}")
    gen = h_rwa_frame1(p)
    out: list[TrajectorySample] = []
    for t in np.linspace(0.0, t_max, n_samples):
        point = weyl_coordinates(expm_skew(-t * gen))
        out.append(TrajectorySample(t=float(t), point=point))
    return out


def trajectory_to_csv(samples: list[TrajectorySample]) -> str:
    """Render a trajectory as CSV with t in units of pi/2 and c in units of pi/2."""
    lines = ["t,c1,c2,c3"]
    for s in samples:
        vals = (
            s.t / _HALF_PI,
            s.point.c1 / _HALF_PI,
            s.point.c2 / _HALF_PI,
            s.point.c3 / _HALF_PI,
        )
        lines.append(",".join(f"{v:.6f}" for v in vals))
    return "\n".join(lines) + "\n"
