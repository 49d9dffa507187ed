"""Dual-number algebra and Pluecker-coordinate screws.

A screw is stored as a pair of real 3-vectors: a dimensionless direction
part (L, M, N) and a moment part (P, Q, R) in metres.  A *unit line* is a
screw with unit direction and zero pitch (direction orthogonal to moment);
every revolute joint axis in this package is a unit line.

Dual numbers a + eps*b with eps**2 = 0 carry an angle in the real slot and
a translation distance in the dual slot, so a single operator expresses a
rotation about a line combined with a slide along it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateLineError, InvalidAxisError, UndefinedPitchError

#: Tolerance used when checking that a screw is a unit line.
UNIT_LINE_TOL = 1e-10
#: Below this separation two points no longer define a line.
COINCIDENT_POINT_TOL = 1e-9


def _vec3(value) -> np.ndarray:
    v = np.array(value, dtype=float)
    if v.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {v.shape}")
    v.flags.writeable = False
    return v


@dataclass(frozen=True)
class DualScalar:
    """A dual number ``real + eps * dual`` with ``eps**2 == 0``."""

    real: float
    dual: float = 0.0

    def __add__(self, other: "DualScalar") -> "DualScalar":
        return DualScalar(self.real + other.real, self.dual + other.dual)

    def __sub__(self, other: "DualScalar") -> "DualScalar":
        return DualScalar(self.real - other.real, self.dual - other.dual)

    def __mul__(self, other):
        if isinstance(other, DualScalar):
            return DualScalar(self.real * other.real,
                              self.real * other.dual + self.dual * other.real)
        return DualScalar(self.real * other, self.dual * other)

    __rmul__ = __mul__

    def __neg__(self) -> "DualScalar":
        return DualScalar(-self.real, -self.dual)


@dataclass(frozen=True)
class DualAngle:
    """An angle (radians) paired with an offset distance (metres).

    The angle is kept unnormalized; wrap to (-pi, pi] only when a value
    crosses an API boundary (see :func:`wrap_angle`).
    """

    angle: float
    offset: float = 0.0


def wrap_angle(angle):
    """Wrap an angle (or array of angles) to the interval (-pi, pi]."""
    wrapped = -((-np.asarray(angle) + np.pi) % (2.0 * np.pi) - np.pi)
    return wrapped


def dual_cos(a: DualAngle) -> DualScalar:
    """Cosine of a dual angle: cos(p + eps*d) = cos p - eps*d*sin p."""
    return DualScalar(math.cos(a.angle), -a.offset * math.sin(a.angle))


def dual_sin(a: DualAngle) -> DualScalar:
    """Sine of a dual angle: sin(p + eps*d) = sin p + eps*d*cos p."""
    return DualScalar(math.sin(a.angle), a.offset * math.cos(a.angle))


@dataclass(frozen=True)
class Screw:
    """A dual 3-vector: (direction, moment) in Pluecker form."""

    direction: np.ndarray
    moment: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "direction", _vec3(self.direction))
        object.__setattr__(self, "moment", _vec3(self.moment))

    @classmethod
    def from_array(cls, v) -> "Screw":
        v = np.asarray(v, dtype=float)
        if v.shape != (6,):
            raise ValueError(f"expected a 6-vector, got shape {v.shape}")
        return cls(v[:3], v[3:])

    def as_array(self) -> np.ndarray:
        return np.concatenate([self.direction, self.moment])

    def __add__(self, other: "Screw") -> "Screw":
        return Screw(self.direction + other.direction, self.moment + other.moment)

    def __neg__(self) -> "Screw":
        return Screw(-self.direction, -self.moment)

    def __sub__(self, other: "Screw") -> "Screw":
        return Screw(self.direction - other.direction, self.moment - other.moment)


# Fixed coordinate lines of the universal frame.
X_LINE = Screw(np.array([1.0, 0.0, 0.0]), np.zeros(3))
Y_LINE = Screw(np.array([0.0, 1.0, 0.0]), np.zeros(3))
Z_LINE = Screw(np.array([0.0, 0.0, 1.0]), np.zeros(3))


# ---------------------------------------------------------------------------
# 6-vector kernels.  The typed operations below wrap these; the kinematic
# chain uses them directly to avoid per-step object churn.

def _cross6(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.empty(6)
    out[:3] = np.cross(a[:3], b[:3])
    out[3:] = np.cross(a[:3], b[3:]) + np.cross(a[3:], b[:3])
    return out


def _dual_dot6(a: np.ndarray, b: np.ndarray) -> tuple[float, float]:
    return (float(a[:3] @ b[:3]), float(a[:3] @ b[3:] + a[3:] @ b[:3]))


def _scale6(x: np.ndarray, real: float, dual: float) -> np.ndarray:
    out = np.empty(6)
    out[:3] = real * x[:3]
    out[3:] = real * x[3:] + dual * x[:3]
    return out


def _apply6(cr: float, cd: float, sr: float, sd: float,
            u: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Dual Rodrigues displacement of the line x about the unit line u.

    (cr, cd) and (sr, sd) are the dual cosine and sine of the displacement
    dual angle.  The result is
    x*cos + (u >< x)*sin + u*(u . x)*(1 - cos), with dual-scalar
    coefficients, the dual cross product >< and the dual dot product.
    """
    ud, um = u[:3], u[3:]
    xd, xm = x[:3], x[3:]
    cxd = np.cross(ud, xd)
    cxm = np.cross(ud, xm) + np.cross(um, xd)
    dot_r = float(ud @ xd)
    dot_d = float(ud @ xm + um @ xd)
    # w = (dot_r + eps*dot_d) * (1 - cos)
    wr = dot_r * (1.0 - cr)
    wd = -dot_r * cd + dot_d * (1.0 - cr)
    out = np.empty(6)
    out[:3] = cr * xd + sr * cxd + wr * ud
    out[3:] = cr * xm + cd * xd + sr * cxm + sd * cxd + wr * um + wd * ud
    return out


# ---------------------------------------------------------------------------
# Typed operations.

def screw_cross(a: Screw, b: Screw) -> Screw:
    """Dual-vector cross product of two screws.

    direction = a.dir x b.dir, moment = a.dir x b.mom + a.mom x b.dir.
    Completes a right-handed frame from a joint axis and a link axis.
    """
    return Screw.from_array(_cross6(a.as_array(), b.as_array()))


def dual_dot(a: Screw, b: Screw) -> DualScalar:
    """Dual dot product: a.dir . b.dir + eps(a.dir . b.mom + a.mom . b.dir)."""
    r, d = _dual_dot6(a.as_array(), b.as_array())
    return DualScalar(r, d)


def screw_scale(s: Screw, k) -> Screw:
    """Scale a screw by a real or dual scalar."""
    if isinstance(k, DualScalar):
        return Screw.from_array(_scale6(s.as_array(), k.real, k.dual))
    return Screw(k * s.direction, k * s.moment)


def pitch(s: Screw) -> float:
    """Pitch of a screw: dir . mom / dir . dir (metres per radian)."""
    n2 = float(s.direction @ s.direction)
    if n2 < 1e-300:
        raise UndefinedPitchError("pitch is undefined for a zero direction part")
    return float(s.direction @ s.moment) / n2


def is_unit_line(s: Screw, tol: float = UNIT_LINE_TOL) -> bool:
    """True when s has a unit direction and zero pitch, both within tol."""
    norm_err = abs(float(np.linalg.norm(s.direction)) - 1.0)
    pitch_err = abs(float(s.direction @ s.moment))
    return norm_err <= tol and pitch_err <= tol


def line_from_points(p1, p2) -> Screw:
    """Unit line through two distinct points, directed from p1 to p2.

    The moment is p1 x direction, so any point on the line reproduces it.

    Raises:
        DegenerateLineError: if the points are closer than
            ``COINCIDENT_POINT_TOL``.
    """
    p1 = np.asarray(p1, dtype=float)
    p2 = np.asarray(p2, dtype=float)
    chord = p2 - p1
    length = float(np.linalg.norm(chord))
    if length <= COINCIDENT_POINT_TOL:
        raise DegenerateLineError(f"points are coincident to within {length:.3e} m")
    direction = chord / length
    return Screw(direction, np.cross(p1, direction))


@dataclass(frozen=True)
class ScrewOperator:
    """A screw displacement: rotation by a dual angle about a unit line."""

    cos_angle: DualScalar
    sin_angle: DualScalar
    axis: Screw

    @property
    def axis_term(self) -> Screw:
        """The axis scaled by the dual sine of the displacement angle."""
        return screw_scale(self.axis, self.sin_angle)


def make_operator(angle: DualAngle, axis: Screw) -> ScrewOperator:
    """Build the displacement operator cos(angle) + axis * sin(angle).

    Raises:
        InvalidAxisError: if the axis is not a unit line.
    """
    if not is_unit_line(axis):
        raise InvalidAxisError("operator axis must be a unit line screw")
    return ScrewOperator(dual_cos(angle), dual_sin(angle), axis)


def apply_operator(q: ScrewOperator, s: Screw) -> Screw:
    """Displace the line s by the screw operator q.

    Implements the dual Rodrigues formula; reduces to an ordinary rotation
    of (direction, moment) when the dual parts vanish, and to a pure slide
    along the axis when the primary angle is zero.
    """
    return Screw.from_array(
        _apply6(q.cos_angle.real, q.cos_angle.dual,
                q.sin_angle.real, q.sin_angle.dual,
                q.axis.as_array(), s.as_array()))
