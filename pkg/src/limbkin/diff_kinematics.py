"""Twists, acceleration screws, the screw Jacobian and its inverses.

The instantaneous motion of joint n is the ordered sum of the joint
twists 1..n.  Axis time-derivatives are exact: a line carried by the
sub-chain below joint i moves with that sub-chain's accumulated twist,
so dS_i/dt is the dual cross product of the motion screw of joints
1..i-1 with S_i.  No finite differences and no transcribed derivative
formulas appear in the production path; finite differences live in the
test suite as an independent check.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    AnalyticSingularityError,
    PureTranslationError,
    SingularConfigurationError,
)
from .limb_model import (
    FrameSet,
    JointState,
    LimbGeometry,
    forward_kinematics,
    frame_rotation,
)
from .screw_algebra import Screw, _cross6


def _vec3_pair(a, b) -> tuple[np.ndarray, np.ndarray]:
    a = np.array(a, dtype=float)
    b = np.array(b, dtype=float)
    if a.shape != (3,) or b.shape != (3,):
        raise ValueError("expected 3-vectors")
    a.flags.writeable = False
    b.flags.writeable = False
    return a, b


@dataclass(frozen=True)
class Twist:
    """A velocity screw: angular part (rad/s) and moment part (m rad/s).

    The moment part is the velocity of the body point currently at the
    universal origin.
    """

    angular: np.ndarray
    moment: np.ndarray

    def __post_init__(self):
        a, m = _vec3_pair(self.angular, self.moment)
        object.__setattr__(self, "angular", a)
        object.__setattr__(self, "moment", m)

    @classmethod
    def from_array(cls, v) -> "Twist":
        v = np.asarray(v, dtype=float)
        return cls(v[:3], v[3:])

    def as_array(self) -> np.ndarray:
        return np.concatenate([self.angular, self.moment])


@dataclass(frozen=True)
class AccelerationScrew:
    """Time derivative of a motion screw (rad/s^2, m rad/s^2)."""

    angular: np.ndarray
    moment: np.ndarray

    def __post_init__(self):
        a, m = _vec3_pair(self.angular, self.moment)
        object.__setattr__(self, "angular", a)
        object.__setattr__(self, "moment", m)

    @classmethod
    def from_array(cls, v) -> "AccelerationScrew":
        v = np.asarray(v, dtype=float)
        return cls(v[:3], v[3:])

    def as_array(self) -> np.ndarray:
        return np.concatenate([self.angular, self.moment])


@dataclass(frozen=True)
class MotionState:
    """Instantaneous motion and acceleration screws of one joint frame."""

    motion: Twist
    acceleration: AccelerationScrew


@dataclass(frozen=True)
class ScrewJacobian:
    """Joint screws stacked as columns.

    ``full`` is 6x7; ``reduced`` drops the seventh column (wrist spin
    about the end-effector line) to obtain a square map.
    """

    full: np.ndarray

    def __post_init__(self):
        full = np.asarray(self.full, dtype=float)
        if full.shape != (6, 7):
            raise ValueError("screw Jacobian must be 6x7")
        full = full.copy()
        full.flags.writeable = False
        object.__setattr__(self, "full", full)

    @property
    def reduced(self) -> np.ndarray:
        return self.full[:, :6]


def _check_joint_index(n: int, limit: int = 7) -> None:
    if not 1 <= n <= limit:
        raise ValueError(f"joint index must be in 1..{limit}, got {n}")


def joint_twist(i: int, s: JointState, fs: FrameSet) -> Twist:
    """Twist of joint i: the joint rate times its unit screw axis."""
    _check_joint_index(i)
    axis = fs.joint_axes[i - 1]
    rate = s.theta_dot[i - 1]
    return Twist(rate * axis.direction, rate * axis.moment)


def _partial_motions(s: JointState, fs: FrameSet) -> np.ndarray:
    """Ordered partial sums of the joint twists; row n is IM_n, row 0 zero."""
    out = np.zeros((8, 6))
    acc = np.zeros(6)
    for i in range(7):
        acc = acc + s.theta_dot[i] * fs.joint_axes[i].as_array()
        out[i + 1] = acc
    return out


def instantaneous_motion(n: int, s: JointState, fs: FrameSet) -> Twist:
    """Motion screw of joint n: the sum of the twists of joints 1..n.

    Accumulated strictly in joint order, so the motion of joint n minus
    the motion of joint n-1 equals the n-th joint twist exactly, with no
    floating-point reassociation.
    """
    _check_joint_index(n)
    acc = np.zeros(6)
    for i in range(n):
        acc = acc + s.theta_dot[i] * fs.joint_axes[i].as_array()
    return Twist.from_array(acc)


def joint_axis_rates(s: JointState, fs: FrameSet) -> np.ndarray:
    """Exact time derivatives of the seven joint screws, one per row.

    Axis i rides on the body moved by joints 1..i-1, so its derivative is
    the dual cross product of that sub-chain's motion screw with the axis.
    The first axis is fixed and its rate is identically zero.
    """
    motions = _partial_motions(s, fs)
    rates = np.zeros((7, 6))
    for i in range(1, 7):
        rates[i] = _cross6(motions[i], fs.joint_axes[i].as_array())
    return rates


def instantaneous_acceleration(n: int, s: JointState, fs: FrameSet) -> AccelerationScrew:
    """Acceleration screw of joint n: derivative of its motion screw.

    Sums theta_ddot_i * S_i + theta_dot_i * dS_i/dt over joints 1..n with
    the exact axis rates of :func:`joint_axis_rates`.
    """
    _check_joint_index(n)
    rates = joint_axis_rates(s, fs)
    acc = np.zeros(6)
    for i in range(n):
        acc = acc + s.theta_ddot[i] * fs.joint_axes[i].as_array() + s.theta_dot[i] * rates[i]
    return AccelerationScrew.from_array(acc)


def motion_state(n: int, s: JointState, fs: FrameSet) -> MotionState:
    """Bundle the motion and acceleration screws of joint n."""
    return MotionState(instantaneous_motion(n, s, fs),
                       instantaneous_acceleration(n, s, fs))


def jacobian(fs: FrameSet) -> ScrewJacobian:
    """Stack the forward-kinematics joint screws as Jacobian columns."""
    return ScrewJacobian(fs.joint_axis_matrix())


def jacobian_derivative(s: JointState, fs: FrameSet) -> np.ndarray:
    """dJ/dt along the trajectory implied by theta_dot, for columns 1..6."""
    return joint_axis_rates(s, fs)[:6].T.copy()


def _reduced_jacobian_or_raise(theta: np.ndarray, g: LimbGeometry,
                               max_condition: float) -> np.ndarray:
    fs = forward_kinematics(JointState(theta), g)
    reduced = jacobian(fs).reduced
    condition = float(np.linalg.cond(reduced))
    if not np.isfinite(condition) or condition > max_condition:
        raise SingularConfigurationError(condition)
    return reduced


def inverse_velocities(theta, target: Twist, g: LimbGeometry,
                       max_condition: float = 1e8) -> np.ndarray:
    """Joint rates 1..6 realizing a target motion screw of joint 6.

    Solves the square reduced Jacobian by LU with partial pivoting; a
    condition estimate above ``max_condition`` raises
    :class:`SingularConfigurationError`.
    """
    theta = np.asarray(theta, dtype=float)
    reduced = _reduced_jacobian_or_raise(theta, g, max_condition)
    return np.linalg.solve(reduced, target.as_array())


def inverse_accelerations(s: JointState, target_acc: AccelerationScrew,
                          g: LimbGeometry, max_condition: float = 1e8) -> np.ndarray:
    """Joint accelerations 1..6 realizing a target acceleration screw.

    Uses theta and theta_dot from the state: the target is first stripped
    of the Jacobian-derivative term, then the reduced Jacobian is solved.
    """
    fs = forward_kinematics(s, g)
    reduced = jacobian(fs).reduced
    condition = float(np.linalg.cond(reduced))
    if not np.isfinite(condition) or condition > max_condition:
        raise SingularConfigurationError(condition)
    jdot = jacobian_derivative(s, fs)
    rhs = target_acc.as_array() - jdot @ s.theta_dot[:6]
    return np.linalg.solve(reduced, rhs)


#: Denominator threshold of the closed-form inverse Jacobian.
_ANALYTIC_DENOM_TOL = 1e-8


def analytic_inverse_jacobian(angles, g: LimbGeometry) -> np.ndarray:
    """Closed-form inverse of the reduced Jacobian.

    Exploits the chain structure: the first three joint axes pass through
    the shoulder, so their moments vanish and the 6x6 Jacobian is block
    triangular.  Both 3x3 blocks invert by explicit cross-product
    adjugates whose determinants factor into cos(t2), sin(t4), sin(t5),
    l1, l2 and (l2 + l1 cos(t4)).  Kept as an independent cross-check of
    the numeric LU inverse, not the production solve path.

    Raises:
        AnalyticSingularityError: when any denominator factor falls below
            1e-8 in magnitude.
    """
    angles = np.asarray(angles, dtype=float)
    if angles.shape not in ((6,), (7,)):
        raise ValueError("expected 6 or 7 joint angles")
    c1, c2, c3, c4, c5 = np.cos(angles[:5])
    s1, s2, s3, s4, s5 = np.sin(angles[:5])
    l1, l2 = g.l1, g.l2

    for name, value in (("sin(theta4)", s4), ("sin(theta5)", s5),
                        ("cos(theta2)", c2), ("l2", l2), ("l1", l1),
                        ("l2 + l1*cos(theta4)", l2 + l1 * c4)):
        if abs(value) < _ANALYTIC_DENOM_TOL:
            raise AnalyticSingularityError(
                f"closed-form inverse undefined: |{name}| = {abs(value):.3e}")

    d1 = np.array([0.0, 0.0, 1.0])
    d2 = np.array([-s1, c1, 0.0])
    d3 = np.array([c1 * c2, s1 * c2, -s2])
    d4 = d3
    x3 = np.array([s3 * s2 * c1 - c3 * s1, s3 * s2 * s1 + c3 * c1, s3 * c2])
    x4 = c4 * x3 + s4 * np.cross(d4, x3)
    d5 = np.cross(d4, x4)
    axis56 = s5 * x4 + c5 * d4
    d6 = np.cross(d5, axis56)
    elbow = l1 * x3
    wrist = elbow + l2 * x4
    m4 = np.cross(elbow, d4)
    m5 = np.cross(wrist, d5)
    m6 = np.cross(wrist, d6)

    det_dir = -c2
    det_mom = l1 * l2 * s4 * s5 * (l2 + l1 * c4)
    dir_inv = np.vstack([np.cross(d2, d3), np.cross(d3, d1), np.cross(d1, d2)]) / det_dir
    mom_inv = np.vstack([np.cross(m5, m6), np.cross(m6, m4), np.cross(m4, m5)]) / det_mom
    distal_dirs = np.column_stack([d4, d5, d6])

    inverse = np.zeros((6, 6))
    inverse[:3, :3] = dir_inv
    inverse[:3, 3:] = -dir_inv @ distal_dirs @ mom_inv
    inverse[3:, 3:] = mom_inv
    return inverse


def twist_in_body_frame(i: int, fs: FrameSet, m: MotionState
                        ) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Body-frame velocity and acceleration of a segment frame.

    For frame i in {3, 4, 7} returns (omega, v, alpha, a): the angular
    velocity/acceleration and the attachment-point linear velocity, all
    as components in frame {i}.  The linear acceleration entry is the
    body-frame derivative of the linear-velocity components, which is the
    quantity the momentum-balance transport form consumes; it equals
    R^T (moment_rate + alpha x p) because the origin shift and the frame
    spin cancel for a point riding on the body.
    """
    if i not in (3, 4, 7):
        raise ValueError("body-attached frames are 3 (arm), 4 (forearm) and 7 (hand)")
    rot = frame_rotation(fs, i)
    p = fs.origins[i]
    omega_w = m.motion.angular
    alpha_w = m.acceleration.angular
    v_w = m.motion.moment + np.cross(omega_w, p)
    a_w = m.acceleration.moment + np.cross(alpha_w, p)
    return rot.T @ omega_w, rot.T @ v_w, rot.T @ alpha_w, rot.T @ a_w


def motion_axis_decompose(m: Twist) -> tuple[float, float, Screw]:
    """Split a twist into intensity, slide velocity and its unit axis.

    Returns (omega, v, axis) with omega the angular speed, v the
    translation speed along the axis and axis the zero-pitch unit line
    such that assembling (omega + eps*v) * axis reproduces the twist.

    Raises:
        PureTranslationError: for a twist with (near-)zero angular part.
    """
    omega = float(np.linalg.norm(m.angular))
    if omega < 1e-12:
        raise PureTranslationError("zero angular part: no instantaneous rotation axis")
    direction = m.angular / omega
    v = float(direction @ m.moment)
    line_moment = (m.moment - v * direction) / omega
    return omega, v, Screw(direction, line_moment)
