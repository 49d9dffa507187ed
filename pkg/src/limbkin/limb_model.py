"""The 7-DOF upper-limb kinematic chain.

Three segments (arm, forearm, hand) connected by a spherical shoulder
(joints 1-3), a revolute elbow (joint 4) and a spherical wrist (joints
5-7).  Frame {0} sits at the shoulder with x = i, y = j, z = k; gravity
acts along -k.  Each frame {i} is the right-handed triad formed by the
link axis a_{i,i+1}, the normal y_i and the joint axis S_i, all unit
lines expressed in frame {0}.

Joint angles supplied by callers are the "user" angles theta_1..theta_7;
the chain internally adds the fixed structural offsets
(0, -pi/2, -pi/2, 0, -pi/2, -pi/2, -pi/2) before rotating, so the
all-zero configuration is the anatomical reference pose in which the limb
lies along +y with simple unit-vector axes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .screw_algebra import (
    DualAngle,
    Screw,
    X_LINE,
    Y_LINE,
    Z_LINE,
    _apply6,
    _cross6,
    dual_cos,
    dual_sin,
)

#: Structural joint-angle offsets added to the user angles, radians.
JOINT_OFFSETS = np.array([0.0, -math.pi / 2, -math.pi / 2, 0.0,
                          -math.pi / 2, -math.pi / 2, -math.pi / 2])
JOINT_OFFSETS.flags.writeable = False

#: Link twist angles (radians); links 3 and 4 also carry the two segment
#: lengths in their dual parts.
_LINK_ANGLES = (-math.pi / 2, -math.pi / 2, 0.0, -math.pi / 2,
                -math.pi / 2, -math.pi / 2, -math.pi / 2)


def _as_joint_vector(value, name: str) -> np.ndarray:
    v = np.array(value, dtype=float)
    if v.shape != (7,):
        raise ValueError(f"{name} must have 7 entries, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"{name} entries must be finite")
    v.flags.writeable = False
    return v


@dataclass(frozen=True)
class LimbGeometry:
    """Segment lengths and the fixed link/joint parameters of the chain.

    joint_limits, when given, are seven (lo, hi) pairs in radians; they
    gate inverse-kinematics solutions and command-line input validation
    but never the forward computations.
    """

    l1: float
    l2: float
    joint_limits: tuple[tuple[float, float], ...] | None = None

    def __post_init__(self):
        if not (self.l1 > 0.0 and self.l2 > 0.0):
            raise ValueError("segment lengths l1 and l2 must be positive")
        if self.joint_limits is not None:
            limits = tuple((float(lo), float(hi)) for lo, hi in self.joint_limits)
            if len(limits) != 7 or any(lo > hi for lo, hi in limits):
                raise ValueError("joint_limits must be 7 ordered (lo, hi) pairs")
            object.__setattr__(self, "joint_limits", limits)

    @property
    def link_duals(self) -> tuple[DualAngle, ...]:
        """Dual angles of links 1-7: twist angle plus offset length."""
        offsets = (0.0, 0.0, self.l1, self.l2, 0.0, 0.0, 0.0)
        return tuple(DualAngle(a, d) for a, d in zip(_LINK_ANGLES, offsets))

    @property
    def joint_offsets(self) -> np.ndarray:
        return JOINT_OFFSETS


@dataclass(frozen=True)
class JointState:
    """Joint angles, velocities and accelerations (radians, SI)."""

    theta: np.ndarray
    theta_dot: np.ndarray = field(default_factory=lambda: np.zeros(7))
    theta_ddot: np.ndarray = field(default_factory=lambda: np.zeros(7))

    def __post_init__(self):
        object.__setattr__(self, "theta", _as_joint_vector(self.theta, "theta"))
        object.__setattr__(self, "theta_dot", _as_joint_vector(self.theta_dot, "theta_dot"))
        object.__setattr__(self, "theta_ddot", _as_joint_vector(self.theta_ddot, "theta_ddot"))


@dataclass(frozen=True)
class FrameSet:
    """All chain screws at one configuration, in universal coordinates.

    joint_axes holds S_1..S_7, link_axes a_01..a_78 and normals y_0..y_7.
    origins[i] is the attachment point of frame {i}: the shoulder for
    frames 0-3, the elbow for frame 4 and the wrist for frames 5-7.
    """

    joint_axes: tuple[Screw, ...]
    link_axes: tuple[Screw, ...]
    normals: tuple[Screw, ...]
    origins: np.ndarray

    def joint_axis_matrix(self) -> np.ndarray:
        """The seven joint screws stacked as columns of a 6x7 matrix."""
        return np.column_stack([s.as_array() for s in self.joint_axes])


def effective_angles(s: JointState, g: LimbGeometry) -> np.ndarray:
    """User angles plus the structural offsets; what the joints rotate by."""
    return s.theta + g.joint_offsets


def _chain_screws(rotations: np.ndarray, l1: float, l2: float,
                  n_joints: int = 7) -> tuple[np.ndarray, np.ndarray]:
    """Run the alternating displacement recursion on 6-vectors.

    rotations are the actual joint rotation angles.  Returns (S, A) where
    S[j] is joint screw j+1 and A[j] is link axis a_{j, j+1}; A has one
    more row than S.
    """
    link_offsets = (0.0, 0.0, l1, l2, 0.0, 0.0, 0.0)
    S = np.zeros((n_joints, 6))
    A = np.zeros((n_joints + 1, 6))
    A[0, 0] = 1.0  # a_01 = i
    S[0, 2] = 1.0  # S_1 = k
    for j in range(1, n_joints + 1):
        cj = math.cos(rotations[j - 1])
        sj = math.sin(rotations[j - 1])
        A[j] = _apply6(cj, 0.0, sj, 0.0, S[j - 1], A[j - 1])
        if j < n_joints:
            ca = math.cos(_LINK_ANGLES[j - 1])
            sa = math.sin(_LINK_ANGLES[j - 1])
            d = link_offsets[j - 1]
            S[j] = _apply6(ca, -d * sa, sa, d * ca, A[j], S[j - 1])
    return S, A


def forward_kinematics(s: JointState, g: LimbGeometry) -> FrameSet:
    """Propagate the universal frame through all seven joints.

    Alternates joint operators (rotation by the effective angle about the
    current joint axis) with link operators (the fixed dual link angles)
    starting from a_01 = i, y_0 = j, S_1 = S_0 = k.
    """
    rotations = effective_angles(s, g)
    S, A = _chain_screws(rotations, g.l1, g.l2)

    joint_axes = tuple(Screw(S[j, :3], S[j, 3:]) for j in range(7))
    link_axes = tuple(Screw(A[j, :3], A[j, 3:]) for j in range(8))
    normals = [Y_LINE]
    for j in range(1, 8):
        normals.append(Screw.from_array(_cross6(S[j - 1], A[j])))

    elbow = g.l1 * A[3, :3]
    wrist = elbow + g.l2 * A[4, :3]
    origins = np.zeros((8, 3))
    origins[4] = elbow
    origins[5:] = wrist
    origins.flags.writeable = False
    return FrameSet(joint_axes, link_axes, tuple(normals), origins)


def frame_rotation(fs: FrameSet, i: int) -> np.ndarray:
    """Rotation whose columns are the frame-{i} triad directions.

    Maps frame-{i} coordinates to universal coordinates; i in 1..7.
    """
    if not 1 <= i <= 7:
        raise ValueError("frame index must be in 1..7")
    return np.column_stack([fs.link_axes[i].direction,
                            fs.normals[i].direction,
                            fs.joint_axes[i - 1].direction])


def end_effector_line(s: JointState, g: LimbGeometry) -> Screw:
    """The wrist line S_6 used as the end-effector target.

    The seventh rotation turns about this line without moving it, so the
    line fixes hand position and orientation up to that spin.
    """
    return forward_kinematics(s, g).joint_axes[5]
