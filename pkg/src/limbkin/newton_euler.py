"""Rigid-body dynamics of the three limb segments.

Bodies 1, 2 and 3 (arm, forearm, hand) are attached to frames {3}, {4}
and {7}.  All per-body quantities live in the owning body's frame, taken
about its attachment point: the shoulder, the elbow and the wrist.
Momentum balance is written in the transport form

    F = dq/dt + w x q        M = dH/dt + w x H + V x q

where q and H are the linear and angular momenta about the attachment
point and d/dt differentiates the body-frame components.  Inverse
dynamics walks the free bodies from the hand inward; forward dynamics
assembles the same balances into one linear system for the six unknown
acceleration vectors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .diff_kinematics import motion_state, twist_in_body_frame
from .errors import SingularMassMatrixError
from .limb_model import JointState, LimbGeometry, forward_kinematics, frame_rotation

#: Frame carrying each body, body index 1..3.
_BODY_FRAME = {1: 3, 2: 4, 3: 7}


def _vec3(value, name: str) -> np.ndarray:
    v = np.array(value, dtype=float)
    if v.shape != (3,):
        raise ValueError(f"{name} must be a 3-vector")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"{name} entries must be finite")
    v.flags.writeable = False
    return v


def _inertia_tensor(value, name: str) -> np.ndarray:
    arr = np.asarray(value, dtype=float)
    if arr.ndim == 0:
        arr = float(arr) * np.eye(3)
    if arr.shape != (3, 3):
        raise ValueError(f"{name} must be a scalar or a 3x3 tensor")
    scale = max(float(np.abs(arr).max()), 1.0)
    if float(np.abs(arr - arr.T).max()) > 1e-9 * scale:
        raise ValueError(f"{name} must be symmetric")
    if float(np.linalg.eigvalsh(arr).min()) < -1e-9 * scale:
        raise ValueError(f"{name} must be positive semidefinite")
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class LimbDynamicsParams:
    """Masses, inertia tensors, segment lengths and gravity.

    Inertias are taken about each body's attachment point, expressed in
    the body frame; a scalar is accepted as shorthand for an isotropic
    tensor.  Centre-of-mass offsets default to the mid-segment points
    [l/2, 0, 0] on each body's x axis.
    """

    m1: float
    m2: float
    m3: float
    I1: np.ndarray
    I2: np.ndarray
    I3: np.ndarray
    l1: float
    l2: float
    l3: float
    gravity: float = 9.81
    com1: np.ndarray | None = None
    com2: np.ndarray | None = None
    com3: np.ndarray | None = None

    def __post_init__(self):
        for name in ("m1", "m2", "m3"):
            if getattr(self, name) < 0.0:
                raise ValueError("masses must be nonnegative")
        for name in ("l1", "l2", "l3"):
            if getattr(self, name) <= 0.0:
                raise ValueError("segment lengths must be positive")
        if self.gravity < 0.0:
            raise ValueError("gravity must be nonnegative")
        for name in ("I1", "I2", "I3"):
            object.__setattr__(self, name, _inertia_tensor(getattr(self, name), name))
        lengths = (self.l1, self.l2, self.l3)
        for idx, name in enumerate(("com1", "com2", "com3")):
            value = getattr(self, name)
            if value is None:
                value = np.array([lengths[idx] / 2.0, 0.0, 0.0])
            object.__setattr__(self, name, _vec3(value, name))

    def mass(self, body: int) -> float:
        return (self.m1, self.m2, self.m3)[body - 1]

    def inertia(self, body: int) -> np.ndarray:
        return (self.I1, self.I2, self.I3)[body - 1]

    def com(self, body: int) -> np.ndarray:
        return (self.com1, self.com2, self.com3)[body - 1]

    def frame_of(self, body: int) -> int:
        return _BODY_FRAME[body]


@dataclass(frozen=True)
class BodyState:
    """Velocity and acceleration of one body in its own frame."""

    omega: np.ndarray
    v: np.ndarray
    alpha: np.ndarray
    a: np.ndarray

    def __post_init__(self):
        for name in ("omega", "v", "alpha", "a"):
            object.__setattr__(self, name, _vec3(getattr(self, name), name))

    @classmethod
    def at_rest(cls) -> "BodyState":
        z = np.zeros(3)
        return cls(z, z, z, z)


@dataclass(frozen=True)
class Wrench:
    """A force and a moment about the owning frame's origin, body frame."""

    force: np.ndarray
    moment: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "force", _vec3(self.force, "force"))
        object.__setattr__(self, "moment", _vec3(self.moment, "moment"))


@dataclass(frozen=True)
class AppliedLoads:
    """Joint torques and reaction forces driving the forward problem.

    F47 lives in frame {7}, F34 in frame {4} and F03 in frame {3}; the
    torques live in the frame of the body they act on distally.
    """

    T1: np.ndarray
    T2: np.ndarray
    T3: np.ndarray
    F47: np.ndarray
    F34: np.ndarray
    F03: np.ndarray

    def __post_init__(self):
        for name in ("T1", "T2", "T3", "F47", "F34", "F03"):
            object.__setattr__(self, name, _vec3(getattr(self, name), name))


@dataclass(frozen=True)
class DynamicsSolution:
    """Reactions, joint torques and the body accelerations they balance.

    body_states maps frame index (3, 4, 7) to the body state used; the
    reversed reaction pairs are exact negations of the stored vectors.
    """

    T1: np.ndarray
    T2: np.ndarray
    T3: np.ndarray
    F03: np.ndarray
    F34: np.ndarray
    F47: np.ndarray
    body_states: dict[int, BodyState]

    @property
    def F30(self) -> np.ndarray:
        return -self.F03

    @property
    def F43(self) -> np.ndarray:
        return -self.F34

    @property
    def F74(self) -> np.ndarray:
        return -self.F47

    def loads(self) -> AppliedLoads:
        """Repackage the outputs as forward-dynamics inputs."""
        return AppliedLoads(T1=self.T1, T2=self.T2, T3=self.T3,
                            F47=self.F47, F34=self.F34, F03=self.F03)


def gravity_wrench(body: int, fs, p: LimbDynamicsParams) -> np.ndarray:
    """Weight of a body resolved into its own frame.

    Gravity pulls along -z of the universal frame; the body-frame vector
    is R_i^T [0, 0, -m g] for the body's frame i.
    """
    if body not in (1, 2, 3):
        raise ValueError("body must be 1 (arm), 2 (forearm) or 3 (hand)")
    rot = frame_rotation(fs, p.frame_of(body))
    return rot.T @ np.array([0.0, 0.0, -p.mass(body) * p.gravity])


def linear_momentum(body: int, state: BodyState, p: LimbDynamicsParams) -> np.ndarray:
    """m (V + w x G): momentum of the body about its attachment point."""
    return p.mass(body) * (state.v + np.cross(state.omega, p.com(body)))


def angular_momentum(body: int, state: BodyState, p: LimbDynamicsParams) -> np.ndarray:
    """I w + m (G x V): moment of momentum about the attachment point."""
    return p.inertia(body) @ state.omega + p.mass(body) * np.cross(p.com(body), state.v)


def newton_euler_wrench(body: int, state: BodyState, p: LimbDynamicsParams) -> Wrench:
    """Net wrench required to sustain the body's state.

    force  = m (a + alpha x G) + w x q
    moment = I alpha + m (G x a) + w x H + V x q
    """
    m = p.mass(body)
    inertia = p.inertia(body)
    com = p.com(body)
    q = linear_momentum(body, state, p)
    h = angular_momentum(body, state, p)
    force = m * (state.a + np.cross(state.alpha, com)) + np.cross(state.omega, q)
    moment = (inertia @ state.alpha + m * np.cross(com, state.a)
              + np.cross(state.omega, h) + np.cross(state.v, q))
    return Wrench(force, moment)


def _body_states(s: JointState, fs) -> dict[int, BodyState]:
    states = {}
    for frame in (3, 4, 7):
        motion = motion_state(frame, s, fs)
        omega, v, alpha, a = twist_in_body_frame(frame, fs, motion)
        states[frame] = BodyState(omega, v, alpha, a)
    return states


def _lever(length: float) -> np.ndarray:
    return np.array([length, 0.0, 0.0])


def inverse_dynamics(s: JointState, g: LimbGeometry,
                     p: LimbDynamicsParams) -> DynamicsSolution:
    """Reaction forces and joint torques sustaining a full motion state.

    Works distal to proximal: the hand balance yields the wrist reaction
    and torque, which re-enter the forearm balance (re-expressed in frame
    {4}), and likewise from forearm to arm.  The distal reaction enters
    each moment balance through the segment-length lever on the body's
    x axis.
    """
    fs = forward_kinematics(s, g)
    states = _body_states(s, fs)
    rot3, rot4, rot7 = (frame_rotation(fs, i) for i in (3, 4, 7))

    weight1 = gravity_wrench(1, fs, p)
    weight2 = gravity_wrench(2, fs, p)
    weight3 = gravity_wrench(3, fs, p)

    net_hand = newton_euler_wrench(3, states[7], p)
    f47 = net_hand.force - weight3
    t3 = net_hand.moment - np.cross(p.com(3), weight3)

    f74_in4 = rot4.T @ (rot7 @ (-f47))
    net_forearm = newton_euler_wrench(2, states[4], p)
    f34 = net_forearm.force - weight2 - f74_in4
    t2 = (net_forearm.moment - np.cross(p.com(2), weight2)
          - np.cross(_lever(p.l2), f74_in4))

    f43_in3 = rot3.T @ (rot4 @ (-f34))
    net_arm = newton_euler_wrench(1, states[3], p)
    f03 = net_arm.force - f43_in3 - weight1
    t1 = (net_arm.moment - np.cross(p.com(1), weight1)
          - np.cross(_lever(p.l1), f43_in3))

    return DynamicsSolution(T1=t1, T2=t2, T3=t3, F03=f03, F34=f34, F47=f47,
                            body_states=states)


def forward_dynamics(s: JointState, applied: AppliedLoads, g: LimbGeometry,
                     p: LimbDynamicsParams) -> dict[int, tuple[np.ndarray, np.ndarray]]:
    """Body accelerations given applied torques and reaction forces.

    Assembles the six vector momentum balances into one 18x18 linear
    system in (alpha_3, a_3, alpha_4, a_4, alpha_7, a_7); the velocity
    products are knowns built from theta and theta_dot.  Returns a map
    from frame index to (alpha, a) in that frame.

    Raises:
        SingularMassMatrixError: for zero masses or degenerate inertias.
    """
    if min(p.m1, p.m2, p.m3) <= 0.0:
        raise SingularMassMatrixError("all three masses must be positive")
    fs = forward_kinematics(s, g)
    rot3, rot4, rot7 = (frame_rotation(fs, i) for i in (3, 4, 7))
    f74_in4 = rot4.T @ (rot7 @ (-np.asarray(applied.F47, dtype=float)))
    f43_in3 = rot3.T @ (rot4 @ (-np.asarray(applied.F34, dtype=float)))

    rhs_force = {
        7: applied.F47 + gravity_wrench(3, fs, p),
        4: f74_in4 + applied.F34 + gravity_wrench(2, fs, p),
        3: f43_in3 + applied.F03 + gravity_wrench(1, fs, p),
    }
    rhs_moment = {
        7: applied.T3 + np.cross(p.com(3), gravity_wrench(3, fs, p)),
        4: (applied.T2 + np.cross(p.com(2), gravity_wrench(2, fs, p))
            + np.cross(_lever(p.l2), f74_in4)),
        3: (applied.T1 + np.cross(p.com(1), gravity_wrench(1, fs, p))
            + np.cross(_lever(p.l1), f43_in3)),
    }

    matrix = np.zeros((18, 18))
    rhs = np.zeros(18)
    for slot, (body, frame) in enumerate(((1, 3), (2, 4), (3, 7))):
        motion = motion_state(frame, s, fs)
        omega, v, _, _ = twist_in_body_frame(frame, fs, motion)
        state = BodyState(omega, v, np.zeros(3), np.zeros(3))
        q = linear_momentum(body, state, p)
        h = angular_momentum(body, state, p)
        m = p.mass(body)
        com = p.com(body)
        com_cross = np.array([[0.0, -com[2], com[1]],
                              [com[2], 0.0, -com[0]],
                              [-com[1], com[0], 0.0]])
        row = 6 * slot
        # unknown layout per body: [a, alpha]
        matrix[row:row + 3, row:row + 3] = m * np.eye(3)
        matrix[row:row + 3, row + 3:row + 6] = -m * com_cross
        matrix[row + 3:row + 6, row:row + 3] = m * com_cross
        matrix[row + 3:row + 6, row + 3:row + 6] = p.inertia(body)
        rhs[row:row + 3] = rhs_force[frame] - np.cross(omega, q)
        rhs[row + 3:row + 6] = rhs_moment[frame] - np.cross(omega, h) - np.cross(v, q)

    try:
        solution = np.linalg.solve(matrix, rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularMassMatrixError(str(exc)) from exc
    if not np.all(np.isfinite(solution)):
        raise SingularMassMatrixError("inertia system produced non-finite accelerations")

    out = {}
    for slot, frame in enumerate((3, 4, 7)):
        row = 6 * slot
        out[frame] = (solution[row + 3:row + 6].copy(), solution[row:row + 3].copy())
    return out
