"""Screw-theory kinematics and dynamics of a 7-DOF upper-limb manipulator."""

from .errors import (
    AnalyticSingularityError,
    DegenerateLineError,
    InvalidAxisError,
    LimbError,
    PureTranslationError,
    SingularConfigurationError,
    SingularMassMatrixError,
    UndefinedPitchError,
)
from .screw_algebra import (
    DualAngle,
    DualScalar,
    Screw,
    ScrewOperator,
    apply_operator,
    dual_cos,
    dual_dot,
    dual_sin,
    is_unit_line,
    line_from_points,
    make_operator,
    pitch,
    screw_cross,
    screw_scale,
    wrap_angle,
)
from .limb_model import (
    FrameSet,
    JOINT_OFFSETS,
    JointState,
    LimbGeometry,
    effective_angles,
    end_effector_line,
    forward_kinematics,
    frame_rotation,
)
from .diff_kinematics import (
    AccelerationScrew,
    MotionState,
    ScrewJacobian,
    Twist,
    analytic_inverse_jacobian,
    instantaneous_acceleration,
    instantaneous_motion,
    inverse_accelerations,
    inverse_velocities,
    jacobian,
    jacobian_derivative,
    joint_axis_rates,
    joint_twist,
    motion_axis_decompose,
    motion_state,
    twist_in_body_frame,
)
from .ik_solver import IkOptions, IkSolution, TargetLine, ik_residual, solve_ik
from .newton_euler import (
    AppliedLoads,
    BodyState,
    DynamicsSolution,
    LimbDynamicsParams,
    Wrench,
    angular_momentum,
    forward_dynamics,
    gravity_wrench,
    inverse_dynamics,
    linear_momentum,
    newton_euler_wrench,
)

__version__ = "0.1.0"
