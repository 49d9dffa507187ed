"""Numerical inverse kinematics for the wrist line.

The task is to find joint angles theta_1..theta_6 whose forward
kinematics place the sixth joint axis on a given target line.  A line
has four degrees of freedom and the sixth angle spins the hand about the
line without moving it, so solutions generically form continua; the
solver therefore runs a damped Gauss-Newton iteration from several
deterministic quasi-random starts and reports every distinct converged
configuration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import qmc

from .limb_model import JOINT_OFFSETS, LimbGeometry, _chain_screws
from .screw_algebra import Screw, _cross6, is_unit_line, wrap_angle


@dataclass(frozen=True)
class TargetLine:
    """A unit line the end-effector axis must coincide with."""

    line: Screw

    def __post_init__(self):
        if not is_unit_line(self.line, tol=1e-9):
            raise ValueError("target must be a unit line: unit direction, zero pitch")

    @classmethod
    def from_array(cls, v) -> "TargetLine":
        return cls(Screw.from_array(v))


@dataclass(frozen=True)
class IkOptions:
    """Solver knobs; the defaults suit metre-scale limbs."""

    max_iterations: int = 100
    residual_tol: float = 1e-10
    damping: float = 1e-3
    multistart_count: int = 16
    seed: np.ndarray | None = None

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        if self.residual_tol <= 0.0 or self.damping <= 0.0:
            raise ValueError("tolerances and damping must be positive")
        if self.multistart_count < 1:
            raise ValueError("multistart_count must be at least 1")
        if self.seed is not None:
            seed = np.array(self.seed, dtype=float)
            if seed.shape != (6,):
                raise ValueError("seed must hold 6 joint angles")
            seed.flags.writeable = False
            object.__setattr__(self, "seed", seed)


@dataclass(frozen=True)
class IkSolution:
    """One converged configuration, angles wrapped to (-pi, pi]."""

    angles: np.ndarray
    residual_norm: float
    iterations: int
    converged: bool


_DAMPING_FLOOR = 1e-12
_DAMPING_CAP = 1e6
_DEDUP_TOL = 1e-6


def _end_axis(angles6: np.ndarray, g: LimbGeometry) -> tuple[np.ndarray, np.ndarray]:
    """S_6 as a 6-vector plus the 6x6 matrix of joint screws 1..6."""
    rotations = np.zeros(7)
    rotations[:6] = angles6 + JOINT_OFFSETS[:6]
    screws, _ = _chain_screws(rotations, g.l1, g.l2, n_joints=6)
    return screws[5], screws


def ik_residual(angles, target: TargetLine, g: LimbGeometry) -> np.ndarray:
    """Difference between the chain's sixth axis and the target line.

    Three dimensionless direction components followed by three moment
    components in metres; zero exactly on a solution.
    """
    angles = np.asarray(angles, dtype=float)
    if angles.shape != (6,):
        raise ValueError("expected 6 joint angles")
    end_axis, _ = _end_axis(angles, g)
    return end_axis - target.line.as_array()


def _residual_jacobian(screws: np.ndarray) -> np.ndarray:
    """d(S_6)/d(theta_j): the j-th joint twist acting on the sixth axis."""
    jac = np.zeros((6, 6))
    for j in range(5):
        jac[:, j] = _cross6(screws[j], screws[5])
    # column 6 is zero: rotating the line about itself leaves it fixed
    return jac


def _solve_from(start: np.ndarray, target6: np.ndarray, g: LimbGeometry,
                opts: IkOptions, scale: np.ndarray) -> IkSolution:
    theta = start.copy()
    lam = opts.damping
    end_axis, screws = _end_axis(theta, g)
    residual = (end_axis - target6) * scale
    cost = float(residual @ residual)
    iterations = 0
    converged = math.sqrt(cost) <= opts.residual_tol
    while not converged and iterations < opts.max_iterations:
        iterations += 1
        jac = _residual_jacobian(screws) * scale[:, None]
        grad = jac.T @ residual
        normal = jac.T @ jac
        accepted = False
        while True:
            try:
                step = np.linalg.solve(normal + lam * np.eye(6), -grad)
            except np.linalg.LinAlgError:
                step = None
            if step is not None:
                trial = theta + step
                end_trial, screws_trial = _end_axis(trial, g)
                residual_trial = (end_trial - target6) * scale
                cost_trial = float(residual_trial @ residual_trial)
                if cost_trial < cost:
                    theta = trial
                    residual = residual_trial
                    screws = screws_trial
                    cost = cost_trial
                    lam = max(lam / 3.0, _DAMPING_FLOOR)
                    accepted = True
                    break
            if lam >= _DAMPING_CAP:
                break
            lam = min(lam * 10.0, _DAMPING_CAP)
        converged = math.sqrt(cost) <= opts.residual_tol
        if not accepted:
            break
    return IkSolution(angles=wrap_angle(theta), residual_norm=math.sqrt(cost),
                      iterations=iterations, converged=converged)


def _start_points(opts: IkOptions) -> list[np.ndarray]:
    if opts.seed is not None:
        return [np.asarray(opts.seed, dtype=float)]
    sampler = qmc.Halton(d=6, scramble=False)
    points = sampler.random(opts.multistart_count)
    return [np.pi * (2.0 * p - 1.0) for p in points]


def solve_ik(target: TargetLine, g: LimbGeometry,
             opts: IkOptions | None = None) -> list[IkSolution]:
    """All distinct configurations found that realize the target line.

    Runs a Levenberg-damped Gauss-Newton iteration from the seed when one
    is given, otherwise from a fixed Halton point set, with the moment
    residuals scaled by 1/(l1+l2) so both halves of the residual weigh
    comparably.  Converged results are wrapped, deduplicated to 1e-6 rad
    and sorted by distance to the seed (or by residual without one).
    Unreachable targets yield an empty list rather than an error.

    Joint limits on the geometry, when present, discard solutions whose
    wrapped angles fall outside the allowed ranges.
    """
    opts = opts or IkOptions()
    target6 = target.line.as_array()
    scale = np.ones(6)
    scale[3:] = 1.0 / (g.l1 + g.l2)

    found: list[IkSolution] = []
    for start in _start_points(opts):
        sol = _solve_from(start, target6, g, opts, scale)
        if not sol.converged:
            continue
        if g.joint_limits is not None:
            limits = g.joint_limits[:6]
            if any(not (lo <= a <= hi) for a, (lo, hi) in zip(sol.angles, limits)):
                continue
        if any(np.max(np.abs(wrap_angle(sol.angles - prev.angles))) < _DEDUP_TOL
               for prev in found):
            continue
        found.append(sol)

    if opts.seed is not None:
        seed = wrap_angle(opts.seed)
        key = lambda s: (float(np.max(np.abs(wrap_angle(s.angles - seed)))),
                         tuple(s.angles))
    else:
        key = lambda s: (s.residual_norm, tuple(s.angles))
    found.sort(key=key)
    return found
