"""UAV flyover geometry, antenna pattern, pitch/tilt and propulsion power.

Models a rotary-wing UAV flying a straight, constant-height line over a
ground target: per-point geometry (elevation angle to the target), the
parabolic dB antenna pattern of the UAV-mounted panel, the speed-dependent
airframe pitch (which tilts the antenna boresight), the rotary-wing
propulsion power curve, and the closed-form count of trajectory points kept
inside the antenna's first-null beamwidth.
"""

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "AntennaConfig",
    "AirframeConfig",
    "TrajectoryPoint",
    "build_trajectory",
    "antenna_gain",
    "pitch_angle",
    "propulsion_power",
    "los_point_count",
]


@dataclass
class AntennaConfig:
    """Directional antenna pattern parameters (parabolic in dB)."""

    g_rmax_db: float = 10.0       # boresight gain [dB]
    gamma_3db_deg: float = 65.0   # horizontal 3 dB beamwidth parameter [deg]
    theta_3db_deg: float = 65.0   # vertical 3 dB beamwidth parameter [deg]
    fnb_deg: float | None = None  # first-null beamwidth [deg]; None = 2.5 * theta_3db

    def __post_init__(self):
        if self.fnb_deg is None:
            self.fnb_deg = 2.5 * self.theta_3db_deg


@dataclass
class AirframeConfig:
    """Rotary-wing airframe constants (typical quadrotor values)."""

    mass_kg: float = 4.0
    gravity_mps2: float = 9.81
    air_density_kgpm3: float = 1.225
    drag_coefficient: float = 0.5       # fuselage drag coefficient
    swept_area_m2: float = 0.2          # fuselage frontal area [m^2]
    blade_profile_power_w: float = 80.0   # hover blade profile power [W]
    induced_power_w: float = 88.6         # hover induced power [W]
    tip_speed_mps: float = 120.0          # rotor blade tip speed [m/s]
    induced_velocity_mps: float = 4.03    # mean hover induced velocity [m/s]
    fuselage_drag_ratio: float = 0.6
    rotor_solidity: float = 0.05
    rotor_disc_area_m2: float = 0.503


@dataclass
class TrajectoryPoint:
    """One sampled position on the flyover line."""

    index: int
    position: np.ndarray          # [x, y, z] in metres, target at origin frame
    height_m: float
    horizontal_offset_m: float    # signed offset from the overhead point
    speed_mps: float
    elevation_deg: float          # elevation angle of the target seen from the UAV

    @property
    def distance_m(self) -> float:
        """True 3-D distance to the target."""
        return math.hypot(self.horizontal_offset_m, self.height_m)


def build_trajectory(
    height_m: float,
    dp_m: float,
    count: int,
    speed_mps: float,
    target=(0.0, 0.0, 0.0),
) -> list[TrajectoryPoint]:
    """Sample a straight constant-height pass over ``target``.

    Points are spaced ``dp_m`` apart along the x axis and centred so that the
    overhead point (minimum distance, elevation 90 degrees) has index
    ``(count - 1) // 2``.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if dp_m <= 0 or height_m <= 0:
        raise ValueError("dp_m and height_m must be positive")
    target = np.asarray(target, dtype=float)
    p0 = (count - 1) // 2
    points = []
    for i in range(count):
        offset = (i - p0) * dp_m
        position = target + np.array([offset, 0.0, height_m])
        elevation = math.degrees(math.atan2(height_m, abs(offset)))
        points.append(
            TrajectoryPoint(
                index=i,
                position=position,
                height_m=height_m,
                horizontal_offset_m=offset,
                speed_mps=speed_mps,
                elevation_deg=elevation,
            )
        )
    return points


def antenna_gain(
    gamma_deg: float, theta_deg: float, tilt_deg: float, cfg: AntennaConfig
) -> float:
    """Directional antenna gain in dB (parabolic pattern, no floor clamp).

    ``G = -12 (gamma / gamma_3dB)^2 - 12 ((theta - tilt) / theta_3dB)^2 + G_max``

    ``gamma`` is the horizontal offset angle and ``theta`` the vertical angle
    of the path; tilting the airframe by ``tilt_deg`` moves the vertical
    boresight.
    """
    horizontal = -12.0 * (gamma_deg / cfg.gamma_3db_deg) ** 2
    vertical = -12.0 * ((theta_deg - tilt_deg) / cfg.theta_3db_deg) ** 2
    return horizontal + vertical + cfg.g_rmax_db


def pitch_angle(
    v_x: float, cfg: AirframeConfig, consistent_v_squared: bool = True
) -> tuple[float, float]:
    """Forward-flight pitch angles ``(theta_xi, theta_v)`` in degrees.

    Balances fuselage drag against thrust: with
    ``x = m g / (rho C_D A v^2)`` the pitch-from-vertical angle is
    ``theta_xi = arccos(sqrt(x^2 + 1) - x)`` and the antenna tilt is
    ``theta_v = 90 deg - theta_xi``.  Hover (``v_x = 0``) gives no tilt and
    the tilt grows monotonically with speed.

    ``consistent_v_squared=False`` evaluates the drag denominator of the
    subtracted term with ``v`` instead of ``v^2``.  That variant is
    dimensionally inconsistent and leaves the arccos argument outside the
    usable range for most speeds, where it is clipped into ``[0, 1]``; it
    exists only for comparison and is not used by the simulator.
    """
    if v_x < 0:
        raise ValueError("v_x must be >= 0")
    if v_x == 0.0:
        return 90.0, 0.0
    drag = cfg.air_density_kgpm3 * cfg.drag_coefficient * cfg.swept_area_m2
    weight = cfg.mass_kg * cfg.gravity_mps2
    x = weight / (drag * v_x**2)
    if consistent_v_squared:
        # sqrt(x^2 + 1) - x, written to avoid cancellation for large x
        arg = 1.0 / (math.sqrt(x * x + 1.0) + x)
    else:
        arg = math.sqrt(x * x + 1.0) - weight / (drag * v_x)
        arg = min(1.0, max(0.0, arg))
    theta_xi = math.degrees(math.acos(arg))
    return theta_xi, 90.0 - theta_xi


def propulsion_power(v: float, cfg: AirframeConfig) -> float:
    """Rotary-wing propulsion power in watts at horizontal speed ``v``.

    Blade-profile plus parasite power grows with speed while the induced
    power decays, giving the usual U-shaped curve with ``W0 + Wi`` at hover
    and a ``v^3`` parasite regime at high speed.
    """
    if v < 0:
        raise ValueError("v must be >= 0")
    w0 = cfg.blade_profile_power_w
    wi = cfg.induced_power_w
    profile = w0 * (
        1.0
        + 3.0 * v**2 / cfg.tip_speed_mps**2
        + cfg.fuselage_drag_ratio
        * cfg.air_density_kgpm3
        * cfg.rotor_solidity
        * cfg.rotor_disc_area_m2
        * v**3
        / (2.0 * w0)
    )
    # (sqrt(1 + a^2) - a)^(1/2) with a = v^2 / (2 v0^2), cancellation-free
    a = v**2 / (2.0 * cfg.induced_velocity_mps**2)
    induced = wi * math.sqrt(1.0 / (math.sqrt(1.0 + a * a) + a))
    return profile + induced


def los_point_count(
    height_m: float, dp_m: float, fnb_deg: float, tilt_deg: float, p0: int = 0
) -> int:
    """Index of the last trajectory point inside the first-null beamwidth.

    A point at elevation ``theta`` is in-beam while the aperture angle
    ``180 - theta - tilt`` stays within ``fnb_deg``; walking outward from the
    overhead point ``p0`` in steps of ``dp_m`` this holds up to point

    ``N = floor(h / (dp * tan(180 - fnb - tilt)) + p0)``

    Only defined while ``180 - fnb - tilt`` lies strictly inside (0, 90)
    degrees; outside that window the beam edge never crosses the trajectory.
    """
    if height_m <= 0 or dp_m <= 0:
        raise ValueError("height_m and dp_m must be positive")
    beta_deg = 180.0 - fnb_deg - tilt_deg
    if not 0.0 < beta_deg < 90.0:
        raise ValueError(
            f"beam-edge angle 180 - fnb - tilt = {beta_deg:.3f} deg is outside "
            "(0, 90); the first-null crossing is undefined"
        )
    return math.floor(height_m / (dp_m * math.tan(math.radians(beta_deg))) + p0)
