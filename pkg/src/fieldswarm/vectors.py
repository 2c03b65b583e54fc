"""3D vectors used for positions (metres) and velocities (m/s)."""

from __future__ import annotations

import math


class Vec3:
    """Immutable-by-convention 3D vector with the usual arithmetic."""

    __slots__ = ("x", "y", "z")

    def __init__(self, x: float = 0.0, y: float = 0.0, z: float = 0.0):
        self.x = float(x)
        self.y = float(y)
        self.z = float(z)

    def __add__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: "Vec3") -> "Vec3":
        return Vec3(self.x - other.x, self.y - other.y, self.z - other.z)

    def __mul__(self, k: float) -> "Vec3":
        return Vec3(self.x * k, self.y * k, self.z * k)

    __rmul__ = __mul__

    def __truediv__(self, k: float) -> "Vec3":
        return Vec3(self.x / k, self.y / k, self.z / k)

    def __neg__(self) -> "Vec3":
        return Vec3(-self.x, -self.y, -self.z)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Vec3)
            and self.x == other.x
            and self.y == other.y
            and self.z == other.z
        )

    def __hash__(self) -> int:
        return hash((self.x, self.y, self.z))

    def __repr__(self) -> str:
        return f"Vec3({self.x!r}, {self.y!r}, {self.z!r})"

    def __iter__(self):
        yield self.x
        yield self.y
        yield self.z

    def norm(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)

    def normalize(self) -> "Vec3":
        """Unit vector in the same direction; the zero vector maps to itself."""
        n = self.norm()
        if n == 0.0:
            return ZERO
        return Vec3(self.x / n, self.y / n, self.z / n)

    def distance_to(self, other: "Vec3") -> float:
        dx = self.x - other.x
        dy = self.y - other.y
        dz = self.z - other.z
        return math.sqrt(dx * dx + dy * dy + dz * dz)

    def clamp(self, max_norm: float) -> "Vec3":
        """Rescale onto the max_norm ball if the norm exceeds it."""
        n = self.norm()
        if n <= max_norm or n == 0.0:
            return self
        k = max_norm / n
        return Vec3(self.x * k, self.y * k, self.z * k)

    def is_finite(self) -> bool:
        return math.isfinite(self.x) and math.isfinite(self.y) and math.isfinite(self.z)

    @staticmethod
    def zero() -> "Vec3":
        return ZERO


ZERO = Vec3(0.0, 0.0, 0.0)

# Positions are plain vectors; the alias documents intent at call sites.
Position = Vec3


def rotate_z(v: Vec3, angle_rad: float) -> Vec3:
    """Rotate around the z axis (2D scenarios act in the xy plane)."""
    c = math.cos(angle_rad)
    s = math.sin(angle_rad)
    return Vec3(c * v.x - s * v.y, s * v.x + c * v.y, v.z)
