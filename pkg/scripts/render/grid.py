"""Pixel grids over complex windows and label rasters."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum
from typing import Optional

import numpy as np


class Label(IntEnum):
    INSIDE = 0
    OUTSIDE = 1
    BOUNDARY = 2
    UNKNOWN = 3


@dataclass(frozen=True)
class GridSpec:
    """A window of square pixels; pixel (0, 0) is top-left, centers are sampled."""

    center: complex
    width: float
    pixels_x: int
    pixels_y: int

    def __post_init__(self) -> None:
        if not self.width > 0:
            raise ValueError(f"width must be positive, got {self.width}")
        if self.pixels_x < 1 or self.pixels_y < 1:
            raise ValueError("pixel counts must be >= 1")

    @classmethod
    def square(cls, center: complex, width: float, pixels: int) -> "GridSpec":
        return cls(complex(center), float(width), pixels, pixels)

    @property
    def pixel(self) -> float:
        return self.width / self.pixels_x

    @property
    def height(self) -> float:
        return self.width * self.pixels_y / self.pixels_x

    @property
    def shape(self) -> tuple[int, int]:
        return (self.pixels_y, self.pixels_x)

    def xs(self) -> np.ndarray:
        offsets = np.arange(self.pixels_x) - (self.pixels_x - 1) / 2
        return self.center.real + offsets * self.pixel

    def y(self, row: int) -> float:
        return self.center.imag + ((self.pixels_y - 1) / 2 - row) * self.pixel

    def point(self, col: int, row: int) -> complex:
        return complex(self.xs()[col], self.y(row))

    def points(self) -> np.ndarray:
        """Complex pixel centers, shape (pixels_y, pixels_x)."""
        ys = np.array([self.y(j) for j in range(self.pixels_y)])
        return self.xs()[None, :] + 1j * ys[:, None]

    def locate(self, z: complex) -> Optional[tuple[int, int]]:
        """(col, row) of the pixel containing z, or None outside the window."""
        col = int(np.floor((z.real - self.center.real) / self.pixel + self.pixels_x / 2))
        row = int(np.floor(self.pixels_y / 2 - (z.imag - self.center.imag) / self.pixel))
        if 0 <= col < self.pixels_x and 0 <= row < self.pixels_y:
            return col, row
        return None


@dataclass
class Raster:
    grid: GridSpec
    labels: np.ndarray
    meta: dict = field(default_factory=dict)
    label_type: type[IntEnum] = Label

    def __post_init__(self) -> None:
        if self.labels.shape != self.grid.shape:
            raise ValueError(f"labels shape {self.labels.shape} does not match grid {self.grid.shape}")

    def count(self, label: int) -> int:
        return int(np.count_nonzero(self.labels == label))

    @property
    def unknown_fraction(self) -> float:
        return self.count(Label.UNKNOWN) / self.labels.size

    def summary(self) -> dict:
        counts = {label.name.lower(): self.count(label) for label in self.label_type}
        return {"pixels_x": self.grid.pixels_x, "pixels_y": self.grid.pixels_y, **counts}


def mark_boundary(labels: np.ndarray) -> np.ndarray:
    """Relabel Inside pixels with at least one Outside 4-neighbour as Boundary."""
    outside = labels == Label.OUTSIDE
    touching = np.zeros_like(outside)
    touching[1:, :] |= outside[:-1, :]
    touching[:-1, :] |= outside[1:, :]
    touching[:, 1:] |= outside[:, :-1]
    touching[:, :-1] |= outside[:, 1:]
    marked = labels.copy()
    marked[(labels == Label.INSIDE) & touching] = Label.BOUNDARY
    return marked
