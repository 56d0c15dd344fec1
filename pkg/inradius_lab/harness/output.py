"""Result writers: versioned CSV, JSON and PPM heatmaps."""

import csv
import json
import logging
import os
from typing import Any, Iterable, Optional, Sequence, Union

import numpy as np
from PIL import Image
from pydantic import BaseModel

from inradius_lab.errors import ArgumentError
from inradius_lab.fields.eigenfield import Eigenfunction
from inradius_lab.geometry.grid import Grid
from inradius_lab.harness.verify import SweepRecord

logger = logging.getLogger(__name__)

CSV_VERSION = "# inradius-lab v1"
CSV_COLUMNS = (
    "re_lambda", "im_lambda", "r_lambda", "mass_ratio", "certified", "measured",
    "constructive", "Q", "boundary_fraction", "h", "status",
)
CIRCLE_RGB = (255, 0, 0)

PathLike = Union[str, os.PathLike]


def _num(value: Optional[float]) -> str:
    return "nan" if value is None else repr(float(value))


def csv_row(record: SweepRecord) -> list:
    lam = complex(record.lam)
    return [
        repr(lam.real), repr(lam.imag), _num(record.r_lambda), _num(record.mass_ratio),
        _num(record.certified_inradius), _num(record.measured_inradius),
        _num(record.constructive_inradius), _num(record.Q),
        _num(record.boundary_mass_fraction), _num(record.h), record.status,
    ]


def write_csv(records: Iterable[SweepRecord], path: PathLike) -> None:
    """One row per record in the given order, under the version line and header."""
    with open(path, "w", newline="") as f:
        f.write(CSV_VERSION + "\n")
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for record in records:
            writer.writerow(csv_row(record))
    logger.info("wrote %s", path)


def to_jsonable(value: Any) -> Any:
    """Pydantic models, complex numbers and numpy values as plain JSON data.

    Complex numbers become ``[re, im]``.
    """
    if isinstance(value, BaseModel):
        return {k: to_jsonable(v) for k, v in value.model_dump(by_alias=True).items()}
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, np.generic):
        return value.item()
    return value


def write_json(obj: Any, path: PathLike) -> None:
    with open(path, "w") as f:
        json.dump(to_jsonable(obj), f, indent=2)
    logger.info("wrote %s", path)


def heatmap(ef: Eigenfunction, grid: Grid, circle: Optional[Sequence[float]] = None) -> np.ndarray:
    """RGB image of |psi| over the full lattice, row 0 at the top (largest x2).

    Grey levels are round(255 |psi| / max |psi|). ``circle = (c1, c2, R)`` draws pure red
    on every pixel whose centre p has | |p - c| - R | <= h sqrt(2) / 2.
    """
    if grid.dim != 2:
        raise ArgumentError(f"heatmaps need d = 2, got d = {grid.dim}")
    centers = grid.full_centers()
    modulus = np.abs(ef.evaluate(centers.reshape(-1, 2))).reshape(grid.shape)
    peak = modulus.max()
    scaled = modulus / peak if peak > 0 else modulus
    grey = np.round(255.0 * scaled).astype(np.uint8)
    rgb = np.repeat(grey[:, :, None], 3, axis=2)
    if circle is not None:
        c1, c2, radius = circle
        dist = np.hypot(centers[..., 0] - c1, centers[..., 1] - c2)
        ring = np.abs(dist - radius) <= grid.spacing * np.sqrt(2.0) / 2.0
        rgb[ring] = CIRCLE_RGB
    # lattice axis 0 is x1 (columns), axis 1 is x2 (rows, flipped so x2 grows upwards)
    return np.ascontiguousarray(np.flipud(np.transpose(rgb, (1, 0, 2))))


def write_ppm(
    ef: Eigenfunction, grid: Grid, path: PathLike, circle: Optional[Sequence[float]] = None
) -> None:
    """Write the heatmap as a binary PPM (P6)."""
    Image.fromarray(heatmap(ef, grid, circle), "RGB").save(path, format="PPM")
    logger.info("wrote %s", path)
