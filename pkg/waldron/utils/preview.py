"""
Static PNG scatter of generated nodes
"""

import logging
from pathlib import Path
from typing import Union

import numpy as np
from PIL import Image, ImageDraw

logger = logging.getLogger(__name__)

BACKGROUND = (255, 255, 255)
OUTLINE = (120, 120, 120)
NODE = (200, 30, 45)


def _canvas_map(points: np.ndarray, size: int, margin: int):
    lo = points.min(axis=0)
    span = float(np.max(points.max(axis=0) - lo)) or 1.0
    scale = (size - 2 * margin) / span

    def to_pixels(p):
        p = np.atleast_2d(p)
        px = margin + (p[:, 0] - lo[0]) * scale
        py = size - margin - (p[:, 1] - lo[1]) * scale
        return list(zip(px.tolist(), py.tolist()))

    return to_pixels


def render_scatter(nodes, path: Union[str, Path], size: int = 600, radius: int = 3) -> Path:
    """
    Draw the triangle outline and node dots of a 2D family (3D: first two coordinates)

    Returns:
        Path of the written PNG
    """
    points = np.asarray(nodes.cartesian)[:, :2]
    outline = np.asarray(nodes.simplex.vertices)[:, :2]
    to_pixels = _canvas_map(np.vstack([points, outline]), size, margin=radius + 10)

    image = Image.new('RGB', (size, size), BACKGROUND)
    draw = ImageDraw.Draw(image)
    corners = to_pixels(outline)
    for i in range(len(corners)):
        for j in range(i + 1, len(corners)):
            draw.line([corners[i], corners[j]], fill=OUTLINE, width=1)
    for x, y in to_pixels(points):
        draw.ellipse([x - radius, y - radius, x + radius, y + radius], fill=NODE)

    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    image.save(path, format='PNG')
    logger.info(f"🖼️ Preview written to {path} ({len(points)} nodes)")
    return path
