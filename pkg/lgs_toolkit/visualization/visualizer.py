#!/usr/bin/env python3
"""
λ-graph system toolkit - level diagrams
"""

import logging
import os
from typing import Dict, Tuple

from PIL import Image, ImageDraw, ImageFont

from ..core.lgs import LambdaGraphSystem

log = logging.getLogger(__name__)

EDGE_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf")


class Visualizer:
    """Draws a λ-graph system level by level, top level first."""

    def __init__(self, output_dir: str, max_vertices: int = 48):
        self.output_dir = output_dir
        self.max_vertices = max_vertices
        os.makedirs(output_dir, exist_ok=True)
        try:
            self.font = ImageFont.truetype("/usr/share/fonts/truetype/dejavu/DejaVuSans.ttf", 12)
            self.font_small = ImageFont.truetype("/usr/share/fonts/truetype/dejavu/DejaVuSans.ttf", 10)
        except OSError:
            self.font = ImageFont.load_default()
            self.font_small = ImageFont.load_default()

    def _positions(self, system: LambdaGraphSystem, width: int, row_height: int,
                   margin: int) -> Dict[Tuple[int, int], Tuple[int, int]]:
        positions = {}
        top = system.top_level
        for n in range(top + 1):
            count = system.vertex_count(n)
            if count > self.max_vertices:
                continue
            y = margin + (top - n) * row_height
            step = (width - 2 * margin) / max(count, 1)
            for v in range(count):
                positions[(n, v)] = (int(margin + step * (v + 0.5)), y)
        return positions

    def _dashed_line(self, draw, start, end, color, dash: int = 4):
        (x0, y0), (x1, y1) = start, end
        length = max(abs(x1 - x0), abs(y1 - y0), 1)
        pieces = max(length // dash, 1)
        for i in range(0, pieces, 2):
            a, b = i / pieces, min((i + 1) / pieces, 1.0)
            draw.line([(x0 + (x1 - x0) * a, y0 + (y1 - y0) * a),
                       (x0 + (x1 - x0) * b, y0 + (y1 - y0) * b)], fill=color, width=1)

    def render(self, system: LambdaGraphSystem) -> Image.Image:
        top = system.top_level
        widest = max(min(c, self.max_vertices) for c in system.counts())
        margin, row_height, radius = 40, 90, 6
        width = max(480, widest * 28 + 2 * margin)
        height = top * row_height + 2 * margin
        img = Image.new("RGB", (width, height), "white")
        draw = ImageDraw.Draw(img)
        positions = self._positions(system, width, row_height, margin)
        colors = {s: EDGE_COLORS[i % len(EDGE_COLORS)] for i, s in enumerate(system.alphabet)}

        for n in range(1, top + 1):
            for v, image in enumerate(system.iota[n]):
                if (n, v) in positions and (n - 1, image) in positions:
                    self._dashed_line(draw, positions[(n, v)], positions[(n - 1, image)], "#b0b0b0")
            for source, target, label in system.edges[n]:
                if (n, source) in positions and (n - 1, target) in positions:
                    draw.line([positions[(n, source)], positions[(n - 1, target)]], fill=colors[label], width=1)

        for n in range(top + 1):
            y = margin + (top - n) * row_height
            draw.text((4, y - 6), f"V{n}", fill="black", font=self.font)
            count = system.vertex_count(n)
            if count > self.max_vertices:
                draw.text((margin, y - 6), f"{count} vertices (not drawn)", fill="gray", font=self.font)
                continue
            for v in range(count):
                x, yy = positions[(n, v)]
                draw.ellipse([x - radius, yy - radius, x + radius, yy + radius], fill="white", outline="black")

        legend_x = width - margin - 10 * len(colors)
        for i, (symbol, color) in enumerate(colors.items()):
            draw.text((legend_x, 4 + 12 * i), system.alphabet.name(symbol), fill=color, font=self.font_small)
        return img

    def visualize_system(self, system: LambdaGraphSystem, filename: str = "") -> str:
        """Render a system to PNG and return the path."""
        path = os.path.join(self.output_dir, filename or f"{_slug(system.name)}_levels.png")
        self.render(system).save(path)
        log.info("level diagram saved: %s", path)
        return path


def _slug(name: str) -> str:
    keep = [c if c.isalnum() else "_" for c in name or "lgs"]
    return "".join(keep).strip("_") or "lgs"
