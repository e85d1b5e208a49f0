"""SVG drawings of polygonal surfaces."""

from __future__ import annotations

import colorsys
import xml.etree.ElementTree as ET

import numpy as np

from .surface import TranslationSurface, vertex_cycles


def _palette(k: int) -> list:
    out = []
    for i in range(max(k, 1)):
        r, g, b = colorsys.hsv_to_rgb((i * 0.618034) % 1.0, 0.75, 0.85)
        out.append(f"#{int(r * 255):02x}{int(g * 255):02x}{int(b * 255):02x}")
    return out


def layout(s: TranslationSurface, gap: float = 0.3) -> list:
    """Polygons translated so they sit left to right on a common baseline."""
    placed, x = [], 0.0
    for poly in s.polygons:
        shifted = poly - [poly[:, 0].min() - x, poly[:, 1].min()]
        placed.append(shifted)
        x = shifted[:, 0].max() + gap
    return placed


def render_svg(s: TranslationSurface, scale: float = 100.0, tol: float | None = None) -> str:
    """Paired edges share a stroke color; corners of one cone class share a dot color."""
    placed = layout(s)
    pts = np.vstack(placed)
    width = float(pts[:, 0].max()) * scale + 40
    height = float(pts[:, 1].max()) * scale + 40

    def xy(pt):
        return 20 + pt[0] * scale, height - 20 - pt[1] * scale

    svg = ET.Element("svg", xmlns="http://www.w3.org/2000/svg", version="1.1",
                     width=f"{width:.1f}", height=f"{height:.1f}")
    pairs = s.glue_pairs()
    edge_colors = _palette(len(pairs))
    color_of = {}
    for c, (x, y) in zip(edge_colors, pairs):
        color_of[x] = color_of[y] = c
    for p, poly in enumerate(placed):
        ET.SubElement(svg, "polygon", points=" ".join(f"{a:.4f},{b:.4f}" for a, b in map(xy, poly)),
                      fill="#f4f4f4", stroke="none", **{"data-label": s.labels[p]})
        for e in range(len(poly)):
            (x1, y1), (x2, y2) = xy(poly[e]), xy(poly[(e + 1) % len(poly)])
            ET.SubElement(svg, "line", x1=f"{x1:.4f}", y1=f"{y1:.4f}", x2=f"{x2:.4f}", y2=f"{y2:.4f}",
                          stroke=color_of.get((p, e), "#000000"), **{"stroke-width": "2"})
        cx, cy = xy(poly.mean(axis=0))
        text = ET.SubElement(svg, "text", x=f"{cx:.4f}", y=f"{cy:.4f}", **{"font-size": "10",
                             "text-anchor": "middle"})
        text.text = s.labels[p]
    classes = vertex_cycles(s, tol)
    dot_colors = _palette(len(classes))
    for c, vc in zip(dot_colors, classes):
        for p, i in vc.corners:
            x, y = xy(placed[p][i])
            ET.SubElement(svg, "circle", cx=f"{x:.4f}", cy=f"{y:.4f}", r="3", fill=c)
    return ET.tostring(svg, encoding="unicode", xml_declaration=True)
