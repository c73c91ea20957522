#!/usr/bin/env python3
"""Regenerates the shipped substitution rule files in data/rules."""

import cmath
import math
import pathlib
import sys

OUT = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else pathlib.Path(__file__).resolve().parent.parent / "data" / "rules")


def g(v):
    v = 0.0 if abs(v) < 1e-15 else v
    return f"{v:.17g}"


def rotation_child(name, t, angle):
    c, s = math.cos(angle), math.sin(angle)
    return f"  child {name} {g(c)} {g(-s)} {g(s)} {g(c)} {g(t.real)} {g(t.imag)}"


def lancon_billard():
    z = cmath.exp(1j * math.pi / 5)
    mu = 1 + z  # 1 + zeta_10
    thick = [0, 1, 1 + z**2, z**2]
    thin = [0, 1, 1 + z, z]
    # (child, translation, rotation exponent r: rotation by zeta^r)
    prod_a = [("A", 0, 0), ("B", 1 + z + z**2, 6), ("A", z**2 + z**3, 8), ("A", 1 + z + z**2 + z**3, 6)]
    prod_b = [("B", 0, 0), ("B", z + z**2, 6), ("A", z, 0)]
    lines = [
        "# Lancon-Billard rhombus inflation: thick (A) and thin (B) rhombi with unit edges.",
        "# Inflation z -> (1 + zeta_10) z; children are unit rhombi inside the inflated parent.",
        "name lancon_billard",
        f"multiplier {g(abs(mu))}",
        f"rotation {g(cmath.phase(mu))}",
        "",
        "prototile A",
        *[f"  vertex {g(p.real)} {g(p.imag)}" for p in map(complex, thick)],
        "end",
        "",
        "prototile B",
        *[f"  vertex {g(p.real)} {g(p.imag)}" for p in map(complex, thin)],
        "end",
        "",
        "production A",
        *[rotation_child(n, complex(t), r * math.pi / 5) for n, t, r in prod_a],
        "end",
        "",
        "production B",
        *[rotation_child(n, complex(t), r * math.pi / 5) for n, t, r in prod_b],
        "end",
        "",
        "# five thick rhombi around the origin",
        "seed",
        *[rotation_child("A", 0j, 2 * j * math.pi / 5).replace("child", "tile") for j in range(5)],
        "end",
    ]
    return "\n".join(lines) + "\n"


def chair():
    lines = [
        "# Chair tiling: L-shaped tromino of three unit squares, inflation factor 2.",
        "name chair",
        "multiplier 2",
        "rotation 0",
        "",
        "prototile L",
        "  vertex 0 0",
        "  vertex 2 0",
        "  vertex 2 1",
        "  vertex 1 1",
        "  vertex 1 2",
        "  vertex 0 2",
        "end",
        "",
        "production L",
        "  child L 1 0 0 1 0 0",
        "  child L 1 0 0 1 1 1",
        "  child L 0 -1 1 0 4 0",
        "  child L 0 1 -1 0 0 4",
        "end",
        "",
        "# four chairs meeting at the origin",
        "seed",
        "  tile L 1 0 0 1 0 0",
        "  tile L 0 -1 1 0 0 0",
        "  tile L -1 0 0 -1 0 0",
        "  tile L 0 1 -1 0 0 0",
        "end",
    ]
    return "\n".join(lines) + "\n"


if __name__ == "__main__":
    OUT.mkdir(parents=True, exist_ok=True)
    (OUT / "lancon_billard.rule").write_text(lancon_billard())
    (OUT / "chair.rule").write_text(chair())
