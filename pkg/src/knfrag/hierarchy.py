"""DOT rendering of the expressiveness hierarchy between the ten fragments.

Solid edges point from a strictly more expressive fragment to a weaker one
(fresh letters allowed in translations); dashed edges carry the weak
(same-alphabet) relation.  The three Krom fragments are equally expressive
once fresh letters are allowed, so they share a cluster.
"""

from __future__ import annotations

__all__ = ["hierarchy_dot"]

_NODES = (
    ("Bool", "Bool"),
    ("Horn", "Horn"),
    ("Krom", "Krom"),
    ("core", "core"),
    ("HornBox", "Horn□"),
    ("HornDia", "Horn◇"),
    ("KromBox", "Krom□"),
    ("KromDia", "Krom◇"),
    ("coreBox", "core□"),
    ("coreDia", "core◇"),
)

_DASHED = (
    ("Bool", "Horn"),
    ("Bool", "Krom"),
    ("Horn", "core"),
    ("Krom", "core"),
    ("Krom", "KromBox"),
    ("Krom", "KromDia"),
    ("HornBox", "coreBox"),
    ("HornDia", "coreDia"),
)

_SOLID = (
    ("Horn", "HornBox"),
    ("Horn", "HornDia"),
    ("core", "coreBox"),
    ("core", "coreDia"),
    ("KromBox", "coreBox"),
    ("KromDia", "coreDia"),
)

_CLUSTER = ("Krom", "KromBox", "KromDia")


def hierarchy_dot() -> str:
    """The fragment hierarchy as a DOT digraph (fixed, byte-stable text)."""
    labels = dict(_NODES)
    lines = [
        "digraph fragment_hierarchy {",
        '  // solid edge: "is more expressive"',
        '  // dashed edge: "is weakly more expressive"',
        "  rankdir=TB;",
        "  node [shape=plaintext];",
        "  subgraph cluster_krom_equal {",
        '    label="≡";',
    ]
    for node in _CLUSTER:
        lines.append(f'    {node} [label="{labels[node]}"];')
    lines.append("  }")
    for node, label in _NODES:
        if node in _CLUSTER:
            continue
        lines.append(f'  {node} [label="{label}"];')
    for src, dst in _SOLID:
        lines.append(f"  {src} -> {dst} [style=solid];")
    for src, dst in _DASHED:
        lines.append(f"  {src} -> {dst} [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"
