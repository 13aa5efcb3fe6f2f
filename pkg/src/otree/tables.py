"""Regenerate the reference tables of products, coproducts and antipodes.

Rows are produced in canonical order: by total order, then by the order
of the left operand, then by the canonical forest order of each operand.
"""

from __future__ import annotations

from .forest import forest_key, forests_up_to, order, print_forest
from .grafting import gl_product, graft
from .hopf import antipode_N, coproduct_N
from .lincomb import (
    LinComb,
    format_lincomb,
    format_tensor,
    lincomb_to_json,
    shuffle,
    tensor_to_json,
)

TABLES = ("graft", "shuffle", "coproduct", "antipode")
TITLES = {
    "graft": "left grafting and GL product",
    "shuffle": "shuffle product",
    "coproduct": "coproduct",
    "antipode": "antipode",
}


def _one(f) -> LinComb:
    return LinComb._raw({f: 1})


def _pair_key(p):
    a, b = p
    return (order(a) + order(b), order(a), forest_key(a), order(b), forest_key(b))


def _pairs(max_order: int, unordered: bool) -> list:
    fs = [f for f in forests_up_to(max_order) if f]
    out = [
        (a, b)
        for a in fs
        for b in fs
        if order(a) + order(b) <= max_order and (not unordered or _pair_key((a, b)) <= _pair_key((b, a)))
    ]
    return sorted(out, key=_pair_key)


def rows(name: str, max_order: int = 4) -> list[dict]:
    """Table rows as dicts of LinComb/TensorComb values keyed by column name."""
    if name == "graft":
        return [
            {"left": a, "right": b, "graft": graft(_one(a), _one(b)), "gl": gl_product(_one(a), _one(b))}
            for a, b in _pairs(max_order, unordered=False)
        ]
    if name == "shuffle":
        return [
            {"left": a, "right": b, "shuffle": shuffle(_one(a), _one(b))}
            for a, b in _pairs(max_order, unordered=True)
        ]
    if name == "coproduct":
        return [{"forest": f, "coproduct": coproduct_N(_one(f))} for f in forests_up_to(max_order)]
    if name == "antipode":
        return [{"forest": f, "antipode": antipode_N(_one(f))} for f in forests_up_to(max_order)]
    raise ValueError(f"unknown table {name!r}; expected one of {TABLES}")


def _cell(x, style: str) -> str:
    if isinstance(x, tuple):
        if style == "latex":
            return print_forest(x, "latex")
        return print_forest(x) or "𝟙"
    if isinstance(x, LinComb):
        return format_lincomb(x, style)
    return format_tensor(x, style)


def _json_cell(x):
    if isinstance(x, tuple):
        return print_forest(x)
    if isinstance(x, LinComb):
        return lincomb_to_json(x)
    return tensor_to_json(x)


def render_text(names=TABLES, max_order: int = 4, style: str = "text") -> str:
    sep = " & " if style == "latex" else " | "
    end = r" \\" if style == "latex" else ""
    blocks = []
    for name in names:
        table = rows(name, max_order)
        lines = [f"# {TITLES[name]} (order <= {max_order})"]
        if table:
            lines.append(sep.join(table[0]) + end)
        for row in table:
            lines.append(sep.join(_cell(v, style) for v in row.values()) + end)
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


def render_json(names=TABLES, max_order: int = 4) -> dict:
    return {
        name: [{k: _json_cell(v) for k, v in row.items()} for row in rows(name, max_order)]
        for name in names
    }
