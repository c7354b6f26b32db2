#!/usr/bin/env python3
"""Regenerate the builtin Cayley-table data files under src/periodica/data/.

The files are committed; this script exists so they stay auditable and
reproducible.  Run from the repository root:

    PYTHONPATH=src python tools/make_builtin_tables.py
"""

from pathlib import Path

from periodica.fg_groups import direct_sum_cyclic
from periodica.group_core import FiniteGroup, group_from_permutations

DATA = Path(__file__).resolve().parent.parent / "src" / "periodica" / "data"

# unit-quaternion multiplication on the axes 1, i, j, k: (sign, axis)
_AXIS = {
    ("1", "1"): (1, "1"),
    ("1", "i"): (1, "i"),
    ("1", "j"): (1, "j"),
    ("1", "k"): (1, "k"),
    ("i", "1"): (1, "i"),
    ("j", "1"): (1, "j"),
    ("k", "1"): (1, "k"),
    ("i", "i"): (-1, "1"),
    ("j", "j"): (-1, "1"),
    ("k", "k"): (-1, "1"),
    ("i", "j"): (1, "k"),
    ("j", "k"): (1, "i"),
    ("k", "i"): (1, "j"),
    ("j", "i"): (-1, "k"),
    ("k", "j"): (-1, "i"),
    ("i", "k"): (-1, "j"),
}


def quaternion_group() -> FiniteGroup:
    elems = [(1, "1"), (-1, "1"), (1, "i"), (-1, "i"), (1, "j"), (-1, "j"), (1, "k"), (-1, "k")]
    idx = {e: n for n, e in enumerate(elems)}

    def mul(a, b):
        s, u = _AXIS[(a[1], b[1])]
        return (a[0] * b[0] * s, u)

    table = tuple(tuple(idx[mul(a, b)] for b in elems) for a in elems)
    inv = tuple(row.index(0) for row in table)
    return FiniteGroup(order=8, mul=table, inv=inv, label="Q8")


def cyclic(n):
    return direct_sum_cyclic([n], label=f"Z{n}")


def write(name: str, group: FiniteGroup) -> None:
    lines = [str(group.order)]
    lines += [" ".join(map(str, row)) for row in group.mul]
    path = DATA / f"{name}.cayley"
    path.write_text("\n".join(lines) + "\n")
    print(f"wrote {path} (order {group.order})")


def main():
    DATA.mkdir(parents=True, exist_ok=True)
    for n in range(2, 13):
        write(f"Z{n}", cyclic(n))
    write("Z2xZ2", direct_sum_cyclic([2, 2], label="Z2xZ2"))
    write("Z2xZ4", direct_sum_cyclic([2, 4], label="Z2xZ4"))
    write("Z3xZ3", direct_sum_cyclic([3, 3], label="Z3xZ3"))
    write("S3", group_from_permutations([(1, 2, 0), (1, 0, 2)], label="S3"))
    write("D4", group_from_permutations([(1, 2, 3, 0), (3, 2, 1, 0)], label="D4"))
    write("Q8", quaternion_group())
    write("S4", group_from_permutations([(1, 2, 3, 0), (1, 0, 2, 3)], label="S4"))


if __name__ == "__main__":
    main()
