"""Regenerate the bundled data set under src/fusionseq/data/.

Run from the repository root:

    python3 scripts/generate_data.py

Output is byte-stable, so rerunning on an unchanged library is a
no-op; diffs indicate a change in the canonical constructions.
"""

from __future__ import annotations

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from fusionseq import io as fio  # noqa: E402
from fusionseq.characters import rep_g_fusion, vec_g_ring  # noqa: E402
from fusionseq.groups import group_catalog  # noqa: E402
from fusionseq.modules import one_object_module, regular_module  # noqa: E402
from fusionseq.rings import (  # noqa: E402
    fibonacci_ring,
    ising_ring,
    trivial_ring,
    validate_ring,
)
from fusionseq.modules import validate_module  # noqa: E402
from fusionseq.groups import validate_group  # noqa: E402

DATA = ROOT / "src" / "fusionseq" / "data"


def write(obj: dict, rel: str):
    path = DATA / rel
    path.parent.mkdir(parents=True, exist_ok=True)
    fio.save_obj(obj, str(path))
    print(f"wrote {path.relative_to(ROOT)}")


def main():
    catalog = group_catalog()
    for name, g in sorted(catalog.items()):
        validate_group(g).raise_if_invalid()
        write(fio.group_to_obj(g), f"groups/{name}.json")

    rings = {
        "trivial": trivial_ring(),
        "fib": fibonacci_ring(),
        "ising": ising_ring(),
        "repz2": rep_g_fusion(catalog["z2"]).ring,
        "repz3": rep_g_fusion(catalog["z3"]).ring,
        "reps3": rep_g_fusion(catalog["s3"]).ring,
        "repq8": rep_g_fusion(catalog["q8"]).ring,
        "vecz2": vec_g_ring(catalog["z2"]),
        "vecz3": vec_g_ring(catalog["z3"]),
        "vecs3": vec_g_ring(catalog["s3"]),
    }
    for name, ring in sorted(rings.items()):
        validate_ring(ring).raise_if_invalid()
        write(fio.ring_to_obj(ring), f"rings/{name}.json")

    modules = {
        "fib_regular": (regular_module(rings["fib"]), "fib"),
        "ising_regular": (regular_module(rings["ising"]), "ising"),
        "reps3_vec": (one_object_module(rings["reps3"], (1, 1, 2),
                                        labels=("vec",)), "reps3"),
        "repz2_vec": (one_object_module(rings["repz2"], (1, 1),
                                        labels=("vec",)), "repz2"),
        "vecz3_regular": (regular_module(rings["vecz3"]), "vecz3"),
    }
    for name, (module, ring_name) in sorted(modules.items()):
        validate_module(module).raise_if_invalid()
        write(fio.module_to_obj(module, ring_ref=f"../rings/{ring_name}.json"),
              f"modules/{name}.json")


if __name__ == "__main__":
    main()
