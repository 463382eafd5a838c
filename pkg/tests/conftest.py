import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from operahedra.trees import Nesting, PlanarTree  # noqa: E402


def tree(obj) -> PlanarTree:
    return PlanarTree.from_nested(obj)


def nst(t, *nests) -> Nesting:
    return Nesting.of(t, nests)
