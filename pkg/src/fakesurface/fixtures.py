"""Reference surfaces used throughout the tests and the CLI examples."""
from .surface import FakeSurface

# vertices A..E -> 1..5
_A, _B, _C, _D, _E = 1, 2, 3, 4, 5

PENTAGON = FakeSurface.build(
    "pentagon", 5,
    {9: (_B, _A), 10: (_C, _B), 4: (_C, _D), 1: (_E, _D), 5: (_A, _E),
     2: (_A, _D), 3: (_B, _D), 8: (_C, _A), 7: (_C, _E), 6: (_B, _E)},
    [(-8, 4, -3, 6, 1, -2), (-9, 6, -7, 10, 3, -2), (-8, 7, 1, -3, 9),
     (-10, 4, -1, -5, -9), (-7, 4, -2, 5), (-8, 10, 6, -5)],
)

# the three complexity-one surfaces with H1 = 0, H2 = Z (two loops at one vertex)
_LOOPS = {1: (1, 1), 2: (1, 1)}
SURFACE_1 = FakeSurface.build("surface1", 1, _LOOPS, [(-2, 1, 1), (1, 2), (2,)])
SURFACE_2 = FakeSurface.build("surface2", 1, _LOOPS, [(-2, -1, 2, 1), (2,), (1,)])
SURFACE_3 = FakeSurface.build("surface3", 1, _LOOPS, [(-2, 1, -2, -1), (2,), (1,)])

T1 = (1, 4, 10, 9)
T2 = (1, 2, 8, 10)

ALL = {s.name: s for s in (PENTAGON, SURFACE_1, SURFACE_2, SURFACE_3)}


def data_path(filename):
    """Filesystem path of a bundled data file (surfaces ``*.fs``, catalogs ``*.cat``)."""
    from importlib.resources import files
    return files("fakesurface") / "data" / filename


def load(name):
    """Parse a bundled surface by name, e.g. ``load("case3")``."""
    from .surface import parse_surface
    return parse_surface(data_path(name + ".fs").read_text())
