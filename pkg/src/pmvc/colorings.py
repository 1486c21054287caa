"""Families of legal vertex colorings: monochromatic (GHZ), single marked
vertex (W), fixed number of marked vertices (Dicke), and explicit lists.

A family answers three questions without ever materializing the whole set:
how many colorings it has, whether a given coloring belongs, and a
deterministic (lexicographic) enumeration.
"""

from __future__ import annotations

import itertools
import json
import math
import random
from collections.abc import Iterator
from dataclasses import dataclass

from .graph import VertexColoring, count_color

DEFAULT_ENUM_CAP = 1_000_000

GHZ = "ghz"
W = "w"
DICKE = "dicke"
EXPLICIT = "explicit"


class EnumerationCapError(Exception):
    """Raised instead of silently materializing an infeasible coloring set."""


@dataclass(frozen=True)
class ColoringFamily:
    """One legal-coloring family.

    kind "ghz" uses ``d`` colors; "w" is two-color with exactly one vertex
    of color 1; "dicke" is two-color with exactly ``k`` vertices of color 1;
    "explicit" carries the list itself.
    """

    kind: str
    d: int = 2
    k: int | None = None
    colorings: tuple[VertexColoring, ...] | None = None

    def __post_init__(self) -> None:
        if self.kind not in (GHZ, W, DICKE, EXPLICIT):
            raise ValueError(f"unknown coloring family kind: {self.kind!r}")
        if self.d < 1:
            raise ValueError("color count must be at least 1")
        if self.kind == W and self.d != 2:
            raise ValueError("the W family requires exactly 2 colors")
        if self.kind == DICKE:
            if self.d != 2:
                raise ValueError("the Dicke family requires exactly 2 colors")
            if self.k is None or self.k < 0:
                raise ValueError("the Dicke family needs k >= 0")
        if self.kind == EXPLICIT:
            if not self.colorings:
                raise ValueError("explicit family needs at least one coloring")
            lengths = {len(c) for c in self.colorings}
            if len(lengths) != 1:
                raise ValueError("explicit colorings must all have the same length")
            object.__setattr__(self, "colorings", tuple(tuple(c) for c in self.colorings))

    def describe(self, n: int) -> str:
        if self.kind == GHZ:
            return f"GHZ({n},{self.d})"
        if self.kind == W:
            return f"W({n})"
        if self.kind == DICKE:
            return f"Dicke({n},{self.k})"
        return f"Explicit({len(self.colorings or ())} colorings)"


def ghz(d: int = 2) -> ColoringFamily:
    return ColoringFamily(GHZ, d=d)


def w_state() -> ColoringFamily:
    return ColoringFamily(W, d=2)


def dicke(k: int) -> ColoringFamily:
    return ColoringFamily(DICKE, d=2, k=k)


def explicit(colorings: list[VertexColoring]) -> ColoringFamily:
    d = max((max(c) for c in colorings if c), default=1)
    return ColoringFamily(EXPLICIT, d=max(d, 1), colorings=tuple(tuple(c) for c in colorings))


def family_size(spec: ColoringFamily, n: int) -> int:
    """|C| without enumeration."""
    if spec.kind == GHZ:
        return spec.d
    if spec.kind == W:
        return n
    if spec.kind == DICKE:
        assert spec.k is not None
        return math.comb(n, spec.k) if 0 <= spec.k <= n else 0
    assert spec.colorings is not None
    return len(spec.colorings)


def membership(spec: ColoringFamily, coloring: VertexColoring) -> bool:
    """Does the coloring belong to the family?  Never enumerates."""
    n = len(coloring)
    if spec.kind == GHZ:
        return all(1 <= c <= spec.d for c in coloring) and len(set(coloring)) <= 1 and n > 0
    if spec.kind == W:
        return all(c in (1, 2) for c in coloring) and count_color(coloring, 1) == 1
    if spec.kind == DICKE:
        return all(c in (1, 2) for c in coloring) and count_color(coloring, 1) == spec.k
    assert spec.colorings is not None
    return tuple(coloring) in spec.colorings


def enumerate_colorings(
    spec: ColoringFamily,
    n: int,
    shuffle_seed: int | None = None,
    cap: int = DEFAULT_ENUM_CAP,
) -> Iterator[VertexColoring]:
    """Stream the family in lexicographic order (or a seeded shuffle).

    Raises EnumerationCapError when the family holds more than ``cap``
    colorings; shuffling materializes the whole family first.
    """
    size = family_size(spec, n)
    if size > cap:
        raise EnumerationCapError(
            f"{spec.describe(n)} has {size} colorings, above the cap of {cap}"
        )
    if shuffle_seed is not None:
        items = list(_enumerate_lex(spec, n))
        random.Random(shuffle_seed).shuffle(items)
        return iter(items)
    return _enumerate_lex(spec, n)


def _enumerate_lex(spec: ColoringFamily, n: int) -> Iterator[VertexColoring]:
    if spec.kind == GHZ:
        for color in range(1, spec.d + 1):
            yield (color,) * n
    elif spec.kind == W:
        for v in range(n):
            yield tuple(1 if i == v else 2 for i in range(n))
    elif spec.kind == DICKE:
        assert spec.k is not None
        if not 0 <= spec.k <= n:
            return
        for ones in itertools.combinations(range(n), spec.k):
            marked = set(ones)
            yield tuple(1 if i in marked else 2 for i in range(n))
    else:
        assert spec.colorings is not None
        yield from spec.colorings


def spec_to_json(spec: ColoringFamily) -> dict:
    obj: dict = {"kind": spec.kind}
    if spec.kind == GHZ:
        obj["d"] = spec.d
    elif spec.kind == DICKE:
        obj["k"] = spec.k
    elif spec.kind == EXPLICIT:
        obj["colorings"] = [list(c) for c in spec.colorings or ()]
    return obj


def spec_from_json(obj: dict) -> ColoringFamily:
    kind = obj["kind"]
    if kind == GHZ:
        return ghz(int(obj.get("d", 2)))
    if kind == W:
        return w_state()
    if kind == DICKE:
        return dicke(int(obj["k"]))
    if kind == EXPLICIT:
        return explicit([tuple(c) for c in obj["colorings"]])
    raise ValueError(f"unknown coloring family kind: {kind!r}")


def parse_spec(text: str) -> ColoringFamily:
    """Parse a CLI spec string: ``ghz``, ``ghz:3``, ``w``, ``dicke:2``,
    or a path to a JSON sidecar file."""
    text = text.strip()
    if text.endswith(".json"):
        with open(text, encoding="utf-8") as fh:
            obj = json.load(fh)
        if "spec" in obj:
            obj = obj["spec"]
        return spec_from_json(obj)
    head, _, arg = text.partition(":")
    head = head.lower()
    if head == GHZ:
        return ghz(int(arg) if arg else 2)
    if head == W:
        return w_state()
    if head == DICKE:
        if not arg:
            raise ValueError("dicke spec needs k, e.g. dicke:2")
        return dicke(int(arg))
    raise ValueError(f"cannot parse coloring spec {text!r}")
