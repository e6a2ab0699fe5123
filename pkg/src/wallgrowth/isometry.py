"""Exact plane isometries and the 20 concrete wallpaper-group presentations.

An isometry acts on lattice coordinates as ``x -> M x + t`` with an integer
matrix ``M`` (det +-1) and a rational translation ``t``. Bases are chosen per
group so that every point-group matrix is integral; hexagonal groups use the
triangular-lattice basis.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Iterable, Sequence

from .tilings import TILING_DEGREE

Matrix = tuple[int, int, int, int]


@dataclass(frozen=True, slots=True)
class Isometry:
    m: Matrix
    t: tuple[Fraction, Fraction]

    def __post_init__(self):
        a, b, c, d = self.m
        if a * d - b * c not in (1, -1):
            raise ValueError(f"point part {self.m} is not unimodular")

    def __repr__(self) -> str:
        return f"Isometry({list(self.m)}, ({self.t[0]}, {self.t[1]}))"

    def __matmul__(self, other: Isometry) -> Isometry:
        return compose(self, other)

    def apply(self, x: Sequence) -> tuple[Fraction, Fraction]:
        a, b, c, d = self.m
        return (a * x[0] + b * x[1] + self.t[0], c * x[0] + d * x[1] + self.t[1])

    @property
    def det(self) -> int:
        a, b, c, d = self.m
        return a * d - b * c


IDENTITY = Isometry((1, 0, 0, 1), (Fraction(0), Fraction(0)))


def isometry(m: Iterable[int], t: Iterable = (0, 0)) -> Isometry:
    m = tuple(int(v) for v in m)
    t = tuple(Fraction(v) for v in t)
    return Isometry(m, t)


def compose(a: Isometry, b: Isometry) -> Isometry:
    """``a`` after ``b``: x -> a(b(x))."""
    a11, a12, a21, a22 = a.m
    b11, b12, b21, b22 = b.m
    bx, by = b.t
    return Isometry(
        (a11 * b11 + a12 * b21, a11 * b12 + a12 * b22, a21 * b11 + a22 * b21, a21 * b12 + a22 * b22),
        (a11 * bx + a12 * by + a.t[0], a21 * bx + a22 * by + a.t[1]),
    )


def inverse(a: Isometry) -> Isometry:
    p, q, r, s = a.m
    det = p * s - q * r
    inv = (s * det, -q * det, -r * det, p * det)
    tx, ty = a.t
    return Isometry(inv, (-(inv[0] * tx + inv[1] * ty), -(inv[2] * tx + inv[3] * ty)))


def canonical_key(a: Isometry) -> tuple[int, ...]:
    """Matrix entries, then (numerator, denominator) of each translation part."""
    tx, ty = a.t
    return (*a.m, tx.numerator, tx.denominator, ty.numerator, ty.denominator)


def from_key(key: Sequence[int]) -> Isometry:
    return Isometry(tuple(key[:4]), (Fraction(key[4], key[5]), Fraction(key[6], key[7])))


def power(a: Isometry, k: int) -> Isometry:
    base = a if k >= 0 else inverse(a)
    out = IDENTITY
    for _ in range(abs(k)):
        out = compose(out, base)
    return out


# -- words --------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\()|(\))(?:\^(-?\d+))?|([A-Za-z][A-Za-z0-9_']*)(?:\^(-?\d+))?)")


def parse_word(text: str) -> list:
    """Parse a relation word into a nested list of (name | sublist, exponent)."""
    stack: list[list] = [[]]
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"bad relation word {text!r} at {pos}")
        pos = m.end()
        if m.group(1):
            stack.append([])
        elif m.group(2):
            if len(stack) == 1:
                raise ValueError(f"unbalanced ')' in {text!r}")
            inner = stack.pop()
            stack[-1].append((inner, int(m.group(3) or 1)))
        else:
            stack[-1].append((m.group(4), int(m.group(5) or 1)))
    if len(stack) != 1:
        raise ValueError(f"unbalanced '(' in {text!r}")
    return stack[0]


def evaluate_word(word, gens: dict[str, Isometry]) -> Isometry:
    if isinstance(word, str):
        word = parse_word(word)
    out = IDENTITY
    for item, k in word:
        base = gens[item] if isinstance(item, str) else evaluate_word(item, gens)
        out = compose(out, power(base, k))
    return out


# -- presentations ------------------------------------------------------------


@dataclass(frozen=True)
class Generator:
    name: str
    element: Isometry
    involution: bool


@dataclass(frozen=True)
class GroupSpec:
    group_id: str
    tiling: str
    basis: str
    generators: tuple[Generator, ...]
    relations: tuple[str, ...]

    def gen_map(self) -> dict[str, Isometry]:
        return {g.name: g.element for g in self.generators}

    def alphabet(self) -> list[tuple[str, Isometry]]:
        """A = S u S^-1 as labeled letters; an involution contributes one letter."""
        out = []
        for g in self.generators:
            out.append((g.name, g.element))
            if not g.involution:
                out.append((g.name + "^-1", inverse(g.element)))
        return out

    @property
    def degree(self) -> int:
        return sum(1 if g.involution else 2 for g in self.generators)


class UnknownGroupError(KeyError):
    pass


def _format_frac(x: Fraction) -> str:
    return str(x)


def parse_presentations(text: str) -> dict[str, GroupSpec]:
    specs: dict[str, GroupSpec] = {}
    cur: dict | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "group":
            if cur is not None:
                raise ValueError(f"line {lineno}: missing 'end'")
            cur = {"id": rest, "gens": [], "rels": [], "tiling": None, "basis": "square"}
        elif cur is None:
            raise ValueError(f"line {lineno}: {head!r} outside a group record")
        elif head == "tiling":
            cur["tiling"] = rest
        elif head == "basis":
            cur["basis"] = rest
        elif head == "gen":
            parts = rest.split()
            if len(parts) not in (7, 8) or (len(parts) == 8 and parts[7] != "inv"):
                raise ValueError(f"line {lineno}: bad generator record")
            el = isometry(parts[1:5], parts[5:7])
            cur["gens"].append(Generator(parts[0], el, len(parts) == 8))
        elif head == "rel":
            parse_word(rest)
            cur["rels"].append(" ".join(rest.split()))
        elif head == "end":
            specs[cur["id"]] = GroupSpec(
                cur["id"], cur["tiling"], cur["basis"], tuple(cur["gens"]), tuple(cur["rels"])
            )
            cur = None
        else:
            raise ValueError(f"line {lineno}: unknown keyword {head!r}")
    if cur is not None:
        raise ValueError("unterminated group record")
    return specs


def dump_presentations(specs: Iterable[GroupSpec]) -> str:
    blocks = []
    for s in specs:
        lines = [f"group {s.group_id}", f"tiling {s.tiling}", f"basis {s.basis}"]
        for g in s.generators:
            m = " ".join(str(v) for v in g.element.m)
            t = " ".join(_format_frac(v) for v in g.element.t)
            lines.append(f"gen {g.name} {m} {t}" + (" inv" if g.involution else ""))
        lines += [f"rel {r}" for r in s.relations]
        lines.append("end")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


@lru_cache(maxsize=1)
def _registry() -> dict[str, GroupSpec]:
    text = resources.files("wallgrowth.data").joinpath("presentations.txt").read_text(encoding="utf-8")
    return parse_presentations(text)


def group_ids() -> list[str]:
    return list(_registry())


def realize(group_id: str) -> GroupSpec:
    """Concrete generators for one row of the presentation table.

    Bare ``p1``, ``p2`` and ``p3`` are ambiguous; use the ``:a``/``:b`` suffix.
    """
    try:
        return _registry()[group_id]
    except KeyError:
        raise UnknownGroupError(f"unknown group id {group_id!r}; known: {', '.join(_registry())}") from None


@dataclass
class RelationReport:
    group_id: str
    relations: list[tuple[str, bool]] = field(default_factory=list)
    identity_generators: list[str] = field(default_factory=list)
    bad_involution_flags: list[str] = field(default_factory=list)
    degree: int = 0
    tiling_degree: int | None = None

    @property
    def passed(self) -> bool:
        return (
            all(ok for _, ok in self.relations)
            and not self.identity_generators
            and not self.bad_involution_flags
            and self.degree == self.tiling_degree
        )

    def lines(self) -> list[str]:
        out = [f"{'ok  ' if ok else 'FAIL'} {rel} = 1" for rel, ok in self.relations]
        for name in self.identity_generators:
            out.append(f"FAIL generator {name} is the identity")
        for name in self.bad_involution_flags:
            out.append(f"FAIL involution flag of {name} is wrong")
        mark = "ok  " if self.degree == self.tiling_degree else "FAIL"
        out.append(f"{mark} degree {self.degree} vs tiling degree {self.tiling_degree}")
        return out


def verify_relations(spec: GroupSpec) -> RelationReport:
    gens = spec.gen_map()
    report = RelationReport(spec.group_id, degree=spec.degree, tiling_degree=TILING_DEGREE.get(spec.tiling))
    for rel in spec.relations:
        report.relations.append((rel, evaluate_word(rel, gens) == IDENTITY))
    for g in spec.generators:
        if g.element == IDENTITY:
            report.identity_generators.append(g.name)
        if (compose(g.element, g.element) == IDENTITY) != g.involution:
            report.bad_involution_flags.append(g.name)
    return report


def point_group(spec: GroupSpec) -> set[Matrix]:
    """Closure of the generators' linear parts under multiplication."""
    gens = [g.element.m for g in spec.generators]
    seen = {IDENTITY.m}
    frontier = [IDENTITY.m]
    while frontier:
        nxt = []
        for a in frontier:
            for b in gens:
                c = compose(Isometry(a, IDENTITY.t), Isometry(b, IDENTITY.t)).m
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
        if len(seen) > 12:
            raise ValueError(f"{spec.group_id}: point group larger than 12")
    return seen
