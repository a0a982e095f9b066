"""Finite simplicial sets and categories: nerve, diagonal, mapping
cone, and zig-zag path components.

Every object carries a hard truncation level, and every constructor
audits the full set of simplicial or categorical identities up to that
level.  A bad structure-map table cannot survive construction, so the
mapping-cone case analysis is certified the moment the cone is built.
"""

from __future__ import annotations

import itertools
from typing import Hashable, Mapping, Sequence

__all__ = [
    "FiniteSimplicialSet",
    "SimplicialMap",
    "FiniteBisimplicialSet",
    "FiniteCategory",
    "Functor",
    "SimplicialCategory",
    "SimplicialFunctor",
    "point_simplicial_set",
    "empty_simplicial_set",
    "discrete_simplicial_set",
    "disjoint_union",
    "terminal_category",
    "poset_category",
    "monoid_category",
    "coproduct_category",
    "identity_functor",
    "enumerate_functors",
    "constant_simplicial_category",
    "constant_simplicial_functor",
    "nerve",
    "bisimplicial_nerve",
    "diagonal",
    "delta_nerve",
    "delta_nerve_map",
    "cone",
    "base_inclusion",
    "check_cone_nerve",
    "pi0",
    "format_category",
    "parse_category",
    "format_simplicial_set",
]

# summand tags used by the mapping cone
PT = ("pt",)
TOP = ("top",)


class FiniteSimplicialSet:
    """Truncated simplicial set with explicit face and degeneracy tables.

    ``levels[n]`` lists the n-simplices, ``faces[(n, i)]`` maps level n
    to level n - 1 and ``degens[(n, j)]`` maps level n to level n + 1.
    All simplicial identities are checked on construction.
    """

    __slots__ = ("top", "_levels", "_faces", "_degens")

    def __init__(self,
                 levels: Sequence[Sequence[Hashable]],
                 faces: Mapping,
                 degens: Mapping) -> None:
        stored = tuple(tuple(level) for level in levels)
        if not stored:
            raise ValueError("a simplicial set needs at least level 0")
        for n, level in enumerate(stored):
            if len(set(level)) != len(level):
                raise ValueError(f"level {n} lists a simplex twice")
        self.top = len(stored) - 1
        self._levels = stored
        self._faces = self._check_tables(faces, "face", -1)
        self._degens = self._check_tables(degens, "degeneracy", 1)
        self._audit()

    def _check_tables(self, tables, kind, shift):
        if kind == "face":
            wanted = {(n, i) for n in range(1, self.top + 1)
                      for i in range(n + 1)}
        else:
            wanted = {(n, j) for n in range(self.top) for j in range(n + 1)}
        got = set(tables)
        if got != wanted:
            n, i = min(wanted - got) if wanted - got else min(got - wanted)
            word = "missing" if wanted - got else "out of range"
            raise ValueError(f"{kind} table ({n}, {i}) is {word} "
                             f"for truncation {self.top}")
        out = {}
        for (n, i), table in tables.items():
            if set(table) != set(self._levels[n]):
                raise ValueError(f"{kind} table ({n}, {i}) is not defined "
                                 f"on exactly level {n}")
            allowed = set(self._levels[n + shift])
            for x, y in table.items():
                if y not in allowed:
                    raise ValueError(f"{kind} table ({n}, {i}) sends {x!r} "
                                     f"outside level {n + shift}")
            out[n, i] = dict(table)
        return out

    def _audit(self):
        for n in range(2, self.top + 1):
            for j in range(n + 1):
                for i in range(j):
                    for x in self._levels[n]:
                        left = self.face(n - 1, i, self.face(n, j, x))
                        right = self.face(n - 1, j - 1, self.face(n, i, x))
                        if left != right:
                            raise ValueError(
                                f"simplicial identity d_{i} d_{j} = "
                                f"d_{j - 1} d_{i} fails at level {n}")
        for n in range(self.top - 1):
            for j in range(n + 1):
                for i in range(j + 1):
                    for x in self._levels[n]:
                        left = self.degen(n + 1, i, self.degen(n, j, x))
                        right = self.degen(n + 1, j + 1, self.degen(n, i, x))
                        if left != right:
                            raise ValueError(
                                f"simplicial identity s_{i} s_{j} = "
                                f"s_{j + 1} s_{i} fails at level {n}")
        for n in range(self.top):
            for j in range(n + 1):
                for i in range(n + 2):
                    for x in self._levels[n]:
                        y = self.face(n + 1, i, self.degen(n, j, x))
                        if i in (j, j + 1):
                            ok = y == x
                        elif i < j:
                            ok = y == self.degen(n - 1, j - 1,
                                                 self.face(n, i, x))
                        else:
                            ok = y == self.degen(n - 1, j,
                                                 self.face(n, i - 1, x))
                        if not ok:
                            raise ValueError(f"simplicial identity d_{i} "
                                             f"s_{j} fails at level {n}")

    def level(self, n: int) -> tuple:
        return self._levels[n]

    def face(self, n: int, i: int, x):
        return self._faces[n, i][x]

    def degen(self, n: int, j: int, x):
        return self._degens[n, j][x]

    def __eq__(self, other):
        if not isinstance(other, FiniteSimplicialSet):
            return NotImplemented
        return (self._levels == other._levels
                and self._faces == other._faces
                and self._degens == other._degens)


class SimplicialMap:
    """Level-indexed functions between truncated simplicial sets.

    Commutation with every face and degeneracy is checked exhaustively.
    """

    __slots__ = ("src", "dst", "_maps")

    def __init__(self, src: FiniteSimplicialSet, dst: FiniteSimplicialSet,
                 maps: Mapping[int, Mapping]) -> None:
        if src.top != dst.top:
            raise ValueError(f"source and target truncations differ: "
                             f"{src.top} vs {dst.top}")
        if set(maps) != set(range(src.top + 1)):
            raise ValueError("map levels do not match the truncation")
        for n, table in maps.items():
            if set(table) != set(src.level(n)):
                raise ValueError(f"level {n} map is not defined on exactly "
                                 f"the source level")
            allowed = set(dst.level(n))
            for x, y in table.items():
                if y not in allowed:
                    raise ValueError(f"level {n} map sends {x!r} outside "
                                     f"the target level")
        for n in range(1, src.top + 1):
            for i in range(n + 1):
                for x in src.level(n):
                    if dst.face(n, i, maps[n][x]) != \
                            maps[n - 1][src.face(n, i, x)]:
                        raise ValueError(f"level {n} map does not commute "
                                         f"with face d_{i}")
        for n in range(src.top):
            for j in range(n + 1):
                for x in src.level(n):
                    if dst.degen(n, j, maps[n][x]) != \
                            maps[n + 1][src.degen(n, j, x)]:
                        raise ValueError(f"level {n} map does not commute "
                                         f"with degeneracy s_{j}")
        self.src = src
        self.dst = dst
        self._maps = {n: dict(table) for n, table in maps.items()}

    def apply(self, n: int, x):
        return self._maps[n][x]


class FiniteBisimplicialSet:
    """Bisimplicial set on a rectangle of bidegrees.

    Vertical maps act on the first index (``vfaces[(p, q, i)]`` sends
    level (p, q) to (p - 1, q)), horizontal maps on the second.  Rows
    and columns are audited as simplicial sets and the two directions
    are checked to commute.
    """

    __slots__ = ("p_top", "q_top", "_levels",
                 "_vfaces", "_vdegens", "_hfaces", "_hdegens")

    def __init__(self, p_top, q_top, levels,
                 vfaces, vdegens, hfaces, hdegens) -> None:
        self.p_top = p_top
        self.q_top = q_top
        grid = {(p, q) for p in range(p_top + 1) for q in range(q_top + 1)}
        if set(levels) != grid:
            raise ValueError("levels do not cover exactly the bidegree grid")
        self._levels = {key: tuple(level) for key, level in levels.items()}
        self._vfaces = {key: dict(t) for key, t in vfaces.items()}
        self._vdegens = {key: dict(t) for key, t in vdegens.items()}
        self._hfaces = {key: dict(t) for key, t in hfaces.items()}
        self._hdegens = {key: dict(t) for key, t in hdegens.items()}
        if set(self._vfaces) != {(p, q, i) for p in range(1, p_top + 1)
                                 for q in range(q_top + 1)
                                 for i in range(p + 1)}:
            raise ValueError("vertical face keys do not match the grid")
        if set(self._vdegens) != {(p, q, j) for p in range(p_top)
                                  for q in range(q_top + 1)
                                  for j in range(p + 1)}:
            raise ValueError("vertical degeneracy keys do not match the grid")
        if set(self._hfaces) != {(p, q, i) for p in range(p_top + 1)
                                 for q in range(1, q_top + 1)
                                 for i in range(q + 1)}:
            raise ValueError("horizontal face keys do not match the grid")
        if set(self._hdegens) != {(p, q, j) for p in range(p_top + 1)
                                  for q in range(q_top)
                                  for j in range(q + 1)}:
            raise ValueError("horizontal degeneracy keys do not match "
                             "the grid")
        for p in range(p_top + 1):
            try:
                FiniteSimplicialSet(
                    [self._levels[p, q] for q in range(q_top + 1)],
                    {(q, i): self._hfaces[p, q, i]
                     for q in range(1, q_top + 1) for i in range(q + 1)},
                    {(q, j): self._hdegens[p, q, j]
                     for q in range(q_top) for j in range(q + 1)})
            except ValueError as exc:
                raise ValueError(f"row p={p}: {exc}") from None
        for q in range(q_top + 1):
            try:
                FiniteSimplicialSet(
                    [self._levels[p, q] for p in range(p_top + 1)],
                    {(p, i): self._vfaces[p, q, i]
                     for p in range(1, p_top + 1) for i in range(p + 1)},
                    {(p, j): self._vdegens[p, q, j]
                     for p in range(p_top) for j in range(p + 1)})
            except ValueError as exc:
                raise ValueError(f"column q={q}: {exc}") from None
        self._cross_audit()

    def _cross_audit(self):
        for p in range(1, self.p_top + 1):
            for q in range(1, self.q_top + 1):
                for i in range(p + 1):
                    for a in range(q + 1):
                        for x in self._levels[p, q]:
                            one = self.hface(p - 1, q, a,
                                             self.vface(p, q, i, x))
                            two = self.vface(p, q - 1, i,
                                             self.hface(p, q, a, x))
                            if one != two:
                                raise ValueError(
                                    f"vertical face d_{i} and horizontal "
                                    f"face d_{a} do not commute at level "
                                    f"({p}, {q})")
        for p in range(1, self.p_top + 1):
            for q in range(self.q_top):
                for i in range(p + 1):
                    for a in range(q + 1):
                        for x in self._levels[p, q]:
                            one = self.hdegen(p - 1, q, a,
                                              self.vface(p, q, i, x))
                            two = self.vface(p, q + 1, i,
                                             self.hdegen(p, q, a, x))
                            if one != two:
                                raise ValueError(
                                    f"vertical face d_{i} and horizontal "
                                    f"degeneracy s_{a} do not commute at "
                                    f"level ({p}, {q})")
        for p in range(self.p_top):
            for q in range(1, self.q_top + 1):
                for j in range(p + 1):
                    for a in range(q + 1):
                        for x in self._levels[p, q]:
                            one = self.hface(p + 1, q, a,
                                             self.vdegen(p, q, j, x))
                            two = self.vdegen(p, q - 1, j,
                                              self.hface(p, q, a, x))
                            if one != two:
                                raise ValueError(
                                    f"vertical degeneracy s_{j} and "
                                    f"horizontal face d_{a} do not commute "
                                    f"at level ({p}, {q})")
        for p in range(self.p_top):
            for q in range(self.q_top):
                for j in range(p + 1):
                    for a in range(q + 1):
                        for x in self._levels[p, q]:
                            one = self.hdegen(p + 1, q, a,
                                              self.vdegen(p, q, j, x))
                            two = self.vdegen(p, q + 1, j,
                                              self.hdegen(p, q, a, x))
                            if one != two:
                                raise ValueError(
                                    f"vertical degeneracy s_{j} and "
                                    f"horizontal degeneracy s_{a} do not "
                                    f"commute at level ({p}, {q})")

    def level(self, p, q):
        return self._levels[p, q]

    def vface(self, p, q, i, x):
        return self._vfaces[p, q, i][x]

    def vdegen(self, p, q, j, x):
        return self._vdegens[p, q, j][x]

    def hface(self, p, q, i, x):
        return self._hfaces[p, q, i][x]

    def hdegen(self, p, q, j, x):
        return self._hdegens[p, q, j][x]


def point_simplicial_set(top: int) -> FiniteSimplicialSet:
    """Terminal simplicial set: one simplex in every level."""
    levels = [["pt"] for _ in range(top + 1)]
    faces = {(n, i): {"pt": "pt"}
             for n in range(1, top + 1) for i in range(n + 1)}
    degens = {(n, j): {"pt": "pt"} for n in range(top) for j in range(n + 1)}
    return FiniteSimplicialSet(levels, faces, degens)


def empty_simplicial_set(top: int) -> FiniteSimplicialSet:
    levels = [[] for _ in range(top + 1)]
    faces = {(n, i): {} for n in range(1, top + 1) for i in range(n + 1)}
    degens = {(n, j): {} for n in range(top) for j in range(n + 1)}
    return FiniteSimplicialSet(levels, faces, degens)


def discrete_simplicial_set(points, top: int) -> FiniteSimplicialSet:
    """Constant levels on a point set, all structure maps the identity."""
    pts = list(points)
    levels = [list(pts) for _ in range(top + 1)]
    ident = {x: x for x in pts}
    faces = {(n, i): dict(ident)
             for n in range(1, top + 1) for i in range(n + 1)}
    degens = {(n, j): dict(ident) for n in range(top) for j in range(n + 1)}
    return FiniteSimplicialSet(levels, faces, degens)


def disjoint_union(a, b):
    """Levelwise disjoint union, elements tagged by summand 0 or 1."""
    if isinstance(a, FiniteBisimplicialSet) or \
            isinstance(b, FiniteBisimplicialSet):
        return _union_bisimplicial(a, b)
    if a.top != b.top:
        raise ValueError(f"truncations differ: {a.top} vs {b.top}")

    def merge(ta, tb):
        out = {(0, x): (0, y) for x, y in ta.items()}
        out.update({(1, x): (1, y) for x, y in tb.items()})
        return out

    levels = [[(0, x) for x in a.level(n)] + [(1, y) for y in b.level(n)]
              for n in range(a.top + 1)]
    faces = {key: merge(a._faces[key], b._faces[key]) for key in a._faces}
    degens = {key: merge(a._degens[key], b._degens[key]) for key in a._degens}
    return FiniteSimplicialSet(levels, faces, degens)


def _union_bisimplicial(a, b):
    if (a.p_top, a.q_top) != (b.p_top, b.q_top):
        raise ValueError(f"truncations differ: ({a.p_top}, {a.q_top}) vs "
                         f"({b.p_top}, {b.q_top})")

    def merge(ta, tb):
        out = {(0, x): (0, y) for x, y in ta.items()}
        out.update({(1, x): (1, y) for x, y in tb.items()})
        return out

    levels = {key: [(0, x) for x in a._levels[key]]
              + [(1, y) for y in b._levels[key]] for key in a._levels}
    return FiniteBisimplicialSet(
        a.p_top, a.q_top, levels,
        {k: merge(a._vfaces[k], b._vfaces[k]) for k in a._vfaces},
        {k: merge(a._vdegens[k], b._vdegens[k]) for k in a._vdegens},
        {k: merge(a._hfaces[k], b._hfaces[k]) for k in a._hfaces},
        {k: merge(a._hdegens[k], b._hdegens[k]) for k in a._hdegens})


class FiniteCategory:
    """Finite category with an explicit composition table.

    The table is keyed ``(second, first)``: the pair ``(g, f)`` with
    ``source(g) == target(f)`` composes to g after f.  Identity and
    associativity laws are checked exhaustively.
    """

    __slots__ = ("objects", "morphisms", "_src", "_tgt", "_comp", "_ident")

    def __init__(self, objects, morphisms, source, target,
                 compose, identity) -> None:
        self.objects = tuple(objects)
        self.morphisms = tuple(morphisms)
        if len(set(self.objects)) != len(self.objects):
            raise ValueError("object list has repeats")
        if len(set(self.morphisms)) != len(self.morphisms):
            raise ValueError("morphism list has repeats")
        obj = set(self.objects)
        mor = set(self.morphisms)
        for name, table in (("source", source), ("target", target)):
            if set(table) != mor:
                raise ValueError(f"{name} table is not defined on exactly "
                                 f"the morphisms")
            for m, x in table.items():
                if x not in obj:
                    raise ValueError(f"{name} of {m!r} is not an object")
        self._src = dict(source)
        self._tgt = dict(target)
        if set(identity) != obj:
            raise ValueError("identity table is not defined on exactly "
                             "the objects")
        for x, e in identity.items():
            if e not in mor or self._src[e] != x or self._tgt[e] != x:
                raise ValueError(f"identity of {x!r} is not a morphism "
                                 f"from {x!r} to itself")
        self._ident = dict(identity)
        comp = dict(compose)
        for g in self.morphisms:
            for f in self.morphisms:
                fits = self._src[g] == self._tgt[f]
                if fits and (g, f) not in comp:
                    raise ValueError(f"composition table is missing the "
                                     f"pair ({g!r}, {f!r})")
                if not fits and (g, f) in comp:
                    raise ValueError(f"composition table lists the "
                                     f"non-composable pair ({g!r}, {f!r})")
        for (g, f), h in comp.items():
            if h not in mor or self._src[h] != self._src[f] \
                    or self._tgt[h] != self._tgt[g]:
                raise ValueError(f"composite of ({g!r}, {f!r}) has the "
                                 f"wrong endpoints")
        for f in self.morphisms:
            if comp[self._ident[self._tgt[f]], f] != f \
                    or comp[f, self._ident[self._src[f]]] != f:
                raise ValueError(f"identity laws fail on {f!r}")
        for h in self.morphisms:
            for g in self.morphisms:
                if self._src[h] != self._tgt[g]:
                    continue
                for f in self.morphisms:
                    if self._src[g] != self._tgt[f]:
                        continue
                    if comp[h, comp[g, f]] != comp[comp[h, g], f]:
                        raise ValueError(f"composition is not associative "
                                         f"on ({h!r}, {g!r}, {f!r})")
        self._comp = comp

    def source(self, m):
        return self._src[m]

    def target(self, m):
        return self._tgt[m]

    def compose(self, g, f):
        return self._comp[g, f]

    def identity(self, x):
        return self._ident[x]


def terminal_category() -> FiniteCategory:
    return FiniteCategory(["*"], ["id"], {"id": "*"}, {"id": "*"},
                          {("id", "id"): "id"}, {"*": "id"})


def poset_category(elements, relation) -> FiniteCategory:
    """Category of a finite poset, one morphism ``(x, y)`` per related
    pair.  The given relation is closed up reflexively and transitively;
    antisymmetry is checked.
    """
    elems = list(elements)
    leq = {(x, x) for x in elems} | set(relation)
    while True:
        more = {(x, z) for (x, y) in leq for (w, z) in leq if y == w} - leq
        if not more:
            break
        leq |= more
    for x, y in leq:
        if x != y and (y, x) in leq:
            raise ValueError(f"relation is not antisymmetric on "
                             f"{x!r} and {y!r}")
    morphisms = [(x, y) for x in elems for y in elems if (x, y) in leq]
    compose = {((y, z), (x, w)): (x, z)
               for (y, z) in morphisms for (x, w) in morphisms if w == y}
    return FiniteCategory(elems, morphisms,
                          {m: m[0] for m in morphisms},
                          {m: m[1] for m in morphisms},
                          compose, {x: (x, x) for x in elems})


def monoid_category(elements, table, unit) -> FiniteCategory:
    """One-object category whose morphisms form the given finite monoid."""
    elems = list(elements)
    compose = {(g, f): table[g, f] for g in elems for f in elems}
    return FiniteCategory(["*"], elems,
                          {m: "*" for m in elems}, {m: "*" for m in elems},
                          compose, {"*": unit})


def coproduct_category(a: FiniteCategory, b: FiniteCategory) -> FiniteCategory:
    """Disjoint union with summand tags 0 and 1; no cross morphisms."""
    return _tagged_coproduct([(0, a), (1, b)])


def _tagged_coproduct(parts) -> FiniteCategory:
    objects = []
    morphisms = []
    source = {}
    target = {}
    compose = {}
    identity = {}
    for tag, cat in parts:
        objects += [(tag, x) for x in cat.objects]
        morphisms += [(tag, m) for m in cat.morphisms]
        for m in cat.morphisms:
            source[tag, m] = (tag, cat.source(m))
            target[tag, m] = (tag, cat.target(m))
        for x in cat.objects:
            identity[tag, x] = (tag, cat.identity(x))
        for g in cat.morphisms:
            for f in cat.morphisms:
                if cat.source(g) == cat.target(f):
                    compose[(tag, g), (tag, f)] = (tag, cat.compose(g, f))
    return FiniteCategory(objects, morphisms, source, target,
                          compose, identity)


class Functor:
    """Functor between finite categories, validated exhaustively."""

    __slots__ = ("src", "dst", "_obj", "_mor")

    def __init__(self, src: FiniteCategory, dst: FiniteCategory,
                 obj_map: Mapping, mor_map: Mapping) -> None:
        if set(obj_map) != set(src.objects):
            raise ValueError("object map is not defined on exactly the "
                             "source objects")
        if set(mor_map) != set(src.morphisms):
            raise ValueError("morphism map is not defined on exactly the "
                             "source morphisms")
        dst_obj = set(dst.objects)
        dst_mor = set(dst.morphisms)
        for x, y in obj_map.items():
            if y not in dst_obj:
                raise ValueError(f"image of object {x!r} is not in the "
                                 f"target category")
        for m, mm in mor_map.items():
            if mm not in dst_mor:
                raise ValueError(f"image of morphism {m!r} is not in the "
                                 f"target category")
        for m in src.morphisms:
            if dst.source(mor_map[m]) != obj_map[src.source(m)]:
                raise ValueError(f"functor does not preserve the source "
                                 f"of {m!r}")
            if dst.target(mor_map[m]) != obj_map[src.target(m)]:
                raise ValueError(f"functor does not preserve the target "
                                 f"of {m!r}")
        for x in src.objects:
            if mor_map[src.identity(x)] != dst.identity(obj_map[x]):
                raise ValueError(f"functor does not preserve the identity "
                                 f"of {x!r}")
        for g in src.morphisms:
            for f in src.morphisms:
                if src.source(g) == src.target(f):
                    if mor_map[src.compose(g, f)] != \
                            dst.compose(mor_map[g], mor_map[f]):
                        raise ValueError(f"functor does not preserve "
                                         f"composition on ({g!r}, {f!r})")
        self.src = src
        self.dst = dst
        self._obj = dict(obj_map)
        self._mor = dict(mor_map)

    def on_object(self, x):
        return self._obj[x]

    def on_morphism(self, m):
        return self._mor[m]

    def __eq__(self, other):
        if not isinstance(other, Functor):
            return NotImplemented
        return self._obj == other._obj and self._mor == other._mor


def identity_functor(c: FiniteCategory) -> Functor:
    return Functor(c, c, {x: x for x in c.objects},
                   {m: m for m in c.morphisms})


def _compose_functors(g: Functor, f: Functor) -> Functor:
    return Functor(f.src, g.dst,
                   {x: g.on_object(f.on_object(x)) for x in f.src.objects},
                   {m: g.on_morphism(f.on_morphism(m))
                    for m in f.src.morphisms})


def enumerate_functors(a: FiniteCategory, b: FiniteCategory) -> list:
    """All functors from a to b, in lexicographic assignment order.

    Identities are forced; the remaining morphisms range over the
    arrows with matching endpoints, filtered by the composition law.
    """
    idents = {a.identity(x) for x in a.objects}
    rest = [m for m in a.morphisms if m not in idents]
    found = []
    for obj_choice in itertools.product(b.objects, repeat=len(a.objects)):
        obj_map = dict(zip(a.objects, obj_choice))
        pools = []
        for m in rest:
            pools.append([mm for mm in b.morphisms
                          if b.source(mm) == obj_map[a.source(m)]
                          and b.target(mm) == obj_map[a.target(m)]])
        for mor_choice in itertools.product(*pools):
            mor_map = dict(zip(rest, mor_choice))
            for x in a.objects:
                mor_map[a.identity(x)] = b.identity(obj_map[x])
            try:
                found.append(Functor(a, b, obj_map, mor_map))
            except ValueError:
                continue
    return found


class SimplicialCategory:
    """Simplicial object in finite categories, truncated at a top level.

    Faces and degeneracies are functors; the simplicial identities are
    checked as equalities of composite functors.
    """

    __slots__ = ("top", "_cats", "_faces", "_degens")

    def __init__(self, cats, faces, degens) -> None:
        self._cats = tuple(cats)
        if not self._cats:
            raise ValueError("a simplicial category needs at least level 0")
        self.top = len(self._cats) - 1
        if set(faces) != {(n, i) for n in range(1, self.top + 1)
                          for i in range(n + 1)}:
            raise ValueError("face functor keys do not match the truncation")
        if set(degens) != {(n, j) for n in range(self.top)
                           for j in range(n + 1)}:
            raise ValueError("degeneracy functor keys do not match the "
                             "truncation")
        for (n, i), fun in faces.items():
            if fun.src is not self._cats[n] or fun.dst is not self._cats[n - 1]:
                raise ValueError(f"face functor ({n}, {i}) does not run "
                                 f"from level {n} to level {n - 1}")
        for (n, j), fun in degens.items():
            if fun.src is not self._cats[n] or fun.dst is not self._cats[n + 1]:
                raise ValueError(f"degeneracy functor ({n}, {j}) does not "
                                 f"run from level {n} to level {n + 1}")
        self._faces = dict(faces)
        self._degens = dict(degens)
        for n in range(2, self.top + 1):
            for j in range(n + 1):
                for i in range(j):
                    left = _compose_functors(self._faces[n - 1, i],
                                             self._faces[n, j])
                    right = _compose_functors(self._faces[n - 1, j - 1],
                                              self._faces[n, i])
                    if left != right:
                        raise ValueError(
                            f"simplicial identity d_{i} d_{j} = "
                            f"d_{j - 1} d_{i} fails at level {n}")
        for n in range(self.top - 1):
            for j in range(n + 1):
                for i in range(j + 1):
                    left = _compose_functors(self._degens[n + 1, i],
                                             self._degens[n, j])
                    right = _compose_functors(self._degens[n + 1, j + 1],
                                              self._degens[n, i])
                    if left != right:
                        raise ValueError(
                            f"simplicial identity s_{i} s_{j} = "
                            f"s_{j + 1} s_{i} fails at level {n}")
        for n in range(self.top):
            for j in range(n + 1):
                for i in range(n + 2):
                    got = _compose_functors(self._faces[n + 1, i],
                                            self._degens[n, j])
                    if i in (j, j + 1):
                        ok = got == identity_functor(self._cats[n])
                    elif i < j:
                        ok = got == _compose_functors(
                            self._degens[n - 1, j - 1], self._faces[n, i])
                    else:
                        ok = got == _compose_functors(
                            self._degens[n - 1, j], self._faces[n, i - 1])
                    if not ok:
                        raise ValueError(f"simplicial identity d_{i} s_{j} "
                                         f"fails at level {n}")

    def level(self, n: int) -> FiniteCategory:
        return self._cats[n]

    def face(self, n: int, i: int) -> Functor:
        return self._faces[n, i]

    def degen(self, n: int, j: int) -> Functor:
        return self._degens[n, j]


def constant_simplicial_category(c: FiniteCategory,
                                 top: int) -> SimplicialCategory:
    ident = identity_functor(c)
    faces = {(n, i): ident for n in range(1, top + 1) for i in range(n + 1)}
    degens = {(n, j): ident for n in range(top) for j in range(n + 1)}
    return SimplicialCategory([c] * (top + 1), faces, degens)


class SimplicialFunctor:
    """Level-indexed functors commuting with all faces and degeneracies."""

    __slots__ = ("src", "dst", "_functors")

    def __init__(self, src: SimplicialCategory, dst: SimplicialCategory,
                 functors: Mapping[int, Functor]) -> None:
        if src.top != dst.top:
            raise ValueError(f"source and target truncations differ: "
                             f"{src.top} vs {dst.top}")
        if set(functors) != set(range(src.top + 1)):
            raise ValueError("functor levels do not match the truncation")
        for n, fun in functors.items():
            if fun.src is not src.level(n) or fun.dst is not dst.level(n):
                raise ValueError(f"level {n} functor does not run between "
                                 f"the level {n} categories")
        for n in range(1, src.top + 1):
            for i in range(n + 1):
                if _compose_functors(dst.face(n, i), functors[n]) != \
                        _compose_functors(functors[n - 1], src.face(n, i)):
                    raise ValueError(f"level {n} functor does not commute "
                                     f"with face d_{i}")
        for n in range(src.top):
            for j in range(n + 1):
                if _compose_functors(dst.degen(n, j), functors[n]) != \
                        _compose_functors(functors[n + 1], src.degen(n, j)):
                    raise ValueError(f"level {n} functor does not commute "
                                     f"with degeneracy s_{j}")
        self.src = src
        self.dst = dst
        self._functors = dict(functors)

    def functor(self, n: int) -> Functor:
        return self._functors[n]


def constant_simplicial_functor(g: Functor, top: int) -> SimplicialFunctor:
    """Lift a functor of finite categories to constant simplicial ones."""
    return SimplicialFunctor(constant_simplicial_category(g.src, top),
                             constant_simplicial_category(g.dst, top),
                             {n: g for n in range(top + 1)})


def nerve(c: FiniteCategory, top: int) -> FiniteSimplicialSet:
    """Nerve of a finite category.

    Level 0 is the object set and level n the composable chains of n
    morphisms; faces compose or truncate, degeneracies insert identities.
    """
    levels = [list(c.objects)]
    for n in range(1, top + 1):
        grown = []
        if n == 1:
            for x in levels[0]:
                grown += [(m,) for m in c.morphisms if c.source(m) == x]
        else:
            for chain in levels[-1]:
                grown += [chain + (m,) for m in c.morphisms
                          if c.source(m) == c.target(chain[-1])]
        levels.append(grown)
    faces = {}
    for n in range(1, top + 1):
        for i in range(n + 1):
            table = {}
            for chain in levels[n]:
                if n == 1:
                    table[chain] = c.target(chain[0]) if i == 0 \
                        else c.source(chain[0])
                elif i == 0:
                    table[chain] = chain[1:]
                elif i == n:
                    table[chain] = chain[:-1]
                else:
                    glued = c.compose(chain[i], chain[i - 1])
                    table[chain] = chain[:i - 1] + (glued,) + chain[i + 1:]
            faces[n, i] = table
    degens = {}
    for n in range(top):
        for j in range(n + 1):
            table = {}
            for chain in levels[n]:
                if n == 0:
                    table[chain] = (c.identity(chain),)
                else:
                    vertex = c.source(chain[0]) if j == 0 \
                        else c.target(chain[j - 1])
                    table[chain] = chain[:j] + (c.identity(vertex),) \
                        + chain[j:]
            degens[n, j] = table
    return FiniteSimplicialSet(levels, faces, degens)


def _chain_image(fun: Functor, q: int, chain):
    if q == 0:
        return fun.on_object(chain)
    return tuple(fun.on_morphism(m) for m in chain)


def bisimplicial_nerve(x: SimplicialCategory,
                       top: int) -> FiniteBisimplicialSet:
    """Levelwise nerve of a simplicial category.

    The first index runs over the category levels, the second over
    nerve chains; the cross commutation audit certifies that the face
    and degeneracy functors act simplicially on chains.
    """
    if x.top < top:
        raise ValueError(f"truncation {x.top} is below the requested "
                         f"level {top}")
    nerves = [nerve(x.level(p), top) for p in range(top + 1)]
    levels = {(p, q): nerves[p].level(q)
              for p in range(top + 1) for q in range(top + 1)}
    hfaces = {(p, q, i): {s: nerves[p].face(q, i, s) for s in levels[p, q]}
              for p in range(top + 1) for q in range(1, top + 1)
              for i in range(q + 1)}
    hdegens = {(p, q, j): {s: nerves[p].degen(q, j, s) for s in levels[p, q]}
               for p in range(top + 1) for q in range(top)
               for j in range(q + 1)}
    vfaces = {(p, q, i): {s: _chain_image(x.face(p, i), q, s)
                          for s in levels[p, q]}
              for p in range(1, top + 1) for q in range(top + 1)
              for i in range(p + 1)}
    vdegens = {(p, q, j): {s: _chain_image(x.degen(p, j), q, s)
                           for s in levels[p, q]}
               for p in range(top) for q in range(top + 1)
               for j in range(p + 1)}
    return FiniteBisimplicialSet(top, top, levels,
                                 vfaces, vdegens, hfaces, hdegens)


def diagonal(b: FiniteBisimplicialSet) -> FiniteSimplicialSet:
    """Restriction to square bidegrees; each structure map runs once in
    each index (the cross audit makes the order immaterial)."""
    top = min(b.p_top, b.q_top)
    levels = [b.level(n, n) for n in range(top + 1)]
    faces = {}
    for n in range(1, top + 1):
        for i in range(n + 1):
            faces[n, i] = {x: b.hface(n - 1, n, i, b.vface(n, n, i, x))
                           for x in levels[n]}
    degens = {}
    for n in range(top):
        for j in range(n + 1):
            degens[n, j] = {x: b.hdegen(n + 1, n, j, b.vdegen(n, n, j, x))
                            for x in levels[n]}
    return FiniteSimplicialSet(levels, faces, degens)


def delta_nerve(x: SimplicialCategory, top: int) -> FiniteSimplicialSet:
    """Diagonal of the levelwise nerve of a simplicial category."""
    return diagonal(bisimplicial_nerve(x, top))


def delta_nerve_map(f: SimplicialFunctor, top: int) -> SimplicialMap:
    """Simplicial-set map induced on diagonal nerves."""
    src = delta_nerve(f.src, top)
    dst = delta_nerve(f.dst, top)
    maps = {n: {s: _chain_image(f.functor(n), n, s) for s in src.level(n)}
            for n in range(top + 1)}
    return SimplicialMap(src, dst, maps)


def _interval_interior(n: int) -> list:
    """Monotone 0/1 strings of length n + 1 that are not constant."""
    return [(0,) * (n + 1 - k) + (1,) * k for k in range(1, n + 1)]


def _string_face(alpha, i):
    return alpha[:i] + alpha[i + 1:]


def _string_degen(alpha, i):
    return alpha[:i + 1] + alpha[i:]


def cone(f):
    """Mapping cone of a simplicial map, or of a functor of simplicial
    categories.

    Level n is a point, one cylinder copy of the source per non-constant
    monotone 0/1 string of length n + 1, and the target.  Faces move the
    string index, collapsing to the point when the string becomes all
    zeros and mapping through f after the source face when it becomes
    all ones.  The constructor of the result re-checks every simplicial
    identity, so a transcription error in the case analysis raises here.
    """
    if isinstance(f, SimplicialFunctor):
        return _cone_categories(f)
    return _cone_sets(f)


def _cone_sets(f: SimplicialMap) -> FiniteSimplicialSet:
    top = f.src.top
    levels = []
    for n in range(top + 1):
        level = [(PT, "pt")]
        for alpha in _interval_interior(n):
            level += [(("cyl", alpha), x) for x in f.src.level(n)]
        level += [(TOP, y) for y in f.dst.level(n)]
        levels.append(level)
    faces = {}
    for n in range(1, top + 1):
        for i in range(n + 1):
            table = {}
            for tag, x in levels[n]:
                if tag == PT:
                    table[tag, x] = (PT, "pt")
                elif tag == TOP:
                    table[tag, x] = (TOP, f.dst.face(n, i, x))
                else:
                    down = _string_face(tag[1], i)
                    y = f.src.face(n, i, x)
                    if 1 not in down:
                        table[tag, x] = (PT, "pt")
                    elif 0 not in down:
                        table[tag, x] = (TOP, f.apply(n - 1, y))
                    else:
                        table[tag, x] = (("cyl", down), y)
            faces[n, i] = table
    degens = {}
    for n in range(top):
        for j in range(n + 1):
            table = {}
            for tag, x in levels[n]:
                if tag == PT:
                    table[tag, x] = (PT, "pt")
                elif tag == TOP:
                    table[tag, x] = (TOP, f.dst.degen(n, j, x))
                else:
                    table[tag, x] = (("cyl", _string_degen(tag[1], j)),
                                     f.src.degen(n, j, x))
            degens[n, j] = table
    return FiniteSimplicialSet(levels, faces, degens)


def _cone_categories(f: SimplicialFunctor) -> SimplicialCategory:
    top = f.src.top
    point = terminal_category()
    cats = []
    for n in range(top + 1):
        parts = [(PT, point)]
        for alpha in _interval_interior(n):
            parts.append((("cyl", alpha), f.src.level(n)))
        parts.append((TOP, f.dst.level(n)))
        cats.append(_tagged_coproduct(parts))

    def build(n, to_level, rule):
        src_cat = cats[n]
        obj_map = {t: rule(t, True) for t in src_cat.objects}
        mor_map = {t: rule(t, False) for t in src_cat.morphisms}
        return Functor(src_cat, cats[to_level], obj_map, mor_map)

    def act(fun, item, on_objects):
        return fun.on_object(item) if on_objects else fun.on_morphism(item)

    faces = {}
    for n in range(1, top + 1):
        for i in range(n + 1):
            def rule(tagged, on_objects, n=n, i=i):
                tag, x = tagged
                if tag == PT:
                    return tagged
                if tag == TOP:
                    return TOP, act(f.dst.face(n, i), x, on_objects)
                down = _string_face(tag[1], i)
                y = act(f.src.face(n, i), x, on_objects)
                if 1 not in down:
                    return PT, ("*" if on_objects else "id")
                if 0 not in down:
                    return TOP, act(f.functor(n - 1), y, on_objects)
                return ("cyl", down), y
            faces[n, i] = build(n, n - 1, rule)
    degens = {}
    for n in range(top):
        for j in range(n + 1):
            def rule(tagged, on_objects, n=n, j=j):
                tag, x = tagged
                if tag == PT:
                    return tagged
                if tag == TOP:
                    return TOP, act(f.dst.degen(n, j), x, on_objects)
                return (("cyl", _string_degen(tag[1], j)),
                        act(f.src.degen(n, j), x, on_objects))
            degens[n, j] = build(n, n + 1, rule)
    return SimplicialCategory(cats, faces, degens)


def base_inclusion(f):
    """Canonical inclusion of the target of f into cone(f), as the
    summand indexed by the all-ones string.  Validated on construction."""
    c = cone(f)
    if isinstance(f, SimplicialFunctor):
        functors = {n: Functor(f.dst.level(n), c.level(n),
                               {x: (TOP, x) for x in f.dst.level(n).objects},
                               {m: (TOP, m)
                                for m in f.dst.level(n).morphisms})
                    for n in range(f.dst.top + 1)}
        return SimplicialFunctor(f.dst, c, functors)
    maps = {n: {y: (TOP, y) for y in f.dst.level(n)}
            for n in range(f.dst.top + 1)}
    return SimplicialMap(f.dst, c, maps)


def _retag_chain(n: int, s):
    if n == 0:
        tag, x = s
        return (PT, "pt") if tag == PT else (tag, x)
    tag = s[0][0]
    if tag == PT:
        return (PT, "pt")
    return tag, tuple(m[1] for m in s)


def check_cone_nerve(f: SimplicialFunctor, top: int) -> bool:
    """Certify that the diagonal nerve of the categorical cone matches
    the simplicial-set cone of the diagonal nerve.

    The candidate bijection regroups a chain of tagged morphisms into a
    tagged chain; it is then checked to be bijective on every level and
    to commute with every face and degeneracy.
    """
    lhs = delta_nerve(cone(f), top)
    rhs = cone(delta_nerve_map(f, top))
    match = []
    for n in range(top + 1):
        table = {s: _retag_chain(n, s) for s in lhs.level(n)}
        if len(set(table.values())) != len(table):
            return False
        if set(table.values()) != set(rhs.level(n)):
            return False
        match.append(table)
    for n in range(1, top + 1):
        for i in range(n + 1):
            for s in lhs.level(n):
                if match[n - 1][lhs.face(n, i, s)] != \
                        rhs.face(n, i, match[n][s]):
                    return False
    for n in range(top):
        for j in range(n + 1):
            for s in lhs.level(n):
                if match[n + 1][lhs.degen(n, j, s)] != \
                        rhs.degen(n, j, match[n][s]):
                    return False
    return True


def pi0(x: FiniteSimplicialSet) -> tuple:
    """Path components of the 0-simplices.

    Union-find over the 1-simplices, each joining its two faces; the
    components come back ordered by first appearance in level 0.
    """
    if x.top < 1:
        raise ValueError(f"path components need levels 0 and 1, "
                         f"truncation is {x.top}")
    vertices = list(x.level(0))
    parent = {v: v for v in vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in x.level(1):
        a = find(x.face(1, 1, e))
        b = find(x.face(1, 0, e))
        if a != b:
            parent[a] = b
    order = {v: k for k, v in enumerate(vertices)}
    groups = {}
    for v in vertices:
        groups.setdefault(find(v), []).append(v)
    comps = sorted(groups.values(), key=lambda g: order[g[0]])
    return tuple(tuple(g) for g in comps)


def _atom(x) -> str:
    text = str(x)
    if not text or any(ch.isspace() for ch in text) or ":" in text \
            or "=" in text or "->" in text:
        raise ValueError(f"name {x!r} does not survive the text format")
    return text


def format_category(c: FiniteCategory) -> str:
    """Render a category in the line-oriented text format.

    Objects and morphisms whose names contain spaces or punctuation are
    renamed o0, o1, ... and m0, m1, ... in listing order.
    """
    try:
        obj = {x: _atom(x) for x in c.objects}
        mor = {m: _atom(m) for m in c.morphisms}
        if len(set(obj.values())) != len(obj) \
                or len(set(mor.values())) != len(mor):
            raise ValueError("renaming needed")
    except ValueError:
        obj = {x: f"o{k}" for k, x in enumerate(c.objects)}
        mor = {m: f"m{k}" for k, m in enumerate(c.morphisms)}
    lines = ["objects: " + " ".join(obj[x] for x in c.objects)]
    for m in c.morphisms:
        lines.append(f"morphism {mor[m]}: {obj[c.source(m)]} -> "
                     f"{obj[c.target(m)]}")
    for x in c.objects:
        lines.append(f"identity {obj[x]}: {mor[c.identity(x)]}")
    for g in c.morphisms:
        for f in c.morphisms:
            if c.source(g) == c.target(f):
                lines.append(f"compose {mor[g]} {mor[f]} = "
                             f"{mor[c.compose(g, f)]}")
    return "\n".join(lines) + "\n"


def parse_category(text: str) -> FiniteCategory:
    """Parse the text format written by format_category.

    Raises ValueError on malformed lines; the category constructor
    reports missing tables or broken laws.
    """
    objects = None
    morphisms = []
    source = {}
    target = {}
    identity = {}
    compose = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("objects:"):
            if objects is not None:
                raise ValueError("objects are listed twice")
            objects = line[len("objects:"):].split()
        elif line.startswith("morphism "):
            head, sep, arrow = line[len("morphism "):].partition(":")
            name = head.strip()
            ends = arrow.split("->")
            if not sep or not name or len(ends) != 2:
                raise ValueError(f"cannot parse morphism line: {raw!r}")
            src, dst = ends[0].split(), ends[1].split()
            if len(src) != 1 or len(dst) != 1:
                raise ValueError(f"cannot parse morphism line: {raw!r}")
            morphisms.append(name)
            source[name] = src[0]
            target[name] = dst[0]
        elif line.startswith("identity "):
            obj, sep, name = line[len("identity "):].partition(":")
            obj, name = obj.strip(), name.strip()
            if not sep or not obj or not name:
                raise ValueError(f"cannot parse identity line: {raw!r}")
            identity[obj] = name
        elif line.startswith("compose "):
            pair, sep, result = line[len("compose "):].partition("=")
            names, result = pair.split(), result.strip()
            if not sep or len(names) != 2 or not result:
                raise ValueError(f"cannot parse compose line: {raw!r}")
            compose[names[0], names[1]] = result
        else:
            raise ValueError(f"cannot parse line: {raw!r}")
    if objects is None:
        raise ValueError("category text never lists its objects")
    return FiniteCategory(objects, morphisms, source, target,
                          compose, identity)


def format_simplicial_set(x: FiniteSimplicialSet) -> str:
    """Dump a simplicial set with canonical per-level simplex ids."""
    names = {}
    for n in range(x.top + 1):
        for k, s in enumerate(x.level(n)):
            names[n, s] = f"s{n}_{k}"
    lines = [f"simplicial set: truncation {x.top}"]
    for n in range(x.top + 1):
        row = " ".join(names[n, s] for s in x.level(n))
        lines.append(f"level {n}:" + (" " + row if row else ""))
    for n in range(1, x.top + 1):
        for i in range(n + 1):
            row = " ".join(f"{names[n, s]}->{names[n - 1, x.face(n, i, s)]}"
                           for s in x.level(n))
            lines.append(f"face d_{i} level {n}:" + (" " + row if row else ""))
    for n in range(x.top):
        for j in range(n + 1):
            row = " ".join(f"{names[n, s]}->{names[n + 1, x.degen(n, j, s)]}"
                           for s in x.level(n))
            lines.append(f"degeneracy s_{j} level {n}:"
                         + (" " + row if row else ""))
    return "\n".join(lines) + "\n"
