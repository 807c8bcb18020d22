"""Finite categories ("engines") with explicit composition tables, and
functors between them.

Everything is first-order data: objects and arrows are string identifiers,
composition is a table from composable arrow pairs to arrow identifiers.
Law checking is exhaustive and witness-producing; the associativity check
walks all composable triples, which is cubic in the arrow count and fine at
the intended scale (tens of arrows).
"""

from __future__ import annotations

from dataclasses import dataclass
from collections.abc import Iterable, Mapping

from .errors import ShapeError, ValidationError
from .report import Report
from .rel import FiniteSet


@dataclass(frozen=True)
class Arrow:
    name: str
    dom: str
    cod: str


def _as_object_set(objects) -> FiniteSet:
    if isinstance(objects, FiniteSet):
        return objects
    return FiniteSet("objects", objects)


def _as_arrows(arrows) -> dict[str, Arrow]:
    if isinstance(arrows, Mapping):
        items = list(arrows.values())
    else:
        items = [a if isinstance(a, Arrow) else Arrow(*a) for a in arrows]
    out: dict[str, Arrow] = {}
    for a in items:
        if a.name in out:
            raise ShapeError(f"duplicate arrow identifier {a.name!r}")
        out[a.name] = a
    return out


class EngineCategory:
    """A finite category presented by objects, arrows, chosen identities,
    and a composition table keyed by (outer, inner) arrow pairs.

    The constructor only normalizes the data; use :func:`check_engine` to
    obtain a law report, or :func:`build_engine` to construct and validate
    in one step.
    """

    __slots__ = ("objects", "arrows", "identities", "compose_table")

    def __init__(self, objects, arrows, identities: Mapping[str, str],
                 compose_table: Mapping[tuple[str, str], str]):
        self.objects = _as_object_set(objects)
        self.arrows = _as_arrows(arrows)
        self.identities = dict(identities)
        self.compose_table = dict(compose_table)

    def arrow(self, name: str) -> Arrow:
        try:
            return self.arrows[name]
        except KeyError:
            raise ShapeError(f"unknown arrow {name!r}") from None

    def dom(self, name: str) -> str:
        return self.arrow(name).dom

    def cod(self, name: str) -> str:
        return self.arrow(name).cod

    def identity(self, obj: str) -> str:
        try:
            return self.identities[obj]
        except KeyError:
            raise ShapeError(f"no identity arrow recorded for object {obj!r}") from None

    def is_identity(self, name: str) -> bool:
        return any(ident == name for ident in self.identities.values())

    def compose(self, e: str, d: str) -> str:
        """The named composite of ``e`` after ``d``."""
        try:
            return self.compose_table[(e, d)]
        except KeyError:
            raise ShapeError(f"no composite recorded for {e!r} after {d!r}") from None

    def arrow_names(self) -> list[str]:
        return sorted(self.arrows)

    def composable_pairs(self) -> list[tuple[str, str]]:
        """All (outer, inner) pairs with cod(inner) == dom(outer), sorted."""
        pairs = [
            (e, d)
            for e in self.arrows
            for d in self.arrows
            if self.arrows[d].cod == self.arrows[e].dom
        ]
        return sorted(pairs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, EngineCategory):
            return NotImplemented
        return (
            self.objects == other.objects
            and self.arrows == other.arrows
            and self.identities == other.identities
            and self.compose_table == other.compose_table
        )

    def __repr__(self) -> str:
        return (
            f"EngineCategory({len(self.objects)} objects, {len(self.arrows)} arrows)"
        )


def check_engine(c: EngineCategory) -> Report:
    """Exhaustive category-law report: reference integrity first, then
    table totality and dom/cod coherence, then identity laws and
    associativity.  Later stages are skipped while earlier ones fail, so
    every reported witness is meaningful."""
    report = Report()
    objs = set(c.objects.elements)
    for a in sorted(c.arrows):
        arrow = c.arrows[a]
        if arrow.dom not in objs:
            report.add("unknown_object", arrow=a, object=arrow.dom)
        if arrow.cod not in objs:
            report.add("unknown_object", arrow=a, object=arrow.cod)
    for obj in c.objects:
        ident = c.identities.get(obj)
        if ident is None:
            report.add("missing_identity", object=obj)
        elif ident not in c.arrows:
            report.add("unknown_arrow", object=obj, arrow=ident)
        else:
            a = c.arrows[ident]
            if a.dom != obj or a.cod != obj:
                report.add("identity_shape", object=obj, arrow=ident)
    for obj in sorted(set(c.identities) - objs):
        report.add("unknown_object", object=obj)
    for (e, d), comp in sorted(c.compose_table.items()):
        for name in (e, d, comp):
            if name not in c.arrows:
                report.add("unknown_arrow", arrow=name, outer=e, inner=d)
    if not report.ok:
        return report.canonical()

    composable = set(c.composable_pairs())
    for e, d in sorted(composable):
        if (e, d) not in c.compose_table:
            report.add("missing_composite", outer=e, inner=d)
    for (e, d) in sorted(c.compose_table):
        if (e, d) not in composable:
            report.add("spurious_composite", outer=e, inner=d)
    for (e, d), comp in sorted(c.compose_table.items()):
        if (e, d) not in composable:
            continue
        if c.arrows[comp].dom != c.arrows[d].dom or c.arrows[comp].cod != c.arrows[e].cod:
            report.add("dom_cod_coherence", outer=e, inner=d, composite=comp)
    if not report.ok:
        return report.canonical()

    for a in sorted(c.arrows):
        right = c.compose_table[(a, c.identities[c.arrows[a].dom])]
        if right != a:
            report.add("identity_law", arrow=a, side="right", got=right)
        left = c.compose_table[(c.identities[c.arrows[a].cod], a)]
        if left != a:
            report.add("identity_law", arrow=a, side="left", got=left)
    # all composable triples: f after e after d
    for e, d in sorted(composable):
        ed = c.compose_table[(e, d)]
        for f in sorted(c.arrows):
            if c.arrows[f].dom != c.arrows[e].cod:
                continue
            fe = c.compose_table[(f, e)]
            if c.compose_table[(f, ed)] != c.compose_table[(fe, d)]:
                report.add("associativity", outer=f, middle=e, inner=d)
    return report.canonical()


def build_engine(objects, arrows, identities, compose_table) -> EngineCategory:
    """Construct an engine and verify every category law, raising a
    :class:`ValidationError` that lists all witnesses on failure."""
    c = EngineCategory(objects, arrows, identities, compose_table)
    report = check_engine(c)
    if not report.ok:
        raise ValidationError("engine violates category laws", report)
    return c


def chain_engine(n: int) -> EngineCategory:
    """The poset category 0 -> 1 -> ... -> n-1 with one arrow i -> j for
    each i <= j.  Identities are named ``id<i>``, the others ``d<i><j>``."""
    if n < 1:
        raise ShapeError(f"chain engine needs at least one object, got {n}")
    sep = "" if n <= 10 else "_"
    objs = [str(i) for i in range(n)]
    arrows = []
    identities = {}
    name = {}
    for i in range(n):
        for j in range(i, n):
            a = f"id{i}" if i == j else f"d{i}{sep}{j}"
            arrows.append(Arrow(a, str(i), str(j)))
            name[(i, j)] = a
            if i == j:
                identities[str(i)] = a
    table = {}
    for i in range(n):
        for j in range(i, n):
            for k in range(j, n):
                table[(name[(j, k)], name[(i, j)])] = name[(i, k)]
    return build_engine(objs, arrows, identities, table)


def monoid_engine(elements: Iterable[str], mult_table: Mapping[tuple[str, str], str],
                  unit: str, object_name: str = "*") -> EngineCategory:
    """One-object engine whose arrows are the monoid elements; the table
    entry (a, b) is read as "a after b".  Associativity and unit failures
    come back as a witnessed validation error."""
    elems = list(elements)
    arrows = [Arrow(m, object_name, object_name) for m in elems]
    return build_engine([object_name], arrows, {object_name: unit}, dict(mult_table))


def free_engine_on_dag(vertices: Iterable[str], edges: Iterable[tuple[str, str]]) -> EngineCategory:
    """The free category on an acyclic graph: arrows are directed paths,
    identified by their vertex sequence joined with ``>``; empty paths are
    the identities, named ``id_<vertex>``."""
    verts = list(dict.fromkeys(vertices))
    edge_set = sorted(set(edges))
    succs: dict[str, list[str]] = {v: [] for v in verts}
    for src, dst in edge_set:
        if src not in succs or dst not in succs:
            raise ShapeError(f"edge ({src!r}, {dst!r}) mentions an unknown vertex")
        succs[src].append(dst)

    # cycle detection, reporting one full cycle
    state = dict.fromkeys(verts, 0)  # 0 unvisited, 1 on stack, 2 done
    stack: list[str] = []

    def visit(v: str) -> None:
        state[v] = 1
        stack.append(v)
        for w in succs[v]:
            if state[w] == 1:
                cyc = stack[stack.index(w):] + [w]
                raise ShapeError("graph has a cycle: " + " -> ".join(cyc))
            if state[w] == 0:
                visit(w)
        stack.pop()
        state[v] = 2

    for v in verts:
        if state[v] == 0:
            visit(v)

    def paths_from(v: str) -> list[list[str]]:
        out = [[v]]
        for w in succs[v]:
            out.extend([v] + p for p in paths_from(w))
        return out

    def path_name(seq: list[str]) -> str:
        return f"id_{seq[0]}" if len(seq) == 1 else ">".join(seq)

    all_paths = [p for v in verts for p in paths_from(v)]
    arrows = [Arrow(path_name(p), p[0], p[-1]) for p in all_paths]
    identities = {v: f"id_{v}" for v in verts}
    table = {}
    for p in all_paths:
        for q in all_paths:
            if p[-1] == q[0]:
                table[(path_name(q), path_name(p))] = path_name(p + q[1:])
    return build_engine(verts, arrows, identities, table)


@dataclass(frozen=True)
class EngineFunctor:
    """Object and arrow maps between two engines."""

    source: EngineCategory
    target: EngineCategory
    object_map: dict[str, str]
    arrow_map: dict[str, str]

    def __eq__(self, other):
        if not isinstance(other, EngineFunctor):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.object_map == other.object_map
            and self.arrow_map == other.arrow_map
        )


def identity_functor(c: EngineCategory) -> EngineFunctor:
    return EngineFunctor(c, c, {o: o for o in c.objects}, {a: a for a in c.arrows})


def compose_functors(g: EngineFunctor, f: EngineFunctor) -> EngineFunctor:
    if f.target != g.source:
        raise ShapeError("functors do not meet: target of the first is not source of the second")
    return EngineFunctor(
        f.source,
        g.target,
        {o: g.object_map[f.object_map[o]] for o in f.object_map},
        {a: g.arrow_map[f.arrow_map[a]] for a in f.arrow_map},
    )


def check_functor(fun: EngineFunctor) -> Report:
    """Verify dom/cod, identity, and composition preservation; partial
    object or arrow maps are a shape error, not a law violation."""
    c, d = fun.source, fun.target
    missing_objects = [o for o in c.objects if o not in fun.object_map]
    missing_arrows = [a for a in c.arrows if a not in fun.arrow_map]
    if missing_objects or missing_arrows:
        raise ShapeError(
            f"functor maps must be total on the source "
            f"(missing objects {missing_objects}, arrows {missing_arrows})"
        )
    report = Report()
    for o, image in sorted(fun.object_map.items()):
        if image not in d.objects:
            report.add("unknown_object", object=o, image=image)
    for a, image in sorted(fun.arrow_map.items()):
        if image not in d.arrows:
            report.add("unknown_arrow", arrow=a, image=image)
    if not report.ok:
        return report.canonical()
    for a in c.arrow_names():
        fa = fun.arrow_map[a]
        if d.dom(fa) != fun.object_map[c.dom(a)]:
            report.add("dom_preservation", arrow=a, image=fa)
        if d.cod(fa) != fun.object_map[c.cod(a)]:
            report.add("cod_preservation", arrow=a, image=fa)
    for o in c.objects:
        if fun.arrow_map[c.identity(o)] != d.identity(fun.object_map[o]):
            report.add("identity_preservation", object=o)
    for e, dd in c.composable_pairs():
        lhs = fun.arrow_map[c.compose(e, dd)]
        try:
            rhs = d.compose(fun.arrow_map[e], fun.arrow_map[dd])
        except ShapeError:
            report.add("composition_preservation", outer=e, inner=dd)
            continue
        if lhs != rhs:
            report.add("composition_preservation", outer=e, inner=dd)
    return report.canonical()


def hom_set(c: EngineCategory, s: str, t: str) -> list[str]:
    """All arrows from s to t, canonically ordered."""
    if s not in c.objects:
        raise ShapeError(f"unknown object {s!r}")
    if t not in c.objects:
        raise ShapeError(f"unknown object {t!r}")
    return sorted(a for a, arr in c.arrows.items() if arr.dom == s and arr.cod == t)
