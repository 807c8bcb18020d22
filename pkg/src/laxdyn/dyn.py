"""Multi-dynamics: state sets indexed by engine objects and parameter-indexed
transition families indexed by engine arrows, subject to three laws.

A dynamic assigns to every engine object a state set (pairwise disjoint
across objects) and to every arrow a transition family between the endpoint
state sets.  Validity asks, per parameter, that every named composite's
transition is included in the relational composite of its factors, and that
every identity arrow's transition is included in the identity.  Closed
dynamics are the one-parameter case; a clock is a deterministic closed
dynamic, equivalently a genuine functor into finite sets.
"""

from __future__ import annotations

from collections.abc import Mapping

from .errors import ShapeError, ValidationError
from .report import Report
from .cat import EngineCategory
from .rel import (
    POINT,
    FiniteSet,
    Transition,
    TransitionFamily,
    compose,
    identity_family,
    is_deterministic,
    is_quasi_deterministic,
    point_set,
    transition_from_function,
)


class MultiDynamic:
    """State sets per object, transition families per arrow.

    Plain holder: shape and law checking live in :func:`build_multi_dynamic`
    and :func:`check_laws`, so deliberately broken instances can be built
    for diagnosis.
    """

    __slots__ = ("engine", "params", "states", "transitions", "_owner")

    def __init__(self, engine: EngineCategory, params: FiniteSet,
                 states: Mapping[str, FiniteSet],
                 transitions: Mapping[str, TransitionFamily]):
        self.engine = engine
        self.params = params
        self.states = dict(states)
        self.transitions = dict(transitions)
        self._owner = None

    def state_set(self, obj: str) -> FiniteSet:
        try:
            return self.states[obj]
        except KeyError:
            raise ShapeError(f"no state set for object {obj!r}") from None

    def family(self, arrow: str) -> TransitionFamily:
        try:
            return self.transitions[arrow]
        except KeyError:
            raise ShapeError(f"no transition recorded for arrow {arrow!r}") from None

    def transition(self, arrow: str, lam: str) -> Transition:
        return self.family(arrow).component(lam)

    def owner(self, state: str) -> str:
        """The object whose state set contains ``state`` (meaningful once
        disjunctivity holds)."""
        if self._owner is None:
            owner: dict[str, str] = {}
            for obj in sorted(self.states):
                for s in self.states[obj]:
                    owner.setdefault(s, obj)
            self._owner = owner
        try:
            return self._owner[state]
        except KeyError:
            raise ShapeError(f"{state!r} is not a state of this dynamic") from None

    def is_closed(self) -> bool:
        return len(self.params) == 1

    def sole_param(self) -> str:
        if not self.is_closed():
            raise ShapeError("dynamic has more than one parameter")
        return self.params.elements[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiDynamic):
            return NotImplemented
        return (
            self.engine == other.engine
            and self.params == other.params
            and self.states == other.states
            and self.transitions == other.transitions
        )

    def __repr__(self) -> str:
        total = sum(len(s) for s in self.states.values())
        return (
            f"MultiDynamic({len(self.states)} objects, {total} states, "
            f"{len(self.params)} params)"
        )


def _as_params(params) -> FiniteSet:
    return params if isinstance(params, FiniteSet) else FiniteSet("L", params)


def _as_states(engine: EngineCategory, states) -> dict[str, FiniteSet]:
    out = {}
    for obj, elems in states.items():
        out[obj] = elems if isinstance(elems, FiniteSet) else FiniteSet(obj, elems)
    return out


def check_shape(alpha: MultiDynamic) -> Report:
    """Structural coherence: one state set per object, one family per
    arrow over the declared parameters, endpoints matching the engine."""
    report = Report()
    objs = set(alpha.engine.objects.elements)
    for obj in alpha.engine.objects:
        if obj not in alpha.states:
            report.add("missing_states", object=obj)
    for obj in sorted(set(alpha.states) - objs):
        report.add("unknown_object", object=obj)
    for arrow in sorted(set(alpha.transitions) - set(alpha.engine.arrows)):
        report.add("unknown_arrow", arrow=arrow)
    if not report.ok:
        return report.canonical()
    for arrow in alpha.engine.arrow_names():
        fam = alpha.transitions.get(arrow)
        if fam is None:
            report.add("missing_transition", arrow=arrow)
            continue
        if fam.params != alpha.params:
            report.add("params_mismatch", arrow=arrow)
            continue
        a = alpha.engine.arrows[arrow]
        if fam.domain != alpha.states[a.dom] or fam.codomain != alpha.states[a.cod]:
            report.add("transition_shape", arrow=arrow)
    return report.canonical()


def check_laws(alpha: MultiDynamic) -> Report:
    """Disjunctivity, lax composition over every composable pair (identity
    pairs included), and lax identity, checked per parameter.  Assumes the
    shapes already cohere; never raises, always reports."""
    report = Report()
    objs = sorted(alpha.states)
    for i, s in enumerate(objs):
        for t in objs[i + 1:]:
            shared = set(alpha.states[s].elements) & set(alpha.states[t].elements)
            for x in sorted(shared):
                report.add("disjunctivity", object_a=s, object_b=t, state=x)
    for e, d in alpha.engine.composable_pairs():
        c = alpha.engine.compose(e, d)
        for lam in alpha.params:
            lhs = alpha.transition(c, lam)
            rhs = compose(alpha.transition(e, lam), alpha.transition(d, lam))
            for u in lhs.domain:
                if not lhs.image(u) <= rhs.image(u):
                    report.add("lax_composition", outer=e, inner=d, param=lam, state=u)
    for obj in sorted(alpha.states):
        ident = alpha.engine.identity(obj)
        for lam in alpha.params:
            t = alpha.transition(ident, lam)
            for u in t.domain:
                if not t.image(u) <= {u}:
                    report.add("lax_identity", object=obj, param=lam, state=u)
    return report.canonical()


def build_multi_dynamic(engine: EngineCategory, params, states, transitions) -> MultiDynamic:
    """Validate and return a multi-dynamic.

    Identity arrows missing from ``transitions`` default to full identity
    families.  Shape problems are reported first (and alone); once shapes
    cohere, all law violations are collected together.
    """
    params = _as_params(params)
    states = _as_states(engine, states)
    trans = dict(transitions)
    for obj in engine.objects:
        if obj not in states:
            continue
        ident = engine.identities.get(obj)
        if ident is not None and ident not in trans:
            trans[ident] = identity_family(params, states[obj])
    alpha = MultiDynamic(engine, params, states, trans)
    shape = check_shape(alpha)
    if not shape.ok:
        raise ValidationError("dynamic is malformed", shape)
    laws = check_laws(alpha)
    if not laws.ok:
        raise ValidationError("dynamic violates lax-functor laws", laws)
    return alpha


def build_closed_dynamic(engine, states, transitions, param: str = POINT) -> MultiDynamic:
    """One-parameter dynamic; ``transitions`` maps arrows to bare
    :class:`Transition` values."""
    fams = {a: TransitionFamily.singleton(t, param) for a, t in transitions.items()}
    return build_multi_dynamic(engine, point_set(param), states, fams)


def component_at(alpha: MultiDynamic, lam: str) -> MultiDynamic:
    """The closed dynamic of one parameter component, reindexed over the
    canonical one-point parameter set."""
    if lam not in alpha.params:
        raise ShapeError(f"unknown parameter {lam!r}")
    fams = {
        arrow: TransitionFamily.singleton(fam.component(lam))
        for arrow, fam in alpha.transitions.items()
    }
    return MultiDynamic(alpha.engine, point_set(), alpha.states, fams)


def clock_from_functor(engine: EngineCategory, states, state_maps: Mapping[str, Mapping[str, str]]) -> MultiDynamic:
    """Build a clock from a genuine functor into finite sets: one total
    function per arrow, strictly preserving identities and composites.
    The result always passes :func:`check_laws` and is deterministic."""
    states = _as_states(engine, states)
    report = Report()
    for obj in engine.objects:
        if obj not in states:
            raise ShapeError(f"no state set for object {obj!r}")
    maps = {}
    for arrow in engine.arrow_names():
        m = state_maps.get(arrow)
        if m is None:
            raise ShapeError(f"no state map for arrow {arrow!r}")
        a = engine.arrows[arrow]
        missing = [t for t in states[a.dom] if t not in m]
        if missing:
            raise ShapeError(f"state map for {arrow!r} is not total: missing {missing}")
        bad = sorted(v for v in m.values() if v not in states[a.cod])
        if bad:
            raise ShapeError(f"state map for {arrow!r} lands outside its codomain: {bad}")
        maps[arrow] = {t: m[t] for t in states[a.dom]}
    for obj in engine.objects:
        ident = engine.identity(obj)
        if any(maps[ident][t] != t for t in states[obj]):
            report.add("identity_map", object=obj)
    for e, d in engine.composable_pairs():
        c = engine.compose(e, d)
        dd = engine.arrows[d]
        if any(maps[c][t] != maps[e][maps[d][t]] for t in states[dd.dom]):
            report.add("composite_map", outer=e, inner=d)
    if not report.ok:
        raise ValidationError("state maps are not functorial", report.canonical())
    fams = {}
    for arrow, m in maps.items():
        a = engine.arrows[arrow]
        t = transition_from_function(states[a.dom], states[a.cod], m)
        fams[arrow] = TransitionFamily.singleton(t)
    clock = MultiDynamic(engine, point_set(), states, fams)
    shape = check_shape(clock)
    if not shape.ok:  # disjoint state sets are still the author's job
        raise ValidationError("clock is malformed", shape)
    laws = check_laws(clock)
    if not laws.ok:
        raise ValidationError("clock violates lax-functor laws", laws)
    return clock


def is_deterministic_dynamic(alpha: MultiDynamic) -> bool:
    return all(
        is_deterministic(fam.component(lam))
        for fam in alpha.transitions.values()
        for lam in alpha.params
    )


def is_quasi_deterministic_dynamic(alpha: MultiDynamic) -> bool:
    return all(
        is_quasi_deterministic(fam.component(lam))
        for fam in alpha.transitions.values()
        for lam in alpha.params
    )


def is_clock(alpha: MultiDynamic) -> bool:
    return (
        alpha.is_closed()
        and check_shape(alpha).ok
        and check_laws(alpha).ok
        and is_deterministic_dynamic(alpha)
    )


def total_state_set(alpha: MultiDynamic) -> FiniteSet:
    """The union of all objectwise state sets (disjoint by disjunctivity);
    ownership is answered by ``alpha.owner``."""
    return FiniteSet("st", (s for fs in alpha.states.values() for s in fs))


def qualify_state_names(states: Mapping[str, object]) -> dict[str, FiniteSet]:
    """Prefix every state with its owning object, ``obj::state``, for specs
    whose raw names would collide across objects."""
    out = {}
    for obj, elems in states.items():
        out[obj] = FiniteSet(obj, (f"{obj}::{s}" for s in elems))
    return out
