"""Dynamorphisms: lax-natural families of transitions between dynamics.

One record covers every variant: a parameter map, an engine functor, and a
transition per source object.  Fixed-engine or fixed-parameter morphisms are
just the cases where those parts are identities.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence

from .errors import ShapeError
from .report import Report
from .cat import EngineFunctor, check_functor, compose_functors, identity_functor
from .dyn import MultiDynamic
from .rel import Transition, compose, identity_transition, is_deterministic, is_quasi_deterministic


class Dynamorphism:
    __slots__ = ("source", "target", "theta", "functor", "components")

    def __init__(self, source: MultiDynamic, target: MultiDynamic,
                 theta: Mapping[str, str], functor: EngineFunctor,
                 components: Mapping[str, Transition]):
        self.source = source
        self.target = target
        self.theta = dict(theta)
        self.functor = functor
        self.components = dict(components)

    def component(self, obj: str) -> Transition:
        try:
            return self.components[obj]
        except KeyError:
            raise ShapeError(f"no component for object {obj!r}") from None

    def __eq__(self, other) -> bool:
        if not isinstance(other, Dynamorphism):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.theta == other.theta
            and self.functor == other.functor
            and self.components == other.components
        )

    def __repr__(self) -> str:
        return f"Dynamorphism({len(self.components)} components)"


def identity_dynamorphism(alpha: MultiDynamic) -> Dynamorphism:
    return Dynamorphism(
        alpha,
        alpha,
        {lam: lam for lam in alpha.params},
        identity_functor(alpha.engine),
        {obj: identity_transition(alpha.states[obj]) for obj in alpha.states},
    )


def _check_morphism_shape(m: Dynamorphism) -> None:
    if m.functor.source != m.source.engine or m.functor.target != m.target.engine:
        raise ShapeError("functor does not run between the two engines")
    fun_report = check_functor(m.functor)
    if not fun_report.ok:
        raise ShapeError(
            "engine functor violates functor laws: " + "; ".join(fun_report.lines())
        )
    missing = [lam for lam in m.source.params if lam not in m.theta]
    if missing:
        raise ShapeError(f"parameter map is not total: missing {missing}")
    bad = sorted(mu for mu in m.theta.values() if mu not in m.target.params)
    if bad:
        raise ShapeError(f"parameter map lands outside the target parameters: {bad}")
    for obj in m.source.engine.objects:
        t = m.component(obj)
        expect_dom = m.source.state_set(obj)
        expect_cod = m.target.state_set(m.functor.object_map[obj])
        if t.domain != expect_dom or t.codomain != expect_cod:
            raise ShapeError(
                f"component at {obj!r} has shape {t.domain.name}~>{t.codomain.name}, "
                f"expected states of {obj!r} into states of "
                f"{m.functor.object_map[obj]!r}"
            )


def check_dynamorphism(m: Dynamorphism) -> Report:
    """Lax naturality for every (parameter, arrow): the component at the
    target object after the source transition must be included in the
    mapped target transition after the component at the source object.
    Witnesses are (param, arrow, state)."""
    _check_morphism_shape(m)
    report = Report()
    for lam in m.source.params:
        mu = m.theta[lam]
        for arrow in m.source.engine.arrow_names():
            a = m.source.engine.arrows[arrow]
            lhs = compose(m.component(a.cod), m.source.transition(arrow, lam))
            rhs = compose(
                m.target.transition(m.functor.arrow_map[arrow], mu),
                m.component(a.dom),
            )
            for u in lhs.domain:
                if not lhs.image(u) <= rhs.image(u):
                    report.add("lax_naturality", param=lam, arrow=arrow, state=u)
    return report.canonical()


def check_same_engine_multi(m: Dynamorphism) -> Report:
    """check_dynamorphism specialized to a shared engine, so serialized
    morphisms may omit the functor; anything but the identity functor is
    rejected."""
    if m.functor != identity_functor(m.source.engine):
        raise ShapeError("same-engine check requires the identity functor")
    return check_dynamorphism(m)


def compose_dynamorphisms(g: Dynamorphism, f: Dynamorphism) -> Dynamorphism:
    """g after f; defined when f's target is g's source dynamic."""
    if f.target != g.source:
        raise ShapeError("dynamorphisms do not meet: target of the first is not source of the second")
    theta = {lam: g.theta[f.theta[lam]] for lam in f.theta}
    functor = compose_functors(g.functor, f.functor)
    components = {
        obj: compose(g.component(f.functor.object_map[obj]), f.component(obj))
        for obj in f.components
    }
    return Dynamorphism(f.source, g.target, theta, functor, components)


def is_deterministic_morphism(m: Dynamorphism) -> bool:
    return all(is_deterministic(t) for t in m.components.values())


def is_quasi_deterministic_morphism(m: Dynamorphism) -> bool:
    return all(is_quasi_deterministic(t) for t in m.components.values())


def naturality_intersection_check(components: Mapping[str, Transition],
                                  pairs: Sequence[tuple[MultiDynamic, MultiDynamic]]) -> Report:
    """Check that one family of transitions is lax-natural for *every*
    listed (source, target) pair simultaneously.

    The family is taken as bare data, without a bound source or target; this
    is the forgetful reading under which morphism sets of different dynamics
    can intersect.  All sources must share an engine and states, likewise
    all targets, and each pair must agree on parameters.
    """
    if not pairs:
        raise ShapeError("need at least one (source, target) pair")
    engine = pairs[0][0].engine
    src_states = pairs[0][0].states
    tgt_states = pairs[0][1].states
    for a, b in pairs:
        if a.engine != engine or b.engine != engine:
            raise ShapeError("all dynamics must share one engine")
        if a.states != src_states:
            raise ShapeError("all sources must share their state sets")
        if b.states != tgt_states:
            raise ShapeError("all targets must share their state sets")
        if a.params != b.params:
            raise ShapeError("each pair must share its parameter set")
    for obj in engine.objects:
        t = components.get(obj)
        if t is None:
            raise ShapeError(f"no component for object {obj!r}")
        if t.domain != src_states[obj] or t.codomain != tgt_states[obj]:
            raise ShapeError(f"component at {obj!r} has the wrong shape")
    report = Report()
    for i, (a, b) in enumerate(pairs):
        for lam in a.params:
            for arrow in engine.arrow_names():
                arr = engine.arrows[arrow]
                lhs = compose(components[arr.cod], a.transition(arrow, lam))
                rhs = compose(b.transition(arrow, lam), components[arr.dom])
                for u in lhs.domain:
                    if not lhs.image(u) <= rhs.image(u):
                        report.add(
                            "lax_naturality",
                            pair=str(i), param=lam, arrow=arrow, state=u,
                        )
    return report.canonical()
