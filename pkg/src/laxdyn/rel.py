"""Finite sets, set-valued transitions, and the constraint order.

A transition from U to V assigns to every element of U a subset of V; it is
the same data as a binary relation U -> V.  Transitions compose relationally
and are compared by the *constraint* order: phi <= psi when phi's images
contain psi's pointwise, i.e. psi is the more constraining of the two.
Parameter-indexed families of transitions carry the same structure
componentwise.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping

from .errors import ShapeError

POINT = "•"  # canonical one-element parameter set uses this single label


class FiniteSet:
    """A named finite set of string identifiers, kept sorted.

    The name is a diagnostic label only: equality and hashing compare the
    sorted element lists, nothing else.
    """

    __slots__ = ("name", "elements")

    def __init__(self, name: str, elements: Iterable[str]):
        elems = tuple(sorted(elements))
        seen = set()
        for e in elems:
            if not isinstance(e, str) or not e:
                raise ShapeError(f"set {name!r}: elements must be non-empty strings, got {e!r}")
            if e in seen:
                raise ShapeError(f"set {name!r}: duplicate element {e!r}")
            seen.add(e)
        self.name = name
        self.elements = elems

    def __contains__(self, e) -> bool:
        return e in self.elements

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteSet):
            return NotImplemented
        return self.elements == other.elements

    def __hash__(self) -> int:
        return hash(self.elements)

    def __repr__(self) -> str:
        return f"FiniteSet({self.name!r}, {list(self.elements)!r})"


def point_set(label: str = POINT) -> FiniteSet:
    """The canonical one-element parameter set used by closed dynamics."""
    return FiniteSet(label, (label,))


class Transition:
    """A total map from a domain set into subsets of a codomain set.

    Every domain element must have an image (the empty subset is allowed,
    but it must be written down); every image element must belong to the
    codomain.  Instances are immutable once built.
    """

    __slots__ = ("domain", "codomain", "_image")

    def __init__(self, domain: FiniteSet, codomain: FiniteSet, image: Mapping[str, Iterable[str]]):
        missing = [u for u in domain if u not in image]
        if missing:
            raise ShapeError(f"transition {domain.name}~>{codomain.name}: no image for {missing}")
        extra = [u for u in image if u not in domain]
        if extra:
            raise ShapeError(
                f"transition {domain.name}~>{codomain.name}: image keys {sorted(extra)} "
                f"are not domain elements"
            )
        img = {}
        cod = set(codomain.elements)
        for u in domain:
            targets = frozenset(image[u])
            stray = sorted(targets - cod)
            if stray:
                raise ShapeError(
                    f"transition {domain.name}~>{codomain.name}: image of {u!r} "
                    f"contains {stray}, not in the codomain"
                )
            img[u] = targets
        self.domain = domain
        self.codomain = codomain
        self._image = img

    def image(self, u: str) -> frozenset[str]:
        try:
            return self._image[u]
        except KeyError:
            raise ShapeError(f"{u!r} is not in the domain {self.domain.name!r}") from None

    def as_function(self) -> dict[str, str]:
        """View a deterministic transition as a total function."""
        if not is_deterministic(self):
            raise ShapeError("transition is not deterministic, no function view")
        return {u: next(iter(self._image[u])) for u in self.domain}

    def as_partial_function(self) -> dict[str, str]:
        """View a quasi-deterministic transition as a partial function
        (elements with empty image are simply absent)."""
        if not is_quasi_deterministic(self):
            raise ShapeError("transition is not quasi-deterministic, no partial function view")
        return {u: next(iter(ts)) for u, ts in self._image.items() if ts}

    def __eq__(self, other) -> bool:
        if not isinstance(other, Transition):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.codomain == other.codomain
            and self._image == other._image
        )

    def __hash__(self):
        return hash((self.domain, self.codomain, tuple(sorted((u, ts) for u, ts in self._image.items()))))

    def __repr__(self) -> str:
        img = {u: sorted(ts) for u, ts in sorted(self._image.items())}
        return f"Transition({self.domain.name}~>{self.codomain.name}, {img})"


def empty_transition(domain: FiniteSet, codomain: FiniteSet) -> Transition:
    return Transition(domain, codomain, {u: () for u in domain})


def full_transition(domain: FiniteSet, codomain: FiniteSet) -> Transition:
    return Transition(domain, codomain, {u: codomain.elements for u in domain})


def identity_transition(u: FiniteSet) -> Transition:
    """Each element maps to the singleton containing itself."""
    return Transition(u, u, {x: (x,) for x in u})


def transition_from_function(domain: FiniteSet, codomain: FiniteSet, f: Mapping[str, str]) -> Transition:
    """Deterministic transition built from a total function."""
    missing = [u for u in domain if u not in f]
    if missing:
        raise ShapeError(f"function view: no value for {missing}")
    return Transition(domain, codomain, {u: (f[u],) for u in domain})


def transition_from_partial(domain: FiniteSet, codomain: FiniteSet, f: Mapping[str, str]) -> Transition:
    """Quasi-deterministic transition from a partial function (dict)."""
    return Transition(domain, codomain, {u: ((f[u],) if u in f else ()) for u in domain})


def compose(psi: Transition, phi: Transition) -> Transition:
    """Relational composite, apply ``phi`` first: the image of u is the
    union of psi-images over phi(u)."""
    if phi.codomain != psi.domain:
        raise ShapeError(
            f"cannot compose {psi!r} after {phi!r}: "
            f"codomain {phi.codomain.name!r} does not match domain {psi.domain.name!r}"
        )
    image = {
        u: frozenset(w for v in phi.image(u) for w in psi.image(v))
        for u in phi.domain
    }
    return Transition(phi.domain, psi.codomain, image)


def is_deterministic(t: Transition) -> bool:
    return all(len(t.image(u)) == 1 for u in t.domain)


def is_quasi_deterministic(t: Transition) -> bool:
    return all(len(t.image(u)) <= 1 for u in t.domain)


def _require_same_shape(phi: Transition, psi: Transition, what: str) -> None:
    if phi.domain != psi.domain or phi.codomain != psi.codomain:
        raise ShapeError(
            f"{what} needs a shared shape, got {phi!r} and {psi!r}"
        )


def leq_constraint(phi: Transition, psi: Transition) -> bool:
    """phi <= psi in the constraint order: psi is more constraining,
    i.e. phi's image contains psi's at every point."""
    _require_same_shape(phi, psi, "constraint order")
    return all(phi.image(u) >= psi.image(u) for u in phi.domain)


def subseteq(phi: Transition, psi: Transition) -> bool:
    """Pointwise inclusion of images (leq_constraint with sides swapped)."""
    _require_same_shape(phi, psi, "inclusion")
    return all(phi.image(u) <= psi.image(u) for u in phi.domain)


class TransitionFamily:
    """A parameter-indexed family of transitions with a shared shape."""

    __slots__ = ("params", "domain", "codomain", "components")

    def __init__(self, params: FiniteSet, domain: FiniteSet, codomain: FiniteSet,
                 components: Mapping[str, Transition]):
        if len(params) == 0:
            raise ShapeError("parameter set of a family must be non-empty")
        missing = [p for p in params if p not in components]
        if missing:
            raise ShapeError(f"family: no component for parameters {missing}")
        extra = [p for p in components if p not in params]
        if extra:
            raise ShapeError(f"family: components {sorted(extra)} are not parameters")
        comps = {}
        for lam in params:
            t = components[lam]
            if t.domain != domain or t.codomain != codomain:
                raise ShapeError(
                    f"family component {lam!r} has shape "
                    f"{t.domain.name}~>{t.codomain.name}, expected "
                    f"{domain.name}~>{codomain.name}"
                )
            comps[lam] = t
        self.params = params
        self.domain = domain
        self.codomain = codomain
        self.components = comps

    def component(self, lam: str) -> Transition:
        try:
            return self.components[lam]
        except KeyError:
            raise ShapeError(f"unknown parameter {lam!r}") from None

    @classmethod
    def singleton(cls, t: Transition, param: str = POINT) -> "TransitionFamily":
        return cls(point_set(param), t.domain, t.codomain, {param: t})

    @classmethod
    def constant(cls, params: FiniteSet, t: Transition) -> "TransitionFamily":
        return cls(params, t.domain, t.codomain, {lam: t for lam in params})

    def __eq__(self, other) -> bool:
        if not isinstance(other, TransitionFamily):
            return NotImplemented
        return (
            self.params == other.params
            and self.domain == other.domain
            and self.codomain == other.codomain
            and self.components == other.components
        )

    def __repr__(self) -> str:
        return (
            f"TransitionFamily({self.params.name}, "
            f"{self.domain.name}~>{self.codomain.name}, {len(self.params)} components)"
        )


def identity_family(params: FiniteSet, u: FiniteSet) -> TransitionFamily:
    return TransitionFamily.constant(params, identity_transition(u))


def compose_family(psi: TransitionFamily, phi: TransitionFamily) -> TransitionFamily:
    """Componentwise relational composition, phi first."""
    if phi.params != psi.params:
        raise ShapeError(
            f"cannot compose families over different parameter sets "
            f"{list(phi.params)} and {list(psi.params)}"
        )
    if phi.codomain != psi.domain:
        raise ShapeError(f"cannot compose {psi!r} after {phi!r}: shapes do not meet")
    comps = {lam: compose(psi.component(lam), phi.component(lam)) for lam in phi.params}
    return TransitionFamily(phi.params, phi.domain, psi.codomain, comps)


def leq_family(phi: TransitionFamily, psi: TransitionFamily) -> bool:
    """Componentwise constraint order."""
    if phi.params != psi.params:
        raise ShapeError("families over different parameter sets are incomparable")
    if phi.domain != psi.domain or phi.codomain != psi.codomain:
        raise ShapeError("families of different shapes are incomparable")
    return all(leq_constraint(phi.component(lam), psi.component(lam)) for lam in phi.params)
