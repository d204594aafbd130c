"""Executable equivalence relations, class values, and congruence checking.

A quotient construction here has three ingredients: an :class:`EquivRelation`
bundling a decision procedure with a carrier test and a related-pair
generator, :class:`EquivClass` values whose equality delegates to the
relation, and bounded congruence checks that certify (up to a budget) that a
candidate function is independent of the representative chosen from each
class.  Certified functions can then be lifted to operate on class values.

Nothing in this module proves anything: a ``certified`` verdict means "no
counterexample among the first `budget` generated cases", and every
``refuted`` verdict carries a counterexample that can be re-checked from
scratch.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Callable, Generic, Iterable, Sequence, TypeVar

from .errors import DomainError, RelationMismatchError, UncertifiedLiftError

T = TypeVar("T")
S = TypeVar("S")
S1 = TypeVar("S1")
S2 = TypeVar("S2")
D = TypeVar("D")


class Verdict(str, enum.Enum):
    CERTIFIED = "certified"
    REFUTED = "refuted"
    NO_SAMPLES = "no-samples"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class EquivRelation(Generic[T]):
    """An executable equivalence relation on a carrier set.

    `decider` answers whether two carrier elements are related, `carrier`
    tests membership in the underlying set, and `related_pairs` produces, for
    a given budget, a deterministic finite sequence of related pairs used by
    the bounded checks.  `canonicalize`, when present, maps every element to
    the distinguished representative of its class.
    """

    name: str
    decider: Callable[[T, T], bool]
    carrier: Callable[[T], bool]
    related_pairs: Callable[[int], Sequence[tuple[T, T]]]
    canonicalize: Callable[[T], T] | None = None

    def __repr__(self) -> str:
        return f"EquivRelation({self.name!r})"

    def same_as(self, other: "EquivRelation") -> bool:
        return self.name == other.name


@dataclass(frozen=True)
class EquivClass(Generic[T]):
    """One equivalence class, held as a single stored representative.

    Two class values over the same relation compare equal exactly when the
    relation's decider relates their representatives.  When the relation has
    a canonicalizer the stored representative is canonical, so equality (and
    hashing) reduce to plain representative comparison.
    """

    representative: T
    relation: EquivRelation[T] = field(repr=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, EquivClass):
            return NotImplemented
        return class_eq(self, other)

    def __hash__(self) -> int:
        if self.relation.canonicalize is not None:
            return hash((self.relation.name, self.representative))
        # No canonical form: fall back to a per-relation constant so that
        # hashing stays consistent with decider-based equality.
        return hash(self.relation.name)

    def __repr__(self) -> str:
        return f"[{self.representative!r}]/{self.relation.name}"


@dataclass(frozen=True)
class RespectMap(Generic[S, D]):
    """A candidate function from one quotient, with its target equality.

    `target_eq` is plain equality for functions into ordinary values, or a
    target relation's decider for functions back into (representatives of) a
    quotient.
    """

    function: Callable[[S], D]
    source: EquivRelation[S]
    target_eq: Callable[[D, D], bool]
    name: str = ""


@dataclass(frozen=True)
class RespectMap2(Generic[S1, S2, D]):
    """Two-argument analog of :class:`RespectMap`."""

    function: Callable[[S1, S2], D]
    source1: EquivRelation[S1]
    source2: EquivRelation[S2]
    target_eq: Callable[[D, D], bool]
    name: str = ""


@dataclass(frozen=True)
class CongruenceReport(Generic[S]):
    """Outcome of a bounded congruence check.

    `checked` is the number of cases actually examined (the generator may
    exhaust before the requested budget).  A refuted report's counterexample
    re-validates independently: the source decider holds on it and the
    target equality fails on its images.
    """

    verdict: Verdict
    checked: int
    counterexample: tuple | None = None
    note: str | None = None

    @property
    def certified(self) -> bool:
        return self.verdict is Verdict.CERTIFIED


@dataclass(frozen=True)
class EquivalenceReport(Generic[T]):
    """Outcome of checking that a relation is an equivalence relation.

    On refutation, `law` names the violated property and `witness` is the
    offending tuple of elements.
    """

    verdict: Verdict
    checked: int
    law: str | None = None
    witness: tuple | None = None

    @property
    def certified(self) -> bool:
        return self.verdict is Verdict.CERTIFIED


def filtered_pairs(
    elements: Sequence[T], decider: Callable[[T, T], bool]
) -> Callable[[int], list[tuple[T, T]]]:
    """Fallback related-pair generator: filter the Cartesian product of a
    finite element sample.  Quadratic and blind to the relation's structure;
    a dedicated generator beats it whenever one exists."""

    def related_pairs(budget: int) -> list[tuple[T, T]]:
        out: list[tuple[T, T]] = []
        for x, y in itertools.product(elements, repeat=2):
            if len(out) >= budget:
                break
            if decider(x, y):
                out.append((x, y))
        return out

    return related_pairs


def _sample_elements(rel: EquivRelation[T], pairs: Iterable[tuple[T, T]]) -> list[T]:
    """Distinct carrier elements drawn from generated pairs, in first-seen
    order, followed by their canonical forms (which are fixpoints)."""
    seen: dict = {}
    for x, y in pairs:
        seen.setdefault(x, None)
        seen.setdefault(y, None)
    if rel.canonicalize is not None:
        for x in list(seen):
            seen.setdefault(rel.canonicalize(x), None)
    return list(seen)


def check_equivalence(rel: EquivRelation[T], budget: int) -> EquivalenceReport[T]:
    """Test reflexivity, symmetry, and transitivity on sampled elements.

    Samples come from `rel.related_pairs(budget)`; the generator's own
    contract (emitted pairs are related and lie in the carrier) is checked
    first.  When a canonicalizer is present its laws are checked as well.
    Returns the first violation found, a no-samples verdict for a degenerate
    generator, or certified-up-to-budget.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    pairs = list(rel.related_pairs(budget))[:budget]
    checked = 0

    for x, y in pairs:
        checked += 1
        if not (rel.carrier(x) and rel.carrier(y)):
            return EquivalenceReport(Verdict.REFUTED, checked, "pair-generator-carrier", (x, y))
        if not rel.decider(x, y):
            return EquivalenceReport(Verdict.REFUTED, checked, "pair-generator-decider", (x, y))

    elems = _sample_elements(rel, pairs)
    if not elems:
        return EquivalenceReport(Verdict.NO_SAMPLES, checked)

    for x in elems:
        checked += 1
        if not rel.decider(x, x):
            return EquivalenceReport(Verdict.REFUTED, checked, "reflexivity", (x, x))

    for x, y in pairs:
        checked += 1
        if not rel.decider(y, x):
            return EquivalenceReport(Verdict.REFUTED, checked, "symmetry", (x, y))

    # Chain generated pairs through shared midpoints for transitivity.
    by_first: dict = {}
    for x, y in pairs:
        by_first.setdefault(x, []).append(y)
    chains = 0
    for x, y in pairs:
        if chains >= budget:
            break
        for z in by_first.get(y, ()):
            chains += 1
            checked += 1
            if not rel.decider(x, z):
                return EquivalenceReport(Verdict.REFUTED, checked, "transitivity", (x, y, z))
            if chains >= budget:
                break

    # Cross-sample a bounded cube of elements for laws the generator's own
    # pairs cannot expose (e.g. unrelated elements turning out related).
    cube = elems[: max(2, round(budget ** (1 / 3)) + 2)]
    probes = 0
    for a, b in itertools.product(cube, repeat=2):
        if probes >= budget:
            break
        probes += 1
        checked += 1
        if rel.decider(a, b) and not rel.decider(b, a):
            return EquivalenceReport(Verdict.REFUTED, checked, "symmetry", (a, b))
    probes = 0
    for a, b, c in itertools.product(cube, repeat=3):
        if probes >= budget:
            break
        probes += 1
        if rel.decider(a, b) and rel.decider(b, c):
            checked += 1
            if not rel.decider(a, c):
                return EquivalenceReport(Verdict.REFUTED, checked, "transitivity", (a, b, c))

    if rel.canonicalize is not None:
        canon = rel.canonicalize
        for x in elems:
            checked += 1
            if not rel.decider(x, canon(x)):
                return EquivalenceReport(Verdict.REFUTED, checked, "canonical-related", (x, canon(x)))
        for x, y in pairs:
            checked += 1
            if canon(x) != canon(y):
                return EquivalenceReport(Verdict.REFUTED, checked, "canonical-agreement", (x, y))

    return EquivalenceReport(Verdict.CERTIFIED, checked)


def class_of(rel: EquivRelation[T], x: T) -> EquivClass[T]:
    """The class of `x`, stored canonically when the relation supports it."""
    if not rel.carrier(x):
        raise DomainError(f"{x!r} is not in the carrier of {rel.name}")
    rep = rel.canonicalize(x) if rel.canonicalize is not None else x
    return EquivClass(rep, rel)


def class_eq(a: EquivClass[T], b: EquivClass[T]) -> bool:
    """Class equality: the relation's decider applied to representatives."""
    if not a.relation.same_as(b.relation):
        raise RelationMismatchError(
            f"cannot compare classes over {a.relation.name} and {b.relation.name}"
        )
    return a.relation.decider(a.representative, b.representative)


def check_respects(m: RespectMap[S, D], budget: int) -> CongruenceReport[S]:
    """Check `target_eq(f(x), f(y))` over generated related pairs (x, y)."""
    if budget < 1:
        raise ValueError("budget must be >= 1")
    f = m.function
    checked = 0
    for x, y in itertools.islice(m.source.related_pairs(budget), budget):
        checked += 1
        if not m.target_eq(f(x), f(y)):
            return CongruenceReport(Verdict.REFUTED, checked, (x, y))
    if checked == 0:
        return CongruenceReport(Verdict.NO_SAMPLES, 0)
    return CongruenceReport(Verdict.CERTIFIED, checked)


def check_respects2(m2: RespectMap2[S1, S2, D], budget: int) -> CongruenceReport:
    """Check `target_eq(f(x, u), f(y, v))` over pairs of related pairs.

    Related pairs (x, y) are drawn from the first source relation and
    (u, v) from the second; their product is scanned in row-major order up
    to `budget` cases.  A counterexample is the pair ((x, y), (u, v)).
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    side = max(1, int(budget ** 0.5) + 1)
    pairs1 = list(itertools.islice(m2.source1.related_pairs(side), side))
    pairs2 = list(itertools.islice(m2.source2.related_pairs(side), side))
    f = m2.function
    checked = 0
    for (x, y), (u, v) in itertools.product(pairs1, pairs2):
        if checked >= budget:
            break
        checked += 1
        if not m2.target_eq(f(x, u), f(y, v)):
            return CongruenceReport(Verdict.REFUTED, checked, ((x, y), (u, v)))
    if checked == 0:
        return CongruenceReport(Verdict.NO_SAMPLES, 0)
    return CongruenceReport(Verdict.CERTIFIED, checked)


def respects2_via_commutativity(m2: RespectMap2[S, S, D], budget: int) -> CongruenceReport:
    """Certify a two-argument function via commutativity plus one argument.

    When `f` is commutative (up to the target equality) and respects the
    relation in its first argument, it respects it in both.  If the
    commutativity probe fails, this falls back to the full two-argument
    check and says so in the report's note.  Requires both source relations
    to be the same relation.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    if not m2.source1.same_as(m2.source2):
        raise RelationMismatchError(
            "commutativity shortcut needs one relation, got "
            f"{m2.source1.name} and {m2.source2.name}"
        )
    rel = m2.source1
    f = m2.function
    side = max(1, int(budget ** 0.5) + 1)
    pairs = list(itertools.islice(rel.related_pairs(side), side))
    elems = _sample_elements(rel, pairs)
    if not elems:
        return CongruenceReport(Verdict.NO_SAMPLES, 0)

    checked = 0
    half = max(1, budget // 2)
    for a, b in itertools.product(elems, repeat=2):
        if checked >= half:
            break
        checked += 1
        if not m2.target_eq(f(a, b), f(b, a)):
            full = check_respects2(m2, budget)
            note = f"not commutative at ({a!r}, {b!r}); ran the full two-argument check"
            return CongruenceReport(full.verdict, checked + full.checked, full.counterexample, note)

    for x, y in pairs:
        for c in elems:
            if checked >= budget:
                break
            checked += 1
            if not m2.target_eq(f(x, c), f(y, c)):
                return CongruenceReport(Verdict.REFUTED, checked, ((x, y), (c, c)))
    return CongruenceReport(
        Verdict.CERTIFIED, checked, note="via commutativity and single-argument respect"
    )


@dataclass(frozen=True)
class LiftedFunction(Generic[S, D]):
    """A function on class values, obtained by applying the underlying map
    to the stored representative.

    `checked` records whether a certified congruence report backed the lift;
    unchecked lifts are permitted only when explicitly requested and stay
    flagged here.
    """

    map: RespectMap[S, D]
    certificate: CongruenceReport[S] | None
    checked: bool

    def __call__(self, a: EquivClass[S]) -> D:
        if not a.relation.same_as(self.map.source):
            raise RelationMismatchError(
                f"lifted over {self.map.source.name}, applied to {a.relation.name}"
            )
        return self.map.function(a.representative)


@dataclass(frozen=True)
class LiftedFunction2(Generic[S1, S2, D]):
    """Two-argument analog of :class:`LiftedFunction`."""

    map: RespectMap2[S1, S2, D]
    certificate: CongruenceReport | None
    checked: bool

    def __call__(self, a: EquivClass[S1], b: EquivClass[S2]) -> D:
        if not a.relation.same_as(self.map.source1):
            raise RelationMismatchError(
                f"lifted over {self.map.source1.name}, applied to {a.relation.name}"
            )
        if not b.relation.same_as(self.map.source2):
            raise RelationMismatchError(
                f"lifted over {self.map.source2.name}, applied to {b.relation.name}"
            )
        return self.map.function(a.representative, b.representative)


def lift1(
    cert: CongruenceReport[S] | None,
    m: RespectMap[S, D],
    strict: bool = True,
) -> LiftedFunction[S, D]:
    """Lift a one-argument map to class values.

    In strict mode (the default) a certified report is required; a refuted
    or missing one raises, carrying the counterexample.  Passing
    ``strict=False`` permits the lift anyway, flagged as unchecked.
    """
    certified = cert is not None and cert.certified
    if strict and not certified:
        detail = "no certificate" if cert is None else f"verdict {cert.verdict}"
        if cert is not None and cert.counterexample is not None:
            detail += f", counterexample {cert.counterexample!r}"
        raise UncertifiedLiftError(f"strict lift rejected: {detail}", report=cert)
    return LiftedFunction(m, cert, certified)


def lift2(
    cert: CongruenceReport | None,
    m2: RespectMap2[S1, S2, D],
    strict: bool = True,
) -> LiftedFunction2[S1, S2, D]:
    """Two-argument analog of :func:`lift1`."""
    certified = cert is not None and cert.certified
    if strict and not certified:
        detail = "no certificate" if cert is None else f"verdict {cert.verdict}"
        if cert is not None and cert.counterexample is not None:
            detail += f", counterexample {cert.counterexample!r}"
        raise UncertifiedLiftError(f"strict lift rejected: {detail}", report=cert)
    return LiftedFunction2(m2, cert, certified)


def revalidate_counterexample(m: RespectMap[S, D], report: CongruenceReport[S]) -> bool:
    """Re-check a refuted one-argument report from scratch."""
    if report.counterexample is None:
        return False
    x, y = report.counterexample
    return m.source.decider(x, y) and not m.target_eq(m.function(x), m.function(y))


def revalidate_counterexample2(m2: RespectMap2, report: CongruenceReport) -> bool:
    """Re-check a refuted two-argument report from scratch."""
    if report.counterexample is None:
        return False
    (x, y), (u, v) = report.counterexample
    return (
        m2.source1.decider(x, y)
        and m2.source2.decider(u, v)
        and not m2.target_eq(m2.function(x, u), m2.function(y, v))
    )
