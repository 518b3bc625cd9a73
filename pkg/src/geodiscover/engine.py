"""Discovery pipeline.

Phase order is fixed: point identities first (an undecidable identity halts
the run), then collinear triples, concyclic quadruples, parallel lines,
congruent segments, and finally perpendicular lines.  Each phase enumerates
over registry classes, filters candidates numerically over several seeded
re-instantiations, proves the survivors symbolically, and feeds proved facts
back into the registry so later candidates can be skipped.
"""

from __future__ import annotations

import hashlib
import random
import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from . import statements as st
from .algebraize import AlgebraicTranslation, algebraize_construction, algebraize_statement
from .construction import Construction
from .dsl import format_statement
from .errors import (
    CollinearSubsetError,
    DiscoveryCancelledError,
    UnknownReferenceError,
    WallTimeExceededError,
)
from .groebner import ProofVerdict, decide
from .numeric import check_statement, diameter, draw_instances
from .parametrize import build_parametrization, statement_vanishes
from .registry import Registry
from .report import ConjectureRecord, DiscoveryReport, TheoremEntry


@dataclass
class DiscoveryConfig:
    """Knobs for one discovery job.

    ``pin`` places the first two free points at (0,0)/(1,0) inside proofs;
    every supported statement kind is similarity-invariant, so this is a pure
    speedup and stays on by default.
    """

    tolerance: float = 1e-8
    resamples: int = 4
    seed: int = 0
    timeout_s: float = 5.0
    box: Tuple[float, float] = (-10.0, 10.0)
    prune: bool = True
    pin: bool = True
    wall_cap_s: Optional[float] = None
    counterexample_tries: int = 6
    cancel: Optional[Callable[[], bool]] = None


def make_exact_oracle(
    construction: Construction,
    translation: AlgebraicTranslation,
    theses,
    rng: random.Random,
    tries: int,
):
    """Counterexample search over exact instances; None when the construction
    has a two-valued intersection (no exact evaluation).

    A pinned translation only accepts instances whose pinned points sit at
    their anchors, so the declared figure is skipped and draws are forced."""
    if not construction.exactly_computable:
        return None
    from .numeric import random_exact_instance

    pinned = translation.pinned

    def fn():
        instance = construction.exact_coords() if not pinned else None
        for _ in range(tries):
            if instance is None and pinned:
                instance = random_exact_instance(construction, rng, forced=pinned)
            if instance is not None:
                values = translation.instance_values(instance)
                for thesis in theses:
                    v = thesis.evaluate(values)
                    if v != 0 and not (hasattr(v, "is_zero") and v.is_zero()):
                        return {
                            p: (str(instance[p][0]), str(instance[p][1]))
                            for p in translation.points
                        }
            instance = random_exact_instance(
                construction, rng, forced=pinned if pinned else None
            )
        return None

    return fn


class _Job:
    def __init__(self, construction: Construction, target: str, config: DiscoveryConfig):
        if not construction.has_point(target):
            raise UnknownReferenceError(f"unknown target point '{target}'")
        if target in construction.hidden:
            raise UnknownReferenceError(f"target point '{target}' is hidden")
        self.construction = construction
        self.target = target
        self.config = config
        self.visible = construction.visible_points()
        self.registry = Registry(self.visible)
        self.records: List[ConjectureRecord] = []
        self.numeric_ms = 0.0
        self.symbolic_ms = 0.0
        self._wall_deadline = (
            time.perf_counter() + config.wall_cap_s if config.wall_cap_s else None
        )
        self._translations: Dict[FrozenSet[str], AlgebraicTranslation] = {}
        self._params: Dict[FrozenSet[str], object] = {}
        self._verdicts: Dict[tuple, ProofVerdict] = {}
        self.instances = draw_instances(
            construction, config.resamples, config.seed, config.box
        )
        self._scales = [diameter(list(inst.values())) for inst in self.instances]

    # -- guards ---------------------------------------------------------------

    def check_interrupt(self):
        if self._wall_deadline is not None and time.perf_counter() > self._wall_deadline:
            raise WallTimeExceededError("discovery exceeded its wall-time cap")
        if self.config.cancel is not None and self.config.cancel():
            raise DiscoveryCancelledError("discovery cancelled")

    # -- numeric filter ----------------------------------------------------------

    def numeric_pass(self, stmt: st.Statement) -> bool:
        t0 = time.perf_counter()
        try:
            for inst, scale in zip(self.instances, self._scales):
                if not check_statement(stmt, inst, self.config.tolerance, scale):
                    return False
            return True
        finally:
            self.numeric_ms += (time.perf_counter() - t0) * 1000.0

    # -- symbolic check ------------------------------------------------------------

    def _translation_for(self, points: Sequence[str]) -> AlgebraicTranslation:
        closure = frozenset(self.construction.ancestors(points))
        tr = self._translations.get(closure)
        if tr is None:
            tr = algebraize_construction(
                self.construction, restrict_to=closure, pin=self.config.pin
            )
            self._translations[closure] = tr
        return tr

    def _oracle(self, translation: AlgebraicTranslation, theses, stmt_key: str):
        seed_bytes = hashlib.sha256(
            f"{self.config.seed}:{stmt_key}".encode()
        ).digest()
        rng = random.Random(int.from_bytes(seed_bytes[:8], "big"))
        return make_exact_oracle(
            self.construction, translation, theses, rng, self.config.counterexample_tries
        )

    def _param_for(self, closure: FrozenSet[str]):
        if closure not in self._params:
            self._params[closure] = build_parametrization(
                self.construction, closure, pin=self.config.pin
            )
        return self._params[closure]

    @staticmethod
    def _param_usable(param, stmt: st.Statement) -> bool:
        # Wide coordinates make the cross-multiplied theses explode; leave
        # those statements to the basis engine.
        if param is None:
            return False
        budget = 90 if stmt.kind in (st.CONCYCLIC, st.CONGRUENT) else 240
        for p in stmt.involved_points():
            x, y, w = param.points[p]
            if len(x.terms) + len(y.terms) + len(w.terms) > budget:
                return False
        return True

    def prove(self, stmt: st.Statement, budget: Optional[float] = None) -> ProofVerdict:
        key = stmt.key()
        cached = self._verdicts.get(key)
        if cached is not None:
            return cached
        t0 = time.perf_counter()
        closure = frozenset(self.construction.ancestors(stmt.involved_points()))
        param = self._param_for(closure)
        if self._param_usable(param, stmt):
            if statement_vanishes(param, stmt):
                verdict = ProofVerdict(
                    "proved", certificate="vanishes identically under rational parametrization"
                )
            else:
                translation = self._translation_for(stmt.involved_points())
                theses = algebraize_statement(stmt, translation)
                oracle = self._oracle(translation, theses, format_statement(stmt))
                ce = oracle() if oracle is not None else None
                verdict = ProofVerdict(
                    "refuted",
                    certificate="nonzero under rational parametrization",
                    counterexample=ce,
                )
        else:
            translation = self._translation_for(stmt.involved_points())
            theses = algebraize_statement(stmt, translation)
            oracle = self._oracle(translation, theses, format_statement(stmt))
            verdict = decide(
                translation.hypotheses,
                theses,
                free_vars=translation.free_var_indices(),
                budget=budget if budget is not None else self.config.timeout_s,
                counterexample_fn=oracle,
                cancel=self.config.cancel,
                sqrt_var=translation.sqrt_var_index(),
            )
        ms = (time.perf_counter() - t0) * 1000.0
        self.symbolic_ms += ms
        self._verdicts[key] = verdict
        self.records.append(
            ConjectureRecord(format_statement(stmt), verdict.status, verdict.reason, ms)
        )
        return verdict

    # -- phases ----------------------------------------------------------------

    def phase_identity(self) -> Optional[str]:
        """Returns a halt reason when an identity is undecidable."""
        reg = self.registry
        refuted: Set[frozenset] = set()
        for p, q in combinations(self.visible, 2):
            self.check_interrupt()
            if self.config.prune and reg.same_point(p, q):
                continue
            if frozenset((p, q)) in refuted:
                continue
            stmt = st.identity(p, q)
            if not self.numeric_pass(stmt):
                continue
            verdict = self.prove(stmt)
            if verdict.proved:
                reg.merge_points(p, q)
            elif verdict.refuted:
                refuted.add(frozenset((p, q)))
            else:
                return (
                    f"the identity of points {p} and {q} could not be decided "
                    f"({verdict.reason})"
                )
        return None

    def seed_trivial(self) -> Registry:
        """Feed by-construction facts into the registry and build the trivial
        closure used by the report's triviality filter."""
        incidences, directions = self.construction.trivial_facts()
        trivial = Registry(self.visible)
        for members in self.registry.point_classes():
            for other in members[1:]:
                trivial.merge_points(members[0], other)
        for fact in incidences:
            if any(p not in self.registry.order for p in fact.points):
                continue
            if fact.kind == "collinear":
                self.registry.register_collinear(tuple(fact.points))
                trivial.register_collinear(tuple(fact.points))
            else:
                for reg in (self.registry, trivial):
                    try:
                        reg.register_concyclic(tuple(fact.points))
                    except CollinearSubsetError:
                        pass
        for fact in directions:
            pts = list(fact.line1) + list(fact.line2)
            if any(p not in self.registry.order for p in pts):
                continue
            l1 = trivial.ensure_line(*fact.line1)
            l2 = trivial.ensure_line(*fact.line2)
            trivial.register_direction_relation(l1, l2, fact.rel)
        return trivial

    def phase_collinear(self):
        reg = self.registry
        reps = reg.class_reps()
        for triple in combinations(reps, 3):
            self.check_interrupt()
            if self.config.prune and reg.collinear_implied(*triple):
                continue
            stmt = st.collinear(*triple)
            if not self.numeric_pass(stmt):
                continue
            if self.prove(stmt).proved:
                reg.register_collinear(triple)

    def phase_concyclic(self):
        reg = self.registry
        reps = reg.class_reps()
        for quad in combinations(reps, 4):
            self.check_interrupt()
            if any(
                reg.collinear_implied(*t) for t in combinations(quad, 3)
            ):
                continue
            if self.config.prune and reg.concyclic_implied(quad):
                continue
            stmt = st.concyclic(*quad)
            if not self.numeric_pass(stmt):
                continue
            if self.prove(stmt).proved:
                try:
                    reg.register_concyclic(quad)
                except CollinearSubsetError:
                    pass

    def _line_views(self) -> List[Tuple[str, ...]]:
        reg = self.registry
        views: List[Tuple[str, ...]] = []
        for lid in sorted(reg.line_classes()):
            views.append(tuple(reg.line_points(lid)))
        for a, b in combinations(reg.class_reps(), 2):
            if reg.line_for_pair(a, b) is None:
                views.append((a, b))
        return views

    def _view_lid(self, view: Tuple[str, ...]) -> Optional[int]:
        return self.registry.line_for_pair(view[0], view[1])

    def phase_parallel(self, views: List[Tuple[str, ...]]):
        reg = self.registry
        for u, v in combinations(views, 2):
            self.check_interrupt()
            if set(u) & set(v):
                continue
            if self.config.prune:
                lu, lv = self._view_lid(u), self._view_lid(v)
                if lu is not None and lv is not None and reg.same_direction(lu, lv):
                    continue
            stmt = st.parallel(u[:2], v[:2])
            if not self.numeric_pass(stmt):
                continue
            if self.prove(stmt).proved:
                lu = reg.ensure_line(u[0], u[1])
                lv = reg.ensure_line(v[0], v[1])
                reg.register_direction_relation(lu, lv, "parallel")

    def phase_congruent(self):
        reg = self.registry
        segments = list(combinations(reg.class_reps(), 2))
        for s, t in combinations(segments, 2):
            self.check_interrupt()
            if self.config.prune and reg.same_length_implied(s, t):
                continue
            stmt = st.congruent(s, t)
            if not self.numeric_pass(stmt):
                continue
            if self.prove(stmt).proved:
                reg.register_length_equality(s, t)

    def phase_perpendicular(self, views: List[Tuple[str, ...]]):
        # unlike parallels, perpendicular lines normally share a figure point,
        # so intersecting pairs stay in play here
        reg = self.registry
        for u, v in combinations(views, 2):
            self.check_interrupt()
            if self.config.prune:
                lu, lv = self._view_lid(u), self._view_lid(v)
                if lu is not None and lv is not None and reg.same_grid(lu, lv):
                    continue
            stmt = st.perpendicular(u[:2], v[:2])
            if not self.numeric_pass(stmt):
                continue
            if self.prove(stmt).proved:
                lu = reg.ensure_line(u[0], u[1])
                lv = reg.ensure_line(v[0], v[1])
                reg.register_direction_relation(lu, lv, "perpendicular")


def discover(
    construction: Construction, target: str, config: Optional[DiscoveryConfig] = None
) -> DiscoveryReport:
    """Run the full discovery pipeline for one target point."""
    config = config or DiscoveryConfig()
    job = _Job(construction, target, config)

    halt = job.phase_identity()
    if halt is not None:
        return DiscoveryReport(
            target=target,
            halted=True,
            halt_reason=halt,
            numeric_ms=job.numeric_ms,
            symbolic_ms=job.symbolic_ms,
            verdict_log=job.records,
        )
    trivial = job.seed_trivial()
    job.phase_collinear()
    job.phase_concyclic()
    views = job._line_views()
    job.phase_parallel(views)
    job.phase_congruent()
    job.phase_perpendicular(views)
    return assemble_report(job, trivial)


# ---------------------------------------------------------------------------
# report assembly: triviality filter, relevance filter, colors
# ---------------------------------------------------------------------------


def filter_trivial(
    stmts: List[st.Statement], trivial: Registry
) -> List[st.Statement]:
    """Drop incidence statements subsumed by by-construction facts; metric
    (congruence) statements always pass."""
    out = []
    for stmt in stmts:
        if stmt.kind == st.COLLINEAR and _line_subsumed(stmt.points, trivial):
            continue
        if stmt.kind == st.CONCYCLIC and _circle_subsumed(stmt.points, trivial):
            continue
        out.append(stmt)
    return out


def _line_subsumed(points: Sequence[str], trivial: Registry) -> bool:
    reps = [trivial.rep(p) for p in points]
    lid = trivial.line_for_pair(reps[0], reps[1])
    if lid is None:
        return False
    members = set(trivial.line_points(lid))
    return all(r in members for r in reps)


def _circle_subsumed(points: Sequence[str], trivial: Registry) -> bool:
    reps = {trivial.rep(p) for p in points}
    for cid, members in trivial.circle_classes().items():
        if reps <= set(members):
            return True
    return False


def _trivial_line_of(points: Sequence[str], trivial: Registry) -> Optional[int]:
    for a, b in combinations(points, 2):
        lid = trivial.line_for_pair(a, b)
        if lid is not None:
            return lid
    return None


def _parallel_subsumed(line_groups: Sequence[Sequence[str]], trivial: Registry) -> bool:
    """All lines already mutually parallel by construction facts alone."""
    lids = []
    for points in line_groups:
        lid = _trivial_line_of(points, trivial)
        if lid is None:
            return False
        lids.append(lid)
    return all(trivial.same_direction(lids[0], l) for l in lids[1:])


def _perpendicular_subsumed(
    axis1: Sequence[Sequence[str]], axis2: Sequence[Sequence[str]], trivial: Registry
) -> bool:
    lids1 = [_trivial_line_of(pts, trivial) for pts in axis1]
    lids2 = [_trivial_line_of(pts, trivial) for pts in axis2]
    if any(l is None for l in lids1 + lids2):
        return False
    return all(
        trivial.perpendicular_implied(l1, l2) for l1 in lids1 for l2 in lids2
    )


def filter_relevant(stmts: List[st.Statement], target_rep: str, registry: Registry) -> List[st.Statement]:
    """Keep statements whose operand points (or operand class members) include
    the target's point class.  Identity statements are exempt: merged points
    are reported regardless of the target."""
    out = []
    for stmt in stmts:
        if stmt.kind == st.IDENTITY:
            out.append(stmt)
            continue
        if any(registry.rep(p) == target_rep for p in stmt.involved_points()):
            out.append(stmt)
    return out


def assemble_report(job: _Job, trivial: Registry) -> DiscoveryReport:
    reg = job.registry
    target_rep = reg.rep(job.target)
    order = reg.order
    entries: List[TheoremEntry] = []
    colors: Dict[str, int] = {}

    def color_for(class_id: str) -> int:
        if class_id not in colors:
            colors[class_id] = len(colors)
        return colors[class_id]

    # identity classes (exempt from the relevance filter)
    for members in reg.point_classes():
        if len(members) < 2:
            continue
        cid = f"points-{len([e for e in entries if e.kind == 'identity'])}"
        entries.append(
            TheoremEntry("identity", members, cid, color_for(cid))
        )

    # collinear classes
    n = 0
    for lid in sorted(reg.line_classes()):
        pts = reg.line_points(lid)
        if len(pts) < 3:
            continue
        if _line_subsumed(pts, trivial):
            continue
        if target_rep not in pts:
            continue
        cid = f"line-{n}"
        n += 1
        entries.append(TheoremEntry("collinear", pts, cid, color_for(cid)))

    # concyclic classes, one item per circle
    n = 0
    for circ_id in sorted(reg.circle_classes()):
        pts = reg.circle_points(circ_id)
        if len(pts) < 4:
            continue
        if _circle_subsumed(pts, trivial):
            continue
        if target_rep not in pts:
            continue
        cid = f"circle-{n}"
        n += 1
        entries.append(TheoremEntry("concyclic", pts, cid, color_for(cid)))

    # direction / grid classes: one color per grid
    registered = sorted(reg.line_classes())
    groups = reg.direction_groups(registered)
    grid_ids: Dict[int, str] = {}

    def grid_class_id(root: int) -> str:
        if root not in grid_ids:
            grid_ids[root] = f"grid-{len(grid_ids)}"
        return grid_ids[root]

    handled_dirs: Set[Tuple[int, int]] = set()
    for (root, parity) in sorted(
        groups, key=lambda key: min(order[reg.line_points(l)[0]] for l in groups[key])
    ):
        lines = groups[(root, parity)]
        if len(lines) >= 2 and (root, parity) not in handled_dirs:
            handled_dirs.add((root, parity))
            line_pts = [reg.line_points(l) for l in lines]
            line_pts.sort(key=lambda pts: [order[p] for p in pts])
            if not _parallel_subsumed(line_pts, trivial) and any(
                target_rep in pts for pts in line_pts
            ):
                cid = grid_class_id(root)
                pts = sorted({p for l in line_pts for p in l}, key=order.get)
                entries.append(
                    TheoremEntry(
                        "parallel", pts, cid, color_for(cid), lines=line_pts
                    )
                )
    # perpendicular: grids with both axes populated
    seen_roots: Set[int] = set()
    for (root, parity) in sorted(
        groups, key=lambda key: min(order[reg.line_points(l)[0]] for l in groups[key])
    ):
        if root in seen_roots:
            continue
        axis1 = groups.get((root, 0), [])
        axis2 = groups.get((root, 1), [])
        if not axis1 or not axis2:
            continue
        seen_roots.add(root)
        pts1 = sorted((reg.line_points(l) for l in axis1), key=lambda ps: [order[p] for p in ps])
        pts2 = sorted((reg.line_points(l) for l in axis2), key=lambda ps: [order[p] for p in ps])
        if _perpendicular_subsumed(pts1, pts2, trivial):
            continue
        if not any(target_rep in ps for ps in pts1 + pts2):
            continue
        cid = grid_class_id(root)
        pts = sorted({p for l in pts1 + pts2 for p in l}, key=order.get)
        entries.append(
            TheoremEntry(
                "perpendicular", pts, cid, color_for(cid), axes=[pts1, pts2]
            )
        )

    # congruent segment classes
    n = 0
    for cid_num, segs in reg.length_classes().items():
        if len(segs) < 2:
            continue
        if not any(target_rep in seg for seg in segs):
            continue
        cid = f"length-{n}"
        n += 1
        pts = sorted({p for seg in segs for p in seg}, key=order.get)
        entries.append(
            TheoremEntry(
                "congruent", pts, cid, color_for(cid), segments=[list(s) for s in segs]
            )
        )

    return DiscoveryReport(
        target=job.target,
        theorems=entries,
        numeric_ms=job.numeric_ms,
        symbolic_ms=job.symbolic_ms,
        verdict_log=job.records,
    )


# ---------------------------------------------------------------------------
# standalone proving (the prove/check commands)
# ---------------------------------------------------------------------------


def prove_statement(
    construction: Construction,
    stmt: st.Statement,
    budget: float = 5.0,
    seed: int = 0,
    pin: bool = True,
    tries: int = 6,
) -> ProofVerdict:
    translation = algebraize_construction(
        construction, restrict_to=stmt.involved_points(), pin=pin
    )
    theses = algebraize_statement(stmt, translation)
    oracle = make_exact_oracle(
        construction, translation, theses, random.Random(seed), tries
    )

    closure = frozenset(construction.ancestors(stmt.involved_points()))
    param = build_parametrization(construction, closure, pin=pin)
    if _Job._param_usable(param, stmt):
        if statement_vanishes(param, stmt):
            return ProofVerdict(
                "proved", certificate="vanishes identically under rational parametrization"
            )
        ce = oracle() if oracle is not None else None
        return ProofVerdict(
            "refuted",
            certificate="nonzero under rational parametrization",
            counterexample=ce,
        )
    return decide(
        translation.hypotheses,
        theses,
        free_vars=translation.free_var_indices(),
        budget=budget,
        counterexample_fn=oracle,
        sqrt_var=translation.sqrt_var_index(),
    )
