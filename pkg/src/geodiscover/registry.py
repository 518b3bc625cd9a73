"""Minimal object store: equivalence classes of points, lines, circles,
directions, grids and segment lengths.

Merging two point classes rewrites every containing object and cascades:
lines sharing two point classes merge, circles sharing three merge, merged
lines identify their directions.  Parallel/perpendicular structure is one
union-find over lines with a parity bit (parity 0 = parallel, 1 =
perpendicular); grid classes are its components and direction classes the
parity-0 fibers, which makes the four-case composition table automatic.
"""

from __future__ import annotations

import json
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .errors import CollinearSubsetError, InconsistentRegistryError

Seg = FrozenSet[str]


class Registry:
    def __init__(self, points: Sequence[str]):
        self.order: Dict[str, int] = {p: i for i, p in enumerate(points)}
        self._parent: Dict[str, str] = {p: p for p in points}
        # line classes
        self._lines: Dict[int, Set[str]] = {}
        self._pair_line: Dict[FrozenSet[str], int] = {}
        self._next_line = 0
        # circle classes
        self._circles: Dict[int, Set[str]] = {}
        self._triple_circle: Dict[FrozenSet[str], int] = {}
        self._next_circle = 0
        # direction/grid union-find over line ids (parity 1 = perpendicular)
        self._rel_parent: Dict[int, int] = {}
        self._rel_parity: Dict[int, int] = {}
        # length classes over segments (frozensets of two point reps)
        self._seg_class: Dict[Seg, int] = {}
        self._length_classes: Dict[int, Set[Seg]] = {}
        self._next_length = 0

    # -- point classes ------------------------------------------------------

    def rep(self, p: str) -> str:
        while self._parent[p] != p:
            self._parent[p] = self._parent[self._parent[p]]
            p = self._parent[p]
        return p

    def same_point(self, p: str, q: str) -> bool:
        return self.rep(p) == self.rep(q)

    def point_class(self, p: str) -> List[str]:
        r = self.rep(p)
        return sorted((q for q in self._parent if self.rep(q) == r), key=self.order.get)

    def point_classes(self) -> List[List[str]]:
        classes: Dict[str, List[str]] = {}
        for p in sorted(self._parent, key=self.order.get):
            classes.setdefault(self.rep(p), []).append(p)
        return [classes[r] for r in sorted(classes, key=self.order.get)]

    def class_reps(self) -> List[str]:
        return [members[0] for members in self.point_classes()]

    def merge_points(self, p: str, q: str) -> "Registry":
        rp, rq = self.rep(p), self.rep(q)
        if rp == rq:
            return self
        keep, absorbed = (rp, rq) if self.order[rp] < self.order[rq] else (rq, rp)
        self._parent[absorbed] = keep
        self._rewrite_lines(absorbed, keep)
        self._rewrite_circles(absorbed, keep)
        self._rewrite_segments(absorbed, keep)
        return self

    # -- line classes --------------------------------------------------------

    def _register_line_pairs(self, lid: int):
        pts = sorted(self._lines[lid], key=self.order.get)
        collisions = []
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                key = frozenset((pts[i], pts[j]))
                other = self._pair_line.get(key)
                if other is not None and other != lid:
                    collisions.append(other)
                self._pair_line[key] = lid
        for other in collisions:
            if other in self._lines:
                self._merge_lines(lid, other)

    def _merge_lines(self, l1: int, l2: int):
        keep, absorbed = (l1, l2) if l1 < l2 else (l2, l1)
        if absorbed not in self._lines or keep not in self._lines:
            return
        self._lines[keep] |= self._lines.pop(absorbed)
        for key, lid in list(self._pair_line.items()):
            if lid == absorbed:
                self._pair_line[key] = keep
        self._union_rel(keep, absorbed, 0)
        self._register_line_pairs(keep)

    def _rewrite_lines(self, absorbed: str, keep: str):
        for lid in list(self._lines):
            if lid not in self._lines:
                continue
            members = self._lines[lid]
            if absorbed not in members:
                continue
            for key in [k for k, v in self._pair_line.items() if v == lid]:
                del self._pair_line[key]
            members.discard(absorbed)
            members.add(keep)
            if len(members) < 2:
                del self._lines[lid]
                continue
            self._register_line_pairs(lid)

    def ensure_line(self, a: str, b: str) -> int:
        """Line class through two point classes, created lazily."""
        a, b = self.rep(a), self.rep(b)
        key = frozenset((a, b))
        lid = self._pair_line.get(key)
        if lid is not None:
            return lid
        lid = self._next_line
        self._next_line += 1
        self._lines[lid] = {a, b}
        self._register_line_pairs(lid)
        return lid

    def line_for_pair(self, a: str, b: str) -> Optional[int]:
        return self._pair_line.get(frozenset((self.rep(a), self.rep(b))))

    def line_points(self, lid: int) -> List[str]:
        return sorted(self._lines[lid], key=self.order.get)

    def line_classes(self) -> Dict[int, List[str]]:
        return {lid: self.line_points(lid) for lid in sorted(self._lines)}

    def collinear_implied(self, a: str, b: str, c: str) -> bool:
        lid = self.line_for_pair(a, b)
        return lid is not None and self.rep(c) in self._lines[lid]

    def register_collinear(self, triple: Tuple[str, str, str]) -> "Registry":
        reps = [self.rep(p) for p in triple]
        if len(set(reps)) != 3:
            return self
        host = None
        for i in range(3):
            for j in range(i + 1, 3):
                lid = self._pair_line.get(frozenset((reps[i], reps[j])))
                if lid is not None:
                    host = lid
                    break
            if host is not None:
                break
        if host is None:
            host = self._next_line
            self._next_line += 1
            self._lines[host] = set(reps)
        else:
            self._lines[host] |= set(reps)
        self._register_line_pairs(host)
        return self

    # -- circle classes ---------------------------------------------------------

    def _noncollinear_triples(self, members: Set[str]):
        pts = sorted(members, key=self.order.get)
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                for k in range(j + 1, len(pts)):
                    if not self.collinear_implied(pts[i], pts[j], pts[k]):
                        yield frozenset((pts[i], pts[j], pts[k]))

    def _register_circle_triples(self, cid: int):
        collisions = []
        for key in self._noncollinear_triples(self._circles[cid]):
            other = self._triple_circle.get(key)
            if other is not None and other != cid:
                collisions.append(other)
            self._triple_circle[key] = cid
        for other in collisions:
            if other in self._circles:
                self._merge_circles(cid, other)

    def _merge_circles(self, c1: int, c2: int):
        keep, absorbed = (c1, c2) if c1 < c2 else (c2, c1)
        if absorbed not in self._circles or keep not in self._circles:
            return
        self._circles[keep] |= self._circles.pop(absorbed)
        for key, cid in list(self._triple_circle.items()):
            if cid == absorbed:
                self._triple_circle[key] = keep
        self._register_circle_triples(keep)

    def _rewrite_circles(self, absorbed: str, keep: str):
        for cid in list(self._circles):
            if cid not in self._circles:
                continue
            members = self._circles[cid]
            if absorbed not in members:
                continue
            for key in [k for k, v in self._triple_circle.items() if v == cid]:
                del self._triple_circle[key]
            members.discard(absorbed)
            members.add(keep)
            if len(members) < 3:
                del self._circles[cid]
                continue
            self._register_circle_triples(cid)

    def circle_points(self, cid: int) -> List[str]:
        return sorted(self._circles[cid], key=self.order.get)

    def circle_classes(self) -> Dict[int, List[str]]:
        return {cid: self.circle_points(cid) for cid in sorted(self._circles)}

    def concyclic_implied(self, quad: Sequence[str]) -> bool:
        reps = [self.rep(p) for p in quad]
        for cid, members in self._circles.items():
            if all(r in members for r in reps):
                return True
        return False

    def register_concyclic(self, quad: Sequence[str]) -> "Registry":
        reps = [self.rep(p) for p in quad]
        if len(set(reps)) != 4:
            return self
        for i in range(4):
            for j in range(i + 1, 4):
                for k in range(j + 1, 4):
                    if self.collinear_implied(reps[i], reps[j], reps[k]):
                        raise CollinearSubsetError(
                            f"three of {reps} are collinear; not a circle"
                        )
        host = None
        for i in range(4):
            triple = frozenset(reps[:i] + reps[i + 1 :])
            cid = self._triple_circle.get(triple)
            if cid is not None:
                host = cid
                break
        if host is None:
            host = self._next_circle
            self._next_circle += 1
            self._circles[host] = set(reps)
        else:
            self._circles[host] |= set(reps)
        self._register_circle_triples(host)
        return self

    # -- directions and grids ------------------------------------------------------

    def _rel_find(self, lid: int) -> Tuple[int, int]:
        self._rel_parent.setdefault(lid, lid)
        self._rel_parity.setdefault(lid, 0)
        parity = 0
        root = lid
        while self._rel_parent[root] != root:
            parity ^= self._rel_parity[root]
            root = self._rel_parent[root]
        # path compression
        node = lid
        carry = parity
        while self._rel_parent[node] != node:
            nxt = self._rel_parent[node]
            np = self._rel_parity[node]
            self._rel_parent[node] = root
            self._rel_parity[node] = carry
            carry ^= np
            node = nxt
        return root, parity

    def _union_rel(self, a: int, b: int, parity: int):
        ra, pa = self._rel_find(a)
        rb, pb = self._rel_find(b)
        if ra == rb:
            if pa ^ pb != parity:
                raise InconsistentRegistryError(
                    "a direction would be both parallel and perpendicular to itself"
                )
            return
        keep, absorbed = (ra, rb) if ra < rb else (rb, ra)
        if keep == ra:
            self._rel_parent[rb] = ra
            self._rel_parity[rb] = pa ^ pb ^ parity
        else:
            self._rel_parent[ra] = rb
            self._rel_parity[ra] = pa ^ pb ^ parity

    def register_direction_relation(self, l1: int, l2: int, rel: str) -> "Registry":
        if rel not in ("parallel", "perpendicular"):
            raise ValueError(rel)
        self._union_rel(l1, l2, 0 if rel == "parallel" else 1)
        return self

    def direction_of(self, lid: int) -> Tuple[int, int]:
        return self._rel_find(lid)

    def same_direction(self, l1: int, l2: int) -> bool:
        return self._rel_find(l1) == self._rel_find(l2)

    def perpendicular_implied(self, l1: int, l2: int) -> bool:
        r1, p1 = self._rel_find(l1)
        r2, p2 = self._rel_find(l2)
        return r1 == r2 and p1 != p2

    def same_grid(self, l1: int, l2: int) -> bool:
        return self._rel_find(l1)[0] == self._rel_find(l2)[0]

    def direction_groups(self, line_ids: Iterable[int]) -> Dict[Tuple[int, int], List[int]]:
        groups: Dict[Tuple[int, int], List[int]] = {}
        for lid in line_ids:
            groups.setdefault(self._rel_find(lid), []).append(lid)
        return groups

    # -- lengths ----------------------------------------------------------------

    def _segment(self, s: Tuple[str, str]) -> Optional[Seg]:
        key = frozenset((self.rep(s[0]), self.rep(s[1])))
        return key if len(key) == 2 else None

    def _ensure_length_class(self, key: Seg) -> int:
        cid = self._seg_class.get(key)
        if cid is None:
            cid = self._next_length
            self._next_length += 1
            self._seg_class[key] = cid
            self._length_classes[cid] = {key}
        return cid

    def register_length_equality(self, s: Tuple[str, str], t: Tuple[str, str]) -> "Registry":
        ks, kt = self._segment(s), self._segment(t)
        if ks is None or kt is None or ks == kt:
            return self
        cs, ct = self._ensure_length_class(ks), self._ensure_length_class(kt)
        if cs == ct:
            return self
        keep, absorbed = (cs, ct) if cs < ct else (ct, cs)
        self._length_classes[keep] |= self._length_classes.pop(absorbed)
        for key in self._length_classes[keep]:
            self._seg_class[key] = keep
        return self

    def same_length_implied(self, s: Tuple[str, str], t: Tuple[str, str]) -> bool:
        ks, kt = self._segment(s), self._segment(t)
        if ks is None or kt is None:
            return False
        if ks == kt:
            return True
        cs, ct = self._seg_class.get(ks), self._seg_class.get(kt)
        return cs is not None and cs == ct

    def length_classes(self) -> Dict[int, List[Tuple[str, ...]]]:
        out: Dict[int, List[Tuple[str, ...]]] = {}
        for cid in sorted(self._length_classes):
            segs = [tuple(sorted(k, key=self.order.get)) for k in self._length_classes[cid]]
            out[cid] = sorted(segs, key=lambda seg: (self.order[seg[0]], self.order[seg[1]]))
        return out

    def _rewrite_segments(self, absorbed: str, keep: str):
        old_classes = self._length_classes
        self._length_classes = {}
        self._seg_class = {}
        for cid in sorted(old_classes):
            segs: Set[Seg] = set()
            for k in old_classes[cid]:
                nk = frozenset(keep if p == absorbed else p for p in k)
                if len(nk) == 2:
                    segs.add(nk)
            if not segs:
                continue
            touched = {self._seg_class[k] for k in segs if k in self._seg_class}
            target = min(touched | {cid})
            merged = set(segs)
            for t in touched:
                if t != target:
                    merged |= self._length_classes.pop(t)
            self._length_classes.setdefault(target, set()).update(merged)
            for k in self._length_classes[target]:
                self._seg_class[k] = target

    # -- snapshot ---------------------------------------------------------------

    def to_snapshot(self) -> dict:
        lines = sorted(
            (self.line_points(lid) for lid in self._lines),
            key=lambda pts: [self.order[p] for p in pts],
        )
        circles = sorted(
            (self.circle_points(cid) for cid in self._circles),
            key=lambda pts: [self.order[p] for p in pts],
        )
        dirs = self.direction_groups(sorted(self._lines))
        directions = sorted(
            (sorted(self.line_points(lid) for lid in group) for group in dirs.values()),
            key=str,
        )
        return {
            "points": self.point_classes(),
            "lines": lines,
            "circles": circles,
            "directions": directions,
            "lengths": [
                [list(seg) for seg in segs] for segs in self.length_classes().values()
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_snapshot(), sort_keys=True)
