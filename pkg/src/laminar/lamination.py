"""Chord systems on the circle: predicates, validation, gaps, separation.

A finite truncation is a set of pairwise-unlinked chords.  Gaps are the
complementary regions of the chords in the disk; each gap is reported as the
cyclic family of far-side intervals of its bounding chords, together with its
vertex set.  Gaps whose vertex set is infinite (they still touch the circle
along whole arcs) are flagged provisional.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cmp_to_key

from .circle import BoundaryPoint, Chart, circular_order, require_same_chart
from .errors import ChartMismatch, InvalidLamination, NotADistinctPair


class Interval:
    """Nondegenerate open interval (start, end): the ccw arc from start to end."""

    __slots__ = ("start", "end", "_h")

    def __init__(self, start: BoundaryPoint, end: BoundaryPoint):
        require_same_chart(start, end)
        if start == end:
            raise ValueError("degenerate interval")
        self.start = start
        self.end = end
        self._h = None

    @property
    def dual(self) -> "Interval":
        return Interval(self.end, self.start)

    def contains(self, p: BoundaryPoint) -> bool:
        return circular_order(self.start, p, self.end) == 1

    def contains_closed(self, p: BoundaryPoint) -> bool:
        return p == self.start or p == self.end or self.contains(p)

    def chord(self) -> "Chord":
        return Chord(self.start, self.end)

    def endpoints(self) -> frozenset:
        return frozenset((self.start, self.end))

    def __eq__(self, other):
        if not isinstance(other, Interval):
            return NotImplemented
        return self.start == other.start and self.end == other.end

    def __hash__(self):
        if self._h is None:
            self._h = hash((self.start, self.end))
        return self._h

    def encode(self) -> str:
        return f"({self.start.encode()},{self.end.encode()})"

    def __repr__(self):
        return f"I{self.encode()}"


class Chord:
    """Unordered pair of distinct boundary points; the leaf {I, I*}."""

    __slots__ = ("lo", "hi", "_h")

    def __init__(self, u: BoundaryPoint, v: BoundaryPoint):
        require_same_chart(u, v)
        if u == v:
            raise ValueError("degenerate chord")
        if v.linear_key() < u.linear_key():
            u, v = v, u
        self.lo = u
        self.hi = v
        self._h = None

    def sides(self) -> tuple[Interval, Interval]:
        return Interval(self.lo, self.hi), Interval(self.hi, self.lo)

    def side_containing(self, p: BoundaryPoint) -> Interval:
        a, b = self.sides()
        if a.contains(p):
            return a
        if b.contains(p):
            return b
        raise ValueError(f"{p!r} is an endpoint of {self!r}")

    def endpoints(self) -> frozenset:
        return frozenset((self.lo, self.hi))

    @property
    def chart(self) -> Chart:
        return self.lo.chart

    def shares_endpoint(self, other: "Chord") -> bool:
        return not self.endpoints().isdisjoint(other.endpoints())

    def __eq__(self, other):
        if not isinstance(other, Chord):
            return NotImplemented
        return self.lo == other.lo and self.hi == other.hi

    def __hash__(self):
        if self._h is None:
            self._h = hash((self.lo, self.hi))
        return self._h

    def encode(self) -> list[str]:
        return sorted((self.lo.encode(), self.hi.encode()))

    def __repr__(self):
        return f"Chord{{{self.lo.encode()}, {self.hi.encode()}}}"


# -- elementary predicates ---------------------------------------------------


def unlinked(c1: Chord, c2: Chord) -> bool:
    """True iff the chords do not cross; sharing an endpoint counts as unlinked."""
    if c1.chart != c2.chart:
        raise ChartMismatch("chords live in different charts")
    if c1.shares_endpoint(c2):
        return True
    s1 = circular_order(c1.lo, c2.lo, c1.hi)
    s2 = circular_order(c1.lo, c2.hi, c1.hi)
    return s1 == s2


def interval_subset(inner: Interval, outer: Interval) -> bool:
    """Exact test for (a,b) being a subset of (c,d) as open circle arcs."""
    a, b = inner.start, inner.end
    c, d = outer.start, outer.end
    if a == c and b == d:
        return True
    if a == c:
        return b == d or circular_order(c, b, d) == 1
    if b == c:
        return False
    if circular_order(c, a, b) != 1:
        return False
    return b == d or circular_order(c, b, d) == 1


def interval_subset_closed(inner: Interval, outer: Interval) -> bool:
    """True iff the closure of ``inner`` is contained in the open ``outer``."""
    return (
        outer.contains(inner.start)
        and outer.contains(inner.end)
        and interval_subset(inner, outer)
    )


def lies_on(leaf: Chord, j: Interval) -> bool:
    """The leaf {I, I*} lies on J iff I or its dual is contained in J."""
    a, b = leaf.sides()
    return interval_subset(a, j) or interval_subset(b, j)


def properly_lies_on(leaf: Chord, j: Interval) -> bool:
    a, b = leaf.sides()
    return interval_subset_closed(a, j) or interval_subset_closed(b, j)


def intervals_disjoint(i: Interval, j: Interval) -> bool:
    if i == j:
        return False
    return not (
        i.contains(j.start)
        or i.contains(j.end)
        or j.contains(i.start)
        or j.contains(i.end)
    )


# -- truncation validation ---------------------------------------------------


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def first(self):
        return self.violations[0] if self.violations else None

    def describe(self) -> str:
        if self.ok:
            return "valid"
        kind, data = self.violations[0]
        return f"{len(self.violations)} violation(s), first: {kind}: {data}"


def _sorted_positions(chords):
    """Distinct endpoints in ccw order (cut at the chart basepoint)."""
    pts = {}
    for ch in chords:
        pts[ch.lo] = None
        pts[ch.hi] = None
    ordered = sorted(pts.keys(), key=lambda p: p.linear_key())
    index = {p: i for i, p in enumerate(ordered)}
    return ordered, index


def _segments(chords, index):
    segs = []
    for ch in chords:
        i, j = index[ch.lo], index[ch.hi]
        segs.append((i, j, ch))
    segs.sort(key=lambda s: (s[0], -s[1]))
    return segs


def validate_truncation(chords) -> ValidationReport:
    """Check the finite truncation axioms; violations are data, not errors.

    Dual closure holds structurally for chord sets, so the checked content is
    nonemptiness plus pairwise unlinkedness.  A fast sweep certifies valid
    inputs in O(n log n); when a crossing exists, every violating pair is
    enumerated.
    """
    chords = list(dict.fromkeys(chords))
    report = ValidationReport()
    if not chords:
        report.violations.append(("empty-family", None))
        return report
    require_same_chart(*[c.lo for c in chords], *[c.hi for c in chords])
    _, index = _sorted_positions(chords)
    segs = _segments(chords, index)
    stack = []
    crossing = False
    for i, j, _ in segs:
        while stack and stack[-1][1] <= i:
            stack.pop()
        if stack and stack[-1][1] < j:
            crossing = True
            break
        stack.append((i, j))
    if crossing:
        for a in range(len(chords)):
            for b in range(a + 1, len(chords)):
                if not unlinked(chords[a], chords[b]):
                    report.violations.append(("linked-pair", (chords[a], chords[b])))
    return report


# -- gaps (complementary regions) --------------------------------------------


@dataclass(frozen=True)
class Gap:
    """Complementary region: far-side intervals in ccw cyclic order.

    ``vertices`` are the isolated points of the complement of the interval
    union; ``arcs`` are its nondegenerate arcs.  A gap with arcs has an
    infinite vertex set and is flagged provisional.
    """

    intervals: tuple
    vertices: tuple
    arcs: tuple

    @property
    def provisional(self) -> bool:
        return bool(self.arcs)

    @property
    def is_polygon(self) -> bool:
        return not self.arcs

    @property
    def polygon_size(self) -> int | None:
        return len(self.intervals) if self.is_polygon else None

    @property
    def is_leaf(self) -> bool:
        return len(self.intervals) == 2 and self.intervals[0] == self.intervals[1].dual

    def key(self) -> frozenset:
        return frozenset((iv.start, iv.end) for iv in self.intervals)

    def __repr__(self):
        kind = "polygon" if self.is_polygon else "provisional"
        return f"Gap({kind}, {[iv.encode() for iv in self.intervals]})"


class _Node:
    __slots__ = ("i", "j", "chord", "children")

    def __init__(self, i, j, chord):
        self.i = i
        self.j = j
        self.chord = chord
        self.children = []


def _build_forest(chords, index):
    roots = []
    stack = []
    for i, j, ch in _segments(chords, index):
        node = _Node(i, j, ch)
        while stack and stack[-1].j <= i:
            stack.pop()
        if stack:
            stack[-1].children.append(node)
        else:
            roots.append(node)
        stack.append(node)
    return roots


def _face_gap(cyclic_intervals) -> Gap:
    vertices = []
    arcs = []
    n = len(cyclic_intervals)
    for k in range(n):
        a = cyclic_intervals[k].end
        b = cyclic_intervals[(k + 1) % n].start
        if a == b:
            vertices.append(a)
        else:
            arcs.append(Interval(a, b))
    return Gap(tuple(cyclic_intervals), tuple(vertices), tuple(arcs))


def gaps(chords) -> list[Gap]:
    """All complementary regions of a valid truncation, root region first."""
    chords = list(dict.fromkeys(chords))
    report = validate_truncation(chords)
    if not report.ok:
        raise InvalidLamination(report.describe())
    pts, index = _sorted_positions(chords)
    roots = _build_forest(chords, index)

    out = []
    root_intervals = [Interval(pts[r.i], pts[r.j]) for r in roots]
    out.append(_face_gap(root_intervals))

    def visit(node):
        cyc = [Interval(pts[c.i], pts[c.j]) for c in node.children]
        cyc.append(Interval(pts[node.j], pts[node.i]))
        out.append(_face_gap(cyc))
        for c in node.children:
            visit(c)

    for r in roots:
        visit(r)
    return out


def gap_index(gap_list) -> dict:
    """Map each member interval to its unique gap."""
    table = {}
    for g in gap_list:
        for iv in g.intervals:
            table[iv] = g
    return table


# -- representation equivalence ----------------------------------------------


def chords_to_intervals(chords) -> set:
    out = set()
    for ch in chords:
        a, b = ch.sides()
        out.add(a)
        out.add(b)
    return out


def intervals_to_chords(intervals) -> set:
    intervals = set(intervals)
    out = set()
    for iv in intervals:
        if iv.dual not in intervals:
            raise InvalidLamination(f"family not closed under duals near {iv!r}")
        out.add(iv.chord())
    return out


# -- ordered chains C_p^I -----------------------------------------------------


def c_p_I(chords, p: BoundaryPoint, outer: Interval) -> list[Interval]:
    """The chain {J in the interval family : p in J, J a subset of outer}.

    Returned ascending by inclusion, so the last element is the maximum.
    """
    found = []
    for ch in dict.fromkeys(chords):
        for side in ch.sides():
            if side.contains(p) and interval_subset(side, outer):
                found.append(side)

    def cmp(x, y):
        if x == y:
            return 0
        if interval_subset(x, y):
            return -1
        if interval_subset(y, x):
            return 1
        raise InvalidLamination("C_p^I is not totally ordered: invalid truncation")

    found.sort(key=cmp_to_key(cmp))
    return found


# -- rainbows ------------------------------------------------------------------


@dataclass(frozen=True)
class ProbeOutcome:
    endpoint: bool
    nesting: int | None

    def __repr__(self):
        return "Endpoint" if self.endpoint else f"NestedDepth({self.nesting})"


def rainbow_probe(system, p: BoundaryPoint, depth: int) -> ProbeOutcome:
    """Endpoint membership or the maximal nesting depth around p."""
    chords = system.chords(depth) if hasattr(system, "chords") else list(system)
    if chords:
        require_same_chart(p, chords[0].lo)
    pts, index = _sorted_positions(chords)
    if p in index:
        return ProbeOutcome(True, None)
    if not chords:
        return ProbeOutcome(False, 0)
    # rotate the ccw linear order so the cut sits at p
    import bisect

    keys = [q.linear_key() for q in pts]
    ins = bisect.bisect_left(keys, p.linear_key())
    m = len(pts)
    segs = []
    for ch in chords:
        u = (index[ch.lo] - ins) % m
        v = (index[ch.hi] - ins) % m
        segs.append((u, v) if u < v else (v, u))
    # segments are the chord sides avoiding p; nesting of the p-sides is the
    # reverse nesting of these, so the longest chain is the max sweep depth
    segs.sort(key=lambda s: (s[0], -s[1]))
    stack = []
    best = 0
    for l, r in segs:
        while stack and stack[-1] < r:
            stack.pop()
        stack.append(r)
        best = max(best, len(stack))
    return ProbeOutcome(False, best)


# -- endpoint sets and transversality ------------------------------------------


def endpoints_set(chords) -> set:
    out = set()
    for ch in chords:
        out.add(ch.lo)
        out.add(ch.hi)
    return out


def transverse(chords1, chords2) -> bool:
    """No common leaf (interval sets intersect iff a chord is shared)."""
    return set(chords1).isdisjoint(set(chords2))


def strongly_transverse(chords1, chords2) -> tuple[bool, set]:
    common = endpoints_set(chords1) & endpoints_set(chords2)
    return (not common, common)


# -- separation of distinct pairs ----------------------------------------------


@dataclass(frozen=True)
class Separation:
    gap: Gap
    witness: BoundaryPoint
    chain_max: Interval
    container_of_first: Interval
    container_of_second: Interval


def separate_distinct_pair(chords, first: Interval, second: Interval):
    """Find a non-leaf gap separating a distinct pair, or None if no witness.

    Witness points are tried in the deterministic encoding order of the
    truncation's endpoint set; for each witness p the chain maximum of
    C_p^{I*} ∩ C_p^{J*} names the gap, which is then verified to contain both
    intervals inside members.
    """
    chords = list(dict.fromkeys(chords))
    chordset = set(chords)
    if first.chord() not in chordset or second.chord() not in chordset:
        raise NotADistinctPair("intervals are not sides of the truncation")
    if second == first.dual or second == first:
        raise NotADistinctPair("pair is a leaf or a single interval")
    if not intervals_disjoint(first, second):
        raise NotADistinctPair("intervals are not disjoint")

    all_gaps = gaps(chords)
    by_member = gap_index(all_gaps)
    dual1, dual2 = first.dual, second.dual
    candidates = sorted(endpoints_set(chords), key=lambda q: q.encode())
    skip = {first.start, first.end, second.start, second.end}
    for p in candidates:
        if p in skip:
            continue
        if not (dual1.contains(p) and dual2.contains(p)):
            continue
        chain = [
            side
            for ch in chords
            for side in ch.sides()
            if side.contains(p) and interval_subset(side, dual1) and interval_subset(side, dual2)
        ]
        if not chain:
            continue
        top = chain[0]
        for side in chain[1:]:
            if interval_subset(top, side):
                top = side
        g = by_member.get(top)
        if g is None or g.is_leaf or len(g.intervals) < 2:
            continue
        u1 = next((iv for iv in g.intervals if interval_subset(first, iv)), None)
        u2 = next((iv for iv in g.intervals if interval_subset(second, iv)), None)
        if u1 is not None and u2 is not None:
            return Separation(g, p, top, u1, u2)
    return None


# -- depth-parametrized systems --------------------------------------------------


class LaminationSystem:
    """Depth-parametrized generator of finite truncations (pure in depth)."""

    def __init__(self, name, chart: Chart, builder, generators=(), cusps=(), meta=None):
        self.name = name
        self.chart = Chart(chart)
        self._builder = builder
        self.generators = tuple(generators)
        self.cusps = tuple(cusps)
        self.meta = dict(meta or {})
        self._cache = {}

    def chords(self, depth: int) -> tuple:
        if depth not in self._cache:
            built = tuple(dict.fromkeys(self._builder(depth)))
            self._cache[depth] = built
        return self._cache[depth]

    def endpoints(self, depth: int) -> set:
        return endpoints_set(self.chords(depth))

    def sorted_chords(self, depth: int) -> list:
        return sorted(self.chords(depth), key=lambda c: c.encode())

    def __repr__(self):
        return f"LaminationSystem({self.name!r}, {self.chart.value})"


@dataclass(frozen=True)
class Col3Collection:
    """Three invariant systems with their group generators and declared cusps."""

    kind: str
    systems: tuple
    generators: tuple
    cusps: tuple
    params: dict

    def truncations(self, depth: int):
        return [s.chords(depth) for s in self.systems]
