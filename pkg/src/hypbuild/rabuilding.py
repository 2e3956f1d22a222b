"""Thick right-angled hyperbolic building balls via graph products.

Chambers of the building over a right-angled chamber spec (all vertex
gonalities m = 2, thickness q_i >= 2, k >= 5 edges) are modeled as
elements of the graph product of cyclic groups Z/(q_i + 1), one factor
per edge label, with factors of cyclically adjacent labels commuting.
A chamber is a ``colored word``: a tuple of letters ``(i, c)`` with
``i`` an edge label and ``c`` a nonzero color modulo ``q_i + 1``; the
base chamber is the empty word.

The module provides canonical normal forms, finite balls with their
labeled cells, the W-valued distance, deterministic apartments through
any two chambers, the retraction onto an apartment centered at one of
its chambers, and a local axiom verifier for complexes in the labeled
2-complex exchange format.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .chamber import ChamberSpec
from .coxeter import CoxeterSystem, ResourceCap


class BuildingError(ValueError):
    def __init__(self, code, message, witness=None):
        super().__init__("%s: %s" % (code, message))
        self.code = code
        self.message = message
        self.witness = witness


def _cyc_adjacent(a, b, k):
    """Do edge labels a, b meet at a vertex of the chamber polygon?"""
    lo, hi = (a, b) if a < b else (b, a)
    return hi - lo == 1 or (lo == 1 and hi == k)


def check_right_angled(spec):
    if any(mi != 2 for mi in spec.m):
        raise BuildingError("NotRightAngled", "all vertex gonalities must be 2")
    if spec.k < 5:
        raise BuildingError("NotRightAngled", "need k >= 5 for a hyperbolic chamber")
    if any(qi < 2 for qi in spec.q):
        raise BuildingError("NotThick", "all thicknesses must be >= 2, got %s" % (spec.q,))


# ---------------------------------------------------------------------------
# normal forms
# ---------------------------------------------------------------------------

def normal_form(word, spec):
    """Canonical normal form of a colored word.

    Rewrites to a fixpoint: adjacent letters with the same label merge
    (colors add modulo q_i + 1, identity color deleted); adjacent letters
    whose labels commute (cyclically adjacent edges, m = 2) are sorted by
    label.  The result is the unique label-sorted shortest representative;
    two colored words denote the same chamber iff their normal forms match.
    """
    k = spec.k
    cleaned = []
    for (i, c) in word:
        if not 1 <= i <= k:
            raise BuildingError("FormatError", "letter label %r out of range" % (i,))
        c = c % (spec.q[i - 1] + 1)
        if c:
            cleaned.append((i, c))
    # extraction passes until stable: a cancellation deep in the word can
    # expose merges across the part already emitted, so rerun after any
    # pass that shortened the word
    out = cleaned
    while True:
        prev = out
        out = _extract_pass(prev, spec)
        if len(out) == len(prev):
            return tuple(out)


def _extract_pass(letters, spec):
    """One front-extraction pass: repeatedly pull out the smallest label
    whose first letter commutes to the front, merging every same-label
    letter that can reach it."""
    k = spec.k
    rest = list(letters)
    out = []
    while rest:
        # indices whose first letter can commute to the front
        candidates = {}
        for p, (i, _c) in enumerate(rest):
            if i in candidates:
                continue
            if all(j != i and _cyc_adjacent(j, i, k) for (j, _d) in rest[:p]):
                candidates[i] = p
        i = min(candidates)
        c = rest.pop(candidates[i])[1]
        # merge every later same-index letter that can also reach the front
        merged = True
        while merged:
            merged = False
            for p2, (j, d) in enumerate(rest):
                if j == i and all(
                    _cyc_adjacent(jj, i, k) for (jj, _dd) in rest[:p2]
                ):
                    c = (c + d) % (spec.q[i - 1] + 1)
                    rest.pop(p2)
                    merged = True
                    break
        if c:
            out.append((i, c))
    return out


def inverse_word(word, spec):
    """Normal form of the group inverse."""
    inv = tuple((i, spec.q[i - 1] + 1 - c) for (i, c) in reversed(word))
    return normal_form(inv, spec)


def wdist(g, h, spec, system=None):
    """W-valued distance: the reduced Coxeter word of g^{-1} h.

    Projects the normal form of g^{-1} h letterwise by (i, c) -> s_i;
    the word length is the gallery distance between the chambers.
    """
    delta = normal_form(inverse_word(g, spec) + tuple(h), spec)
    word = tuple(i for (i, _c) in delta)
    if system is not None:
        word = system.canon(word)
    return word


# ---------------------------------------------------------------------------
# building balls
# ---------------------------------------------------------------------------

class BuildingBall:
    """All chambers at gallery distance <= radius from the base chamber,
    with labeled edges and vertices assembled from panels."""

    def __init__(self, spec, radius, chamber_cap=2_000_000):
        check_right_angled(spec)
        self.spec = spec
        self.radius = radius
        self.system = CoxeterSystem(spec)
        self._letters = [
            (i, c) for i in range(1, spec.k + 1) for c in range(1, spec.q[i - 1] + 1)
        ]
        self._build_chambers(chamber_cap)
        self._build_cells()

    # -- chambers -------------------------------------------------------

    def _build_chambers(self, cap):
        spec = self.spec
        frontier = [()]
        seen = {(): 0}
        order = [[()]]
        for n in range(1, self.radius + 1):
            nxt = []
            for w in frontier:
                for letter in self._letters:
                    v = normal_form(w + (letter,), spec)
                    if len(v) == n and v not in seen:
                        seen[v] = n
                        nxt.append(v)
                        if len(seen) > cap:
                            raise ResourceCap(
                                "building ball exceeds %d chambers" % cap
                            )
            nxt.sort()
            order.append(nxt)
            frontier = nxt
        self.words = [w for level in order for w in level]
        self.index = {w: i for i, w in enumerate(self.words)}
        self.sphere_counts = [len(level) for level in order]
        # right multiplication tables: rmul[c][letter] -> index or None
        self.rmul = []
        for w in self.words:
            row = {}
            for letter in self._letters:
                row[letter] = self.index.get(normal_form(w + (letter,), self.spec))
            self.rmul.append(row)

    def __len__(self):
        return len(self.words)

    def chamber_count(self):
        return len(self.words)

    def word_length(self, idx):
        return len(self.words[idx])

    def neighbors(self, idx):
        """Yield (neighbor index, label) over in-ball panel moves."""
        for (i, c), j in self.rmul[idx].items():
            if j is not None:
                yield j, i

    # -- cells ----------------------------------------------------------

    def _panel_members(self, word, label):
        """All chambers of the panel of `word` across edge `label`
        (normal forms, whether or not they lie in the ball)."""
        spec = self.spec
        base = normal_form(word + ((label, 1),), spec)
        if len(base) <= len(word):
            # word ends (up to commutation) in a letter of this label:
            # strip it to reach the minimal panel representative
            stripped = normal_form(
                word + ((label, -_color_of(word, label, spec)),), spec
            )
        else:
            stripped = word
        members = [stripped]
        for c in range(1, spec.q[label - 1] + 1):
            members.append(normal_form(stripped + ((label, c),), spec))
        return members

    def _build_cells(self):
        k = self.spec.k
        n = len(self.words)
        self.edge_of = [[None] * k for _ in range(n)]
        edges = {}
        for c in range(n):
            for label in range(1, k + 1):
                members = self._panel_members(self.words[c], label)
                key = (min(members), label)
                entry = edges.setdefault(key, (label, []))
                if c not in entry[1]:
                    entry[1].append(c)
                self.edge_of[c][label - 1] = key
        for entry in edges.values():
            entry[1].sort()
        self.edges = edges
        # vertices: orbits of the around-the-vertex moves (two panels)
        self.vertex_of = [[None] * k for _ in range(n)]
        self.vertices = {}
        visited = set()
        for c in range(n):
            for j in range(1, k + 1):
                if (c, j) in visited:
                    continue
                a, b = j, j % k + 1
                comp = []
                closed = True
                stack = [c]
                local = {c}
                while stack:
                    x = stack.pop()
                    comp.append(x)
                    for label in (a, b):
                        for col in range(1, self.spec.q[label - 1] + 1):
                            y = self.rmul[x][(label, col)]
                            if y is None:
                                closed = False
                            elif y not in local:
                                local.add(y)
                                stack.append(y)
                comp.sort()
                key = (comp[0], j)
                expected = (self.spec.q[a - 1] + 1) * (self.spec.q[b - 1] + 1)
                self.vertices[key] = {
                    "labels": (a, b),
                    "j": j,
                    "chambers": comp,
                    "interior": closed and len(comp) == expected,
                    "m": 2,
                }
                for x in comp:
                    visited.add((x, j))
                    self.vertex_of[x][j - 1] = key
        self.is_inner = [
            all(v is not None for v in row.values()) for row in self.rmul
        ]

    def interior_vertex_keys(self):
        return [k for k, v in self.vertices.items() if v["interior"]]

    def adjacency(self):
        """Yield (c1, c2, label) for each dual-graph edge (unordered,
        each chamber pair once per shared panel)."""
        for (word, label), (_lbl, cs) in self.edges.items():
            for i in range(len(cs)):
                for j in range(i + 1, len(cs)):
                    yield cs[i], cs[j], label

    def vertex_link(self, key):
        """Link graph of a vertex: nodes are incident edges (colored by
        which of the two labels they carry), adjacency via chambers."""
        info = self.vertices[key]
        a, b = info["labels"]
        adj, color = {}, {}
        for c in info["chambers"]:
            ea = ("E",) + self.edge_of[c][a - 1]
            eb = ("E",) + self.edge_of[c][b - 1]
            adj.setdefault(ea, set()).add(eb)
            adj.setdefault(eb, set()).add(ea)
            color[ea], color[eb] = 0, 1
        return {v: tuple(sorted(ns)) for v, ns in adj.items()}, color


def _color_of(word, label, spec):
    """Color of the trailing letter of this label that is movable to the
    end of the word by commutations (the word must have one)."""
    k = spec.k
    for (i, c) in reversed(word):
        if i == label:
            return c
        if not _cyc_adjacent(i, label, k):
            raise BuildingError("Internal", "no trailing letter of label %d" % label)
    raise BuildingError("Internal", "no letter of label %d" % label)


def ball(spec, radius, chamber_cap=2_000_000):
    return BuildingBall(spec, radius, chamber_cap=chamber_cap)


# ---------------------------------------------------------------------------
# apartments and retraction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ApartmentColoring:
    """A thin apartment inside the building, as a base chamber plus a
    wall-to-color map.  Walls are reflections of W relative to the base
    chamber (canonical reduced words); walls without an entry carry the
    default color 1.  The embedding alpha is W-distance preserving."""

    spec: ChamberSpec
    base: tuple
    colors: dict = field(default_factory=dict)

    def _system(self):
        return CoxeterSystem(self.spec)

    def alpha(self, w, system=None):
        """Chamber of the building at apartment position w (a Coxeter
        word; any representative works)."""
        system = system or self._system()
        word = system.canon(tuple(w))
        out = tuple(self.base)
        prefix = ()
        for i in word:
            refl = system.canon(prefix + (i,) + tuple(reversed(prefix)))
            c = self.colors.get(refl, 1)
            out = normal_form(out + ((i, c),), self.spec)
            prefix = prefix + (i,)
        return out

    def position_of(self, chamber, system=None):
        """Apartment coordinate w with alpha(w) = chamber, or None if the
        chamber does not lie on this apartment."""
        system = system or self._system()
        w = wdist(self.base, chamber, self.spec, system)
        return w if self.alpha(w, system) == tuple(chamber) else None

    def to_pairs(self):
        """Serializable form: sorted (wall-word, color) pairs."""
        return sorted((list(k), v) for k, v in self.colors.items())


def apartment_through(ball_or_spec, C, C_prime):
    """A deterministic apartment containing both chambers: colors are read
    off the unique normal-form gallery from C to C', default 1 elsewhere."""
    spec = ball_or_spec.spec if hasattr(ball_or_spec, "spec") else ball_or_spec
    system = (
        ball_or_spec.system
        if hasattr(ball_or_spec, "system")
        else CoxeterSystem(spec)
    )
    delta = normal_form(inverse_word(C, spec) + tuple(C_prime), spec)
    colors = {}
    prefix = ()
    for (i, c) in delta:
        refl = system.canon(prefix + (i,) + tuple(reversed(prefix)))
        colors[refl] = c
        prefix = prefix + (i,)
    return ApartmentColoring(spec=spec, base=tuple(C), colors=colors)


def retraction(ball_obj, A, C):
    """The retraction onto apartment A centered at chamber C (which must
    lie on A): maps chamber D to alpha(w_C * wdist(C, D))."""
    spec = ball_obj.spec if hasattr(ball_obj, "spec") else ball_obj
    system = (
        ball_obj.system if hasattr(ball_obj, "system") else CoxeterSystem(spec)
    )
    w_C = A.position_of(C, system)
    if w_C is None:
        raise BuildingError("NotOnApartment", "center chamber not on the apartment")

    def retract(D):
        delta = wdist(C, D, spec, system)
        return A.alpha(system.canon(w_C + delta), system)

    return retract


# ---------------------------------------------------------------------------
# local building-axiom verification for imported complexes
# ---------------------------------------------------------------------------

@dataclass
class VerifyReport:
    ok: bool
    violations: list
    checked: dict
    caveats: tuple = (
        "only local conditions are verified: face labeling, interior edge "
        "multiplicity, interior vertex links; the global apartment-exchange "
        "axiom is not checked",
    )


def parse_complex(text):
    """Parse the labeled 2-complex exchange format (`v`, `e`, `f` lines)."""
    vertices, edges, faces = {}, {}, {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            if parts[0] == "v":
                vertices[int(parts[1])] = (int(parts[2]), int(parts[3]))
            elif parts[0] == "e":
                edges[int(parts[1])] = (int(parts[2]), int(parts[3]), int(parts[4]))
            elif parts[0] == "f":
                faces[int(parts[1])] = tuple(int(x) for x in parts[2:])
            else:
                raise ValueError(parts[0])
        except (IndexError, ValueError) as exc:
            raise BuildingError(
                "FormatError", "bad line %d: %r (%s)" % (lineno, line, exc)
            )
    return vertices, edges, faces


def verify_building_local(text, spec):
    """Check the local building axioms of a labeled 2-complex against a
    chamber spec: every face label-isomorphic to the base chamber, every
    interior edge labeled i in exactly q_i + 1 faces, every interior
    vertex link a generalized m-gon with the spec's parameters.  Returns
    a report listing all violations."""
    from . import genpoly

    vertices, edges, faces = parse_complex(text)
    k = spec.k
    violations = []

    # (a) face labeling
    for fid, eids in sorted(faces.items()):
        if len(eids) != k or any(e not in edges for e in eids):
            violations.append(("FaceLabeling", "face %d has bad edge list" % fid, fid))
            continue
        labels = [edges[e][0] for e in eids]
        if sorted(labels) != list(range(1, k + 1)):
            violations.append(
                ("FaceLabeling", "face %d labels %s != 1..%d" % (fid, labels, k), fid)
            )
            continue
        by_label = {edges[e][0]: e for e in eids}
        for j in range(1, k + 1):
            jn = j % k + 1
            va = set(edges[by_label[j]][1:])
            vb = set(edges[by_label[jn]][1:])
            shared = va & vb
            good = len(shared) == 1 and all(
                set(vertices[v]) == {j, jn} or vertices[v] in ((j, jn), (jn, j))
                for v in shared
            )
            if not good:
                violations.append(
                    (
                        "FaceLabeling",
                        "face %d: edges %d,%d do not meet at a (%d,%d) vertex"
                        % (fid, j, jn, j, jn),
                        fid,
                    )
                )
                break

    # incidence maps
    edge_faces = {eid: [] for eid in edges}
    for fid, eids in faces.items():
        for e in eids:
            if e in edge_faces:
                edge_faces[e].append(fid)

    # (b) edge multiplicity: every panel is complete (q_i + 1 faces) or a
    # boundary stub (1 face)
    for eid, (label, _va, _vb) in sorted(edges.items()):
        mult = len(edge_faces[eid])
        want = spec.q[label - 1] + 1
        if mult not in (1, want):
            violations.append(
                (
                    "EdgeMultiplicity",
                    "edge %d (label %d) lies in %d faces, expected 1 or %d"
                    % (eid, label, mult, want),
                    eid,
                )
            )

    # (c) interior vertex links
    vertex_edges = {vid: [] for vid in vertices}
    for eid, (_label, va, vb) in edges.items():
        if va in vertex_edges:
            vertex_edges[va].append(eid)
        if vb in vertex_edges:
            vertex_edges[vb].append(eid)
    checked_links = 0
    for vid, (a, b) in sorted(vertices.items()):
        adj = {}
        color = {}
        for eid in vertex_edges[vid]:
            for fid in edge_faces[eid]:
                eids = faces[fid]
                here = [e for e in eids if vid in edges[e][1:]]
                if len(here) != 2:
                    continue
                e1, e2 = here
                adj.setdefault(e1, set()).add(e2)
                adj.setdefault(e2, set()).add(e1)
        for eid in adj:
            color[eid] = 0 if edges[eid][0] == a else 1
        if not adj:
            continue
        open_link = any(len(ns) < 2 for ns in adj.values())
        if not open_link:
            # connectivity
            start = next(iter(adj))
            seen = {start}
            queue = deque([start])
            while queue:
                x = queue.popleft()
                for y in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        queue.append(y)
            open_link = len(seen) != len(adj)
        if open_link:
            continue  # boundary vertex: no closed-link requirement
        checked_links += 1
        jm = _m_between_labels(spec, a, b)
        if jm is None:
            violations.append(
                ("VertexLabels", "vertex %d labels (%d,%d) not adjacent" % (vid, a, b), vid)
            )
            continue
        try:
            poly = genpoly.verify(
                {v: tuple(ns) for v, ns in adj.items()}, color, jm
            )
        except genpoly.GenPolyError as exc:
            violations.append(
                ("VertexLink", "vertex %d link fails: %s" % (vid, exc.message), vid)
            )
            continue
        want = tuple(sorted((spec.q[a - 1], spec.q[b - 1])))
        got = tuple(sorted(poly.params)) if poly.params else None
        if got != want:
            violations.append(
                (
                    "VertexLink",
                    "vertex %d link parameters %s, expected %s" % (vid, got, want),
                    vid,
                )
            )

    return VerifyReport(
        ok=not violations,
        violations=violations,
        checked={
            "faces": len(faces),
            "edges": len(edges),
            "vertices": len(vertices),
            "closed_links": checked_links,
        },
    )


def _m_between_labels(spec, a, b):
    lo, hi = (a, b) if a < b else (b, a)
    if hi - lo == 1:
        return spec.m[lo - 1]
    if lo == 1 and hi == spec.k:
        return spec.m[spec.k - 1]
    return None


def export_complex(ball_obj):
    """Serialize a building ball in the same exchange format as the
    Coxeter tessellation balls."""
    vkeys = sorted(ball_obj.vertices.keys())
    vid = {key: i for i, key in enumerate(vkeys)}
    ekeys = sorted(ball_obj.edges.keys())
    eid = {key: i for i, key in enumerate(ekeys)}
    lines = []
    for key in vkeys:
        a, b = ball_obj.vertices[key]["labels"]
        lines.append("v %d %d %d" % (vid[key], a, b))
    k = ball_obj.spec.k
    for key in ekeys:
        label, cs = ball_obj.edges[key]
        c = cs[0]
        va = ball_obj.vertex_of[c][(label - 2) % k]
        vb = ball_obj.vertex_of[c][label - 1]
        lines.append("e %d %d %d %d" % (eid[key], label, vid[va], vid[vb]))
    for c in range(len(ball_obj.words)):
        es = [eid[ball_obj.edge_of[c][g - 1]] for g in range(1, k + 1)]
        lines.append("f %d %s" % (c, " ".join(str(e) for e in es)))
    return "\n".join(lines) + "\n"
