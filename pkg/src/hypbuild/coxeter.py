"""The Coxeter tessellation of the hyperbolic plane by a chamber polygon.

Generators are the reflections s_1..s_k across the edges of the base
chamber; s_i and s_{i+1} (cyclically) satisfy (s_i s_{i+1})^m = 1 where
pi/m is the angle at the shared vertex, and non-adjacent generator pairs
have no relation (m = infinity).

The word problem is solved by Tits' theorem: a word is reduced iff no
sequence of braid moves produces an adjacent equal pair, and all reduced
words of an element are connected by braid moves (Matsumoto), so the
canonical form is the lexicographically least word in the braid class of
any reduced word (ShortLex: all reduced words share the same length).
Chamber indexing is fixed to this ShortLex order throughout.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .weights import WeightVector


class BallTooSmall(ValueError):
    pass


class ResourceCap(RuntimeError):
    pass


class CoxeterSystem:
    """The hyperbolic polygon reflection group W for a chamber spec."""

    def __init__(self, spec):
        self.spec = spec
        self.k = spec.k
        # order of s_i s_j for cyclically adjacent pairs; None = infinity
        self._orders = {}
        for j in range(1, spec.k + 1):
            a, b = j, j % spec.k + 1
            self._orders[(a, b)] = spec.m[j - 1]
            self._orders[(b, a)] = spec.m[j - 1]
        self._canon_cache = {}
        self._class_cache = {}

    def m_between(self, a, b):
        """Order of s_a s_b (None when infinite, 1 when a == b would be 2... a != b expected)."""
        return self._orders.get((a, b))

    # -- word problem ---------------------------------------------------

    def canon(self, word):
        """ShortLex canonical form of an arbitrary word (tuple of 1-based
        generator indices)."""
        word = tuple(word)
        while True:
            hit = self._canon_cache.get(word)
            if hit is not None:
                return hit
            reduced, result = self._explore(word)
            if reduced:
                self._canon_cache[word] = result
                return result
            # an adjacent equal pair was deleted; keep reducing
            self._canon_cache[word] = None  # placeholder removed below
            del self._canon_cache[word]
            word = result

    def _explore(self, word):
        """BFS over the braid class of `word`.  Returns (False, shorter)
        the moment a deletable adjacent pair appears, else (True, lexmin)."""
        hit = self._class_cache.get(word)
        if hit is not None:
            return True, hit
        for i in range(len(word) - 1):
            if word[i] == word[i + 1]:
                return False, word[:i] + word[i + 2 :]
        seen = {word}
        queue = deque([word])
        while queue:
            w = queue.popleft()
            for w2 in self._braid_moves(w):
                if w2 in seen:
                    continue
                hit = self._class_cache.get(w2)
                if hit is not None:
                    for s in seen:
                        self._class_cache[s] = hit
                    return True, hit
                for i in range(len(w2) - 1):
                    if w2[i] == w2[i + 1]:
                        return False, w2[:i] + w2[i + 2 :]
                seen.add(w2)
                queue.append(w2)
        best = min(seen)
        for s in seen:
            self._class_cache[s] = best
        return True, best

    def _braid_moves(self, w):
        n = len(w)
        for p in range(n - 1):
            a, b = w[p], w[p + 1]
            if a == b:
                continue
            m = self._orders.get((a, b))
            if m is None or p + m > n:
                continue
            ok = True
            for t in range(m):
                if w[p + t] != (a if t % 2 == 0 else b):
                    ok = False
                    break
            if ok:
                yield w[:p] + tuple(b if t % 2 == 0 else a for t in range(m)) + w[p + m :]

    def mult(self, u, v):
        return self.canon(tuple(u) + tuple(v))

    @staticmethod
    def inverse(word):
        return tuple(reversed(word))

    def length(self, word):
        return len(self.canon(word))

    def reduce(self, word):
        """Public name for canon(); returns the ShortLex reduced form."""
        return self.canon(word)

    # -- inversions / walls ---------------------------------------------

    def inversions(self, w):
        """The reflections t_j = s_{i1}..s_{ij}..s_{i1} for the canonical
        reduced word of w; these are the walls separating the base chamber
        from w * base.  len(result) == l(w)."""
        w = self.canon(w)
        out = []
        seen = set()
        for j in range(len(w)):
            prefix = w[:j]
            t = self.canon(prefix + (w[j],) + tuple(reversed(prefix)))
            if t in seen:  # cannot happen for reduced words; guard anyway
                continue
            seen.add(t)
            out.append(t)
        return out


@dataclass(frozen=True)
class Wall:
    """A wall: the fixed locus of a reflection, anchored at one edge."""

    reflection: tuple
    anchor_chamber: tuple
    anchor_label: int
    weight: WeightVector


def boundary_components(spec):
    """Components of the chamber boundary after removing every vertex
    whose angle is not pi/3; each component is a maximal run of edge
    labels joined through m=3 vertices.  These components classify wall
    types.  Returns a list of label tuples in boundary order; a single
    component equal to the full cycle means every vertex has m=3."""
    k = spec.k
    # vertex j joins edge labels j and j%k+1
    joined = [spec.m[j - 1] == 3 for j in range(1, k + 1)]
    if all(joined):
        return [tuple(range(1, k + 1))]
    # build runs of labels connected through joined vertices
    comps = []
    seen = set()
    for start in range(1, k + 1):
        if start in seen:
            continue
        # extend forward while vertex at the far end joins
        comp = [start]
        seen.add(start)
        cur = start
        while joined[cur - 1]:
            nxt = cur % k + 1
            if nxt in comp:
                break
            comp.append(nxt)
            seen.add(nxt)
            cur = nxt
        # extend backward while the vertex before `start` joins
        cur = start
        while joined[(cur - 2) % k]:
            prv = (cur - 2) % k + 1
            if prv in comp:
                break
            comp.insert(0, prv)
            seen.add(prv)
            cur = prv
        comps.append(tuple(comp))
    return comps


def wall_period(component, k, full_cycle):
    """The periodic edge-label pattern along walls of a given type."""
    if full_cycle:
        return tuple(component)
    # labels i..j then mirrored back: i, i+1, .., j, j, .., i+1, i
    return tuple(component) + tuple(reversed(component))


class CoxeterBall:
    """All chambers at word length <= radius, assembled as a labeled
    2-complex with integer-indexed multiplication tables."""

    def __init__(self, spec, radius, chamber_cap=2_000_000):
        self.spec = spec
        self.radius = radius
        self.system = CoxeterSystem(spec)
        self._build_group(chamber_cap)
        self._build_cells()

    # -- group layer ----------------------------------------------------

    def _build_group(self, cap):
        sys_ = self.system
        k = self.spec.k
        words = [()]
        index = {(): 0}
        rmul = []
        frontier = [()]
        for _ in range(self.radius):
            nxt = []
            for w in frontier:
                for g in range(1, k + 1):
                    w2 = sys_.canon(w + (g,))
                    if len(w2) > len(w) and w2 not in index:
                        index[w2] = len(words)
                        words.append(w2)
                        nxt.append(w2)
                        if len(words) > cap:
                            raise ResourceCap("chamber cap %d exceeded" % cap)
            frontier = nxt
        order = sorted(range(len(words)), key=lambda i: (len(words[i]), words[i]))
        self.words = [words[i] for i in order]
        self.index = {w: i for i, w in enumerate(self.words)}
        self.rmul = []
        for w in self.words:
            row = []
            for g in range(1, k + 1):
                w2 = sys_.canon(w + (g,))
                row.append(self.index.get(w2))
            self.rmul.append(row)

    def __len__(self):
        return len(self.words)

    def word_length(self, idx):
        return len(self.words[idx])

    def rmul_word(self, idx, word):
        """Right-multiply chamber idx by a word using table lookups; the
        whole walk must stay inside the ball (else returns None)."""
        for g in word:
            idx = self.rmul[idx][g - 1]
            if idx is None:
                return None
        return idx

    def inverse_index(self, idx):
        """Index of the inverse element, when inside the ball."""
        return self.index.get(self.system.canon(tuple(reversed(self.words[idx]))))

    # -- cells ----------------------------------------------------------

    def _build_cells(self):
        k = self.spec.k
        n = len(self.words)
        # edges: key -> (label, [chamber indices]); key is the smaller
        # chamber word on the edge (or the in-ball chamber for boundary edges)
        self.edge_of = [[None] * k for _ in range(n)]  # edge key per (chamber, label-1)
        edges = {}
        for c in range(n):
            for g in range(1, k + 1):
                nb = self.rmul[c][g - 1]
                if nb is None:
                    other_word = self.system.canon(self.words[c] + (g,))
                else:
                    other_word = self.words[nb]
                key = (min(self.words[c], other_word), g)
                entry = edges.setdefault(key, (g, []))
                entry[1].append(c)
                self.edge_of[c][g - 1] = key
        self.edges = edges
        # vertices: component of the around-the-vertex move graph
        self.vertex_of = [[None] * k for _ in range(n)]  # per (chamber, vertex j-1)
        self.vertices = {}
        visited = set()
        for c in range(n):
            for j in range(1, k + 1):
                if (c, j) in visited:
                    continue
                a, b = j, j % k + 1  # edge labels at this vertex
                comp = []
                closed = True
                stack = [c]
                local = {c}
                while stack:
                    x = stack.pop()
                    comp.append(x)
                    for g in (a, b):
                        y = self.rmul[x][g - 1]
                        if y is None:
                            closed = False
                        elif y not in local:
                            local.add(y)
                            stack.append(y)
                comp.sort()
                key = (comp[0], j)
                m = self.spec.m_at_vertex(j)
                interior = closed and len(comp) == 2 * m
                self.vertices[key] = {
                    "labels": (a, b),
                    "j": j,
                    "chambers": comp,
                    "interior": interior,
                    "m": m,
                }
                for x in comp:
                    visited.add((x, j))
                    self.vertex_of[x][j - 1] = key
        # per-chamber boundary flag
        self.is_inner = [all(x is not None for x in row) for row in self.rmul]

    def chamber_count(self):
        return len(self.words)

    def interior_vertex_keys(self):
        return [k for k, v in self.vertices.items() if v["interior"]]

    def adjacency(self):
        """Yield (c1, c2, label) for interior dual-graph edges."""
        for (word, g), (label, cs) in self.edges.items():
            if len(cs) == 2:
                yield cs[0], cs[1], label

    # -- walls ----------------------------------------------------------

    def wall_of_edge(self, chamber_idx, label):
        """The Wall through edge `label` of the given chamber."""
        w = self.words[chamber_idx]
        refl = self.system.canon(w + (label,) + tuple(reversed(w)))
        q = self.spec.q_of_edge(label)
        return Wall(
            reflection=refl,
            anchor_chamber=w,
            anchor_label=label,
            weight=WeightVector.log_int(q),
        )

    def walls(self):
        """Group interior edges of the ball by their wall reflection."""
        groups = {}
        for (word, g), (label, cs) in self.edges.items():
            if len(cs) != 2:
                continue
            c = min(cs)
            refl = self.system.canon(
                self.words[c] + (label,) + tuple(reversed(self.words[c]))
            )
            groups.setdefault(refl, []).append((c, label))
        out = []
        for refl, edge_list in sorted(groups.items()):
            c, label = min(edge_list)
            q = self.spec.q_of_edge(label)
            out.append(
                (
                    Wall(
                        reflection=refl,
                        anchor_chamber=self.words[c],
                        anchor_label=label,
                        weight=WeightVector.log_int(q),
                    ),
                    edge_list,
                )
            )
        return out

    def wall_edge_path(self, wall):
        """Edges of the wall inside the ball, ordered along the geodesic.
        Returns (ordered edge keys, ordered labels)."""
        refl = wall.reflection
        members = []
        for (word, g), (label, cs) in self.edges.items():
            c = cs[0]
            r = self.system.canon(
                self.words[c] + (label,) + tuple(reversed(self.words[c]))
            )
            if r == refl:
                members.append(((word, g), label))
        if not members:
            raise BallTooSmall("wall has no edges in this ball")
        # order the edges into a path via shared vertices
        endpoint = {}
        for (key, label) in members:
            cs = self.edges[key][1]
            c = cs[0]
            # edge `label` of chamber c runs between vertex label-1 and label
            k = self.spec.k
            va = self.vertex_of[c][(label - 2) % k]
            vb = self.vertex_of[c][label - 1]
            endpoint[key] = (va, vb, label)
        incidence = {}
        for key, (va, vb, label) in endpoint.items():
            incidence.setdefault(va, []).append(key)
            incidence.setdefault(vb, []).append(key)
        start_key = members[0][0]
        used = {start_key}
        # extend a simple path in both directions from the start edge
        ordered = [start_key]
        frontier_vertices = [endpoint[start_key][0], endpoint[start_key][1]]
        progress = True
        while progress:
            progress = False
            for vi in (0, 1):
                v = frontier_vertices[vi]
                for key in incidence.get(v, []):
                    if key not in used:
                        used.add(key)
                        if vi == 0:
                            ordered.insert(0, key)
                        else:
                            ordered.append(key)
                        va, vb, _ = endpoint[key]
                        frontier_vertices[vi] = vb if va == v else va
                        progress = True
                        break
        labels = [endpoint[key][2] for key in ordered]
        return ordered, labels


def wall_type(ball, wall):
    """Classify a wall by the boundary component its edge labels follow.
    Returns the component (tuple of labels).  Raises BallTooSmall when
    less than one full period of the pattern is visible in the ball."""
    comps = boundary_components(ball.spec)
    full_cycle = all(mi == 3 for mi in ball.spec.m)
    ordered, labels = ball.wall_edge_path(wall)
    comp = None
    for c in comps:
        if wall.anchor_label in c:
            comp = c
            break
    period = wall_period(comp, ball.spec.k, full_cycle)
    if len(labels) < len(period):
        raise BallTooSmall(
            "wall shows %d edges; need %d for a full period" % (len(labels), len(period))
        )
    # the observed labels must match the period under some rotation and
    # orientation
    pl = len(period)
    seqs = [tuple(labels), tuple(reversed(labels))]
    for seq in seqs:
        for shift in range(pl):
            if all(seq[t] == period[(t + shift) % pl] for t in range(len(seq))):
                return comp
    raise BallTooSmall("wall labels %s do not align with period %s" % (labels, period))


def export_complex(ball):
    """Serialize the ball as a labeled 2-complex in the line-oriented
    exchange format: `v <id> <i> <j>`, `e <id> <label> <v1> <v2>`,
    `f <id> <e1> ... <ek>`."""
    vkeys = sorted(ball.vertices.keys())
    vid = {key: i for i, key in enumerate(vkeys)}
    ekeys = sorted(ball.edges.keys())
    eid = {key: i for i, key in enumerate(ekeys)}
    lines = []
    for key in vkeys:
        a, b = ball.vertices[key]["labels"]
        lines.append("v %d %d %d" % (vid[key], a, b))
    k = ball.spec.k
    for key in ekeys:
        label, cs = ball.edges[key]
        c = cs[0]
        va = ball.vertex_of[c][(label - 2) % k]
        vb = ball.vertex_of[c][label - 1]
        lines.append("e %d %d %d %d" % (eid[key], label, vid[va], vid[vb]))
    for c in range(len(ball.words)):
        es = [eid[ball.edge_of[c][g - 1]] for g in range(1, k + 1)]
        lines.append("f %d %s" % (c, " ".join(str(e) for e in es)))
    return "\n".join(lines) + "\n"
