"""Geometry of the base arc, its group translates, and edge paths.

The base arc runs along the unit circle between the square-rotation fixed
point i (angle pi/2) and the cube-rotation fixed point omega (angle
2pi/3).  Translates g(arc) are the edges of a tree; a reduced alternating
word determines the unique edge path from the marked point c on the base
arc to its image under the word, and avatars are evaluated along that
path with branch continuity.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import Blocked, NotReduced
from .etaengine import (
    AvatarState, EtaContext, avatar_eval, j_fricke, z_eval_from_seed,
)
from .exactquad import exact_j_target
from .sl2z import (
    IDENTITY, R, S, GroupElem, load_table, mobius, validate_word, word_eval,
)

_LETTER = {"R": R, "r": R.inv(), "S": S}

THETA_I = math.pi / 2.0
THETA_OMEGA = 2.0 * math.pi / 3.0
OMEGA = cmath.exp(2j * math.pi / 3.0)

_BISECT_THETA_TOL = 1e-13


@dataclass(frozen=True)
class Edge:
    """One tree edge: the image of the base arc under g, traversed from
    theta_from to theta_to (angles parameterize the base arc)."""

    g: GroupElem
    theta_from: float
    theta_to: float

    def point_at(self, theta: float) -> complex:
        return mobius(self.g, cmath.exp(1j * theta))

    @property
    def start(self) -> complex:
        return self.point_at(self.theta_from)

    @property
    def end(self) -> complex:
        return self.point_at(self.theta_to)


@dataclass(frozen=True)
class TreePath:
    """Edge path from c to word(c); immutable after construction."""

    word: str
    edges: tuple[Edge, ...]
    theta_c: float
    max_vertex_mismatch: float
    samples: int = 2000

    def point(self, t: float) -> complex:
        """Path point for global parameter t in [0, 1]; edge j covers
        [j/k, (j+1)/k] with theta affine inside each edge."""
        if not 0.0 <= t <= 1.0:
            raise ValueError(f"path parameter {t} outside [0, 1]")
        k = len(self.edges)
        u = t * k
        j = min(int(u), k - 1)
        frac = u - j
        e = self.edges[j]
        theta = e.theta_from + (e.theta_to - e.theta_from) * frac
        return e.point_at(theta)

    @property
    def start(self) -> complex:
        return self.edges[0].start

    @property
    def endpoint(self) -> complex:
        return self.edges[-1].end


@lru_cache(maxsize=1)
def find_c() -> complex:
    """The unique point on the open base arc where j equals the exact
    golden-quotient special value, located by bisection in the angle.

    j is real and strictly decreasing from 1728 to 0 along the arc, so the
    bracket is guaranteed; the angle is resolved to 1e-13."""
    target = float(exact_j_target()["j_float"])
    lo, hi = THETA_I, THETA_OMEGA
    f_lo = j_fricke(cmath.exp(1j * lo)).real - target
    while hi - lo > _BISECT_THETA_TOL:
        mid = 0.5 * (lo + hi)
        f_mid = j_fricke(cmath.exp(1j * mid)).real - target
        if (f_mid > 0.0) == (f_lo > 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return cmath.exp(1j * 0.5 * (lo + hi))


def is_alternating(word: str) -> bool:
    """True iff S-letters and rotation letters strictly alternate."""
    kinds = ["S" if ch == "S" else "R" for ch in word]
    return all(a != b for a, b in zip(kinds, kinds[1:]))


def _vertex_theta(letter: str) -> float:
    # consecutive edges p_j(arc), p_j*letter(arc) meet at p_j(i) for an
    # S-letter (S fixes i) and at p_j(omega) for a rotation letter.
    return THETA_I if letter == "S" else THETA_OMEGA


def build_path(word: str, theta_c: float | None = None,
               samples: int = 2000) -> TreePath:
    """Edge path from c to word(c): prefix images of the base arc.

    A k-letter word yields k+1 edges; traversal starts at angle theta_c on
    the base arc, crosses one shared vertex per letter, and ends at
    theta_c on the final edge.  Raises NotReduced unless the word is
    reduced alternating (otherwise consecutive edges would meet at the
    same vertex twice and the path would backtrack)."""
    validate_word(word)
    if not is_alternating(word):
        raise NotReduced(f"word must alternate rotation and S letters: {word!r}")
    if theta_c is None:
        theta_c = cmath.phase(find_c())
    letters = list(word)
    k = len(letters)
    prefixes = [IDENTITY]
    for ch in letters:
        prefixes.append(prefixes[-1] * _LETTER[ch])
    edges = []
    for j, g in enumerate(prefixes):
        t_from = theta_c if j == 0 else _vertex_theta(letters[j - 1])
        t_to = theta_c if j == k else _vertex_theta(letters[j])
        edges.append(Edge(g, t_from, t_to))
    for i in range(len(prefixes)):
        for j in range(i + 1, len(prefixes)):
            d = prefixes[i].inv() * prefixes[j]
            if d == IDENTITY or -d == IDENTITY:
                raise NotReduced(f"path revisits an edge: prefixes {i} and {j}")
    mismatch = 0.0
    for a, b in zip(edges, edges[1:]):
        mismatch = max(mismatch, abs(a.end - b.start))
    return TreePath(word=word, edges=tuple(edges), theta_c=theta_c,
                    max_vertex_mismatch=mismatch, samples=samples)


def pole_scan(path: TreePath, n: int, samples: int | None = None,
              pole_cap: float = 1e6, ctx: EtaContext | None = None,
              table=None) -> float:
    """Maximum |Z_n| along the path grid, walked with branch continuity.

    The first point is branch-seeded by continuation from i; each later
    sample uses the previous value as hint.  Raises Blocked (with the
    offending parameter) as soon as the modulus exceeds pole_cap."""
    table = table or load_table()
    count = samples if samples is not None else path.samples
    z0 = path.point(0.0)
    rep = table.rep(n)
    val = z_eval_from_seed(mobius(rep, z0), ctx=ctx)
    state = AvatarState(index=n, point=z0, value=val)
    peak = abs(val)
    for k in range(1, count + 1):
        t = k / count
        v = avatar_eval(n, path.point(t), state, ctx=ctx, table=table)
        mag = abs(v)
        if mag > peak:
            peak = mag
        if mag > pole_cap:
            raise Blocked(f"avatar {n} modulus {mag:.3e} exceeds the pole "
                          f"cap {pole_cap:.1e} at t={t:.6f}", t=t)
    return peak


def _arc_samples(g: GroupElem, count: int) -> list[complex]:
    return [mobius(g, cmath.exp(1j * (THETA_I + (THETA_OMEGA - THETA_I)
                                      * k / (count - 1))))
            for k in range(count)]


def _min_distance(aa: list[complex], bb: list[complex]) -> float:
    return min(abs(a - b) for a in aa for b in bb)


def _panel_words(count: int) -> list[str]:
    # reduced alternating words of increasing length; skip single letters
    # (those are the vertex-sharing special cases handled separately)
    words = []
    frontier = ["R", "r", "S"]
    while len(words) < count:
        nxt = []
        for w in frontier:
            last_s = w[-1] == "S"
            for ch in ("S",) if not last_s else ("R", "r"):
                nxt.append(w + ch)
        for w in nxt:
            if len(words) < count:
                words.append(w)
        frontier = nxt
    return words[:count]


def verify_local_intersections(arc_samples: int = 160,
                               panel_size: int = 50) -> dict:
    """How translates of the base arc meet the base arc itself.

    Checks the three local cases (identity: same set; the rotation letters
    meet only at omega; S meets only at i) and a panel of longer words
    whose edges must be disjoint from the base arc (minimum sample
    distance above 1e-6).  Returns a report dict with an overall flag."""
    base = _arc_samples(IDENTITY, arc_samples)
    report: dict = {"identity_same_set": True, "vertex_cases": {},
                    "panel": [], "ok": True}
    for z in base:
        if abs(mobius(IDENTITY, z) - z) > 1e-15:
            report["identity_same_set"] = False
    # rotation letters fix omega, S fixes i; away from the shared vertex
    # the arcs must separate
    away = 0.05
    for name, g, vertex in (("R", R, OMEGA), ("r", R.inv(), OMEGA),
                            ("-R", -R, OMEGA), ("S", S, 1j), ("-S", -S, 1j)):
        fixes = abs(mobius(g, vertex) - vertex)
        base_far = [z for z in base if abs(z - vertex) > away]
        image_far = [mobius(g, z) for z in base
                     if abs(mobius(g, z) - vertex) > away]
        separated = _min_distance(base_far, image_far)
        entry = {"fixes_vertex": fixes < 1e-12,
                 "separation_away_from_vertex": separated}
        report["vertex_cases"][name] = entry
        if not entry["fixes_vertex"] or separated <= 1e-6:
            report["ok"] = False
    for w in _panel_words(panel_size):
        g = word_eval(w)
        image = _arc_samples(g, arc_samples)
        d = _min_distance(base, image)
        # refine around the coarse minimizer before judging
        if d < 1e-3:
            ai = min(range(len(base)),
                     key=lambda i: min(abs(base[i] - b) for b in image))
            lo = max(0, ai - 2)
            hi = min(len(base) - 1, ai + 2)
            t0 = THETA_I + (THETA_OMEGA - THETA_I) * lo / (len(base) - 1)
            t1 = THETA_I + (THETA_OMEGA - THETA_I) * hi / (len(base) - 1)
            fine = [cmath.exp(1j * (t0 + (t1 - t0) * k / 400))
                    for k in range(401)]
            d = _min_distance(fine, image)
        report["panel"].append({"word": w, "min_distance": d})
        if d <= 1e-6:
            report["ok"] = False
    if not report["identity_same_set"]:
        report["ok"] = False
    return report
