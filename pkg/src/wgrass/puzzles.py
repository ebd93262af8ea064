"""
Triangle puzzles computing equivariant Schubert structure constants.

Geometry.  A puzzle of size n tiles an upward equilateral triangle cut
into n^2 unit triangles.  Rows run 1..n top to bottom; row r holds the
up-triangles U(r, 1..r) and down-triangles D(r, 1..r-1).  Edges come in
three directions and are indexed

    A(r, j): "/" left edge of U(r, j)  (= right edge of D(r, j-1)),
    B(r, j): "\\" right edge of U(r, j) (= left edge of D(r, j)),
    H(r, j): horizontal bottom edge of U(r, j) (= top of D(r+1, j)).

Boundary words (0/1 strings of length n) are read west to east:
the northwest side bottom-up is A(n,1)..A(1,1), the northeast side
top-down is B(1,1)..B(n,n), the south side left-right is H(n,1)..H(n,n).
A boundary triple is written Delta_{nw, ne}^{south}.

Pieces.  Every unit triangle with all edges 0 or all edges 1 stands
alone.  Rhombi pair an up- and a down-triangle; one parallel edge pair
carries 1, the other 0:

    vertical  (U(r,j) over D(r+1,j)), "/"-pair 1: plain piece,
    leaning right (U(r,j) + D(r,j)), horizontal pair 1: plain piece,
    leaning left  (D(r,j) + U(r,j+1)), "\\"-pair 1: plain piece,
    vertical with "\\"-pair 1: the single-orientation equivariant piece.

The equivariant piece at U(r, j) projects along the two lattice
directions to south-edge columns c = j (southwest) and a = j + n - r
(southeast); its weight factor is y_a - y_c, a > c.  The conjugated
weight replaces y_a - y_c by y_{n+1-a} - y_{n+1-c}.

Tables.  ``kt_constants`` sums plain weights over Delta_{w_i, w_j}^{w_l}
boundaries in the raw orientation; ``conjugated_constants`` sums
conjugated weights over boundaries of the entry-reversed words, which is
the orientation every weighted formula downstream consumes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import symbols
from .errors import CapacityError, ParameterError
from .polynomial import Poly

TABLE_LIMIT = 15  # largest C(n, k) for which full tables are enumerated


@dataclass(frozen=True)
class Puzzle:
    """One tiling; ``pieces`` are (kind, r, j) anchors in scan order."""

    n: int
    boundary: tuple  # (nw, ne, south) words
    pieces: tuple
    equivariant: tuple  # south-edge column pairs (a, c), a > c

    def weight_factors(self) -> list:
        """One linear factor y_a - y_c per equivariant piece."""
        out = []
        for a, c in self.equivariant:
            out.append(
                Poly.variable(self.n, a) - Poly.variable(self.n, c)
            )
        return out

    def weight(self) -> Poly:
        total = Poly.one(self.n)
        for f in self.weight_factors():
            total = total * f
        return total

    def conjugated_pairs(self) -> list:
        """(u, v) with u < v for the reversed-alphabet factors y_u - y_v."""
        n = self.n
        return [(n + 1 - a, n + 1 - c) for a, c in self.equivariant]

    def conjugated_weight(self) -> Poly:
        total = Poly.one(self.n)
        for u, v in self.conjugated_pairs():
            total = total * (Poly.variable(self.n, u) - Poly.variable(self.n, v))
        return total


def _check_word(w: str, n: int) -> None:
    if len(w) != n or set(w) - {"0", "1"}:
        raise ParameterError(f"boundary word must be 0/1 of length {n}: {w!r}")


# Piece catalogue.  Each entry lists (edge assignments, covered cells).
# Edges are (kind, r, j) -> label; cells are ("U"|"D", r, j).


def _up_pieces(r: int, j: int, n: int) -> list:
    pieces = [
        ("tri0", {("A", r, j): 0, ("B", r, j): 0, ("H", r, j): 0},
         (("U", r, j),)),
        ("tri1", {("A", r, j): 1, ("B", r, j): 1, ("H", r, j): 1},
         (("U", r, j),)),
    ]
    if r < n:
        pieces.append(
            ("rhV", {("A", r, j): 1, ("B", r, j): 0,
                     ("B", r + 1, j): 0, ("A", r + 1, j + 1): 1},
             (("U", r, j), ("D", r + 1, j))))
        pieces.append(
            ("rhE", {("A", r, j): 0, ("B", r, j): 1,
                     ("B", r + 1, j): 1, ("A", r + 1, j + 1): 0},
             (("U", r, j), ("D", r + 1, j))))
    if j <= r - 1:
        pieces.append(
            ("rhR", {("A", r, j): 0, ("A", r, j + 1): 0,
                     ("H", r, j): 1, ("H", r - 1, j): 1},
             (("U", r, j), ("D", r, j))))
    return pieces


def _down_pieces(r: int, j: int) -> list:
    pieces = [
        ("tri0", {("B", r, j): 0, ("A", r, j + 1): 0, ("H", r - 1, j): 0},
         (("D", r, j),)),
        ("tri1", {("B", r, j): 1, ("A", r, j + 1): 1, ("H", r - 1, j): 1},
         (("D", r, j),)),
        ("rhL", {("B", r, j): 1, ("B", r, j + 1): 1,
                 ("H", r - 1, j): 0, ("H", r, j + 1): 0},
         (("D", r, j), ("U", r, j + 1))),
    ]
    return pieces


def enumerate_puzzles(nw: str, ne: str, south: str) -> list:
    """All tilings with the given boundary, in row-major fill order."""
    n = len(nw)
    for w in (nw, ne, south):
        _check_word(w, n)
    return list(_enumerate_cached(nw, ne, south))


@lru_cache(maxsize=None)
def _enumerate_cached(nw: str, ne: str, south: str) -> tuple:
    n = len(nw)
    edges: dict = {}
    for p in range(1, n + 1):
        edges[("A", n + 1 - p, 1)] = int(nw[p - 1])
        edges[("B", p, p)] = int(ne[p - 1])
        edges[("H", n, p)] = int(south[p - 1])

    cells = []
    for r in range(1, n + 1):
        for j in range(1, r + 1):
            cells.append(("U", r, j))
            if j < r:
                cells.append(("D", r, j))
    order = {cell: i for i, cell in enumerate(cells)}

    covered = [False] * len(cells)
    placements: list = []
    results: list = []

    def try_place(assign: dict):
        added = []
        for edge, label in assign.items():
            known = edges.get(edge)
            if known is None:
                edges[edge] = label
                added.append(edge)
            elif known != label:
                for e in added:
                    del edges[e]
                return None
        return added

    def dfs(pos: int):
        while pos < len(cells) and covered[pos]:
            pos += 1
        if pos == len(cells):
            equiv = tuple(
                sorted((j + n - r, j) for kind, r, j in placements
                       if kind == "rhE")
            )
            results.append(
                Puzzle(n, (nw, ne, south), tuple(placements), equiv)
            )
            return
        kind_cell = cells[pos]
        _, r, j = kind_cell
        catalogue = (
            _up_pieces(r, j, n) if kind_cell[0] == "U" else _down_pieces(r, j)
        )
        for kind, assign, covers in catalogue:
            spots = [order[c] for c in covers]
            if any(covered[s] for s in spots):
                continue
            added = try_place(assign)
            if added is None:
                continue
            for s in spots:
                covered[s] = True
            placements.append((kind, r, j))
            dfs(pos)
            placements.pop()
            for s in spots:
                covered[s] = False
            for e in added:
                del edges[e]

    dfs(0)
    return tuple(results)


def puzzles_for(k: int, n: int, i: int, j: int, l: int,
                conjugated: bool = True) -> list:
    """Puzzles whose boundary encodes the symbol triple (i, j; l).

    In the conjugated orientation the boundary words are the reversed
    words of the three symbols; in the raw orientation the words are
    taken as is.
    """
    lat = symbols.lattice(k, n)
    for idx in (i, j, l):
        if not 0 <= idx <= lat.m:
            raise ParameterError(f"symbol index {idx} out of range")
    if conjugated:
        words = [symbols.sigma_r_word(lat.words[t]) for t in (i, j, l)]
    else:
        words = [lat.words[t] for t in (i, j, l)]
    return enumerate_puzzles(words[0], words[1], words[2])


@lru_cache(maxsize=None)
def conjugated_product(k: int, n: int, i: int, j: int) -> dict:
    """Map l -> sum of conjugated weights over Delta^{rev w_l}_{rev w_i, rev w_j}.

    Every enumerated puzzle is checked against the piece-count balance
    dim(i) + dim(j) - dim(l), and puzzles may only appear at l dominating
    both inputs.
    """
    from .errors import InternalInconsistencyError

    lat = symbols.lattice(k, n)
    upper = set(lat.upper_set(i, j))
    out = {}
    for l in range(lat.m + 1):
        found = puzzles_for(k, n, i, j, l, conjugated=True)
        if not found:
            continue
        expected = lat.d[i] + lat.d[j] - lat.d[l]
        if l not in upper or expected < 0:
            raise InternalInconsistencyError(
                "puzzle found outside the dominance region"
            )
        total = Poly.zero(n)
        for puz in found:
            if len(puz.equivariant) != expected:
                raise InternalInconsistencyError(
                    "piece count violates the dimension balance"
                )
            total = total + puz.conjugated_weight()
        if not total.is_zero():
            out[l] = total
    return out


def _table_guard(k: int, n: int) -> None:
    symbols.check_kn(k, n)
    m1 = len(symbols.enumerate_symbols(k, n))
    if m1 > TABLE_LIMIT:
        raise CapacityError(
            f"full puzzle tables need C(n, k) <= {TABLE_LIMIT}, got {m1}"
        )


def kt_constants(k: int, n: int) -> dict:
    """Raw-orientation table (i, j, l) -> weight polynomial (zeros omitted)."""
    _table_guard(k, n)
    lat = symbols.lattice(k, n)
    table = {}
    for i in range(lat.m + 1):
        for j in range(lat.m + 1):
            for l in range(lat.m + 1):
                total = Poly.zero(n)
                for puz in puzzles_for(k, n, i, j, l, conjugated=False):
                    total = total + puz.weight()
                if not total.is_zero():
                    table[(i, j, l)] = total
    return table


def conjugated_constants(k: int, n: int) -> dict:
    """Conjugated table (i, j, l) -> polynomial; the downstream orientation."""
    _table_guard(k, n)
    lat = symbols.lattice(k, n)
    table = {}
    for i in range(lat.m + 1):
        for j in range(lat.m + 1):
            for l, poly in conjugated_product(k, n, i, j).items():
                table[(i, j, l)] = poly
    return table


def render_ascii(puz: Puzzle) -> str:
    """Rough row-by-row dump of the tiling, for debugging."""
    lines = [f"size {puz.n}  boundary {puz.boundary}"]
    for kind, r, j in puz.pieces:
        lines.append(f"  {kind} at row {r}, position {j}")
    if puz.equivariant:
        pairs = ", ".join(f"(a={a}, c={c})" for a, c in puz.equivariant)
        lines.append(f"  equivariant pieces: {pairs}")
    return "\n".join(lines)
