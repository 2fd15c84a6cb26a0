"""
Generalized Dynkin diagrams of diagonal braidings, and classification against
a small catalogue of named diagram templates.

A diagonal braiding c(w_i (x) w_j) = q_ij w_j (x) w_i is summarized by the
graph with vertex labels q_ii and an edge {i, j} labeled q_ij * q_ji whenever
that product differs from 1.  The catalogue implemented here consists of the
finitely many labeled shapes this library's classification results name:
Cartan A/D/E chains, the super chains A_n(q; J) (with the symmetric-super
refinement), one triangle family, and the exotic shapes D(2,1), g(2,3),
g(3,3) and g(2,6), each with its root-of-unity membership constraints.
Anything else classifies to the empty list; the catalogue never claims
infinite dimension.

Template matching is isomorphism-aware: every vertex bijection onto the
template's slots is tried, so relabeled inputs classify identically.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .braided import BraidedSpace, is_diagonal
from .permkit import Permutation
from .scalars import CycScalar, Monomial, as_cyc

Scalar = Union[Monomial, CycScalar]


class DynkinError(ValueError):
    pass


def _label_eq(a: Scalar, b: Scalar) -> bool:
    if isinstance(a, Monomial) != isinstance(b, Monomial):
        return False
    return a == b


def _is_one_label(s: Scalar) -> bool:
    return s.is_identity() if isinstance(s, Monomial) else as_cyc(s) == 1


@dataclass(frozen=True)
class GDD:
    """Vertex labels q_ii and edges {i, j} labeled with q_ij q_ji != 1."""

    vertices: tuple[Scalar, ...]
    edges: tuple[tuple[int, int, Scalar], ...]  # (i, j, label), i < j, 1-based

    def __post_init__(self):
        n = len(self.vertices)
        seen = set()
        for i, j, lab in self.edges:
            if not (1 <= i < j <= n):
                raise DynkinError(f"bad edge ({i},{j})")
            if (i, j) in seen:
                raise DynkinError(f"duplicate edge ({i},{j})")
            seen.add((i, j))
            if _is_one_label(lab):
                raise DynkinError("edges must carry labels != 1")

    @property
    def n(self) -> int:
        return len(self.vertices)

    def edge_map(self) -> dict[tuple[int, int], Scalar]:
        return {(i, j): lab for i, j, lab in self.edges}

    def edge_label(self, i: int, j: int) -> Optional[Scalar]:
        if i > j:
            i, j = j, i
        return self.edge_map().get((i, j))

    def adjacent(self, i: int, j: int) -> bool:
        return self.edge_label(i, j) is not None

    def neighbors(self, i: int) -> list[int]:
        return [j for j in range(1, self.n + 1) if j != i and self.adjacent(i, j)]

    def is_symbolic(self) -> bool:
        return any(isinstance(v, Monomial) for v in self.vertices) or any(
            isinstance(lab, Monomial) for _, _, lab in self.edges
        )

    def relabel(self, phi: Permutation) -> "GDD":
        verts = [None] * self.n
        for i in range(1, self.n + 1):
            verts[phi(i) - 1] = self.vertices[i - 1]
        edges = []
        for i, j, lab in self.edges:
            a, b = sorted((phi(i), phi(j)))
            edges.append((a, b, lab))
        return GDD(tuple(verts), tuple(sorted(edges, key=lambda e: (e[0], e[1]))))

    def to_json_dict(self) -> dict:
        return {
            "vertices": [str(v) for v in self.vertices],
            "edges": [[i, j, str(lab)] for i, j, lab in self.edges],
        }


def gdd_from_q_table(q: Sequence[Sequence[Scalar]]) -> GDD:
    n = len(q)
    edges = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            lab = q[i - 1][j - 1] * q[j - 1][i - 1]
            if not _is_one_label(lab):
                edges.append((i, j, lab))
    return GDD(tuple(q[i][i] for i in range(n)), tuple(edges))


def gdd(b: BraidedSpace) -> GDD:
    """The generalized Dynkin diagram of a diagonal braided space."""
    q = is_diagonal(b)
    if q is None:
        raise DynkinError("the braiding is not of diagonal type")
    return gdd_from_q_table(q)


def check_tau_symmetry(g: GDD, tau: Permutation) -> bool:
    """q_ii = q_{tau(i)tau(i)} and qtilde_ij = qtilde_{tau(i)tau(j)}, exactly."""
    if tau.n != g.n:
        raise DynkinError("tau degree must equal the vertex count")
    for i in range(1, g.n + 1):
        if not _label_eq(g.vertices[i - 1], g.vertices[tau(i) - 1]):
            return False
        for j in range(i + 1, g.n + 1):
            a, b = g.edge_label(i, j), g.edge_label(tau(i), tau(j))
            if (a is None) != (b is None):
                return False
            if a is not None and not _label_eq(a, b):
                return False
    return True


def square_obstruction(g: GDD, tau: Permutation) -> Optional[tuple[int, int]]:
    """
    The structural filter for diagrams carrying a fixed-point-free involution:
    a vertex k adjacent to both i and tau(i) forces a 4-cycle (with tau(k))
    that kills finite-dimensionality.  Returns a witness (k, i) or None.
    """
    if tau.n != g.n:
        raise DynkinError("tau degree must equal the vertex count")
    for i in range(1, g.n + 1):
        if tau(i) == i:
            continue
        for k in range(1, g.n + 1):
            if k in (i, tau(i)):
                continue
            if g.adjacent(k, i) and g.adjacent(k, tau(i)):
                return (k, i)
    return None


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def render(g: GDD, format: str = "ascii") -> str:
    if format == "ascii":
        lines = [f"vertex {i}: {g.vertices[i - 1]}" for i in range(1, g.n + 1)]
        for i, j, lab in sorted(g.edges):
            lines.append(f"edge {i} -- {j}: {lab}")
        return "\n".join(lines) + "\n"
    if format == "dot":
        lines = ["graph gdd {"]
        for i in range(1, g.n + 1):
            lines.append(f'  v{i} [shape=circle, label="{g.vertices[i - 1]}"];')
        for i, j, lab in sorted(g.edges):
            lines.append(f'  v{i} -- v{j} [label="{lab}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise DynkinError(f"unknown format {format!r}")


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TypeLabel:
    family: str
    parameters: dict = field(default_factory=dict)
    predicted_dim: Optional[int] = None
    vertex_order: tuple[int, ...] = ()
    conditions: tuple[str, ...] = ()

    def key(self):
        return (
            self.family,
            tuple(sorted((k, str(v)) for k, v in self.parameters.items())),
            self.predicted_dim,
        )

    def to_json_dict(self) -> dict:
        return {
            "family": self.family,
            "parameters": {k: str(v) for k, v in sorted(self.parameters.items())},
            "predicted_dim": self.predicted_dim,
            "vertex_order": list(self.vertex_order),
            "conditions": list(self.conditions),
        }


def _order_of(label: Scalar) -> Optional[int]:
    if isinstance(label, Monomial):
        return None
    return as_cyc(label).root_of_unity_order()


def _minus_one(label: Scalar) -> bool:
    return not isinstance(label, Monomial) and as_cyc(label) == -1


def _paths_of(g: GDD) -> list[tuple[int, ...]]:
    """All vertex orders realizing g as a path graph (empty if not a path)."""
    n = g.n
    deg = {i: len(g.neighbors(i)) for i in range(1, n + 1)}
    if n == 1:
        return [(1,)]
    ends = [i for i in range(1, n + 1) if deg[i] == 1]
    if sorted(deg.values()) != [1, 1] + [2] * (n - 2) or len(g.edges) != n - 1:
        return []
    out = []
    for start in ends:
        order = [start]
        prev = None
        cur = start
        while len(order) < n:
            nxt = [u for u in g.neighbors(cur) if u != prev]
            if len(nxt) != 1:
                return []
            prev, cur = cur, nxt[0]
            order.append(cur)
        out.append(tuple(order))
    return out


def _match_a1xa1(g: GDD) -> list[TypeLabel]:
    if g.n != 2 or g.edges:
        return []
    if not _label_eq(g.vertices[0], g.vertices[1]):
        return []
    m = _order_of(g.vertices[0])
    if m is None or m < 2:
        return []
    return [
        TypeLabel(
            "cartan A1xA1",
            {"q": g.vertices[0], "m": m},
            predicted_dim=m * m,
            vertex_order=(1, 2),
        )
    ]


def _match_table_2dim(g: GDD) -> list[TypeLabel]:
    """The two-vertex entries with known dimensions."""
    if g.n != 2 or len(g.edges) != 1:
        return []
    q = g.vertices[0]
    if not _label_eq(q, g.vertices[1]):
        return []
    lab = g.edges[0][2]
    out = []
    if _order_of(q) == 3 and _label_eq(lab, q * q):
        out.append(
            TypeLabel(
                "cartan A2", {"q": q}, predicted_dim=27, vertex_order=(1, 2)
            )
        )
    if _minus_one(q):
        m = _order_of(lab)
        if m is not None and m >= 2:
            out.append(
                TypeLabel(
                    "super A2(q;{1,2})",
                    {"q": lab, "m": m},
                    predicted_dim=4 * m,
                    vertex_order=(1, 2),
                )
            )
    return out


def _an_chain_labels(g: GDD, order: tuple[int, ...]):
    verts = [g.vertices[v - 1] for v in order]
    edges = [g.edge_label(order[i], order[i + 1]) for i in range(len(order) - 1)]
    return verts, edges


def _match_an_qj(g: GDD) -> list[TypeLabel]:
    """A_n(q; J) chains (Cartan when J is empty), n >= 3."""
    n = g.n
    if n < 3:
        return []
    out = []
    for order in _paths_of(g):
        verts, edges = _an_chain_labels(g, order)
        q = verts[-1] * verts[-1] * edges[-1]
        qord = _order_of(q)
        if isinstance(q, Monomial) or qord in (1, 2):
            continue  # q must avoid {1, -1}
        one = CycScalar.one(1)
        for J_bits in range(1 << n):
            J = frozenset(i + 1 for i in range(n) if J_bits >> i & 1)
            ok = True
            for i in range(1, n + 1):
                qi = verts[i - 1]
                left = edges[i - 2] if i >= 2 else None
                right = edges[i - 1] if i <= n - 1 else None
                if i in J:
                    if not _minus_one(qi):
                        ok = False
                        break
                    if left is not None and right is not None:
                        if not _label_eq(left * right, one):
                            ok = False
                            break
                else:
                    qinv = qi.inverse()
                    if left is not None and not _label_eq(left, qinv):
                        ok = False
                        break
                    if right is not None and not _label_eq(right, qinv):
                        ok = False
                        break
            if not ok:
                continue
            family = "cartan A" if not J else "super A"
            label = TypeLabel(
                f"{family}{n}",
                {"q": q, "J": tuple(sorted(J))},
                vertex_order=order,
            )
            if J and _is_symmetric_super(verts, edges, J, n):
                label = TypeLabel(
                    f"symmetric super A{n}",
                    {"q": q, "J": tuple(sorted(J))},
                    vertex_order=order,
                )
            out.append(label)
    return out


def _is_symmetric_super(verts, edges, J, n) -> bool:
    # palindromic vertex labels and edge labels; the even-length middle
    # condition uses a third root of unity
    for k in range(1, n // 2 + 1):
        if not _label_eq(verts[k - 1], verts[n - k]):
            return False
    for k in range(1, (n - 1) // 2 + 1):
        if not _label_eq(edges[k - 1], edges[n - 1 - k]):
            return False
    if n % 2 == 0:
        m = n // 2
        if m not in J:
            if not _label_eq(edges[m - 1], verts[m - 1] * verts[m - 1]):
                return False
            if not _label_eq(verts[m - 1], verts[m]):
                return False
            if _order_of(verts[m - 1]) != 3:
                return False
    return True


def _match_cartan_tree(g: GDD) -> list[TypeLabel]:
    """Cartan D_n (n >= 4) and E_6: all labels q, edges q^-1, on the tree."""
    n = g.n
    if n < 4:
        return []
    q = g.vertices[0]
    if any(not _label_eq(v, q) for v in g.vertices[1:]):
        return []
    qord = _order_of(q)
    if isinstance(q, Monomial) or qord in (1, 2) or qord is None:
        return []
    qinv = q.inverse()
    if any(not _label_eq(lab, qinv) for _, _, lab in g.edges):
        return []
    if len(g.edges) != n - 1:
        return []
    degs = sorted(len(g.neighbors(i)) for i in range(1, n + 1))
    out = []
    if degs == [1, 1, 1] + [2] * (n - 4) + [3]:
        center = next(i for i in range(1, n + 1) if len(g.neighbors(i)) == 3)
        lengths = sorted(_branch_lengths(g, center))
        if lengths == sorted([1, 1, n - 3]):
            out.append(TypeLabel(f"cartan D{n}", {"q": q}, vertex_order=()))
        elif n == 6 and lengths == [1, 2, 2]:
            out.append(TypeLabel("cartan E6", {"q": q}, vertex_order=()))
    return out


def _branch_lengths(g: GDD, center: int) -> list[int]:
    out = []
    for u in g.neighbors(center):
        length = 1
        prev, cur = center, u
        while True:
            nxt = [w for w in g.neighbors(cur) if w != prev]
            if not nxt:
                break
            if len(nxt) > 1:
                return [-1]
            prev, cur = cur, nxt[0]
            length += 1
        out.append(length)
    return out


# literal templates: (family, vertex specs, edge specs, order constraint)
# specs are expressions in one root-of-unity parameter z
_SPEC_FUNCS = {
    "z": lambda z: z,
    "z^-1": lambda z: z.inverse(),
    "z^2": lambda z: z * z,
    "-1": lambda z: CycScalar.from_rational(-1),
    "-z^-1": lambda z: -z.inverse(),
}

_LITERAL_TEMPLATES = [
    # triangle with two -1 vertices hanging off a root-of-unity vertex
    ("triangle (-1,-1;q)", ("-1", "-1", "z"),
     {(1, 2): "z^2", (1, 3): "z^-1", (2, 3): "z^-1"}, "m>2"),
    # D(2,1) in its two drawn forms
    ("D(2,1) chain", ("z", "-1", "z"),
     {(1, 2): "z^-1", (2, 3): "z^-1"}, "m>2"),
    ("D(2,1) triangle", ("-1", "-1", "-1"),
     {(1, 2): "z^2", (1, 3): "z^-1", (2, 3): "z^-1"}, "m>2"),
    # g(2,3) in its three drawn forms (z of order 3)
    ("g(2,3) chain", ("-1", "-1", "-1"),
     {(1, 2): "z", (2, 3): "z"}, "m==3"),
    ("g(2,3) chain'", ("-1", "-z^-1", "-1"),
     {(1, 2): "z^-1", (2, 3): "z^-1"}, "m==3"),
    ("g(2,3) triangle", ("z", "z", "-1"),
     {(1, 2): "z^-1", (1, 3): "z^-1", (2, 3): "z^-1"}, "m==3"),
    # g(3,3): stars with center vertex 2
    ("g(3,3) star", ("z^-1", "z", "-1", "-1"),
     {(1, 2): "z", (2, 3): "z^-1", (2, 4): "z^-1"}, "m==3"),
    ("g(3,3) star'", ("z^-1", "z^-1", "-1", "-1"),
     {(1, 2): "z", (2, 3): "z", (2, 4): "z"}, "m==3"),
    # g(2,6): the house and the 5-chain (z of order 3)
    ("g(2,6) house", ("z", "-1", "-1", "z", "-1"),
     {(1, 2): "z^-1", (2, 3): "z", (3, 4): "z^-1", (2, 5): "z", (3, 5): "z"},
     "m==3"),
    ("g(2,6) chain", ("z", "z", "-1", "z", "z"),
     {(1, 2): "z^-1", (2, 3): "z^-1", (3, 4): "z^-1", (4, 5): "z^-1"}, "m==3"),
]


def _match_literal(g: GDD) -> list[TypeLabel]:
    out = []
    for family, vspecs, especs, constraint in _LITERAL_TEMPLATES:
        n = len(vspecs)
        if g.n != n or len(g.edges) != len(especs):
            continue
        # candidate parameter values: orders depend on the constraint
        zvals = _candidate_params(g, constraint)
        for z in zvals:
            vlab = [_SPEC_FUNCS[s](z) for s in vspecs]
            elab = {e: _SPEC_FUNCS[s](z) for e, s in especs.items()}
            for perm in itertools.permutations(range(1, n + 1)):
                # perm maps template slot -> input vertex
                if any(
                    not _label_eq(g.vertices[perm[i] - 1], vlab[i])
                    for i in range(n)
                ):
                    continue
                ok = True
                for (a, b), lab in elab.items():
                    got = g.edge_label(perm[a - 1], perm[b - 1])
                    if got is None or not _label_eq(got, lab):
                        ok = False
                        break
                if ok:
                    out.append(
                        TypeLabel(
                            family,
                            {"q": z, "m": _order_of(z)},
                            vertex_order=perm,
                        )
                    )
                    break  # one witness ordering per parameter value
    return out


def _candidate_params(g: GDD, constraint: str) -> list[CycScalar]:
    """Root-of-unity values appearing in the diagram that fit the constraint."""
    seen: list[CycScalar] = []
    for lab in list(g.vertices) + [lab for _, _, lab in g.edges]:
        if isinstance(lab, Monomial):
            continue
        c = as_cyc(lab)
        m = c.root_of_unity_order()
        if m is None:
            continue
        for cand in (c, c.inverse()):
            mm = cand.root_of_unity_order()
            if constraint == "m>2" and (mm is None or mm <= 2):
                continue
            if constraint == "m==3" and mm != 3:
                continue
            if not any(cand == s for s in seen):
                seen.append(cand)
    return seen


def classify(g: GDD) -> list[TypeLabel]:
    """All catalogue templates matching the diagram (empty: not catalogued)."""
    if g.is_symbolic():
        raise DynkinError(
            "classification needs concrete cyclotomic labels; evaluate the "
            "diagram's monomials first"
        )
    out: list[TypeLabel] = []
    for matcher in (
        _match_a1xa1,
        _match_table_2dim,
        _match_an_qj,
        _match_cartan_tree,
        _match_literal,
    ):
        out.extend(matcher(g))
    seen = set()
    unique = []
    for lab in out:
        if lab.key() not in seen:
            seen.add(lab.key())
            unique.append(lab)
    return unique
