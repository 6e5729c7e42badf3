"""Simple directed graphs on vertices 1..n."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple

import networkx as nx
import numpy as np

from .exact import EXACT, scalar
from .matrix import zeros


class GraphParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class Digraph:
    n: int
    edges: frozenset

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a graph needs at least one vertex")
        edges = frozenset((int(u), int(v)) for u, v in self.edges)
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise ValueError(f"edge ({u},{v}) out of range 1..{self.n}")
        object.__setattr__(self, "edges", edges)

    @property
    def out_degree(self) -> list[int]:
        deg = [0] * self.n
        for u, _ in self.edges:
            deg[u - 1] += 1
        return deg

    @property
    def in_degree(self) -> list[int]:
        deg = [0] * self.n
        for _, v in self.edges:
            deg[v - 1] += 1
        return deg

    def successors(self, u: int) -> list[int]:
        return sorted(v for a, v in self.edges if a == u)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=int)
        for u, v in self.edges:
            a[u - 1, v - 1] = 1
        return a

    def to_networkx(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(range(1, self.n + 1))
        g.add_edges_from(self.edges)
        return g

    def to_edge_list(self) -> str:
        lines = [f"{self.n} {len(self.edges)}"]
        lines += [f"{u} {v}" for u, v in self.sorted_edges()]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "edges": [list(e) for e in self.sorted_edges()]})


class ValidationReport(NamedTuple):
    balanced: bool
    strongly_connected: bool

    @property
    def ok(self) -> bool:
        return self.balanced and self.strongly_connected


@dataclass(frozen=True)
class WeightedUndirectedGraph:
    """Undirected graph with a Fraction weight per edge, keyed by (i, j), i < j."""

    n: int
    weights: dict

    def laplacian(self, backend: str = EXACT) -> np.ndarray:
        s = zeros(self.n, self.n, backend)
        for (i, j), w in sorted(self.weights.items()):
            w = scalar(w, backend)
            s[i - 1, j - 1] -= w
            s[j - 1, i - 1] -= w
            s[i - 1, i - 1] += w
            s[j - 1, j - 1] += w
        return s


def _int_tokens(line: str, lineno: int, count: int) -> list[int]:
    toks = line.split()
    if len(toks) != count:
        raise GraphParseError(f"expected {count} integers, got {line.strip()!r}", lineno)
    try:
        return [int(t) for t in toks]
    except ValueError:
        raise GraphParseError(f"non-integer token in {line.strip()!r}", lineno) from None


def parse_edge_list(text: str) -> Digraph:
    """Parse ``n m`` followed by ``m`` lines ``u v``.

    Blank lines and ``#`` comments are skipped; line numbers in errors refer
    to the original text.
    """
    lines = [
        (no, ln.split("#", 1)[0])
        for no, ln in enumerate(text.splitlines(), start=1)
        if ln.split("#", 1)[0].strip()
    ]
    if not lines:
        raise GraphParseError("empty graph description")
    hno, header = lines[0]
    n, m = _int_tokens(header, hno, 2)
    if n < 1 or m < 0:
        raise GraphParseError(f"bad header n={n} m={m}", hno)
    body = lines[1:]
    if len(body) != m:
        raise GraphParseError(f"header announces {m} edges, found {len(body)}", hno)
    edges = set()
    for no, ln in body:
        u, v = _int_tokens(ln, no, 2)
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphParseError(f"label out of range 1..{n}: {u} {v}", no)
        if u == v:
            raise GraphParseError(f"self-loop at vertex {u}", no)
        if (u, v) in edges:
            raise GraphParseError(f"duplicate edge {u} {v}", no)
        edges.add((u, v))
    return Digraph(n, frozenset(edges))


def parse_json_graph(text: str) -> Digraph:
    try:
        data = json.loads(text)
        n = int(data["n"])
        pairs = [(int(u), int(v)) for u, v in data["edges"]]
    except (ValueError, KeyError, TypeError) as exc:
        raise GraphParseError(f"malformed JSON graph: {exc}") from None
    if len(set(pairs)) != len(pairs):
        raise GraphParseError("duplicate edge in JSON graph")
    try:
        return Digraph(n, frozenset(pairs))
    except ValueError as exc:
        raise GraphParseError(str(exc)) from None


def parse_graph(text: str) -> Digraph:
    """Accept either the JSON or the edge-list format."""
    if text.lstrip().startswith("{"):
        return parse_json_graph(text)
    return parse_edge_list(text)


def validate(g: Digraph) -> ValidationReport:
    balanced = g.out_degree == g.in_degree
    strong = nx.number_strongly_connected_components(g.to_networkx()) == 1
    return ValidationReport(balanced, strong)


def reversal(g: Digraph) -> Digraph:
    return Digraph(g.n, frozenset((v, u) for u, v in g.edges))


def symmetrize(g: Digraph) -> WeightedUndirectedGraph:
    weights = {}
    for u, v in g.edges:
        key = (min(u, v), max(u, v))
        weights[key] = Fraction(1) if (v, u) in g.edges else Fraction(1, 2)
    return WeightedUndirectedGraph(g.n, weights)


def embed_undirected(n: int, undirected_edges: Iterable) -> Digraph:
    edges = set()
    for u, v in undirected_edges:
        edges.add((u, v))
        edges.add((v, u))
    return Digraph(n, frozenset(edges))


def random_balanced(n: int, extra_cycles: int, seed: int) -> Digraph:
    """Random balanced, strongly connected digraph built from directed cycles.

    A random Hamiltonian cycle comes first.  Each of ``extra_cycles`` attempts
    then draws a random simple cycle and keeps it only if none of its edges is
    present yet, so the result stays simple and balanced.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    rng = random.Random(seed)
    order = list(range(1, n + 1))
    rng.shuffle(order)
    edges = {(order[i], order[(i + 1) % n]) for i in range(n)}
    if n == 2:
        # the two-vertex Hamiltonian cycle is already the full edge set
        return Digraph(n, frozenset(edges))
    for _ in range(extra_cycles):
        k = rng.randint(2, n)
        cyc = rng.sample(range(1, n + 1), k)
        new = [(cyc[i], cyc[(i + 1) % k]) for i in range(k)]
        if not any(e in edges for e in new):
            edges.update(new)
    return Digraph(n, frozenset(edges))
