"""Graph views over a document: adjacency, topological order, reachability."""
from __future__ import annotations

import heapq
from dataclasses import dataclass

from .document import ModelDocument


@dataclass(frozen=True)
class GraphView:
    """Predecessor and successor lists per layer id, in link order."""

    predecessors: dict[str, tuple[str, ...]]
    successors: dict[str, tuple[str, ...]]


class CycleError(Exception):
    """Raised when no topological order exists; carries one detected cycle."""

    def __init__(self, cycle: tuple[str, ...]):
        super().__init__("layers form a cycle: " + " -> ".join(cycle))
        self.cycle = cycle


def build_graph(doc: ModelDocument) -> GraphView:
    preds: dict[str, list[str]] = {layer.id: [] for layer in doc.layers}
    succs: dict[str, list[str]] = {layer.id: [] for layer in doc.layers}
    for link in doc.links:
        succs[link.from_id].append(link.to_id)
        preds[link.to_id].append(link.from_id)
    return GraphView(
        predecessors={k: tuple(v) for k, v in preds.items()},
        successors={k: tuple(v) for k, v in succs.items()},
    )


def topological_order(doc: ModelDocument) -> list[str]:
    """Topological order of layer ids; ties go to the layer listed first.

    Raises CycleError carrying the ids of one cycle when none exists.
    """
    graph = build_graph(doc)
    index = {layer.id: i for i, layer in enumerate(doc.layers)}
    indegree = {layer.id: len(graph.predecessors[layer.id]) for layer in doc.layers}

    ready = [index[lid] for lid, deg in indegree.items() if deg == 0]
    heapq.heapify(ready)
    order: list[str] = []
    while ready:
        lid = doc.layers[heapq.heappop(ready)].id
        order.append(lid)
        for succ in graph.successors[lid]:
            indegree[succ] -= 1
            if indegree[succ] == 0:
                heapq.heappush(ready, index[succ])

    if len(order) == len(doc.layers):
        return order
    raise CycleError(_find_cycle(graph, indegree, index))


def _find_cycle(graph: GraphView, indegree: dict[str, int], index: dict[str, int]) -> tuple[str, ...]:
    # Every node left over after Kahn stalls has a predecessor among the
    # leftovers, so walking predecessors must revisit a node.
    remaining = {lid for lid, deg in indegree.items() if deg > 0}
    start = min(remaining, key=index.__getitem__)
    trail = [start]
    seen = {start}
    node = start
    while True:
        node = next(p for p in graph.predecessors[node] if p in remaining)
        if node in seen:
            cycle = trail[trail.index(node):]
            cycle.reverse()  # trail followed predecessors; report in flow direction
            first = min(range(len(cycle)), key=lambda i: index[cycle[i]])
            return tuple(cycle[first:] + cycle[:first])
        seen.add(node)
        trail.append(node)


def reachable_from_inputs(doc: ModelDocument, source_ids: list[str]) -> set[str]:
    """Layer ids reachable from the given sources by following links forward."""
    graph = build_graph(doc)
    reached = set(source_ids)
    frontier = list(source_ids)
    while frontier:
        lid = frontier.pop()
        for succ in graph.successors[lid]:
            if succ not in reached:
                reached.add(succ)
                frontier.append(succ)
    return reached


def is_chain(doc: ModelDocument) -> bool:
    """True when the graph is one straight path covering every layer."""
    graph = build_graph(doc)
    if not doc.layers:
        return False
    sources = [l.id for l in doc.layers if not graph.predecessors[l.id]]
    if len(sources) != 1:
        return False
    length = 1
    node = sources[0]
    while True:
        succs = graph.successors[node]
        if len(succs) > 1 or len(graph.predecessors[node]) > 1:
            return False
        if not succs:
            break
        node = succs[0]
        length += 1
    return length == len(doc.layers)
