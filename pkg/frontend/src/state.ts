/**
 * Canvas state and its edit operations.
 *
 * All operations are pure: they take a state and return a new one, which
 * keeps undo, tests, and the render loop simple. Node positions are UI
 * sidecar data; the projection to a ModelDocument drops them and the
 * reverse projection reinvents them, so the document stays layout-free.
 */
import type { Hyperparameters, ModelDocument, ParamValue } from "./types.js";
import { defaultHyperparameters } from "./types.js";

export interface NodeState {
  kind: string;
  params: Record<string, ParamValue>;
  x: number;
  y: number;
}

export interface CanvasState {
  name: string;
  nodes: ReadonlyMap<string, NodeState>;
  edges: ReadonlyArray<readonly [string, string]>;
  hyperparameters: Hyperparameters;
  selection: string | null;
  dirty: boolean;
  modelId: string | null;
  revision: number | null;
}

export function emptyState(name = "untitled model"): CanvasState {
  return {
    name,
    nodes: new Map(),
    edges: [],
    hyperparameters: defaultHyperparameters(),
    selection: null,
    dirty: false,
    modelId: null,
    revision: null,
  };
}

function withNodes(state: CanvasState, nodes: Map<string, NodeState>): CanvasState {
  return { ...state, nodes, dirty: true };
}

/** Designer-generated ids: lowercase kind plus the first free counter. */
export function freshNodeId(state: CanvasState, kind: string): string {
  const base = kind.toLowerCase();
  let n = 1;
  while (state.nodes.has(`${base}_${n}`)) {
    n += 1;
  }
  return `${base}_${n}`;
}

export function addNode(
  state: CanvasState,
  kind: string,
  defaults: Record<string, ParamValue>,
  x: number,
  y: number,
): { state: CanvasState; id: string } {
  const id = freshNodeId(state, kind);
  const nodes = new Map(state.nodes);
  nodes.set(id, { kind, params: { ...defaults }, x, y });
  return { state: { ...withNodes(state, nodes), selection: id }, id };
}

export function removeNode(state: CanvasState, id: string): CanvasState {
  if (!state.nodes.has(id)) {
    return state;
  }
  const nodes = new Map(state.nodes);
  nodes.delete(id);
  const edges = state.edges.filter(([from, to]) => from !== id && to !== id);
  return {
    ...withNodes(state, nodes),
    edges,
    selection: state.selection === id ? null : state.selection,
  };
}

export function moveNode(state: CanvasState, id: string, x: number, y: number): CanvasState {
  const node = state.nodes.get(id);
  if (!node) {
    return state;
  }
  const nodes = new Map(state.nodes);
  nodes.set(id, { ...node, x, y });
  // moving is layout-only: the projected document is unchanged, so the
  // canvas is not marked dirty and no re-validation is triggered
  return { ...state, nodes };
}

export function setParam(state: CanvasState, id: string, name: string, value: ParamValue): CanvasState {
  const node = state.nodes.get(id);
  if (!node) {
    return state;
  }
  const nodes = new Map(state.nodes);
  nodes.set(id, { ...node, params: { ...node.params, [name]: value } });
  return withNodes(state, nodes);
}

export function clearParam(state: CanvasState, id: string, name: string): CanvasState {
  const node = state.nodes.get(id);
  if (!node || !(name in node.params)) {
    return state;
  }
  const params = { ...node.params };
  delete params[name];
  const nodes = new Map(state.nodes);
  nodes.set(id, { ...node, params });
  return withNodes(state, nodes);
}

export function addEdge(state: CanvasState, from: string, to: string): CanvasState {
  if (from === to || !state.nodes.has(from) || !state.nodes.has(to)) {
    return state;
  }
  if (state.edges.some(([a, b]) => a === from && b === to)) {
    return state;
  }
  return { ...state, edges: [...state.edges, [from, to] as const], dirty: true };
}

export function removeEdge(state: CanvasState, from: string, to: string): CanvasState {
  const edges = state.edges.filter(([a, b]) => !(a === from && b === to));
  if (edges.length === state.edges.length) {
    return state;
  }
  return { ...state, edges, dirty: true };
}

export function select(state: CanvasState, id: string | null): CanvasState {
  return { ...state, selection: id };
}

export function setName(state: CanvasState, name: string): CanvasState {
  return { ...state, name, dirty: true };
}

export function setHyperparameters(state: CanvasState, hp: Hyperparameters): CanvasState {
  return { ...state, hyperparameters: hp, dirty: true };
}

/** Project the canvas onto a document; positions never leave the client. */
export function toDocument(state: CanvasState): ModelDocument {
  const layers = [...state.nodes.entries()].map(([id, node]) => ({
    id,
    kind: node.kind,
    params: { ...node.params },
  }));
  const links = state.edges.map(([from, to]) => ({ from, to }));
  return {
    nlds_version: "1.0",
    name: state.name,
    layers,
    links,
    hyperparameters: state.hyperparameters,
  };
}

/** Rebuild a canvas from a document, laying nodes out on a grid. */
export function fromDocument(
  doc: ModelDocument,
  positions?: ReadonlyMap<string, { x: number; y: number }>,
): CanvasState {
  const nodes = new Map<string, NodeState>();
  doc.layers.forEach((layer, i) => {
    const pos = positions?.get(layer.id) ?? { x: 80 + (i % 4) * 190, y: 60 + Math.floor(i / 4) * 130 };
    nodes.set(layer.id, { kind: layer.kind, params: { ...layer.params }, x: pos.x, y: pos.y });
  });
  return {
    name: doc.name,
    nodes,
    edges: doc.links.map((l) => [l.from, l.to] as const),
    hyperparameters: doc.hyperparameters,
    selection: null,
    dirty: false,
    modelId: null,
    revision: null,
  };
}
