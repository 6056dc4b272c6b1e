import { defaultHyperparameters } from "./types.js";
export function emptyState(name = "untitled model") {
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
function withNodes(state, nodes) {
    return { ...state, nodes, dirty: true };
}
/** Designer-generated ids: lowercase kind plus the first free counter. */
export function freshNodeId(state, kind) {
    const base = kind.toLowerCase();
    let n = 1;
    while (state.nodes.has(`${base}_${n}`)) {
        n += 1;
    }
    return `${base}_${n}`;
}
export function addNode(state, kind, defaults, x, y) {
    const id = freshNodeId(state, kind);
    const nodes = new Map(state.nodes);
    nodes.set(id, { kind, params: { ...defaults }, x, y });
    return { state: { ...withNodes(state, nodes), selection: id }, id };
}
export function removeNode(state, id) {
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
export function moveNode(state, id, x, y) {
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
export function setParam(state, id, name, value) {
    const node = state.nodes.get(id);
    if (!node) {
        return state;
    }
    const nodes = new Map(state.nodes);
    nodes.set(id, { ...node, params: { ...node.params, [name]: value } });
    return withNodes(state, nodes);
}
export function clearParam(state, id, name) {
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
export function addEdge(state, from, to) {
    if (from === to || !state.nodes.has(from) || !state.nodes.has(to)) {
        return state;
    }
    if (state.edges.some(([a, b]) => a === from && b === to)) {
        return state;
    }
    return { ...state, edges: [...state.edges, [from, to]], dirty: true };
}
export function removeEdge(state, from, to) {
    const edges = state.edges.filter(([a, b]) => !(a === from && b === to));
    if (edges.length === state.edges.length) {
        return state;
    }
    return { ...state, edges, dirty: true };
}
export function select(state, id) {
    return { ...state, selection: id };
}
export function setName(state, name) {
    return { ...state, name, dirty: true };
}
export function setHyperparameters(state, hp) {
    return { ...state, hyperparameters: hp, dirty: true };
}
/** Project the canvas onto a document; positions never leave the client. */
export function toDocument(state) {
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
export function fromDocument(doc, positions) {
    const nodes = new Map();
    doc.layers.forEach((layer, i) => {
        const pos = positions?.get(layer.id) ?? { x: 80 + (i % 4) * 190, y: 60 + Math.floor(i / 4) * 130 };
        nodes.set(layer.id, { kind: layer.kind, params: { ...layer.params }, x: pos.x, y: pos.y });
    });
    return {
        name: doc.name,
        nodes,
        edges: doc.links.map((l) => [l.from, l.to]),
        hyperparameters: doc.hyperparameters,
        selection: null,
        dirty: false,
        modelId: null,
        revision: null,
    };
}
