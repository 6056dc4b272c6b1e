import { addEdge, freshNodeId, removeEdge, setParam } from "./state.js";
export class StaleSuggestionError extends Error {
}
export function applySuggestion(state, suggestion) {
    switch (suggestion.action) {
        case "set_param": {
            const { layer_id, param, value } = suggestion;
            if (!layer_id || !param || value === undefined) {
                throw new StaleSuggestionError("set_param suggestion is incomplete");
            }
            if (!state.nodes.has(layer_id)) {
                throw new StaleSuggestionError(`layer ${layer_id} no longer exists`);
            }
            return setParam(state, layer_id, param, value);
        }
        case "insert_layer": {
            const { kind, link } = suggestion;
            if (!kind || !link) {
                throw new StaleSuggestionError("insert_layer suggestion is incomplete");
            }
            if (!state.edges.some(([a, b]) => a === link.from && b === link.to)) {
                throw new StaleSuggestionError(`link ${link.from} -> ${link.to} no longer exists`);
            }
            const id = freshNodeId(state, kind);
            const fromNode = state.nodes.get(link.from);
            const toNode = state.nodes.get(link.to);
            const x = fromNode && toNode ? (fromNode.x + toNode.x) / 2 : 120;
            const y = fromNode && toNode ? (fromNode.y + toNode.y) / 2 + 40 : 120;
            const nodes = new Map(state.nodes);
            nodes.set(id, { kind, params: {}, x, y });
            let next = { ...state, nodes, dirty: true };
            next = removeEdge(next, link.from, link.to);
            next = addEdge(next, link.from, id);
            next = addEdge(next, id, link.to);
            return next;
        }
        case "remove_link": {
            const { link } = suggestion;
            if (!link || !state.edges.some(([a, b]) => a === link.from && b === link.to)) {
                throw new StaleSuggestionError("the link to remove no longer exists");
            }
            return removeEdge(state, link.from, link.to);
        }
        case "add_link": {
            const { link } = suggestion;
            if (!link || !state.nodes.has(link.from) || !state.nodes.has(link.to)) {
                throw new StaleSuggestionError("an endpoint of the suggested link no longer exists");
            }
            if (state.edges.some(([a, b]) => a === link.from && b === link.to)) {
                throw new StaleSuggestionError("the suggested link already exists");
            }
            return addEdge(state, link.from, link.to);
        }
    }
}
