import { describe, expect, it } from "vitest";

import { addEdge, addNode, emptyState, removeEdge, toDocument } from "../src/state.js";
import { applySuggestion, StaleSuggestionError } from "../src/suggestions.js";

function convDense() {
  let { state } = addNode(emptyState(), "Input", { shape: [8, 8, 3] }, 0, 0);
  ({ state } = addNode(state, "Conv2D", { filters: 4 }, 0, 0));
  ({ state } = addNode(state, "Dense", {}, 0, 0));
  ({ state } = addNode(state, "Output", {}, 0, 0));
  state = addEdge(state, "input_1", "conv2d_1");
  state = addEdge(state, "conv2d_1", "dense_1");
  state = addEdge(state, "dense_1", "output_1");
  return state;
}

describe("applySuggestion", () => {
  it("insert_layer rewires the offending link through a fresh node", () => {
    const next = applySuggestion(convDense(), {
      action: "insert_layer",
      kind: "Flatten",
      link: { from: "conv2d_1", to: "dense_1" },
    });
    expect(next.nodes.has("flatten_1")).toBe(true);
    const doc = toDocument(next);
    expect(doc.links).toContainEqual({ from: "conv2d_1", to: "flatten_1" });
    expect(doc.links).toContainEqual({ from: "flatten_1", to: "dense_1" });
    expect(doc.links).not.toContainEqual({ from: "conv2d_1", to: "dense_1" });
  });

  it("set_param fills the missing value", () => {
    const next = applySuggestion(convDense(), {
      action: "set_param",
      layer_id: "dense_1",
      param: "units",
      value: 10,
    });
    expect(next.nodes.get("dense_1")?.params.units).toBe(10);
  });

  it("remove_link and add_link edit the edge list", () => {
    const removed = applySuggestion(convDense(), {
      action: "remove_link",
      link: { from: "conv2d_1", to: "dense_1" },
    });
    expect(removed.edges).not.toContainEqual(["conv2d_1", "dense_1"]);

    const added = applySuggestion(removed, {
      action: "add_link",
      link: { from: "conv2d_1", to: "dense_1" },
    });
    expect(added.edges).toContainEqual(["conv2d_1", "dense_1"]);
  });

  it("rejects stale suggestions after the document drifted", () => {
    const drifted = removeEdge(convDense(), "conv2d_1", "dense_1");
    expect(() =>
      applySuggestion(drifted, {
        action: "insert_layer",
        kind: "Flatten",
        link: { from: "conv2d_1", to: "dense_1" },
      }),
    ).toThrow(StaleSuggestionError);
    expect(() =>
      applySuggestion(drifted, { action: "set_param", layer_id: "ghost", param: "units", value: 1 }),
    ).toThrow(StaleSuggestionError);
  });
});
