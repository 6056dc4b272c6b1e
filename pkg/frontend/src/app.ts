/**
 * DOM wiring for the designer: palette on the left, SVG canvas in the
 * middle, documentation / properties / diagnostics on the right.
 *
 * All document semantics live in state.ts and validationLoop.ts; this
 * layer only translates DOM events into state operations and repaints.
 */
import { ApiClient, ApiError, RevisionConflict } from "./api.js";
import { renderDiagnostics, renderPalette, renderPropertyEditor, escapeHtml } from "./render.js";
import type { CanvasState } from "./state.js";
import {
  addEdge,
  addNode,
  emptyState,
  fromDocument,
  moveNode,
  removeEdge,
  removeNode,
  select,
  setName,
  setParam,
  clearParam,
  toDocument,
} from "./state.js";
import { applySuggestion, StaleSuggestionError } from "./suggestions.js";
import type { LayerSchema, Palette, ParamSpec, Target, ValidationReport } from "./types.js";
import { TARGETS } from "./types.js";
import { ValidationLoop } from "./validationLoop.js";

const NODE_W = 150;
const NODE_H = 46;

export class DesignerApp {
  private state: CanvasState = emptyState();
  private schemas = new Map<string, LayerSchema>();
  private loop: ValidationLoop;
  private target: Target = "keras";
  private pendingLinkFrom: string | null = null;
  private lastReport: ValidationReport | null = null;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
  ) {
    this.loop = new ValidationLoop(
      (doc, target) => this.api.validate(doc, target),
      () => this.paintDiagnostics(),
    );
  }

  async start(): Promise<void> {
    this.root.innerHTML = this.shell();
    try {
      const palette: Palette = await this.api.layers();
      for (const group of palette.groups) {
        for (const schema of group.kinds) {
          this.schemas.set(schema.kind, schema);
        }
      }
      this.element("palette").innerHTML = renderPalette(palette);
      this.bindPalette();
    } catch {
      this.element("palette").innerHTML =
        `<p class="status bad">Service unreachable; the palette is disabled.</p>`;
    }
    this.bindChrome();
    this.paintAll();
    this.revalidate();
    void this.refreshModelList();
  }

  // -- layout -------------------------------------------------------------

  private shell(): string {
    const targetOptions = TARGETS.map((t) => `<option value="${t}">${t}</option>`).join("");
    return `
      <header class="topbar">
        <input id="model-name" value="${escapeHtml(this.state.name)}" title="Model name">
        <span class="spacer"></span>
        <select id="model-list" title="Stored models"><option value="">open…</option></select>
        <button id="save">Save</button>
        <button id="new-model">New</button>
        <span class="spacer wide"></span>
        <select id="target">${targetOptions}</select>
        <button id="export" disabled>Export code</button>
        <span id="connectivity" class="connectivity"></span>
      </header>
      <main class="columns">
        <aside id="palette" class="palette"></aside>
        <svg id="canvas" class="canvas" tabindex="0"></svg>
        <aside class="sidebar">
          <section id="properties"></section>
          <hr>
          <section id="diagnostics"></section>
        </aside>
      </main>`;
  }

  private element(id: string): HTMLElement {
    const found = this.root.querySelector(`#${id}`);
    if (!found) {
      throw new Error(`missing #${id}`);
    }
    return found as HTMLElement;
  }

  // -- event wiring ---------------------------------------------------------

  private bindPalette(): void {
    this.element("palette").addEventListener("dragstart", (event) => {
      const item = (event.target as HTMLElement).closest<HTMLElement>(".palette-item");
      if (item && event instanceof DragEvent && event.dataTransfer) {
        event.dataTransfer.setData("text/nlds-kind", item.dataset.kind ?? "");
      }
    });
    const canvas = this.element("canvas");
    canvas.addEventListener("dragover", (event) => event.preventDefault());
    canvas.addEventListener("drop", (event) => {
      event.preventDefault();
      if (!(event instanceof DragEvent) || !event.dataTransfer) {
        return;
      }
      const kind = event.dataTransfer.getData("text/nlds-kind");
      const schema = this.schemas.get(kind);
      if (!schema) {
        return;
      }
      const rect = canvas.getBoundingClientRect();
      this.dropNode(schema, event.clientX - rect.left, event.clientY - rect.top);
    });
  }

  private bindChrome(): void {
    this.element("model-name").addEventListener("change", (event) => {
      this.commit(setName(this.state, (event.target as HTMLInputElement).value || "untitled model"));
    });
    this.element("target").addEventListener("change", (event) => {
      this.target = (event.target as HTMLSelectElement).value as Target;
      this.revalidate();
    });
    this.element("export").addEventListener("click", () => void this.exportCode());
    this.element("save").addEventListener("click", () => void this.save());
    this.element("new-model").addEventListener("click", () => {
      this.state = emptyState();
      this.paintAll();
      this.revalidate();
    });
    this.element("model-list").addEventListener("change", (event) => {
      const id = (event.target as HTMLSelectElement).value;
      if (id) {
        void this.load(id);
      }
    });

    const properties = this.element("properties");
    properties.addEventListener("change", (event) => this.onParamEdit(event));
    properties.addEventListener("click", (event) => {
      const button = (event.target as HTMLElement).closest<HTMLElement>("#delete-node");
      if (button?.dataset.layer) {
        this.commit(removeNode(this.state, button.dataset.layer));
      }
    });

    this.element("diagnostics").addEventListener("click", (event) => {
      const button = (event.target as HTMLElement).closest<HTMLElement>(".apply-fix");
      if (!button || !this.lastReport) {
        return;
      }
      const diagnostic = this.lastReport.diagnostics[Number(button.dataset.diagnostic)];
      if (!diagnostic?.suggestion) {
        return;
      }
      try {
        this.state = applySuggestion(this.state, diagnostic.suggestion);
      } catch (error) {
        if (error instanceof StaleSuggestionError) {
          this.revalidate();
          return;
        }
        throw error;
      }
      this.paintAll();
      void this.loop.validateNow(toDocument(this.state), this.target);
    });
  }

  private onParamEdit(event: Event): void {
    const input = event.target as HTMLInputElement | HTMLSelectElement;
    const form = input.closest<HTMLElement>("#param-form");
    const name = input.dataset.param;
    const layerId = form?.dataset.layer;
    if (!form || !name || !layerId) {
      return;
    }
    const node = this.state.nodes.get(layerId);
    const spec = node && this.schemas.get(node.kind)?.params.find((p) => p.name === name);
    if (!spec) {
      return;
    }
    const parsed = this.parseParam(spec, input);
    if (parsed === undefined) {
      this.commit(clearParam(this.state, layerId, name), { repaintProps: false });
      return;
    }
    this.commit(setParam(this.state, layerId, name, parsed), { repaintProps: false });
  }

  /** undefined means "left empty": the param is removed and defaults apply. */
  private parseParam(spec: ParamSpec, input: HTMLInputElement | HTMLSelectElement) {
    if (spec.value_type === "bool") {
      return (input as HTMLInputElement).checked;
    }
    const raw = input.value.trim();
    if (raw === "") {
      return undefined;
    }
    if (spec.value_type === "enum") {
      return raw;
    }
    if (spec.value_type === "int-pair" || spec.value_type === "int-list") {
      const parts = raw.split(",").map((part) => Number(part.trim()));
      return parts.every(Number.isFinite) ? parts.map((v) => Math.trunc(v)) : raw;
    }
    const numeric = Number(raw);
    if (!Number.isFinite(numeric)) {
      return raw; // let the validator report the type problem
    }
    return spec.value_type === "int" ? Math.trunc(numeric) : numeric;
  }

  private dropNode(schema: LayerSchema, x: number, y: number): void {
    const defaults: Record<string, number | boolean | string | number[]> = {};
    for (const spec of schema.params) {
      if (spec.default !== null) {
        defaults[spec.name] = spec.default;
      }
    }
    const { state } = addNode(this.state, schema.kind, defaults, Math.max(10, x - NODE_W / 2), Math.max(10, y - NODE_H / 2));
    this.commit(state);
  }

  // -- state plumbing -------------------------------------------------------

  private commit(next: CanvasState, opts: { repaintProps?: boolean } = {}): void {
    if (next === this.state) {
      return;
    }
    this.state = next;
    this.paintCanvas();
    if (opts.repaintProps !== false) {
      this.paintProperties();
    }
    this.revalidate();
  }

  private revalidate(): void {
    this.loop.notifyEdit(toDocument(this.state), this.target);
  }

  // -- painting ---------------------------------------------------------------

  private paintAll(): void {
    (this.element("model-name") as HTMLInputElement).value = this.state.name;
    this.paintCanvas();
    this.paintProperties();
    this.paintDiagnostics();
  }

  private paintProperties(): void {
    const schema = this.state.selection
      ? (this.schemas.get(this.state.nodes.get(this.state.selection)?.kind ?? "") ?? null)
      : null;
    this.element("properties").innerHTML = renderPropertyEditor(this.state, schema);
  }

  private paintDiagnostics(): void {
    const view = this.loop.current();
    this.lastReport = view.report;
    this.element("diagnostics").innerHTML = renderDiagnostics(view.report, view.pending);
    this.element("connectivity").textContent = view.connectivity === "offline" ? "offline" : "";
    (this.element("export") as HTMLButtonElement).disabled = !this.loop.exportReady();
    this.paintBadges(view.badges);
  }

  private paintBadges(badges: ReadonlySet<string>): void {
    const canvas = this.element("canvas");
    for (const group of canvas.querySelectorAll<SVGGElement>("g.node")) {
      group.classList.toggle("error", badges.has(group.dataset.id ?? ""));
    }
  }

  private paintCanvas(): void {
    const canvas = this.element("canvas");
    const parts: string[] = [];
    for (const [from, to] of this.state.edges) {
      const a = this.state.nodes.get(from);
      const b = this.state.nodes.get(to);
      if (!a || !b) {
        continue;
      }
      const x1 = a.x + NODE_W;
      const y1 = a.y + NODE_H / 2;
      const x2 = b.x;
      const y2 = b.y + NODE_H / 2;
      const mid = (x1 + x2) / 2;
      parts.push(
        `<path class="edge" data-from="${from}" data-to="${to}" ` +
          `d="M ${x1} ${y1} C ${mid} ${y1}, ${mid} ${y2}, ${x2} ${y2}"/>`,
      );
    }
    for (const [id, node] of this.state.nodes) {
      const selected = this.state.selection === id ? " selected" : "";
      const linking = this.pendingLinkFrom === id ? " linking" : "";
      parts.push(
        `<g class="node${selected}${linking}" data-id="${id}" transform="translate(${node.x},${node.y})">` +
          `<rect width="${NODE_W}" height="${NODE_H}" rx="8"/>` +
          `<text x="${NODE_W / 2}" y="19" class="kind">${escapeHtml(node.kind)}</text>` +
          `<text x="${NODE_W / 2}" y="36" class="id">${escapeHtml(id)}</text>` +
          `<circle class="port in" cx="0" cy="${NODE_H / 2}" r="6"/>` +
          `<circle class="port out" cx="${NODE_W}" cy="${NODE_H / 2}" r="6"/>` +
          `</g>`,
      );
    }
    canvas.innerHTML = parts.join("");
    this.bindCanvasNodes(canvas);
  }

  private bindCanvasNodes(canvas: HTMLElement): void {
    for (const edge of canvas.querySelectorAll<SVGPathElement>("path.edge")) {
      edge.addEventListener("dblclick", () => {
        this.commit(removeEdge(this.state, edge.dataset.from ?? "", edge.dataset.to ?? ""));
      });
    }
    for (const group of canvas.querySelectorAll<SVGGElement>("g.node")) {
      const id = group.dataset.id ?? "";
      group.querySelector(".port.out")?.addEventListener("click", (event) => {
        event.stopPropagation();
        this.pendingLinkFrom = id;
        this.paintCanvas();
      });
      group.querySelector(".port.in")?.addEventListener("click", (event) => {
        event.stopPropagation();
        if (this.pendingLinkFrom && this.pendingLinkFrom !== id) {
          const from = this.pendingLinkFrom;
          this.pendingLinkFrom = null;
          this.commit(addEdge(this.state, from, id));
        }
      });
      group.addEventListener("mousedown", (event) => {
        if ((event.target as Element).classList.contains("port")) {
          return;
        }
        this.state = select(this.state, id);
        this.paintProperties();
        this.dragNode(id, event as MouseEvent);
      });
    }
  }

  private dragNode(id: string, start: MouseEvent): void {
    const node = this.state.nodes.get(id);
    if (!node) {
      return;
    }
    const offsetX = start.clientX - node.x;
    const offsetY = start.clientY - node.y;
    const onMove = (event: MouseEvent) => {
      this.state = moveNode(this.state, id, event.clientX - offsetX, event.clientY - offsetY);
      this.paintCanvas();
    };
    const onUp = () => {
      window.removeEventListener("mousemove", onMove);
      window.removeEventListener("mouseup", onUp);
      this.paintCanvas();
    };
    window.addEventListener("mousemove", onMove);
    window.addEventListener("mouseup", onUp);
  }

  // -- service round-trips -------------------------------------------------

  private async exportCode(): Promise<void> {
    try {
      const artifact = await this.api.generate(toDocument(this.state), this.target);
      const file = artifact.files.find((f) => f.path === artifact.entrypoint) ?? artifact.files[0];
      const blob = new Blob([file.content], { type: "text/plain;charset=utf-8" });
      const anchor = document.createElement("a");
      anchor.href = URL.createObjectURL(blob);
      anchor.download = `${this.state.name.replace(/[^A-Za-z0-9._-]/g, "-")}-${file.path}`;
      anchor.click();
      URL.revokeObjectURL(anchor.href);
    } catch (error) {
      if (error instanceof ApiError && error.status === 422) {
        this.revalidate(); // focus the diagnostics panel on the refusal report
        return;
      }
      throw error;
    }
  }

  private async save(): Promise<void> {
    const doc = toDocument(this.state);
    try {
      if (this.state.modelId && this.state.revision !== null) {
        const stored = await this.api.updateModel(this.state.modelId, doc, this.state.revision);
        this.state = { ...this.state, revision: stored.revision, dirty: false };
      } else {
        const stored = await this.api.createModel(doc);
        this.state = { ...this.state, modelId: stored.id, revision: stored.revision, dirty: false };
      }
      void this.refreshModelList();
    } catch (error) {
      if (error instanceof RevisionConflict) {
        const reload = window.confirm(
          "Someone else saved a newer revision. Reload it (discarding local changes)?",
        );
        if (reload && this.state.modelId) {
          await this.load(this.state.modelId);
        }
        return;
      }
      throw error;
    }
  }

  private async load(id: string): Promise<void> {
    const stored = await this.api.getModel(id);
    this.state = { ...fromDocument(stored.document), modelId: stored.id, revision: stored.revision };
    this.paintAll();
    this.revalidate();
  }

  private async refreshModelList(): Promise<void> {
    try {
      const entries = await this.api.listModels();
      const options = entries
        .map((entry) => `<option value="${entry.id}">${escapeHtml(entry.name)} (rev ${entry.revision})</option>`)
        .join("");
      this.element("model-list").innerHTML = `<option value="">open…</option>${options}`;
    } catch {
      // leave the picker as-is when the service is unreachable
    }
  }
}
