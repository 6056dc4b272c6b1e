/**
 * The edit-validate loop: debounce edits, discard stale responses.
 *
 * Every edit bumps a sequence number. A validation response is applied
 * only when it belongs to the newest sequence, so a slow response for an
 * old document revision can never overwrite fresher diagnostics. Export
 * gating keys off the same sequence: a report only enables export while
 * no newer edit exists.
 */
import type { ModelDocument, Target, ValidationReport } from "./types.js";

export type ValidateFn = (doc: ModelDocument, target?: Target) => Promise<ValidationReport>;

export interface LoopView {
  report: ValidationReport | null;
  /** true while a newer edit than the displayed report exists */
  pending: boolean;
  /** layer ids referenced by error diagnostics of the current report */
  badges: ReadonlySet<string>;
  connectivity: "ok" | "offline";
}

export class ValidationLoop {
  private editSeq = 0;
  private reportSeq = -1;
  private timer: ReturnType<typeof setTimeout> | null = null;
  private view: LoopView = { report: null, pending: false, badges: new Set(), connectivity: "ok" };

  constructor(
    private readonly validate: ValidateFn,
    private readonly onChange: (view: LoopView) => void,
    private readonly debounceMs = 300,
  ) {}

  current(): LoopView {
    return this.view;
  }

  /** Call on every document-affecting edit. */
  notifyEdit(doc: ModelDocument, target?: Target): void {
    this.editSeq += 1;
    const seq = this.editSeq;
    this.emit({ ...this.view, pending: true });
    if (this.timer !== null) {
      clearTimeout(this.timer);
    }
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.send(doc, seq, target);
    }, this.debounceMs);
  }

  /** Validate immediately, outside the debounce (e.g. after a one-click fix). */
  validateNow(doc: ModelDocument, target?: Target): Promise<void> {
    this.editSeq += 1;
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    this.emit({ ...this.view, pending: true });
    return this.send(doc, this.editSeq, target);
  }

  /** True when the latest report is current and has no errors. */
  exportReady(): boolean {
    return (
      this.view.report !== null &&
      this.view.report.passed &&
      this.reportSeq === this.editSeq &&
      !this.view.pending
    );
  }

  private async send(doc: ModelDocument, seq: number, target?: Target): Promise<void> {
    let report: ValidationReport;
    try {
      report = await this.validate(doc, target);
    } catch {
      if (seq === this.editSeq) {
        // keep the previous diagnostics; only flag connectivity
        this.emit({ ...this.view, connectivity: "offline", pending: false });
      }
      return;
    }
    if (seq < this.editSeq || seq <= this.reportSeq) {
      return; // stale: a newer edit or newer report exists
    }
    this.reportSeq = seq;
    const badges = new Set<string>();
    for (const diagnostic of report.diagnostics) {
      if (diagnostic.severity === "error") {
        for (const id of diagnostic.layer_ids) {
          badges.add(id);
        }
      }
    }
    this.emit({
      report,
      pending: seq !== this.editSeq,
      badges,
      connectivity: "ok",
    });
  }

  private emit(view: LoopView): void {
    this.view = view;
    this.onChange(view);
  }
}
