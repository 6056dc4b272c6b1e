export class ValidationLoop {
    constructor(validate, onChange, debounceMs = 300) {
        this.validate = validate;
        this.onChange = onChange;
        this.debounceMs = debounceMs;
        this.editSeq = 0;
        this.reportSeq = -1;
        this.timer = null;
        this.view = { report: null, pending: false, badges: new Set(), connectivity: "ok" };
    }
    current() {
        return this.view;
    }
    /** Call on every document-affecting edit. */
    notifyEdit(doc, target) {
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
    validateNow(doc, target) {
        this.editSeq += 1;
        if (this.timer !== null) {
            clearTimeout(this.timer);
            this.timer = null;
        }
        this.emit({ ...this.view, pending: true });
        return this.send(doc, this.editSeq, target);
    }
    /** True when the latest report is current and has no errors. */
    exportReady() {
        return (this.view.report !== null &&
            this.view.report.passed &&
            this.reportSeq === this.editSeq &&
            !this.view.pending);
    }
    async send(doc, seq, target) {
        let report;
        try {
            report = await this.validate(doc, target);
        }
        catch {
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
        const badges = new Set();
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
    emit(view) {
        this.view = view;
        this.onChange(view);
    }
}
