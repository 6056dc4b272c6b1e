export function escapeHtml(text) {
    return text
        .replace(/&/g, "&amp;")
        .replace(/</g, "&lt;")
        .replace(/>/g, "&gt;")
        .replace(/"/g, "&quot;");
}
export function renderPalette(palette) {
    const sections = palette.groups.map((group) => {
        const items = group.kinds
            .map((schema) => `<li class="palette-item" draggable="true" data-kind="${escapeHtml(schema.kind)}" ` +
            `title="${escapeHtml(schema.doc)}">${escapeHtml(schema.kind)}</li>`)
            .join("");
        return `<section class="palette-group"><h3>${escapeHtml(group.name)}</h3><ul>${items}</ul></section>`;
    });
    return sections.join("");
}
function formatValue(value) {
    if (value === null) {
        return "";
    }
    if (Array.isArray(value)) {
        return value.join(",");
    }
    return String(value);
}
export function renderPropertyEditor(state, schema) {
    const id = state.selection;
    if (!id || !schema) {
        return `<p class="hint">Select a layer to edit its parameters.</p>`;
    }
    const node = state.nodes.get(id);
    if (!node) {
        return `<p class="hint">Select a layer to edit its parameters.</p>`;
    }
    const rows = schema.params
        .map((spec) => {
        const current = spec.name in node.params ? node.params[spec.name] : null;
        const requiredMark = spec.required && spec.default === null ? ' <span class="required">*</span>' : "";
        let control;
        if (spec.value_type === "bool") {
            const checked = current === true ? " checked" : "";
            control = `<input type="checkbox" data-param="${spec.name}"${checked}>`;
        }
        else if (spec.value_type === "enum") {
            const options = spec.choices
                .map((choice) => {
                const selected = current === choice || (current === null && spec.default === choice);
                return `<option value="${choice}"${selected ? " selected" : ""}>${choice}</option>`;
            })
                .join("");
            control = `<select data-param="${spec.name}">${options}</select>`;
        }
        else {
            const placeholder = spec.default !== null ? `default ${formatValue(spec.default)}` : spec.range;
            control =
                `<input type="text" data-param="${spec.name}" value="${escapeHtml(formatValue(current))}" ` +
                    `placeholder="${escapeHtml(placeholder)}">`;
        }
        return (`<label class="param-row" title="${escapeHtml(spec.doc)}">` +
            `<span class="param-name">${spec.name}${requiredMark}</span>${control}</label>`);
    })
        .join("");
    return (`<h3>${escapeHtml(node.kind)} <code>${escapeHtml(id)}</code></h3>` +
        `<p class="doc">${escapeHtml(schema.doc)}</p>` +
        `<form id="param-form" data-layer="${escapeHtml(id)}">${rows}</form>` +
        `<button type="button" id="delete-node" data-layer="${escapeHtml(id)}">Delete layer</button>`);
}
function renderSuggestionButton(diagnostic, index) {
    const s = diagnostic.suggestion;
    if (!s) {
        return "";
    }
    let label;
    if (s.action === "insert_layer") {
        label = `Insert ${s.kind}`;
    }
    else if (s.action === "set_param") {
        label = `Set ${s.param} = ${formatValue(s.value ?? null)}`;
    }
    else if (s.action === "remove_link") {
        label = "Remove link";
    }
    else {
        label = "Add link";
    }
    return `<button type="button" class="apply-fix" data-diagnostic="${index}">${escapeHtml(label)}</button>`;
}
export function renderDiagnostics(report, pending) {
    if (report === null) {
        return `<p class="hint">Diagnostics appear here as you edit.</p>`;
    }
    const status = report.passed
        ? `<p class="status ok">Design is valid${pending ? " (revalidating…)" : ""}.</p>`
        : `<p class="status bad">${report.diagnostics.filter((d) => d.severity === "error").length} problem(s)${pending ? " (revalidating…)" : ""}.</p>`;
    const items = report.diagnostics
        .map((diagnostic, index) => {
        const where = diagnostic.layer_ids.length
            ? `<code>${diagnostic.layer_ids.map(escapeHtml).join(", ")}</code> `
            : "";
        return (`<li class="diagnostic ${diagnostic.severity}">` +
            `<span class="code">${diagnostic.code}</span> ${where}${escapeHtml(diagnostic.message)}` +
            renderSuggestionButton(diagnostic, index) +
            `</li>`);
    })
        .join("");
    return status + (items ? `<ul class="diagnostics">${items}</ul>` : "");
}
