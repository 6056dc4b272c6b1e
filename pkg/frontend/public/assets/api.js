export class ApiError extends Error {
    constructor(status, body) {
        super(`service responded ${status}`);
        this.status = status;
        this.body = body;
    }
}
export class RevisionConflict extends Error {
    constructor(serverRevision) {
        super(`stored revision is ${serverRevision}`);
        this.serverRevision = serverRevision;
    }
}
export class ApiClient {
    constructor(base = "", fetchImpl = (input, init) => fetch(input, init)) {
        this.base = base;
        this.fetchImpl = fetchImpl;
    }
    async request(path, init) {
        const response = await this.fetchImpl(this.base + path, {
            headers: { "content-type": "application/json" },
            ...init,
        });
        const body = await response.json().catch(() => null);
        if (!response.ok) {
            throw new ApiError(response.status, body);
        }
        return body;
    }
    layers() {
        return this.request("/api/layers");
    }
    validate(document, target) {
        return this.request("/api/validate", {
            method: "POST",
            body: JSON.stringify(target ? { document, target } : { document }),
        });
    }
    /** Generation failures (422) surface as ApiError carrying the report. */
    generate(document, target, includeTraining = true) {
        return this.request("/api/generate", {
            method: "POST",
            body: JSON.stringify({ document, target, options: { include_training: includeTraining } }),
        });
    }
    listModels() {
        return this.request("/api/models").then((body) => body.models);
    }
    createModel(document) {
        return this.request("/api/models", {
            method: "POST",
            body: JSON.stringify({ document }),
        });
    }
    getModel(id) {
        return this.request(`/api/models/${id}`);
    }
    async updateModel(id, document, revision) {
        try {
            return (await this.request(`/api/models/${id}`, {
                method: "PUT",
                body: JSON.stringify({ document, revision }),
            }));
        }
        catch (error) {
            if (error instanceof ApiError && error.status === 409) {
                const body = error.body;
                throw new RevisionConflict(body?.revision ?? -1);
            }
            throw error;
        }
    }
    deleteModel(id) {
        return this.request(`/api/models/${id}`, { method: "DELETE" });
    }
}
