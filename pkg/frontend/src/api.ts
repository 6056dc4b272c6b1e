/** Typed client for the designer service. */
import type {
  GeneratedArtifact,
  ModelDocument,
  ModelListEntry,
  Palette,
  StoredModel,
  Target,
  ValidationReport,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly body: unknown,
  ) {
    super(`service responded ${status}`);
  }
}

export class RevisionConflict extends Error {
  constructor(readonly serverRevision: number) {
    super(`stored revision is ${serverRevision}`);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly base = "",
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request(path: string, init?: RequestInit): Promise<unknown> {
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

  layers(): Promise<Palette> {
    return this.request("/api/layers") as Promise<Palette>;
  }

  validate(document: ModelDocument, target?: Target): Promise<ValidationReport> {
    return this.request("/api/validate", {
      method: "POST",
      body: JSON.stringify(target ? { document, target } : { document }),
    }) as Promise<ValidationReport>;
  }

  /** Generation failures (422) surface as ApiError carrying the report. */
  generate(document: ModelDocument, target: Target, includeTraining = true): Promise<GeneratedArtifact> {
    return this.request("/api/generate", {
      method: "POST",
      body: JSON.stringify({ document, target, options: { include_training: includeTraining } }),
    }) as Promise<GeneratedArtifact>;
  }

  listModels(): Promise<ModelListEntry[]> {
    return this.request("/api/models").then((body) => (body as { models: ModelListEntry[] }).models);
  }

  createModel(document: ModelDocument): Promise<StoredModel> {
    return this.request("/api/models", {
      method: "POST",
      body: JSON.stringify({ document }),
    }) as Promise<StoredModel>;
  }

  getModel(id: string): Promise<StoredModel> {
    return this.request(`/api/models/${id}`) as Promise<StoredModel>;
  }

  async updateModel(id: string, document: ModelDocument, revision: number): Promise<StoredModel> {
    try {
      return (await this.request(`/api/models/${id}`, {
        method: "PUT",
        body: JSON.stringify({ document, revision }),
      })) as StoredModel;
    } catch (error) {
      if (error instanceof ApiError && error.status === 409) {
        const body = error.body as { revision?: number } | null;
        throw new RevisionConflict(body?.revision ?? -1);
      }
      throw error;
    }
  }

  deleteModel(id: string): Promise<unknown> {
    return this.request(`/api/models/${id}`, { method: "DELETE" });
  }
}
