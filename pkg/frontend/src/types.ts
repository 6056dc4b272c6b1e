/** Wire formats shared with the designer service. */

export type ParamValue = number | boolean | string | number[];

export interface DocumentLayer {
  id: string;
  kind: string;
  params: Record<string, ParamValue>;
}

export interface DocumentLink {
  from: string;
  to: string;
}

export interface OptimizerSpec {
  kind: string;
  learning_rate: number;
  extra: Record<string, ParamValue>;
}

export interface Hyperparameters {
  batch_size: number;
  epochs: number;
  loss: string;
  metrics: string[];
  optimizer: OptimizerSpec;
}

export interface ModelDocument {
  nlds_version: string;
  name: string;
  layers: DocumentLayer[];
  links: DocumentLink[];
  hyperparameters: Hyperparameters;
}

export interface FixSuggestion {
  action: "insert_layer" | "set_param" | "remove_link" | "add_link";
  kind?: string;
  link?: DocumentLink;
  layer_id?: string;
  param?: string;
  value?: ParamValue;
}

export interface Diagnostic {
  level: number;
  severity: "error" | "warning";
  code: string;
  message: string;
  layer_ids: string[];
  link: DocumentLink | null;
  path: string | null;
  suggestion: FixSuggestion | null;
}

export interface ValidationReport {
  passed: boolean;
  levels_run: number[];
  diagnostics: Diagnostic[];
}

export interface ParamSpec {
  name: string;
  value_type: "int" | "real" | "bool" | "enum" | "int-pair" | "int-list";
  required: boolean;
  default: ParamValue | null;
  range: string;
  choices: string[];
  doc: string;
}

export interface LayerSchema {
  kind: string;
  doc: string;
  input_ranks: number[];
  output_ranks: number[];
  arity: { min_inputs: number; max_inputs: number | null };
  params: ParamSpec[];
}

export interface PaletteGroup {
  name: string;
  kinds: LayerSchema[];
}

export interface Palette {
  groups: PaletteGroup[];
}

export interface GeneratedArtifact {
  target: string;
  entrypoint: string;
  files: Array<{ path: string; content: string }>;
}

export interface StoredModel {
  id: string;
  revision: number;
  updated_at: string;
  document: ModelDocument;
}

export interface ModelListEntry {
  id: string;
  revision: number;
  updated_at: string;
  name: string;
}

export const TARGETS = ["keras", "tensorflow", "pytorch", "caffe-prototxt"] as const;
export type Target = (typeof TARGETS)[number];

export function defaultHyperparameters(): Hyperparameters {
  return {
    batch_size: 32,
    epochs: 10,
    loss: "categorical_crossentropy",
    metrics: ["accuracy"],
    optimizer: { extra: {}, kind: "sgd", learning_rate: 0.01 },
  };
}
