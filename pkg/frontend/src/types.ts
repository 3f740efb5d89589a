/** Wire types for the assessment service.
 *
 * The UI is a pure client: every number it displays arrives in one of
 * these payloads, already formatted by the service (`display` strings are
 * rendered verbatim, never recomputed).
 */

export interface NumberPayload {
  value: number;
  display: string;
}

// ---- rubric catalog (GET /rubrics) ----

export interface RubricOption {
  label: string;
  points: number;
  description: string;
}

export interface SubcriterionLevel {
  label: string;
  points: number;
  description: string;
}

export interface Subcriterion {
  key: string;
  name: string;
  levels: SubcriterionLevel[];
}

export interface ChecklistItem {
  key: string;
  label: string;
  description: string;
}

interface RubricBase {
  title: string;
  question: string;
  max_points: number;
}

export interface SingleChoiceRubric extends RubricBase {
  kind: "single-choice";
  options: RubricOption[];
}

export interface SubcriteriaRubric extends RubricBase {
  kind: "subcriteria-sum";
  subcriteria: Subcriterion[];
}

export interface ChecklistRubric extends RubricBase {
  kind: "checklist-sum";
  instruction: string;
  items: ChecklistItem[];
}

export interface LikertRubric extends RubricBase {
  kind: "likert-battery";
  instruction: string;
  scale: { min: number; max: number };
  statements: string[];
}

export type PropertyRubric =
  | SingleChoiceRubric
  | SubcriteriaRubric
  | ChecklistRubric
  | LikertRubric;

export interface ContextFactorField {
  key: string;
  symbol: string;
  label: string;
  type: string;
  values?: string[];
}

export interface RubricsDoc {
  schema_version: string;
  properties: Record<string, PropertyRubric>;
  metadata: {
    impact_severity: { title: string; question: string; options: RubricOption[] };
    autonomy_level: { title: string; question: string; options: RubricOption[] };
    context_factors: { title: string; fields: ContextFactorField[] };
  };
}

// ---- answer sheets ----

export type Answer =
  | { choice: string }
  | { levels: Record<string, number> }
  | { checks: Record<string, boolean> }
  | { assessed: boolean; ratings?: number[][] };

export interface SheetMetadata {
  impact_severity: number;
  autonomy_level: number;
  context_factors?: Record<string, string>;
}

export interface AnswerSheet {
  schema_version: "1";
  system: { name: string; description: string };
  answers: Record<string, Answer>;
  metadata?: SheetMetadata;
  published_total?: number;
}

// ---- scored assessments (POST /assessments, POST /assessments/{id}/score) ----

export interface ScoredProperty {
  title: string;
  max: number;
  weight: NumberPayload;
  score: number;
  score_display: string;
  contribution: NumberPayload;
  normalized: number;
}

export interface RadarAxis {
  property: string;
  value: number;
}

export interface ScoredAssessmentPayload {
  system: { name: string; description: string };
  properties: Record<string, ScoredProperty>;
  total: NumberPayload;
  config_fingerprint: string;
  explanation_quality_assessed: boolean;
  metadata: SheetMetadata;
  radar: RadarAxis[];
  published_total?: number;
}

export interface CreateAssessmentResponse {
  id: string;
  assessment: ScoredAssessmentPayload;
}

// ---- scenarios (POST /scenarios/evaluate) ----

export type Feasibility = "highly" | "moderately";
export type Policy = "only_highly" | "up_to_moderately";

export interface ModificationDraft {
  property: string;
  new_score: number;
  feasibility: Feasibility;
  rationale?: string;
  dimension?: string;
}

export interface ScenarioRequest {
  schema_version: "1";
  name: string;
  baseline: { id: string } | { sheet: AnswerSheet };
  policy: Policy;
  modifications: ModificationDraft[];
}

export interface PropertyChangePayload {
  property: string;
  max: number;
  baseline_score: number;
  new_score: number;
  baseline_contribution: NumberPayload;
  new_contribution: NumberPayload;
  changed: boolean;
}

export interface ScenarioResultPayload {
  scenario: string;
  policy: Policy;
  baseline_total: NumberPayload;
  new_total: NumberPayload;
  delta: NumberPayload;
  config_fingerprint: string;
  changes: PropertyChangePayload[];
  published_total?: number;
}

// ---- intervention ranking (POST /interventions/rank) ----

export interface RankedIntervention {
  property: string;
  new_score: number;
  feasibility: Feasibility;
  delta: NumberPayload;
  new_total: NumberPayload;
}

export interface RankResponse {
  baseline_total: NumberPayload;
  ranked: RankedIntervention[];
}

// ---- errors ----

export interface ErrorBody {
  code: string;
  message: string;
  field?: string;
}
