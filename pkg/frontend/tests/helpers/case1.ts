/** Worked radiology-assistant example used by the integration tests.
 *
 * Answer labels match the service's rubric catalog exactly; the expected
 * totals are the service-rendered display strings.
 */

import type { AnswerSheet, ModificationDraft } from "../../src/types";

export const CASE1_SYSTEM = {
  name: "Automated Radiology Diagnosis",
  description:
    "Deep learning assistant for chest X-ray diagnosis: binary disease " +
    "prediction plus a saliency heatmap, reviewed by radiologists.",
};

export const CASE1_CHOICES: Record<string, string> = {
  explainability: "Post-Hoc Explanations",
  openness: "Experts-Only",
  safeguards: "Present",
  adaptivity: "Reactive Adjustments",
  auditing: "Internal Audit",
};

export const CASE1_TRACE_LEVELS: Record<string, number> = {
  granularity_of_logs: 2,
  accessibility_of_logs: 1,
  retention_and_audit_trail: 2,
  transparency_of_logging_process: 1,
  error_and_anomaly_tracking: 0,
};

export const CASE1_EASE_CHECKS = ["accessible_challenge_routes", "escalation_pathways"];

export const CASE1_RATINGS = [3, 3, 3, 3, 3, 2, 2, 2, 2, 2];

export const CASE1_METADATA = {
  impact_severity: 2,
  autonomy_level: 3,
  context_factors: {
    latency: "retrospective review only",
    opacity: "proprietary",
    capability_disparity: "expert-mediated",
    adaptivity_constraint: "manual retraining cycles",
  },
};

export function caseOneSheet(): AnswerSheet {
  const checks: Record<string, boolean> = {};
  for (const key of [
    "accessible_challenge_routes",
    "notifications",
    "timelines_for_appeal",
    "grounds_for_contestation",
    "escalation_pathways",
    "feedback_incorporation",
    "multilingual_inclusive_support",
    "no_retaliation_guarantee",
    "cost_free_contestation",
    "historical_appeal_data",
  ]) {
    checks[key] = CASE1_EASE_CHECKS.includes(key);
  }
  return {
    schema_version: "1",
    system: { ...CASE1_SYSTEM },
    answers: {
      explainability: { choice: CASE1_CHOICES.explainability! },
      openness: { choice: CASE1_CHOICES.openness! },
      traceability: { levels: { ...CASE1_TRACE_LEVELS } },
      safeguards: { choice: CASE1_CHOICES.safeguards! },
      adaptivity: { choice: CASE1_CHOICES.adaptivity! },
      auditing: { choice: CASE1_CHOICES.auditing! },
      ease: { checks },
      explanation_quality: { assessed: true, ratings: [[...CASE1_RATINGS]] },
    },
    metadata: {
      ...CASE1_METADATA,
      context_factors: { ...CASE1_METADATA.context_factors },
    },
  };
}

/** Improvement plan for the radiology assistant, split by feasibility. */
export const CASE1_MODIFICATIONS: ModificationDraft[] = [
  { property: "adaptivity", new_score: 2, feasibility: "highly" },
  { property: "ease", new_score: 5, feasibility: "highly" },
  { property: "explainability", new_score: 2, feasibility: "moderately" },
  { property: "openness", new_score: 2, feasibility: "moderately" },
  { property: "traceability", new_score: 8, feasibility: "moderately" },
  { property: "auditing", new_score: 2, feasibility: "moderately" },
  { property: "ease", new_score: 6, feasibility: "moderately" },
  { property: "explanation_quality", new_score: 35, feasibility: "moderately" },
];

export const CASE1_TOTAL = "0.551";
export const CASE1_ONLY_HIGHLY_TOTAL = "0.622";
export const CASE1_UP_TO_MODERATELY_TOTAL = "0.927";
