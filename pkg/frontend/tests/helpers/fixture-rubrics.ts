/** Compact rubric catalog for DOM/unit tests that do not need a server. */

import type { RubricsDoc } from "../../src/types";

export function fixtureRubrics(): RubricsDoc {
  return {
    schema_version: "1",
    properties: {
      clarity: {
        kind: "single-choice",
        title: "Clarity",
        question: "How clear is it?",
        max_points: 2,
        options: [
          { label: "Opaque", points: 0, description: "Nothing is explained." },
          { label: "Partial", points: 1, description: "Some explanation." },
          { label: "Full", points: 2, description: "Everything explained." },
        ],
      },
      logging: {
        kind: "subcriteria-sum",
        title: "Logging",
        question: "How much is logged?",
        max_points: 4,
        subcriteria: [
          {
            key: "depth",
            name: "Depth of logs",
            levels: [
              { label: "None", points: 0, description: "No logs." },
              { label: "Some", points: 1, description: "Basic logs." },
              { label: "Deep", points: 2, description: "Full logs." },
            ],
          },
          {
            key: "access",
            name: "Access to logs",
            levels: [
              { label: "None", points: 0, description: "No access." },
              { label: "Some", points: 1, description: "Expert access." },
              { label: "Open", points: 2, description: "Anyone can read." },
            ],
          },
        ],
      },
      routes: {
        kind: "checklist-sum",
        title: "Routes",
        question: "Which routes exist?",
        instruction: "One point per ticked route; 0 if none apply.",
        max_points: 2,
        items: [
          { key: "appeal", label: "Appeal route", description: "A way to appeal." },
          { key: "escalate", label: "Escalation", description: "A way to escalate." },
        ],
      },
      ratings: {
        kind: "likert-battery",
        title: "Ratings",
        question: "How do users rate it?",
        instruction: "Rate each statement from 1 to 5.",
        max_points: 10,
        scale: { min: 1, max: 5 },
        statements: ["The output is useful.", "The output is trustworthy."],
      },
    },
    metadata: {
      impact_severity: {
        title: "Severity",
        question: "Pick a severity.",
        options: [
          { label: "Low", points: 0, description: "Minor effects." },
          { label: "High", points: 1, description: "Major effects." },
        ],
      },
      autonomy_level: {
        title: "Autonomy",
        question: "Pick an autonomy level.",
        options: [
          { label: "Manual", points: 0, description: "Human does it all." },
          { label: "Automatic", points: 1, description: "System does it all." },
        ],
      },
      context_factors: {
        title: "Context",
        fields: [
          { key: "latency", symbol: "tau", label: "Latency", type: "text" },
          {
            key: "opacity",
            symbol: "omega",
            label: "Opacity",
            type: "enum",
            values: ["open", "partial", "proprietary"],
          },
        ],
      },
    },
  };
}
