/** Questionnaire wizard rendered entirely from the service's rubric
 * catalog.  Option texts and point values come from the wire document
 * verbatim; nothing here hard-codes rubric content.  The DOM is the
 * source of truth: `read()` scrapes control state into an answer map
 * plus the list of properties still blocking a score.
 */

import { el, clear } from "./dom";
import type {
  Answer,
  AnswerSheet,
  PropertyRubric,
  RubricsDoc,
  SheetMetadata,
} from "./types";

export interface WizardReading {
  answers: Record<string, Answer>;
  incomplete: string[];
  system: { name: string; description: string };
  metadata: SheetMetadata;
}

export class Wizard {
  constructor(
    private readonly root: HTMLElement,
    private readonly rubrics: RubricsDoc,
    private readonly onEdit: () => void,
  ) {}

  render(): void {
    clear(this.root);
    this.root.appendChild(this.systemSection());
    for (const [propertyId, rubric] of Object.entries(this.rubrics.properties)) {
      this.root.appendChild(this.propertySection(propertyId, rubric));
    }
    this.root.appendChild(this.metadataSection());
    this.root.addEventListener("input", () => this.onEdit());
    this.root.addEventListener("change", () => this.onEdit());
  }

  // ---- rendering ----

  private systemSection(): HTMLElement {
    return el(
      "section",
      { class: "wizard-section", "data-section": "system" },
      el("h2", {}, "System under assessment"),
      el(
        "label",
        {},
        "Name",
        el("input", {
          type: "text",
          "data-role": "system-name",
          placeholder: "e.g. loan approval assistant",
        }),
      ),
      el(
        "label",
        {},
        "Description",
        el("textarea", { "data-role": "system-description", rows: "2" }),
      ),
    );
  }

  private propertySection(propertyId: string, rubric: PropertyRubric): HTMLElement {
    const section = el(
      "section",
      { class: "wizard-section", "data-property": propertyId },
      el("h3", {}, rubric.title),
      el("p", { class: "question" }, rubric.question),
    );
    switch (rubric.kind) {
      case "single-choice":
        for (const option of rubric.options) {
          section.appendChild(
            el(
              "label",
              { class: "option" },
              el("input", {
                type: "radio",
                name: `prop-${propertyId}`,
                value: option.label,
              }),
              el("span", { class: "option-label" }, option.label),
              el("span", { class: "option-points" }, `${option.points} pt`),
              el("small", { class: "option-description" }, option.description),
            ),
          );
        }
        break;
      case "subcriteria-sum":
        for (const sub of rubric.subcriteria) {
          const fieldset = el(
            "fieldset",
            { class: "subcriterion", "data-subcriterion": sub.key },
            el("legend", {}, sub.name),
          );
          for (const level of sub.levels) {
            fieldset.appendChild(
              el(
                "label",
                { class: "option" },
                el("input", {
                  type: "radio",
                  name: `prop-${propertyId}-${sub.key}`,
                  value: String(level.points),
                }),
                el("span", { class: "option-label" }, level.label),
                el("span", { class: "option-points" }, `${level.points} pt`),
                el("small", { class: "option-description" }, level.description),
              ),
            );
          }
          section.appendChild(fieldset);
        }
        break;
      case "checklist-sum":
        section.appendChild(el("p", { class: "instruction" }, rubric.instruction));
        for (const item of rubric.items) {
          section.appendChild(
            el(
              "label",
              { class: "option" },
              el("input", {
                type: "checkbox",
                "data-item": item.key,
              }),
              el("span", { class: "option-label" }, item.label),
              el("span", { class: "option-points" }, "1 pt"),
              el("small", { class: "option-description" }, item.description),
            ),
          );
        }
        break;
      case "likert-battery": {
        section.appendChild(el("p", { class: "instruction" }, rubric.instruction));
        section.appendChild(
          el(
            "label",
            { class: "option" },
            el("input", { type: "checkbox", "data-role": "assessed" }),
            el(
              "span",
              { class: "option-label" },
              "A user study assessed the explanations",
            ),
          ),
        );
        const list = el("ol", { class: "statements" });
        rubric.statements.forEach((statement, index) => {
          const select = el("select", {
            "data-statement": String(index),
            disabled: true,
          });
          select.appendChild(el("option", { value: "" }, "—"));
          for (let r = rubric.scale.min; r <= rubric.scale.max; r += 1) {
            select.appendChild(el("option", { value: String(r) }, String(r)));
          }
          list.appendChild(el("li", {}, el("span", {}, statement), select));
        });
        section.appendChild(list);
        break;
      }
    }
    return section;
  }

  private metadataSection(): HTMLElement {
    const meta = this.rubrics.metadata;
    const section = el(
      "section",
      { class: "wizard-section", "data-section": "metadata" },
      el("h2", {}, "Context"),
    );
    for (const [key, block] of [
      ["impact_severity", meta.impact_severity],
      ["autonomy_level", meta.autonomy_level],
    ] as const) {
      const select = el("select", { "data-meta": key });
      for (const option of block.options) {
        select.appendChild(
          el(
            "option",
            { value: String(option.points) },
            `${option.label} (${option.points})`,
          ),
        );
      }
      section.appendChild(
        el(
          "div",
          { class: "metadata-block" },
          el("h4", {}, block.title),
          el("p", { class: "question" }, block.question),
          select,
        ),
      );
    }
    const factors = el(
      "div",
      { class: "metadata-block" },
      el("h4", {}, meta.context_factors.title),
    );
    for (const field of meta.context_factors.fields) {
      let control: HTMLElement;
      if (field.type === "enum" && field.values) {
        const select = el("select", { "data-factor": field.key });
        for (const value of field.values) {
          select.appendChild(el("option", { value }, value));
        }
        control = select;
      } else {
        control = el("input", { type: "text", "data-factor": field.key });
      }
      factors.appendChild(el("label", {}, `${field.label} (${field.symbol})`, control));
    }
    section.appendChild(factors);
    return section;
  }

  // ---- reading ----

  read(): WizardReading {
    const answers: Record<string, Answer> = {};
    const incomplete: string[] = [];
    for (const [propertyId, rubric] of Object.entries(this.rubrics.properties)) {
      const answer = this.readProperty(propertyId, rubric);
      if (answer === null) {
        incomplete.push(propertyId);
      } else {
        answers[propertyId] = answer;
      }
    }
    return {
      answers,
      incomplete,
      system: {
        name: this.input("[data-role=system-name]").value,
        description: this.textarea("[data-role=system-description]").value,
      },
      metadata: this.readMetadata(),
    };
  }

  private readProperty(propertyId: string, rubric: PropertyRubric): Answer | null {
    const section = this.section(propertyId);
    switch (rubric.kind) {
      case "single-choice": {
        const checked = section.querySelector<HTMLInputElement>(
          `input[name="prop-${propertyId}"]:checked`,
        );
        return checked ? { choice: checked.value } : null;
      }
      case "subcriteria-sum": {
        const levels: Record<string, number> = {};
        for (const sub of rubric.subcriteria) {
          const checked = section.querySelector<HTMLInputElement>(
            `input[name="prop-${propertyId}-${sub.key}"]:checked`,
          );
          if (!checked) return null;
          levels[sub.key] = Number(checked.value);
        }
        return { levels };
      }
      case "checklist-sum": {
        const checks: Record<string, boolean> = {};
        for (const item of rubric.items) {
          const box = section.querySelector<HTMLInputElement>(
            `input[data-item="${item.key}"]`,
          );
          checks[item.key] = box?.checked ?? false;
        }
        return { checks };
      }
      case "likert-battery": {
        const assessed = section.querySelector<HTMLInputElement>(
          "input[data-role=assessed]",
        );
        if (!assessed?.checked) return { assessed: false };
        const row: number[] = [];
        for (let index = 0; index < rubric.statements.length; index += 1) {
          const select = section.querySelector<HTMLSelectElement>(
            `select[data-statement="${index}"]`,
          );
          if (!select || select.value === "") return null;
          row.push(Number(select.value));
        }
        return { assessed: true, ratings: [row] };
      }
    }
  }

  private readMetadata(): SheetMetadata {
    const factors: Record<string, string> = {};
    for (const field of this.rubrics.metadata.context_factors.fields) {
      const control = this.root.querySelector<HTMLInputElement | HTMLSelectElement>(
        `[data-factor="${field.key}"]`,
      );
      factors[field.key] = control?.value ?? "";
    }
    return {
      impact_severity: Number(this.select("[data-meta=impact_severity]").value),
      autonomy_level: Number(this.select("[data-meta=autonomy_level]").value),
      context_factors: factors,
    };
  }

  /** Reflect a stored sheet back into the controls (reload flow). */
  applySheet(sheet: AnswerSheet): void {
    this.input("[data-role=system-name]").value = sheet.system.name;
    this.textarea("[data-role=system-description]").value = sheet.system.description;
    for (const [propertyId, rubric] of Object.entries(this.rubrics.properties)) {
      const answer = sheet.answers[propertyId];
      if (answer) this.applyAnswer(propertyId, rubric, answer);
    }
    if (sheet.metadata) {
      this.select("[data-meta=impact_severity]").value = String(
        sheet.metadata.impact_severity,
      );
      this.select("[data-meta=autonomy_level]").value = String(
        sheet.metadata.autonomy_level,
      );
      for (const field of this.rubrics.metadata.context_factors.fields) {
        const control = this.root.querySelector<HTMLInputElement | HTMLSelectElement>(
          `[data-factor="${field.key}"]`,
        );
        const value = sheet.metadata.context_factors?.[field.key];
        if (control && value !== undefined) control.value = value;
      }
    }
  }

  private applyAnswer(
    propertyId: string,
    rubric: PropertyRubric,
    answer: Answer,
  ): void {
    const section = this.section(propertyId);
    switch (rubric.kind) {
      case "single-choice": {
        if (!("choice" in answer)) return;
        const radio = section.querySelector<HTMLInputElement>(
          `input[name="prop-${propertyId}"][value="${cssEscape(answer.choice)}"]`,
        );
        if (radio) radio.checked = true;
        break;
      }
      case "subcriteria-sum": {
        if (!("levels" in answer)) return;
        for (const [key, points] of Object.entries(answer.levels)) {
          const radio = section.querySelector<HTMLInputElement>(
            `input[name="prop-${propertyId}-${key}"][value="${points}"]`,
          );
          if (radio) radio.checked = true;
        }
        break;
      }
      case "checklist-sum": {
        if (!("checks" in answer)) return;
        for (const [key, value] of Object.entries(answer.checks)) {
          const box = section.querySelector<HTMLInputElement>(
            `input[data-item="${key}"]`,
          );
          if (box) box.checked = value;
        }
        break;
      }
      case "likert-battery": {
        if (!("assessed" in answer)) return;
        const assessed = section.querySelector<HTMLInputElement>(
          "input[data-role=assessed]",
        );
        if (assessed) assessed.checked = answer.assessed;
        this.syncLikertEnabled(section, answer.assessed);
        const row = answer.ratings?.[0];
        if (!row) break;
        row.forEach((rating, index) => {
          const select = section.querySelector<HTMLSelectElement>(
            `select[data-statement="${index}"]`,
          );
          if (select) select.value = String(rating);
        });
        break;
      }
    }
  }

  /** Keep likert selects enabled only while "assessed" is ticked. */
  syncLikert(): void {
    for (const [propertyId, rubric] of Object.entries(this.rubrics.properties)) {
      if (rubric.kind !== "likert-battery") continue;
      const section = this.section(propertyId);
      const assessed = section.querySelector<HTMLInputElement>(
        "input[data-role=assessed]",
      );
      this.syncLikertEnabled(section, assessed?.checked ?? false);
    }
  }

  private syncLikertEnabled(section: HTMLElement, enabled: boolean): void {
    for (const select of section.querySelectorAll<HTMLSelectElement>(
      "select[data-statement]",
    )) {
      select.disabled = !enabled;
    }
  }

  // ---- lookups ----

  private section(propertyId: string): HTMLElement {
    const node = this.root.querySelector<HTMLElement>(
      `[data-property="${propertyId}"]`,
    );
    if (!node) throw new Error(`wizard section missing: ${propertyId}`);
    return node;
  }

  private input(selector: string): HTMLInputElement {
    const node = this.root.querySelector<HTMLInputElement>(selector);
    if (!node) throw new Error(`wizard control missing: ${selector}`);
    return node;
  }

  private textarea(selector: string): HTMLTextAreaElement {
    const node = this.root.querySelector<HTMLTextAreaElement>(selector);
    if (!node) throw new Error(`wizard control missing: ${selector}`);
    return node;
  }

  private select(selector: string): HTMLSelectElement {
    const node = this.root.querySelector<HTMLSelectElement>(selector);
    if (!node) throw new Error(`wizard control missing: ${selector}`);
    return node;
  }
}

/** Escape a string for use inside a CSS attribute selector. */
function cssEscape(value: string): string {
  return value.replace(/["\\]/g, (match) => `\\${match}`);
}
