/** What-if panel: raw-score modifications over the scored baseline.
 *
 * Out-of-range entries never leave the client — they are rejected with
 * the rubric maximum in the message.  Every total shown after evaluation
 * is a `display` string from the service.
 */

import { ApiError, ApiClient } from "./api";
import { el, clear } from "./dom";
import { checkModificationValue } from "./validation";
import type {
  Feasibility,
  ModificationDraft,
  Policy,
  RadarAxis,
  RubricsDoc,
  ScenarioResultPayload,
  ScoredAssessmentPayload,
} from "./types";

export interface BaselineRef {
  id: string;
  payload: ScoredAssessmentPayload;
}

export interface WhatIfOptions {
  /** Supplies the current stored baseline, or null before first score. */
  getBaseline: () => BaselineRef | null;
  /** Called with scenario radar values after each evaluation (null on reset). */
  onResult?: (overlay: RadarAxis[] | null) => void;
}

export class WhatIfPanel {
  private modifications: ModificationDraft[] = [];
  private policy: Policy = "up_to_moderately";

  constructor(
    private readonly root: HTMLElement,
    private readonly rubrics: RubricsDoc,
    private readonly api: ApiClient,
    private readonly options: WhatIfOptions,
  ) {}

  render(): void {
    clear(this.root);
    this.root.appendChild(el("h2", {}, "What-if scenarios"));
    this.root.appendChild(this.buildForm());
    this.root.appendChild(el("ul", { class: "mod-list", "data-role": "mod-list" }));
    this.root.appendChild(this.buildPolicyToggle());
    const actions = el(
      "div",
      { class: "whatif-actions" },
      el("button", { type: "button", "data-role": "evaluate" }, "Evaluate scenario"),
      el("button", { type: "button", "data-role": "hints" }, "Suggest interventions"),
    );
    this.root.appendChild(actions);
    this.root.appendChild(el("p", { class: "error", "data-role": "whatif-error" }));
    this.root.appendChild(el("div", { "data-role": "result" }));
    this.root.appendChild(el("div", { "data-role": "hint-list" }));

    this.root
      .querySelector("[data-role=evaluate]")!
      .addEventListener("click", () => void this.evaluate());
    this.root
      .querySelector("[data-role=hints]")!
      .addEventListener("click", () => void this.suggest());
  }

  private buildForm(): HTMLElement {
    const propertySelect = el("select", { "data-role": "mod-property" });
    for (const [propertyId, rubric] of Object.entries(this.rubrics.properties)) {
      propertySelect.appendChild(
        el(
          "option",
          { value: propertyId },
          `${rubric.title} (0–${rubric.max_points})`,
        ),
      );
    }
    const scoreInput = el("input", {
      type: "text",
      "data-role": "mod-score",
      placeholder: "new raw score",
    });
    const feasibilitySelect = el("select", { "data-role": "mod-feasibility" });
    feasibilitySelect.appendChild(el("option", { value: "highly" }, "highly feasible"));
    feasibilitySelect.appendChild(
      el("option", { value: "moderately" }, "moderately feasible"),
    );
    const addButton = el("button", { type: "button", "data-role": "mod-add" }, "Add");
    addButton.addEventListener("click", () => {
      this.addFromForm(propertySelect.value, scoreInput.value, feasibilitySelect.value);
    });
    return el(
      "div",
      { class: "mod-form" },
      propertySelect,
      scoreInput,
      feasibilitySelect,
      addButton,
    );
  }

  private buildPolicyToggle(): HTMLElement {
    const wrap = el("div", { class: "policy-toggle" });
    for (const [value, label] of [
      ["only_highly", "Only highly feasible"],
      ["up_to_moderately", "Up to moderately feasible"],
    ] as const) {
      const radio = el("input", {
        type: "radio",
        name: "policy",
        value,
      });
      if (value === this.policy) radio.checked = true;
      radio.addEventListener("change", () => {
        if (radio.checked) this.policy = value;
      });
      wrap.appendChild(el("label", { class: "option" }, radio, label));
    }
    return wrap;
  }

  // ---- modification list ----

  /** Validate and stage a modification; returns the error message, if any. */
  addFromForm(propertyId: string, rawScore: string, feasibility: string): string | null {
    const check = checkModificationValue(this.rubrics, propertyId, rawScore);
    if (!check.ok) {
      this.showError(check.message);
      return check.message;
    }
    this.showError("");
    this.addModification({
      property: propertyId,
      new_score: check.value,
      feasibility: feasibility as Feasibility,
    });
    return null;
  }

  addModification(draft: ModificationDraft): void {
    this.modifications.push(draft);
    this.renderModList();
  }

  setPolicy(policy: Policy): void {
    this.policy = policy;
    const radio = this.root.querySelector<HTMLInputElement>(
      `input[name=policy][value=${policy}]`,
    );
    if (radio) radio.checked = true;
  }

  currentModifications(): ModificationDraft[] {
    return [...this.modifications];
  }

  private renderModList(): void {
    const list = this.root.querySelector<HTMLElement>("[data-role=mod-list]")!;
    clear(list);
    this.modifications.forEach((mod, index) => {
      const title = this.rubrics.properties[mod.property]?.title ?? mod.property;
      const remove = el("button", { type: "button" }, "remove");
      remove.addEventListener("click", () => {
        this.modifications.splice(index, 1);
        this.renderModList();
      });
      list.appendChild(
        el(
          "li",
          { "data-mod": mod.property, "data-feasibility": mod.feasibility },
          `${title} → ${mod.new_score} (${mod.feasibility})`,
          remove,
        ),
      );
    });
  }

  // ---- evaluation ----

  async evaluate(): Promise<void> {
    const baseline = this.options.getBaseline();
    if (!baseline) {
      this.showError("Score the questionnaire before running a scenario.");
      return;
    }
    this.showError("");
    try {
      const response = await this.api.evaluateScenario({
        schema_version: "1",
        name: "what-if",
        baseline: { id: baseline.id },
        policy: this.policy,
        modifications: this.modifications,
      });
      this.renderResult(response.result);
      this.options.onResult?.(
        response.result.changes.map((change) => ({
          property: change.property,
          value: change.max === 0 ? 0 : change.new_score / change.max,
        })),
      );
    } catch (error) {
      if (error instanceof ApiError) {
        this.showError(
          error.field ? `${error.message} (field: ${error.field})` : error.message,
        );
      } else {
        this.showError(String(error));
      }
    }
  }

  private renderResult(result: ScenarioResultPayload): void {
    const container = this.root.querySelector<HTMLElement>("[data-role=result]")!;
    clear(container);
    container.appendChild(
      el(
        "p",
        { class: "scenario-totals" },
        "Baseline ",
        el("strong", { "data-role": "baseline-total" }, result.baseline_total.display),
        " → scenario ",
        el("strong", { "data-role": "new-total" }, result.new_total.display),
        " (Δ ",
        el("strong", { "data-role": "delta" }, result.delta.display),
        `, policy ${result.policy})`,
      ),
    );
    const table = el(
      "table",
      { class: "changes-table" },
      el(
        "thead",
        {},
        el(
          "tr",
          {},
          el("th", {}, "Property"),
          el("th", {}, "Score"),
          el("th", {}, "Contribution"),
        ),
      ),
    );
    const body = el("tbody", {});
    for (const change of result.changes) {
      const title = this.rubrics.properties[change.property]?.title ?? change.property;
      body.appendChild(
        el(
          "tr",
          {
            "data-property": change.property,
            class: change.changed ? "changed" : "unchanged",
          },
          el("td", {}, title),
          el(
            "td",
            { "data-role": "score-change" },
            `${change.baseline_score} → ${change.new_score}`,
          ),
          el(
            "td",
            { "data-role": "contribution-change" },
            `${change.baseline_contribution.display} → ${change.new_contribution.display}`,
          ),
        ),
      );
    }
    table.appendChild(body);
    container.appendChild(table);
  }

  // ---- intervention hints ----

  async suggest(): Promise<void> {
    const baseline = this.options.getBaseline();
    if (!baseline) {
      this.showError("Score the questionnaire before asking for suggestions.");
      return;
    }
    this.showError("");
    const candidates: ModificationDraft[] = [];
    for (const [propertyId, rubric] of Object.entries(this.rubrics.properties)) {
      const current = baseline.payload.properties[propertyId];
      if (current && current.score >= rubric.max_points) continue;
      candidates.push({
        property: propertyId,
        new_score: rubric.max_points,
        feasibility: "highly",
      });
    }
    if (candidates.length === 0) {
      this.showError("Every property is already at its rubric maximum.");
      return;
    }
    try {
      const response = await this.api.rankInterventions(
        { id: baseline.id },
        candidates,
      );
      const container = this.root.querySelector<HTMLElement>("[data-role=hint-list]")!;
      clear(container);
      container.appendChild(el("h3", {}, "Largest gains first"));
      const list = el("ol", { "data-role": "hints" });
      for (const item of response.ranked) {
        const title = this.rubrics.properties[item.property]?.title ?? item.property;
        list.appendChild(
          el(
            "li",
            { "data-property": item.property },
            `${title} to ${item.new_score}: +`,
            el("span", { "data-role": "hint-delta" }, item.delta.display),
            " → total ",
            el("span", { "data-role": "hint-total" }, item.new_total.display),
          ),
        );
      }
      container.appendChild(list);
    } catch (error) {
      if (error instanceof ApiError) {
        this.showError(
          error.field ? `${error.message} (field: ${error.field})` : error.message,
        );
      } else {
        this.showError(String(error));
      }
    }
  }

  private showError(message: string): void {
    const node = this.root.querySelector<HTMLElement>("[data-role=whatif-error]");
    if (node) node.textContent = message;
  }
}
