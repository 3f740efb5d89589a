/** End-to-end: the UI drives a live service process (see helpers/server.ts)
 * and must reproduce the service's display strings exactly.
 */

import { beforeEach, describe, expect, inject, it } from "vitest";

import { ApiClient } from "../../src/api";
import { boot, type AppHandles } from "../../src/app";
import {
  CASE1_CHOICES,
  CASE1_EASE_CHECKS,
  CASE1_METADATA,
  CASE1_MODIFICATIONS,
  CASE1_ONLY_HIGHLY_TOTAL,
  CASE1_RATINGS,
  CASE1_SYSTEM,
  CASE1_TOTAL,
  CASE1_TRACE_LEVELS,
  CASE1_UP_TO_MODERATELY_TOTAL,
  caseOneSheet,
} from "../helpers/case1";
import { waitFor } from "../helpers/wait";

function apiBase(): string {
  return inject("apiBase");
}

function freshRoot(): HTMLElement {
  const root = document.createElement("div");
  document.body.appendChild(root);
  return root;
}

function check(root: ParentNode, selector: string): void {
  const input = root.querySelector<HTMLInputElement>(selector);
  if (!input) throw new Error(`no control for ${selector}`);
  input.checked = true;
  input.dispatchEvent(new Event("change", { bubbles: true }));
}

function setValue(root: ParentNode, selector: string, value: string): void {
  const control = root.querySelector<HTMLInputElement | HTMLSelectElement>(selector);
  if (!control) throw new Error(`no control for ${selector}`);
  control.value = value;
  control.dispatchEvent(new Event("change", { bubbles: true }));
}

function fillCaseOne(root: HTMLElement): void {
  setValue(root, "[data-role=system-name]", CASE1_SYSTEM.name);
  setValue(root, "[data-role=system-description]", CASE1_SYSTEM.description);
  for (const [propertyId, label] of Object.entries(CASE1_CHOICES)) {
    check(root, `input[name="prop-${propertyId}"][value="${label}"]`);
  }
  for (const [key, points] of Object.entries(CASE1_TRACE_LEVELS)) {
    check(root, `input[name="prop-traceability-${key}"][value="${points}"]`);
  }
  for (const key of CASE1_EASE_CHECKS) {
    check(root, `input[data-item="${key}"]`);
  }
  check(root, "[data-property=explanation_quality] input[data-role=assessed]");
  CASE1_RATINGS.forEach((rating, index) => {
    setValue(
      root,
      `[data-property=explanation_quality] select[data-statement="${index}"]`,
      String(rating),
    );
  });
  setValue(root, "[data-meta=impact_severity]", String(CASE1_METADATA.impact_severity));
  setValue(root, "[data-meta=autonomy_level]", String(CASE1_METADATA.autonomy_level));
  for (const [key, value] of Object.entries(CASE1_METADATA.context_factors)) {
    setValue(root, `[data-factor="${key}"]`, value);
  }
}

async function waitScored(handles: AppHandles): Promise<void> {
  await waitFor(
    () => {
      const snapshot = handles.session.snapshot();
      return snapshot.score !== null &&
        !snapshot.pending &&
        snapshot.incomplete.length === 0
        ? snapshot
        : false;
    },
    10_000,
    "scored snapshot",
  );
}

function textOf(root: ParentNode, selector: string): string {
  return root.querySelector(selector)?.textContent ?? "";
}

describe("UI ↔ service parity (live server)", () => {
  beforeEach(() => {
    document.body.innerHTML = "";
    window.history.replaceState(null, "", "/");
  });

  it("drives the full radiology example through the DOM", async () => {
    const root = freshRoot();
    const handles = await boot(root, new ApiClient(apiBase()), { debounceMs: 5 });

    fillCaseOne(root);
    await waitScored(handles);

    // total and per-property cells are the service display strings verbatim
    expect(textOf(root, "[data-role=total]")).toBe(CASE1_TOTAL);
    const explainabilityRow = root.querySelector("tr[data-property=explainability]")!;
    expect(
      explainabilityRow.querySelector("[data-role=contribution]")?.textContent,
    ).toBe("0.150");

    // the DOM-driven sheet hashes to the same stored id as the canonical sheet
    const direct = await new ApiClient(apiBase()).createAssessment(caseOneSheet());
    const storedId = handles.session.snapshot().assessmentId;
    expect(storedId).toBe(direct.id);
    expect(window.location.hash).toBe(`#a=${storedId}`);

    // radar baseline drawn with eight axes
    const baselinePolygon = root.querySelector("polygon[data-series=baseline]");
    expect(baselinePolygon?.getAttribute("points")?.split(" ")).toHaveLength(8);

    // ---- what-if: the documented improvement plan ----
    for (const modification of CASE1_MODIFICATIONS) {
      handles.whatif.addModification(modification);
    }

    handles.whatif.setPolicy("only_highly");
    await handles.whatif.evaluate();
    expect(textOf(root, "[data-role=baseline-total]")).toBe(CASE1_TOTAL);
    expect(textOf(root, "[data-role=new-total]")).toBe(CASE1_ONLY_HIGHLY_TOTAL);
    expect(root.querySelectorAll(".changes-table tr.changed")).toHaveLength(2);

    handles.whatif.setPolicy("up_to_moderately");
    await handles.whatif.evaluate();
    expect(textOf(root, "[data-role=new-total]")).toBe(CASE1_UP_TO_MODERATELY_TOTAL);
    expect(textOf(root, "[data-role=delta]")).toBe("0.376");
    expect(root.querySelectorAll(".changes-table tr.changed")).toHaveLength(7);

    // scenario polygon overlays the radar once a result is in
    const scenarioPolygon = root.querySelector("polygon[data-series=scenario]");
    expect(scenarioPolygon).not.toBeNull();
    expect(scenarioPolygon?.getAttribute("points")).not.toBe(
      root.querySelector("polygon[data-series=baseline]")?.getAttribute("points"),
    );
  });

  it("rejects an out-of-range modification before any request is made", async () => {
    const root = freshRoot();
    const handles = await boot(root, new ApiClient(apiBase()), { debounceMs: 5 });

    const seen: string[] = [];
    const realFetch = globalThis.fetch;
    globalThis.fetch = ((input: RequestInfo | URL, init?: RequestInit) => {
      seen.push(String(input));
      return realFetch(input, init);
    }) as typeof fetch;
    try {
      setValue(root, "[data-role=mod-property]", "ease");
      const scoreBox = root.querySelector<HTMLInputElement>("[data-role=mod-score]")!;
      scoreBox.value = "12";
      root.querySelector<HTMLButtonElement>("[data-role=mod-add]")!.click();
    } finally {
      globalThis.fetch = realFetch;
    }

    const message = textOf(root, "[data-role=whatif-error]");
    expect(message).toContain("maximum of 10");
    expect(message).toContain("Ease of Contestation");
    expect(root.querySelectorAll("[data-role=mod-list] li")).toHaveLength(0);
    expect(seen.filter((url) => url.includes("/scenarios"))).toHaveLength(0);
    expect(handles.whatif.currentModifications()).toHaveLength(0);
  });

  it("an empty scenario round-trips with a zero delta", async () => {
    const root = freshRoot();
    const handles = await boot(root, new ApiClient(apiBase()), { debounceMs: 5 });
    fillCaseOne(root);
    await waitScored(handles);

    await handles.whatif.evaluate();
    expect(textOf(root, "[data-role=baseline-total]")).toBe(CASE1_TOTAL);
    expect(textOf(root, "[data-role=new-total]")).toBe(CASE1_TOTAL);
    expect(textOf(root, "[data-role=delta]")).toBe("0.000");
    expect(root.querySelectorAll(".changes-table tr.changed")).toHaveLength(0);
    expect(root.querySelectorAll(".changes-table tbody tr")).toHaveLength(8);
  });

  it("ranks intervention hints by gain and skips maxed properties", async () => {
    const root = freshRoot();
    const handles = await boot(root, new ApiClient(apiBase()), { debounceMs: 5 });
    fillCaseOne(root);
    await waitScored(handles);

    await handles.whatif.suggest();
    const items = [...root.querySelectorAll("[data-role=hints] li")];
    expect(items.length).toBeGreaterThan(0);
    const order = items.map((item) => item.getAttribute("data-property"));
    expect(order[0]).toBe("explainability");
    expect(order).not.toContain("safeguards"); // already at its maximum
    expect(order.indexOf("explainability")).toBeLessThan(
      order.indexOf("traceability"),
    );
    expect(items[0]?.querySelector("[data-role=hint-delta]")?.textContent).toBe(
      "0.150",
    );
  });

  it("surfaces service rejections inline with the offending field", async () => {
    const root = freshRoot();
    const handles = await boot(root, new ApiClient(apiBase()), { debounceMs: 5 });
    fillCaseOne(root);
    await waitScored(handles);

    handles.whatif.addModification({
      property: "ease",
      new_score: 5,
      feasibility: "highly",
    });
    handles.whatif.addModification({
      property: "ease",
      new_score: 6,
      feasibility: "highly",
    });
    await handles.whatif.evaluate();
    const message = textOf(root, "[data-role=whatif-error]");
    expect(message).toContain("duplicate");
    expect(message).toContain("field: modifications");
  });

  it("reload via #a=<id> reproduces the same panels from the store", async () => {
    const api = new ApiClient(apiBase());
    const created = await api.createAssessment(caseOneSheet());

    window.history.replaceState(null, "", `/#a=${created.id}`);
    const rootA = freshRoot();
    const handlesA = await boot(rootA, api, { debounceMs: 5 });
    await waitFor(() => handlesA.session.snapshot().score, 10_000, "hydrated score");

    expect(textOf(rootA, "[data-role=total]")).toBe(CASE1_TOTAL);
    expect(handlesA.session.snapshot().assessmentId).toBe(created.id);

    // the wizard reflects the stored answers, not a blank sheet
    const reading = handlesA.wizard.read();
    expect(reading.incomplete).toEqual([]);
    expect(reading.answers).toEqual(caseOneSheet().answers);
    expect(reading.system).toEqual(CASE1_SYSTEM);

    // a second reload renders character-for-character identical panels
    const rootB = freshRoot();
    const handlesB = await boot(rootB, api, { debounceMs: 5 });
    await waitFor(() => handlesB.session.snapshot().score, 10_000, "second hydrate");
    expect(
      rootB.querySelector("[data-role=score-panel]")?.innerHTML,
    ).toBe(rootA.querySelector("[data-role=score-panel]")?.innerHTML);
  });

  it("reports an unknown stored id in the banner instead of crashing", async () => {
    window.history.replaceState(null, "", `/#a=${"0".repeat(64)}`);
    const root = freshRoot();
    await boot(root, new ApiClient(apiBase()), { debounceMs: 5 });
    expect(textOf(root, "[data-role=app-error]")).toContain(
      "Stored assessment unavailable",
    );
  });
});
