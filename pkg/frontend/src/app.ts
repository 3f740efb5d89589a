/** Composition root: wires wizard, session, score panel, radar, what-if.
 *
 * There is no hidden client state — the questionnaire controls plus the
 * `#a=<id>` URL fragment fully determine what is shown, so a reload that
 * re-fetches the stored assessment reproduces the same panels.
 */

import { ApiClient, ApiError } from "./api";
import { clear, el } from "./dom";
import { renderRadar } from "./radar";
import { renderScorePanel } from "./score-panel";
import { ScoringSession } from "./state";
import type { SessionSnapshot } from "./state";
import { WhatIfPanel } from "./whatif";
import { Wizard } from "./wizard";
import type { AnswerSheet, RadarAxis, RubricsDoc } from "./types";

export interface AppHandles {
  rubrics: RubricsDoc;
  wizard: Wizard;
  session: ScoringSession;
  whatif: WhatIfPanel;
}

function readHash(hash: string): string | null {
  const match = /^#a=([0-9a-f]{64})$/.exec(hash);
  return match ? match[1] ?? null : null;
}

export async function boot(
  root: HTMLElement,
  api: ApiClient,
  options: { debounceMs?: number } = {},
): Promise<AppHandles> {
  clear(root);
  const banner = el("p", { class: "error", "data-role": "app-error" });
  const wizardRoot = el("div", { class: "wizard" });
  const scoreRoot = el("div", { class: "score-panel", "data-role": "score-panel" });
  const radarRoot = el("div", { class: "radar-panel", "data-role": "radar-panel" });
  const whatifRoot = el("div", { class: "whatif-panel" });
  root.append(
    el("h1", {}, "Contestability assessment"),
    banner,
    el(
      "div",
      { class: "layout" },
      wizardRoot,
      el("div", { class: "results" }, scoreRoot, radarRoot, whatifRoot),
    ),
  );

  const rubrics = await api.fetchRubrics();
  let overlay: RadarAxis[] | null = null;
  let lastSnapshot: SessionSnapshot | null = null;

  const paint = (snapshot: SessionSnapshot): void => {
    lastSnapshot = snapshot;
    renderScorePanel(scoreRoot, snapshot, rubrics);
    if (snapshot.score) {
      const titles: Record<string, string> = {};
      for (const [propertyId, row] of Object.entries(snapshot.score.properties)) {
        titles[propertyId] = row.title;
      }
      renderRadar(radarRoot, titles, snapshot.score.radar, overlay ?? undefined);
    } else {
      clear(radarRoot);
    }
    if (snapshot.assessmentId) {
      const next = `#a=${snapshot.assessmentId}`;
      if (window.location.hash !== next) {
        window.history.replaceState(null, "", next);
      }
    }
  };

  const session = new ScoringSession((sheet) => api.createAssessment(sheet), {
    debounceMs: options.debounceMs ?? 250,
    onChange: paint,
  });

  const wizard = new Wizard(wizardRoot, rubrics, () => {
    wizard.syncLikert();
    const reading = wizard.read();
    session.update(
      reading.answers,
      reading.incomplete,
      reading.system,
      reading.metadata,
    );
  });
  wizard.render();

  const whatif = new WhatIfPanel(whatifRoot, rubrics, api, {
    getBaseline: () => {
      if (!lastSnapshot?.score || !lastSnapshot.assessmentId) return null;
      return { id: lastSnapshot.assessmentId, payload: lastSnapshot.score };
    },
    onResult: (values) => {
      overlay = values;
      if (lastSnapshot) paint(lastSnapshot);
    },
  });
  whatif.render();

  const storedId = readHash(window.location.hash);
  if (storedId) {
    try {
      const { document: storedSheet } = await api.fetchAssessment(storedId);
      const rescored = await api.rescore(storedId);
      wizard.applySheet(storedSheet as AnswerSheet);
      session.hydrate(storedSheet as AnswerSheet, rescored.assessment, storedId);
    } catch (error) {
      banner.textContent =
        error instanceof ApiError
          ? `Stored assessment unavailable: ${error.message}`
          : String(error);
    }
  } else {
    paint(session.snapshot());
  }

  return { rubrics, wizard, session, whatif };
}
