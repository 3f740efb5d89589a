/** Score panel: contribution table plus total.
 *
 * Every number shown here is a `display` string (or score value) taken
 * verbatim from the service payload — the client never re-rounds or
 * recomputes anything it prints.
 */

import { el, clear } from "./dom";
import type { SessionSnapshot } from "./state";
import type { RubricsDoc } from "./types";

export function renderScorePanel(
  root: HTMLElement,
  snapshot: SessionSnapshot,
  rubrics: RubricsDoc,
): void {
  clear(root);
  root.classList.toggle("disabled", snapshot.incomplete.length > 0);
  root.classList.toggle("pending", snapshot.pending);
  root.setAttribute("aria-busy", snapshot.pending ? "true" : "false");

  if (snapshot.incomplete.length > 0) {
    const titles = snapshot.incomplete.map(
      (id) => rubrics.properties[id]?.title ?? id,
    );
    root.appendChild(
      el(
        "p",
        { class: "blocked", "data-role": "blocked" },
        `Score paused — still unanswered: ${titles.join(", ")}.`,
      ),
    );
  }

  if (snapshot.error) {
    root.appendChild(
      el(
        "p",
        { class: "error", "data-role": "score-error" },
        snapshot.error.field
          ? `${snapshot.error.message} (field: ${snapshot.error.field})`
          : snapshot.error.message,
      ),
    );
  }

  const score = snapshot.score;
  if (!score) {
    if (snapshot.incomplete.length === 0 && !snapshot.error) {
      root.appendChild(el("p", { class: "placeholder" }, "No score yet."));
    }
    return;
  }

  const head = el(
    "tr",
    {},
    el("th", {}, "Property"),
    el("th", {}, "Max"),
    el("th", {}, "Weight"),
    el("th", {}, "Score"),
    el("th", {}, "Contribution"),
  );
  const table = el("table", { class: "score-table" }, el("thead", {}, head));
  const body = el("tbody", {});
  for (const [propertyId, row] of Object.entries(score.properties)) {
    body.appendChild(
      el(
        "tr",
        { "data-property": propertyId },
        el("td", {}, row.title),
        el("td", {}, String(row.max)),
        el("td", {}, row.weight.display),
        el("td", { "data-role": "score" }, row.score_display),
        el("td", { "data-role": "contribution" }, row.contribution.display),
      ),
    );
  }
  body.appendChild(
    el(
      "tr",
      { class: "total-row" },
      el("td", {}, "Total CAS"),
      el("td", {}),
      el("td", {}),
      el("td", {}),
      el("td", { "data-role": "total" }, score.total.display),
    ),
  );
  table.appendChild(body);
  root.appendChild(table);

  const notes = el("p", { class: "panel-notes" });
  if (!score.explanation_quality_assessed) {
    notes.append(
      el(
        "span",
        { "data-role": "quality-note" },
        "Explanation quality not assessed — scored 0. ",
      ),
    );
  }
  if (score.published_total !== undefined) {
    notes.append(
      el(
        "span",
        { "data-role": "published-note" },
        `Published total on record: ${score.published_total}. `,
      ),
    );
  }
  notes.append(
    el(
      "span",
      { class: "fingerprint", "data-role": "fingerprint" },
      `config ${score.config_fingerprint}`,
    ),
  );
  root.appendChild(notes);

  if (snapshot.assessmentId) {
    root.appendChild(
      el(
        "p",
        { class: "assessment-id", "data-role": "assessment-id" },
        `Stored as ${snapshot.assessmentId}`,
      ),
    );
  }
}
