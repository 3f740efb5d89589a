/** Client-side checks applied before a scenario request is sent. */

import type { RubricsDoc } from "./types";

export type ModificationCheck =
  | { ok: true; value: number }
  | { ok: false; message: string };

/** Validate a proposed raw score against the property's rubric range.
 *
 * Out-of-range entries are rejected here, before any request is made,
 * and the message always names the rubric maximum.
 */
export function checkModificationValue(
  rubrics: RubricsDoc,
  propertyId: string,
  raw: string,
): ModificationCheck {
  const rubric = rubrics.properties[propertyId];
  if (!rubric) {
    return { ok: false, message: `Unknown property: ${propertyId}` };
  }
  const trimmed = raw.trim();
  if (trimmed === "") {
    return {
      ok: false,
      message: `Enter a score between 0 and ${rubric.max_points} for ${rubric.title}.`,
    };
  }
  const value = Number(trimmed);
  if (!Number.isFinite(value)) {
    return {
      ok: false,
      message: `Not a number. ${rubric.title} scores run from 0 to ${rubric.max_points}.`,
    };
  }
  if (value < 0 || value > rubric.max_points) {
    return {
      ok: false,
      message: `Out of range: ${rubric.title} has a rubric maximum of ${rubric.max_points} (got ${trimmed}).`,
    };
  }
  return { ok: true, value };
}
