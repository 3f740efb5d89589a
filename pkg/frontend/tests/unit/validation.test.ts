import { describe, expect, it } from "vitest";

import { checkModificationValue } from "../../src/validation";
import { fixtureRubrics } from "../helpers/fixture-rubrics";

const rubrics = fixtureRubrics();

describe("checkModificationValue", () => {
  it("accepts an in-range integer", () => {
    const check = checkModificationValue(rubrics, "logging", "3");
    expect(check).toEqual({ ok: true, value: 3 });
  });

  it("accepts fractional raw scores inside the range", () => {
    const check = checkModificationValue(rubrics, "ratings", "7.5");
    expect(check).toEqual({ ok: true, value: 7.5 });
  });

  it("rejects values above the rubric maximum and names the maximum", () => {
    const check = checkModificationValue(rubrics, "logging", "5");
    expect(check.ok).toBe(false);
    if (!check.ok) {
      expect(check.message).toContain("maximum of 4");
      expect(check.message).toContain("Logging");
    }
  });

  it("rejects negative values", () => {
    const check = checkModificationValue(rubrics, "clarity", "-1");
    expect(check.ok).toBe(false);
    if (!check.ok) expect(check.message).toContain("maximum of 2");
  });

  it("rejects non-numeric entries with the valid range", () => {
    const check = checkModificationValue(rubrics, "clarity", "two");
    expect(check.ok).toBe(false);
    if (!check.ok) expect(check.message).toContain("0 to 2");
  });

  it("rejects blank entries", () => {
    const check = checkModificationValue(rubrics, "routes", "  ");
    expect(check.ok).toBe(false);
    if (!check.ok) expect(check.message).toContain("between 0 and 2");
  });

  it("rejects unknown properties", () => {
    const check = checkModificationValue(rubrics, "nonsense", "1");
    expect(check.ok).toBe(false);
    if (!check.ok) expect(check.message).toContain("nonsense");
  });
});
