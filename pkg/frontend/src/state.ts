/** Session state for the questionnaire wizard.
 *
 * Holds the draft sheet, the last score returned by the service, and the
 * pending-request flag.  At most one scoring request is in flight; edits
 * made while one is pending are queued and supersede it — a stale
 * response is never applied over a newer one.  Scores always come from
 * the service; nothing here computes a number.
 */

import type { ApiError } from "./api";
import type {
  Answer,
  AnswerSheet,
  CreateAssessmentResponse,
  ScoredAssessmentPayload,
  SheetMetadata,
} from "./types";

export interface SessionSnapshot {
  pending: boolean;
  score: ScoredAssessmentPayload | null;
  assessmentId: string | null;
  error: ApiError | null;
  /** Property ids still blocking a scoring round-trip. */
  incomplete: string[];
}

export type ScoreFn = (sheet: AnswerSheet) => Promise<CreateAssessmentResponse>;

export interface SessionOptions {
  debounceMs?: number;
  onChange?: (snapshot: SessionSnapshot) => void;
}

export function blankDraft(): AnswerSheet {
  return {
    schema_version: "1",
    system: { name: "", description: "" },
    answers: {},
  };
}

export class ScoringSession {
  private readonly scoreFn: ScoreFn;
  private readonly debounceMs: number;
  private readonly onChange: (snapshot: SessionSnapshot) => void;

  private draft: AnswerSheet = blankDraft();
  private incomplete: string[] = [];
  private timer: ReturnType<typeof setTimeout> | null = null;
  private generation = 0;
  private inFlight = false;
  private queued = false;

  private score: ScoredAssessmentPayload | null = null;
  private assessmentId: string | null = null;
  private error: ApiError | null = null;

  constructor(scoreFn: ScoreFn, options: SessionOptions = {}) {
    this.scoreFn = scoreFn;
    this.debounceMs = options.debounceMs ?? 300;
    this.onChange = options.onChange ?? (() => {});
  }

  snapshot(): SessionSnapshot {
    return {
      pending: this.inFlight || this.timer !== null,
      score: this.score,
      assessmentId: this.assessmentId,
      error: this.error,
      incomplete: [...this.incomplete],
    };
  }

  sheet(): AnswerSheet {
    return this.draft;
  }

  /** Seed the session from a stored document and its scored payload. */
  hydrate(
    sheet: AnswerSheet,
    payload: ScoredAssessmentPayload,
    assessmentId: string,
  ): void {
    this.draft = sheet;
    this.incomplete = [];
    this.score = payload;
    this.assessmentId = assessmentId;
    this.error = null;
    this.emit();
  }

  /** Apply a wizard edit.  Incomplete properties block scoring. */
  update(
    answers: Record<string, Answer>,
    incomplete: string[],
    system?: { name: string; description: string },
    metadata?: SheetMetadata,
  ): void {
    this.draft = {
      ...this.draft,
      ...(system ? { system } : {}),
      ...(metadata ? { metadata } : {}),
      answers,
    };
    this.incomplete = incomplete;
    this.generation += 1; // anything already in flight is now stale
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    if (incomplete.length > 0) {
      this.queued = false;
      this.emit();
      return;
    }
    this.timer = setTimeout(() => {
      this.timer = null;
      void this.send();
    }, this.debounceMs);
    this.emit();
  }

  /** Force an immediate round-trip (used by tests and the retry button). */
  flush(): Promise<void> {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    if (this.incomplete.length > 0) {
      this.emit();
      return Promise.resolve();
    }
    return this.send();
  }

  private async send(): Promise<void> {
    if (this.inFlight) {
      this.queued = true;
      return;
    }
    const generation = this.generation;
    this.inFlight = true;
    this.emit();
    try {
      const response = await this.scoreFn(this.draft);
      if (generation === this.generation) {
        this.score = response.assessment;
        this.assessmentId = response.id;
        this.error = null;
      }
    } catch (error) {
      if (generation === this.generation) {
        this.error = error as ApiError;
      }
    } finally {
      this.inFlight = false;
      if (this.queued) {
        this.queued = false;
        void this.send();
      } else {
        this.emit();
      }
    }
  }

  private emit(): void {
    this.onChange(this.snapshot());
  }
}
