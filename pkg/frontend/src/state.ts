// Session state and the save/refresh flow. No ranking or filtering happens
// here: views render exactly what the server returned, tagged with the
// revisions it was computed from.

import { Api, ApiError } from "./api.js";
import type {
  FieldError,
  Profile,
  ProfileBody,
  RecommendationResponse,
} from "./types.js";

export interface SaveResult {
  saved: boolean;
  errors: FieldError[];
}

function sameProfile(a: ProfileBody, b: ProfileBody): boolean {
  return (
    a.discipline === b.discipline &&
    a.experience === b.experience &&
    a.short_goal === b.short_goal &&
    a.long_goal === b.long_goal &&
    a.professional_interests.join(",") === b.professional_interests.join(",") &&
    a.personal_interests.join(",") === b.personal_interests.join(",")
  );
}

export function localValidation(body: ProfileBody): FieldError[] {
  const errors: FieldError[] = [];
  if (body.professional_interests.length === 0) {
    errors.push({
      field: "professional_interests",
      message: "select at least one professional interest",
    });
  }
  if (body.personal_interests.length === 0) {
    errors.push({
      field: "personal_interests",
      message: "select at least one personal interest",
    });
  }
  return errors;
}

export class Session {
  readonly api: Api;
  userId = "";
  private token = "";
  profile: Profile | null = null;
  recommendations: RecommendationResponse | null = null;
  private saving = false;

  constructor(api: Api) {
    this.api = api;
  }

  get authenticated(): boolean {
    return this.token !== "";
  }

  async create(body: ProfileBody): Promise<SaveResult> {
    const errors = localValidation(body);
    if (errors.length > 0) return { saved: false, errors };
    try {
      const created = await this.api.createUser(body);
      this.userId = created.user_id;
      this.token = created.token;
      this.profile = created.profile;
      return { saved: true, errors: [] };
    } catch (e) {
      if (e instanceof ApiError && e.status === 400) {
        return { saved: false, errors: e.fields };
      }
      throw e;
    }
  }

  /** PUT the profile, then immediately refetch recommendations.
   *
   * No-op when nothing changed (same revisions stay on screen) or while a
   * previous save is still in flight (double-click safety).
   */
  async saveProfile(body: ProfileBody): Promise<SaveResult> {
    if (!this.authenticated) throw new Error("not authenticated");
    const errors = localValidation(body);
    if (errors.length > 0) return { saved: false, errors };
    if (this.saving) return { saved: false, errors: [] };
    if (this.profile !== null && sameProfile(body, this.profile)) {
      return { saved: true, errors: [] };
    }
    this.saving = true;
    try {
      const res = await this.api.putProfile(this.userId, this.token, body);
      this.profile = res.profile;
      this.recommendations = await this.api.recommendations(this.userId, this.token);
      return { saved: true, errors: [] };
    } catch (e) {
      if (e instanceof ApiError && e.status === 400) {
        return { saved: false, errors: e.fields };
      }
      throw e;
    } finally {
      this.saving = false;
    }
  }

  async refreshRecommendations(limit?: number): Promise<RecommendationResponse> {
    if (!this.authenticated) throw new Error("not authenticated");
    this.recommendations = await this.api.recommendations(this.userId, this.token, limit);
    return this.recommendations;
  }
}
