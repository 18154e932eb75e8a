// Thin typed client over the service API. All requests go through the
// injected fetch so tests can record and script them.

import type {
  Course,
  CreatedUser,
  FieldError,
  IngestReport,
  MetaTables,
  Profile,
  ProfileBody,
  RecommendationResponse,
  SearchResponse,
  TrainReport,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  status: number;
  fields: FieldError[];

  constructor(status: number, message: string, fields: FieldError[] = []) {
    super(message);
    this.status = status;
    this.fields = fields;
  }
}

async function fail(res: Response): Promise<never> {
  let detail: unknown;
  try {
    detail = (await res.json()).detail;
  } catch {
    detail = res.statusText;
  }
  if (Array.isArray(detail)) {
    const fields = detail.filter(
      (d): d is FieldError => typeof d === "object" && d !== null && "field" in d,
    );
    throw new ApiError(res.status, fields.map((f) => f.message).join("; "), fields);
  }
  throw new ApiError(res.status, String(detail));
}

export class Api {
  private fetchFn: FetchLike;
  private base: string;

  constructor(fetchFn: FetchLike, base = "") {
    this.fetchFn = fetchFn;
    this.base = base;
  }

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
    headers: Record<string, string> = {},
  ): Promise<T> {
    const init: RequestInit = { method, headers: { ...headers } };
    if (body !== undefined) {
      (init.headers as Record<string, string>)["Content-Type"] = "application/json";
      init.body = JSON.stringify(body);
    }
    const res = await this.fetchFn(this.base + path, init);
    if (!res.ok) await fail(res);
    return (await res.json()) as T;
  }

  metaTables(): Promise<MetaTables> {
    return this.request("GET", "/api/meta/tables");
  }

  createUser(body: ProfileBody): Promise<CreatedUser> {
    return this.request("POST", "/api/users", body);
  }

  getProfile(userId: string, token: string): Promise<Profile> {
    return this.request("GET", `/api/users/${userId}`, undefined, {
      Authorization: `Bearer ${token}`,
    });
  }

  putProfile(
    userId: string,
    token: string,
    body: ProfileBody,
  ): Promise<{ profile: Profile; store_revision: number }> {
    return this.request("PUT", `/api/users/${userId}/profile`, body, {
      Authorization: `Bearer ${token}`,
    });
  }

  recommendations(
    userId: string,
    token: string,
    limit?: number,
  ): Promise<RecommendationResponse> {
    const qs = limit === undefined ? "" : `?limit=${limit}`;
    return this.request("GET", `/api/users/${userId}/recommendations${qs}`, undefined, {
      Authorization: `Bearer ${token}`,
    });
  }

  search(q: string, discipline: string, limit?: number): Promise<SearchResponse> {
    const params = new URLSearchParams({ q, discipline });
    if (limit !== undefined) params.set("limit", String(limit));
    return this.request("GET", `/api/courses/search?${params}`);
  }

  course(courseId: string): Promise<Course> {
    return this.request("GET", `/api/courses/${courseId}`);
  }

  adminIngest(secret: string, corpusDir: string): Promise<IngestReport> {
    return this.request(
      "POST",
      "/api/admin/ingest",
      { corpus_dir: corpusDir },
      { "X-Admin-Secret": secret },
    );
  }

  adminTrain(
    secret: string,
    opts: { hidden_layers?: number[]; epochs?: number; learning_rate?: number; seed?: number },
  ): Promise<TrainReport> {
    return this.request("POST", "/api/admin/train", opts, { "X-Admin-Secret": secret });
  }
}
