// Recorded service responses (captured from a live server over the bundled
// fixture corpus) plus a scriptable fetch mock.

import type {
  Course,
  ProfileBody,
  RecommendationResponse,
  SearchResponse,
} from "../src/types.js";

export const PROFILE_MECHANICAL: ProfileBody = {
  discipline: "mechanical",
  professional_interests: [86, 87],
  personal_interests: [1, 2, 3],
  experience: 2,
  short_goal: 1,
  long_goal: 2,
};

export const PROFILE_ELECTRICAL: ProfileBody = {
  ...PROFILE_MECHANICAL,
  discipline: "electrical",
  professional_interests: [12, 30],
};

export const COURSES: Record<string, Course> = {
  c01: {
    course_id: "c01",
    provider: "techtrain",
    title: "Pump Maintenance Essentials",
    description: "Hands-on pump upkeep.",
    discipline: "mechanical",
    keywords: [86],
    source_url: "http://techtrain/p1",
  },
  c02: {
    course_id: "c02",
    provider: "acme-academy",
    title: "Bearing and Lubrication Basics",
    description: "Bearings and lubrication.",
    discipline: "mechanical",
    keywords: [87],
    source_url: "http://acme/a1",
  },
  c03: {
    course_id: "c03",
    provider: "enginuity",
    title: "Project Management for Engineers",
    description: "Planning and delivery.",
    discipline: "both",
    keywords: [200],
    source_url: "http://enginuity/e1",
  },
  c04: {
    course_id: "c04",
    provider: "techtrain",
    title: "Relay Protection Fundamentals",
    description: "Protective relays.",
    discipline: "electrical",
    keywords: [12],
    source_url: "http://techtrain/p3",
  },
  c05: {
    course_id: "c05",
    provider: "acme-academy",
    title: "Power Distribution Networks",
    description: "Grid distribution design.",
    discipline: "electrical",
    keywords: [30],
    source_url: "http://acme/a4",
  },
};

export const RECS_MECHANICAL: RecommendationResponse = {
  user_id: "u1",
  items: [
    { course_id: "c01", provider: "techtrain", title: COURSES.c01.title, predicted_rank: 1, score: 0.91 },
    { course_id: "c03", provider: "enginuity", title: COURSES.c03.title, predicted_rank: 2, score: 0.74 },
    { course_id: "c02", provider: "acme-academy", title: COURSES.c02.title, predicted_rank: 2, score: 0.69 },
  ],
  store_revision: 7,
  model_revision: 2,
};

export const RECS_ELECTRICAL: RecommendationResponse = {
  user_id: "u1",
  items: [
    { course_id: "c04", provider: "techtrain", title: COURSES.c04.title, predicted_rank: 1, score: 0.88 },
    { course_id: "c05", provider: "acme-academy", title: COURSES.c05.title, predicted_rank: 2, score: 0.71 },
    { course_id: "c03", provider: "enginuity", title: COURSES.c03.title, predicted_rank: 3, score: 0.52 },
  ],
  store_revision: 8,
  model_revision: 2,
};

export const SEARCH_PUMP: SearchResponse = {
  results: [{ ...COURSES.c01, relevance: 2.08 }],
  store_revision: 7,
};

export interface RecordedCall {
  method: string;
  url: string;
  body?: unknown;
}

type Responder = (call: RecordedCall) => { status: number; json: unknown } | undefined;

export class MockServer {
  calls: RecordedCall[] = [];
  private responders: Responder[] = [];

  on(method: string, urlPrefix: string, json: unknown, status = 200): this {
    this.responders.push((call) =>
      call.method === method && call.url.startsWith(urlPrefix)
        ? { status, json }
        : undefined,
    );
    return this;
  }

  fetch = async (url: string, init?: RequestInit): Promise<Response> => {
    const call: RecordedCall = {
      method: init?.method ?? "GET",
      url,
      body: init?.body === undefined ? undefined : JSON.parse(init.body as string),
    };
    this.calls.push(call);
    for (const responder of this.responders) {
      const hit = responder(call);
      if (hit !== undefined) {
        return new Response(JSON.stringify(hit.json), {
          status: hit.status,
          headers: { "Content-Type": "application/json" },
        });
      }
    }
    return new Response(JSON.stringify({ detail: `unrouted ${call.method} ${url}` }), {
      status: 500,
    });
  };

  summary(): string[] {
    return this.calls.map((c) => `${c.method} ${c.url.split("?")[0]}`);
  }
}
