import { describe, expect, it } from "vitest";

import { Api, ApiError } from "../src/api.js";
import { Session } from "../src/state.js";
import {
  COURSES,
  MockServer,
  PROFILE_ELECTRICAL,
  PROFILE_MECHANICAL,
  RECS_ELECTRICAL,
  RECS_MECHANICAL,
  RecordedCall,
} from "./fixtures.js";

function authedSession(server: MockServer): Promise<Session> {
  server.on("POST", "/api/users", {
    user_id: "u1",
    token: "tok",
    profile: { user_id: "u1", ...PROFILE_MECHANICAL },
  }, 201);
  const session = new Session(new Api(server.fetch));
  return session.create(PROFILE_MECHANICAL).then(() => session);
}

describe("profile save flow", () => {
  it("PUTs the profile exactly once, then refetches recommendations", async () => {
    const server = new MockServer();
    const session = await authedSession(server);
    server
      .on("PUT", "/api/users/u1/profile", {
        profile: { user_id: "u1", ...PROFILE_ELECTRICAL },
        store_revision: 8,
      })
      .on("GET", "/api/users/u1/recommendations", RECS_ELECTRICAL);

    const result = await session.saveProfile(PROFILE_ELECTRICAL);

    expect(result).toEqual({ saved: true, errors: [] });
    expect(server.summary()).toEqual([
      "POST /api/users",
      "PUT /api/users/u1/profile",
      "GET /api/users/u1/recommendations",
    ]);
    expect(session.recommendations).toEqual(RECS_ELECTRICAL);
  });

  it("empty professional interests: inline error, no request", async () => {
    const server = new MockServer();
    const session = await authedSession(server);
    const before = server.calls.length;

    const result = await session.saveProfile({
      ...PROFILE_ELECTRICAL,
      professional_interests: [],
    });

    expect(result.saved).toBe(false);
    expect(result.errors[0].field).toBe("professional_interests");
    expect(server.calls.length).toBe(before);
  });

  it("save with no changes: no request, same revisions stay displayed", async () => {
    const server = new MockServer();
    const session = await authedSession(server);
    const changed = { ...PROFILE_MECHANICAL, long_goal: 5 };
    server
      .on("PUT", "/api/users/u1/profile", {
        profile: { user_id: "u1", ...changed },
        store_revision: 7,
      })
      .on("GET", "/api/users/u1/recommendations", RECS_MECHANICAL);
    await session.saveProfile(changed);
    // second identical save
    const before = server.calls.length;
    const result = await session.saveProfile(changed);

    expect(result.saved).toBe(true);
    expect(server.calls.length).toBe(before);
    expect(session.recommendations?.store_revision).toBe(7);
  });

  it("double-click: concurrent second save is dropped", async () => {
    const server = new MockServer();
    const session = await authedSession(server);
    server
      .on("PUT", "/api/users/u1/profile", {
        profile: { user_id: "u1", ...PROFILE_ELECTRICAL },
        store_revision: 8,
      })
      .on("GET", "/api/users/u1/recommendations", RECS_ELECTRICAL);

    const [a, b] = await Promise.all([
      session.saveProfile(PROFILE_ELECTRICAL),
      session.saveProfile(PROFILE_ELECTRICAL),
    ]);

    const puts = server.summary().filter((s) => s.startsWith("PUT"));
    expect(puts).toHaveLength(1);
    expect([a.saved, b.saved].sort()).toEqual([false, true]);
  });

  it("server-side 400 surfaces field errors without touching recommendations", async () => {
    const server = new MockServer();
    const session = await authedSession(server);
    server.on(
      "PUT",
      "/api/users/u1/profile",
      { detail: [{ field: "short_goal", message: "unknown goal id 99" }] },
      400,
    );

    const result = await session.saveProfile({ ...PROFILE_ELECTRICAL, short_goal: 99 });

    expect(result.saved).toBe(false);
    expect(result.errors).toEqual([{ field: "short_goal", message: "unknown goal id 99" }]);
    expect(session.recommendations).toBeNull();
  });
});

describe("discipline switch", () => {
  it("repopulates the list with matching-discipline courses only", async () => {
    const server = new MockServer();
    const session = await authedSession(server);
    server
      .on("PUT", "/api/users/u1/profile", {
        profile: { user_id: "u1", ...PROFILE_MECHANICAL },
        store_revision: 7,
      })
      .on("GET", "/api/users/u1/recommendations", RECS_MECHANICAL);
    await session.saveProfile({ ...PROFILE_MECHANICAL, long_goal: 3 });
    expect(session.recommendations).toEqual(RECS_MECHANICAL);

    // switch mechanical -> electrical: list is replaced wholesale
    const electric = new MockServer();
    const swapped = await authedSession(electric);
    electric
      .on("PUT", "/api/users/u1/profile", {
        profile: { user_id: "u1", ...PROFILE_ELECTRICAL },
        store_revision: 8,
      })
      .on("GET", "/api/users/u1/recommendations", RECS_ELECTRICAL);
    await swapped.saveProfile(PROFILE_ELECTRICAL);

    const disciplines = swapped.recommendations!.items.map(
      (i) => COURSES[i.course_id].discipline,
    );
    expect(disciplines.every((d) => d === "electrical" || d === "both")).toBe(true);
    expect(disciplines).not.toEqual(
      RECS_MECHANICAL.items.map((i) => COURSES[i.course_id].discipline),
    );
  });
});

describe("create flow", () => {
  it("local validation blocks the POST", async () => {
    const server = new MockServer();
    const session = new Session(new Api(server.fetch));
    const result = await session.create({
      ...PROFILE_MECHANICAL,
      personal_interests: [],
    });
    expect(result.saved).toBe(false);
    expect(result.errors[0].field).toBe("personal_interests");
    expect(server.calls).toHaveLength(0);
  });

  it("503 before training propagates as ApiError with status", async () => {
    const server = new MockServer();
    const session = await authedSession(server);
    server.on("GET", "/api/users/u1/recommendations", { detail: "no trained model" }, 503);
    await expect(session.refreshRecommendations()).rejects.toSatisfy(
      (e: unknown) => e instanceof ApiError && e.status === 503,
    );
  });
});

describe("recorded call bodies", () => {
  it("PUT body is the profile verbatim", async () => {
    const server = new MockServer();
    const session = await authedSession(server);
    server
      .on("PUT", "/api/users/u1/profile", {
        profile: { user_id: "u1", ...PROFILE_ELECTRICAL },
        store_revision: 8,
      })
      .on("GET", "/api/users/u1/recommendations", RECS_ELECTRICAL);
    await session.saveProfile(PROFILE_ELECTRICAL);
    const put = server.calls.find((c: RecordedCall) => c.method === "PUT")!;
    expect(put.body).toEqual(PROFILE_ELECTRICAL);
  });
});
