import { describe, expect, it } from "vitest";

import {
  escapeHtml,
  renderCourseDetail,
  renderFieldErrors,
  renderRecommendations,
  renderSearchResults,
} from "../src/render.js";
import type { MetaTables } from "../src/types.js";
import { COURSES, RECS_MECHANICAL, SEARCH_PUMP } from "./fixtures.js";

function courseIdsInOrder(html: string): string[] {
  return [...html.matchAll(/data-course-id="([^"]+)"/g)].map((m) => m[1]);
}

describe("renderRecommendations", () => {
  it("displayed ordering is exactly the API ordering", () => {
    const html = renderRecommendations(RECS_MECHANICAL);
    expect(courseIdsInOrder(html)).toEqual(
      RECS_MECHANICAL.items.map((i) => i.course_id),
    );
  });

  it("list is tagged with the revisions it was computed from", () => {
    const html = renderRecommendations(RECS_MECHANICAL);
    expect(html).toContain('data-store-revision="7"');
    expect(html).toContain('data-model-revision="2"');
  });

  it("shows predicted-rank badges", () => {
    const html = renderRecommendations(RECS_MECHANICAL);
    expect(html).toContain("rank 1");
    expect(html).toContain("rank 2");
  });

  it("renders empty states", () => {
    expect(renderRecommendations(null)).toContain("save your profile");
    expect(
      renderRecommendations({ ...RECS_MECHANICAL, items: [] }),
    ).toContain("No matching courses");
  });
});

describe("renderSearchResults", () => {
  it("one fixture hit renders one row", () => {
    const html = renderSearchResults(SEARCH_PUMP.results);
    expect(courseIdsInOrder(html)).toEqual(["c01"]);
    expect(html).toContain("Pump Maintenance Essentials");
  });

  it("empty results show an explicit empty state", () => {
    expect(renderSearchResults([])).toContain("No courses matched");
  });
});

describe("renderCourseDetail", () => {
  const tables: MetaTables = {
    vocabulary: [{ id: 86, term: "pumps", discipline: "mechanical" }],
    goals: [],
    personal_interests: [],
    disciplines: ["electrical", "mechanical"],
    experience_levels: [],
  };

  it("shows provider, keywords and discipline", () => {
    const html = renderCourseDetail(COURSES.c01, tables);
    expect(html).toContain("techtrain");
    expect(html).toContain("pumps");
    expect(html).toContain("mechanical");
  });
});

describe("renderFieldErrors", () => {
  it("tags each message with its field for inline placement", () => {
    const html = renderFieldErrors([
      { field: "short_goal", message: "unknown goal id 99" },
    ]);
    expect(html).toContain('data-field="short_goal"');
    expect(html).toContain("unknown goal id 99");
  });

  it("no errors renders nothing", () => {
    expect(renderFieldErrors([])).toBe("");
  });
});

describe("escapeHtml", () => {
  it("neutralizes markup in server text", () => {
    expect(escapeHtml(`<b>&"x"</b>`)).toBe("&lt;b&gt;&amp;&quot;x&quot;&lt;/b&gt;");
  });
});
