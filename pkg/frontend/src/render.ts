// Pure HTML builders: data in, markup string out. They never reorder or
// filter — the server's ordering is the displayed ordering.

import type {
  Course,
  FieldError,
  IngestReport,
  MetaTables,
  RecommendationResponse,
  SearchResult,
  TrainReport,
} from "./types.js";

export function escapeHtml(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function renderRecommendations(rec: RecommendationResponse | null): string {
  if (rec === null) {
    return `<p class="empty">No recommendations yet — save your profile first.</p>`;
  }
  if (rec.items.length === 0) {
    return `<p class="empty">No matching courses for your interests yet.</p>`;
  }
  const rows = rec.items
    .map(
      (i) =>
        `<li class="rec" data-course-id="${escapeHtml(i.course_id)}">` +
        `<span class="rank-badge">rank ${i.predicted_rank}</span> ` +
        `<a href="#course/${escapeHtml(i.course_id)}">${escapeHtml(i.title)}</a> ` +
        `<span class="provider">${escapeHtml(i.provider)}</span></li>`,
    )
    .join("\n");
  return (
    `<ol class="recommendations" data-store-revision="${rec.store_revision}" ` +
    `data-model-revision="${rec.model_revision}">\n${rows}\n</ol>`
  );
}

export function renderSearchResults(results: SearchResult[]): string {
  if (results.length === 0) {
    return `<p class="empty">No courses matched your search.</p>`;
  }
  const rows = results
    .map(
      (r) =>
        `<li class="hit" data-course-id="${escapeHtml(r.course_id)}">` +
        `<a href="#course/${escapeHtml(r.course_id)}">${escapeHtml(r.title)}</a> ` +
        `<span class="provider">${escapeHtml(r.provider)}</span> ` +
        `<span class="discipline">${escapeHtml(r.discipline)}</span></li>`,
    )
    .join("\n");
  return `<ul class="search-results">\n${rows}\n</ul>`;
}

export function renderCourseDetail(course: Course, tables: MetaTables): string {
  const terms = course.keywords
    .map((k) => tables.vocabulary.find((v) => v.id === k)?.term ?? String(k))
    .map(escapeHtml);
  return (
    `<article class="course-detail">` +
    `<h2>${escapeHtml(course.title)}</h2>` +
    `<p class="provider">Provider: ${escapeHtml(course.provider)}</p>` +
    `<p class="discipline">Discipline: ${escapeHtml(course.discipline)}</p>` +
    `<p class="keywords">Keywords: ${terms.join(", ")}</p>` +
    `<p class="description">${escapeHtml(course.description)}</p>` +
    `</article>`
  );
}

export function renderFieldErrors(errors: FieldError[]): string {
  if (errors.length === 0) return "";
  return errors
    .map(
      (e) =>
        `<p class="field-error" data-field="${escapeHtml(e.field)}">` +
        `${escapeHtml(e.message)}</p>`,
    )
    .join("\n");
}

export function renderIngestReport(report: IngestReport): string {
  return (
    `<p class="ingest-report">Ingested: ${report.added} added, ` +
    `${report.updated} updated, ${report.skipped} skipped ` +
    `(store revision ${report.store_revision})</p>`
  );
}

export function renderTrainReport(report: TrainReport): string {
  return (
    `<p class="train-report">Model revision ${report.model_revision}: ` +
    `RMS ${report.rms_error.toFixed(3)}, ` +
    `tolerance-1 accuracy ${(report.tolerance1_accuracy * 100).toFixed(1)}% ` +
    `on ${report.n_test} test records</p>`
  );
}
