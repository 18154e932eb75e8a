// DOM wiring: reads form inputs, delegates to Session/Api, and writes the
// HTML produced by the render helpers. Kept as thin as possible; everything
// with behavior worth testing lives in api.ts, state.ts and render.ts.

import { Api, ApiError } from "./api.js";
import {
  renderCourseDetail,
  renderFieldErrors,
  renderIngestReport,
  renderRecommendations,
  renderSearchResults,
  renderTrainReport,
} from "./render.js";
import { Session } from "./state.js";
import type { MetaTables, ProfileBody } from "./types.js";

const api = new Api((url, init) => fetch(url, init));
const session = new Session(api);
let tables: MetaTables;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (node === null) throw new Error(`missing element #${id}`);
  return node as T;
}

function fillSelect(select: HTMLSelectElement, options: { value: string; label: string }[]) {
  select.innerHTML = options
    .map((o) => `<option value="${o.value}">${o.label}</option>`)
    .join("");
}

function selectedNumbers(select: HTMLSelectElement): number[] {
  return Array.from(select.selectedOptions).map((o) => Number(o.value));
}

function readProfileForm(): ProfileBody {
  return {
    discipline: el<HTMLSelectElement>("discipline").value as "electrical" | "mechanical",
    professional_interests: selectedNumbers(el<HTMLSelectElement>("professional-interests")),
    personal_interests: selectedNumbers(el<HTMLSelectElement>("personal-interests")),
    experience: Number(el<HTMLSelectElement>("experience").value),
    short_goal: Number(el<HTMLSelectElement>("short-goal").value),
    long_goal: Number(el<HTMLSelectElement>("long-goal").value),
  };
}

function showRecommendations() {
  el("recommendations").innerHTML = renderRecommendations(session.recommendations);
}

async function onSave() {
  const body = readProfileForm();
  const result = session.authenticated
    ? await session.saveProfile(body)
    : await session.create(body);
  el("profile-errors").innerHTML = renderFieldErrors(result.errors);
  if (result.saved && session.authenticated && session.recommendations === null) {
    try {
      await session.refreshRecommendations();
    } catch (e) {
      if (!(e instanceof ApiError && e.status === 503)) throw e;
      el("recommendations").innerHTML =
        `<p class="empty">Recommendations unavailable: ${e.message}</p>`;
      return;
    }
  }
  showRecommendations();
}

async function onSearch() {
  const q = el<HTMLInputElement>("search-box").value.trim();
  if (q === "") return;
  const discipline = el<HTMLSelectElement>("search-discipline").value;
  const res = await api.search(q, discipline);
  el("search-results").innerHTML = renderSearchResults(res.results);
}

async function showCourse(courseId: string) {
  const course = await api.course(courseId);
  el("course-detail").innerHTML = renderCourseDetail(course, tables);
}

async function onIngest() {
  const secret = el<HTMLInputElement>("admin-secret").value;
  const dir = el<HTMLInputElement>("corpus-dir").value;
  try {
    el("admin-output").innerHTML = renderIngestReport(await api.adminIngest(secret, dir));
  } catch (e) {
    el("admin-output").textContent = `Ingest failed: ${(e as Error).message}`;
  }
}

async function onTrain() {
  const secret = el<HTMLInputElement>("admin-secret").value;
  try {
    el("admin-output").innerHTML = renderTrainReport(await api.adminTrain(secret, {}));
  } catch (e) {
    el("admin-output").textContent = `Training failed: ${(e as Error).message}`;
  }
}

async function init() {
  tables = await api.metaTables();
  fillSelect(
    el("discipline"),
    tables.disciplines.map((d) => ({ value: d, label: d })),
  );
  fillSelect(
    el("professional-interests"),
    tables.vocabulary.map((v) => ({ value: String(v.id), label: v.term })),
  );
  fillSelect(
    el("personal-interests"),
    tables.personal_interests.map((t) => ({ value: String(t.id), label: t.label })),
  );
  fillSelect(
    el("experience"),
    tables.experience_levels.map((t) => ({ value: String(t.id), label: t.label })),
  );
  for (const id of ["short-goal", "long-goal"]) {
    fillSelect(
      el(id),
      tables.goals.map((t) => ({ value: String(t.id), label: t.label })),
    );
  }
  fillSelect(
    el("search-discipline"),
    tables.disciplines.map((d) => ({ value: d, label: d })),
  );

  el("save-profile").addEventListener("click", () => void onSave());
  el("search-go").addEventListener("click", () => void onSearch());
  el("admin-ingest").addEventListener("click", () => void onIngest());
  el("admin-train").addEventListener("click", () => void onTrain());
  document.addEventListener("click", (ev) => {
    const a = (ev.target as HTMLElement).closest("a[href^='#course/']");
    if (a !== null) {
      ev.preventDefault();
      void showCourse(a.getAttribute("href")!.slice("#course/".length));
    }
  });
}

void init();
