"""HTTP facade over the engine: user profiles, search, recommendations, admin."""
from __future__ import annotations

import secrets
import threading
from pathlib import Path

from fastapi import Depends, FastAPI, Header, HTTPException, Query
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from . import mlp, search
from .engine import DEFAULT_DISPLAY, Engine, NoModelError
from .model import (
    Course,
    Discipline,
    Experience,
    Tables,
    UserProfile,
    ValidationError,
    load_builtin_tables,
)
from .store import ConflictError, NotFoundError, Store


class ProfileBody(BaseModel):
    discipline: str
    professional_interests: list[int] = Field(min_length=1, max_length=5)
    personal_interests: list[int]
    experience: int
    short_goal: int
    long_goal: int

    def to_profile(self, user_id: str) -> UserProfile:
        try:
            return UserProfile(
                user_id=user_id,
                discipline=Discipline(self.discipline),
                professional_interests=tuple(self.professional_interests),
                personal_interests=tuple(self.personal_interests),
                experience=Experience(self.experience),
                short_goal=self.short_goal,
                long_goal=self.long_goal,
            )
        except ValueError as e:
            raise HTTPException(status_code=400, detail=[{"field": "profile", "message": str(e)}])


class CourseBody(BaseModel):
    provider: str
    title: str
    description: str = ""
    discipline: str = "both"
    keywords: list[int] = []
    source_url: str | None = None


class TrainBody(BaseModel):
    hidden_layers: list[int] = [32]
    epochs: int = 400
    learning_rate: float = 0.2
    seed: int = 0


class IngestBody(BaseModel):
    corpus_dir: str


def _validation_detail(e: ValidationError) -> list[dict]:
    return [{"field": e.field_name or "", "message": str(e)}]


def create_app(
    data_dir: str | Path,
    admin_secret: str,
    tables: Tables | None = None,
    model_path: str | Path | None = None,
    static_dir: str | Path | None = None,
) -> FastAPI:
    tables = tables or load_builtin_tables()
    store = Store(data_dir, tables)
    engine = Engine(store)
    if model_path is not None:
        engine.load_model(model_path)
    tokens: dict[str, str] = {}  # token -> user_id
    train_lock = threading.Lock()

    app = FastAPI(title="courserec")
    app.state.engine = engine
    app.state.tokens = tokens

    def auth_user(user_id: str, authorization: str = Header(default="")) -> str:
        token = authorization.removeprefix("Bearer ").strip()
        if not token or tokens.get(token) != user_id:
            raise HTTPException(status_code=403, detail="not allowed to access this user")
        return user_id

    def auth_admin(x_admin_secret: str = Header(default="")) -> None:
        if not secrets.compare_digest(x_admin_secret, admin_secret):
            raise HTTPException(status_code=403, detail="bad admin secret")

    def profile_out(p: UserProfile) -> dict:
        return {
            "user_id": p.user_id,
            "discipline": p.discipline.value,
            "professional_interests": list(p.professional_interests),
            "personal_interests": list(p.personal_interests),
            "experience": int(p.experience),
            "short_goal": p.short_goal,
            "long_goal": p.long_goal,
        }

    def course_out(c: Course) -> dict:
        return {
            "course_id": c.course_id,
            "provider": c.provider,
            "title": c.title,
            "description": c.description,
            "discipline": c.discipline.value,
            "keywords": list(c.keywords),
            "source_url": c.source_url,
        }

    @app.get("/api/health")
    def health():
        return {
            "status": "ok",
            "store_revision": store.revision,
            "model_revision": engine.model_revision,
            "courses": len(store.list_courses()),
        }

    @app.get("/api/meta/tables")
    def meta_tables():
        return {
            "vocabulary": [
                {"id": e.id, "term": e.term, "discipline": e.discipline.value}
                for e in tables.vocabulary.entries()
            ],
            "goals": [{"id": i, "label": l} for i, l in tables.goals.items()],
            "personal_interests": [
                {"id": i, "label": l} for i, l in tables.personal_interests.items()
            ],
            "disciplines": ["electrical", "mechanical"],
            "experience_levels": [
                {"id": int(e), "label": e.name.lower()} for e in Experience
            ],
        }

    @app.post("/api/users", status_code=201)
    def create_user(body: ProfileBody):
        profile = body.to_profile(user_id="")
        try:
            user_id = store.upsert_user(profile)
        except ValidationError as e:
            raise HTTPException(status_code=400, detail=_validation_detail(e))
        token = secrets.token_hex(16)
        tokens[token] = user_id
        return {"user_id": user_id, "token": token, "profile": profile_out(store.get_user(user_id))}

    @app.get("/api/users/{user_id}")
    def get_user(user_id: str = Depends(auth_user)):
        try:
            return profile_out(store.get_user(user_id))
        except NotFoundError as e:
            raise HTTPException(status_code=404, detail=str(e))

    @app.put("/api/users/{user_id}/profile")
    def put_profile(body: ProfileBody, user_id: str = Depends(auth_user)):
        try:
            store.get_user(user_id)
            store.upsert_user(body.to_profile(user_id))
        except NotFoundError as e:
            raise HTTPException(status_code=404, detail=str(e))
        except ValidationError as e:
            raise HTTPException(status_code=400, detail=_validation_detail(e))
        return {"profile": profile_out(store.get_user(user_id)), "store_revision": store.revision}

    @app.get("/api/users/{user_id}/recommendations")
    def recommendations(
        limit: int = Query(default=DEFAULT_DISPLAY), user_id: str = Depends(auth_user)
    ):
        try:
            rec = engine.recommend(user_id, limit)
        except NotFoundError as e:
            raise HTTPException(status_code=404, detail=str(e))
        except NoModelError as e:
            raise HTTPException(status_code=503, detail=str(e))
        return {
            "user_id": rec.user_id,
            "items": [
                {
                    "course_id": r.course_id,
                    "provider": store.get_course(r.course_id).provider,
                    "title": store.get_course(r.course_id).title,
                    "predicted_rank": r.predicted_rank,
                    "score": r.score,
                }
                for r in rec.items
            ],
            "store_revision": rec.store_revision,
            "model_revision": rec.model_revision,
        }

    @app.get("/api/courses/search")
    def course_search(
        q: str = Query(min_length=1),
        discipline: str = Query(default="electrical"),
        limit: int = Query(default=20, ge=1, le=100),
    ):
        try:
            disc = Discipline(discipline)
        except ValueError:
            raise HTTPException(
                status_code=400,
                detail=[{"field": "discipline", "message": f"unknown discipline {discipline!r}"}],
            )
        terms = tuple(dict.fromkeys(search.index_tokens(q)))
        if not terms:
            raise HTTPException(
                status_code=400, detail=[{"field": "q", "message": "query has no tokens"}]
            )
        hits = engine.index().search(search.Query(terms=terms, discipline_filter=disc), limit)
        return {
            "results": [
                {**course_out(store.get_course(cid)), "relevance": score}
                for cid, score in hits
            ],
            "store_revision": store.revision,
        }

    @app.get("/api/courses/{course_id}")
    def get_course(course_id: str):
        try:
            return course_out(store.get_course(course_id))
        except NotFoundError as e:
            raise HTTPException(status_code=404, detail=str(e))

    @app.get("/api/courses")
    def list_courses(_: None = Depends(auth_admin)):
        return {"courses": [course_out(c) for c in store.list_courses()]}

    @app.post("/api/admin/courses", status_code=201)
    def add_course(body: CourseBody, _: None = Depends(auth_admin)):
        try:
            course = store.insert_course(
                Course(
                    course_id="",
                    provider=body.provider,
                    title=body.title,
                    description=body.description,
                    discipline=Discipline(body.discipline),
                    keywords=tuple(body.keywords),
                    source_url=body.source_url,
                )
            )
        except ConflictError as e:
            raise HTTPException(status_code=409, detail=str(e))
        except (ValidationError, ValueError) as e:
            raise HTTPException(status_code=400, detail=[{"field": "course", "message": str(e)}])
        return course_out(course)

    @app.post("/api/admin/ingest")
    def ingest(body: IngestBody, _: None = Depends(auth_admin)):
        if not Path(body.corpus_dir).is_dir():
            raise HTTPException(
                status_code=400,
                detail=[{"field": "corpus_dir", "message": f"{body.corpus_dir} is not a directory"}],
            )
        report = engine.ingest_corpus(body.corpus_dir)
        return {
            "added": report.added,
            "updated": report.updated,
            "skipped": report.skipped,
            "store_revision": store.revision,
        }

    @app.post("/api/admin/train")
    def train(body: TrainBody, _: None = Depends(auth_admin)):
        cfg = mlp.TrainConfig(
            hidden_layers=tuple(body.hidden_layers),
            epochs=body.epochs,
            learning_rate=body.learning_rate,
            seed=body.seed,
        )
        if body.epochs < 1:
            raise HTTPException(
                status_code=400, detail=[{"field": "epochs", "message": "epochs must be >= 1"}]
            )
        with train_lock:  # one retraining job at a time; swap is atomic
            try:
                revision, report = engine.train_model(cfg)
            except Exception as e:
                raise HTTPException(status_code=400, detail=[{"field": "train", "message": str(e)}])
        return {
            "model_revision": revision,
            "rms_error": report.rms_error,
            "tolerance1_accuracy": report.tolerance1_accuracy,
            "n_test": report.n_test,
        }

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
