import numpy as np
import pytest

from courserec.model import Course, Discipline, Experience, UserProfile, ValidationError
from courserec.store import ConflictError, NotFoundError, SnapshotError, Store


def profile(user_id="", **overrides):
    kw = dict(
        user_id=user_id,
        discipline=Discipline.ELECTRICAL,
        professional_interests=(1, 2),
        personal_interests=(1, 2, 3),
        experience=Experience.JUNIOR,
        short_goal=1,
        long_goal=2,
    )
    kw.update(overrides)
    return UserProfile(**kw)


def course(provider="prov", title="Course", **overrides):
    kw = dict(
        course_id="",
        provider=provider,
        title=title,
        description="about pumps",
        discipline=Discipline.MECHANICAL,
        keywords=(86,),
    )
    kw.update(overrides)
    return Course(**kw)


@pytest.fixture
def store(tmp_path, tables):
    return Store(tmp_path / "data", tables)


class TestUsers:
    def test_round_trip(self, store):
        uid = store.upsert_user(profile())
        assert store.get_user(uid).professional_interests == (1, 2)

    def test_unknown_goal_names_field(self, store):
        with pytest.raises(ValidationError) as e:
            store.upsert_user(profile(short_goal=99))
        assert e.value.field_name == "short_goal"

    def test_revision_monotonic(self, store):
        r0 = store.revision
        store.upsert_user(profile())
        r1 = store.revision
        store.upsert_user(profile())
        assert (r1, store.revision) == (r0 + 1, r0 + 2)

    def test_survives_reload(self, store, tables):
        uid = store.upsert_user(profile())
        reloaded = Store(store.data_dir, tables)
        assert reloaded.get_user(uid) == store.get_user(uid)
        assert reloaded.revision == store.revision


class TestCourses:
    def test_insert_then_get(self, store):
        c = store.insert_course(course())
        assert store.get_course(c.course_id) == c

    def test_duplicate_key_conflict(self, store):
        store.insert_course(course())
        with pytest.raises(ConflictError):
            store.insert_course(course())

    def test_upsert_same_key_updates(self, store):
        c1 = store.insert_course(course())
        c2 = store.upsert_course(course(description="new text"))
        assert c2.course_id == c1.course_id
        assert store.get_course(c1.course_id).description == "new text"

    def test_delete_then_absent(self, store):
        c = store.insert_course(course())
        store.delete_course(c.course_id)
        with pytest.raises(NotFoundError):
            store.get_course(c.course_id)

    def test_invalid_keyword_rejected(self, store):
        with pytest.raises(ValidationError):
            store.insert_course(course(keywords=(999,)))


class TestSnapshot:
    def seed(self, store):
        store.upsert_user(profile())
        store.insert_course(course())
        store.insert_course(course(title="Other"))

    def test_round_trip_bitwise(self, store, tmp_path, tables):
        self.seed(store)
        snap1 = tmp_path / "s1.snap"
        store.snapshot(snap1)
        other = Store(tmp_path / "other", tables)
        other.restore(snap1)
        snap2 = tmp_path / "s2.snap"
        other.snapshot(snap2)
        assert snap1.read_bytes() == snap2.read_bytes()
        assert other.list_courses() == store.list_courses()
        assert other.list_users() == store.list_users()

    def test_truncated_snapshot_rejected_store_unchanged(self, store, tmp_path):
        self.seed(store)
        snap = tmp_path / "s.snap"
        store.snapshot(snap)
        snap.write_bytes(snap.read_bytes()[:-20])
        before = (store.list_users(), store.list_courses(), store.revision)
        with pytest.raises(SnapshotError):
            store.restore(snap)
        assert (store.list_users(), store.list_courses(), store.revision) == before

    def test_snapshot_deterministic(self, store, tmp_path):
        self.seed(store)
        a, b = tmp_path / "a.snap", tmp_path / "b.snap"
        store.snapshot(a)
        store.snapshot(b)
        assert a.read_bytes() == b.read_bytes()


class TestBatch:
    def test_failed_batch_rolls_back(self, store):
        store.insert_course(course())

        def bad(s):
            s.insert_course(course(title="New"))
            raise RuntimeError("boom")

        with pytest.raises(RuntimeError):
            store.batch(bad)
        assert len(store.list_courses()) == 1


class TestRandomizedIntegrity:
    def test_1000_operations_keep_integrity(self, store):
        rng = np.random.default_rng(2024)
        user_ids, course_ids = [], []
        revisions = []
        for i in range(1000):
            op = rng.integers(0, 4)
            if op == 0:
                user_ids.append(
                    store.upsert_user(
                        profile(
                            professional_interests=tuple(
                                sorted(
                                    int(x)
                                    for x in rng.choice(
                                        np.arange(1, 234), size=int(rng.integers(1, 6)),
                                        replace=False,
                                    )
                                )
                            ),
                            short_goal=int(rng.integers(1, 9)),
                        )
                    )
                )
            elif op == 1:
                c = store.upsert_course(
                    course(title=f"Course {int(rng.integers(0, 40))}")
                )
                course_ids.append(c.course_id)
            elif op == 2 and course_ids:
                cid = course_ids[int(rng.integers(0, len(course_ids)))]
                try:
                    store.delete_course(cid)
                except NotFoundError:
                    continue
            elif op == 3 and user_ids:
                uid = user_ids[int(rng.integers(0, len(user_ids)))]
                store.upsert_user(profile(user_id=uid, long_goal=int(rng.integers(1, 9))))
            else:
                continue
            store.validate_integrity()
            revisions.append(store.revision)
        assert revisions == sorted(set(revisions))
