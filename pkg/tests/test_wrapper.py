import json

import pytest

from courserec.wrapper import (
    ExtractionRule,
    LabeledExample,
    RuleLearningError,
    apply_rules,
    extract_corpus,
    learn_rule,
    learn_rules,
    load_corpus_examples,
    strip_markup,
)

PAGE = (
    b"<html><body>\n<h1>Course detail</h1>\n"
    b"<h2>Pump Maintenance</h2>\n"
    b"<p>Three day practical course on pump upkeep.</p>\n"
    b"</body></html>\n"
)


class TestLearnRule:
    def test_h2_wrapped_target(self):
        ex = LabeledExample(page=PAGE, targets={"title": "Pump Maintenance"})
        rule = learn_rule("title", [ex])
        # hand-traced: shortest anchored delimiters snap to whole tags
        assert rule.prefix == b"<h2>"
        assert rule.suffix == b"</h2>"

    def test_identical_templates_idempotent(self):
        page2 = PAGE.replace(b"Pump Maintenance", b"Relay Protection").replace(
            b"pump upkeep", b"relay settings"
        )
        one = learn_rule("title", [LabeledExample(PAGE, {"title": "Pump Maintenance"})])
        both = learn_rule(
            "title",
            [
                LabeledExample(PAGE, {"title": "Pump Maintenance"}),
                LabeledExample(page2, {"title": "Relay Protection"}),
            ],
        )
        assert one == both

    def test_target_at_page_start_underdetermined(self):
        page = b"Pump Maintenance</h2><p>rest</p>"
        with pytest.raises(RuleLearningError):
            learn_rule("title", [LabeledExample(page, {"title": "Pump Maintenance"})])

    def test_missing_target_errors(self):
        with pytest.raises(RuleLearningError):
            learn_rule("title", [LabeledExample(PAGE, {"title": "Not There"})])

    def test_ambiguous_template_errors(self):
        # two occurrences with byte-identical 64+ byte contexts: no rule can
        # single out the labeled one
        block = b"X" * 70 + b"<i>aaa</i>" + b"Y" * 70
        with pytest.raises(RuleLearningError):
            learn_rule("title", [LabeledExample(block + block, {"title": "aaa"})])


class TestApplyRules:
    def rules(self):
        return [
            ExtractionRule("title", b"<h2>", b"</h2>"),
            ExtractionRule("description", b"<p>", b"</p>"),
        ]

    def test_training_page_round_trip(self):
        records = apply_rules(self.rules(), PAGE, "http://x", default_provider="prov")
        assert len(records) == 1
        assert records[0].title == "Pump Maintenance"
        assert records[0].description == "Three day practical course on pump upkeep."

    def test_three_blocks_in_document_order(self):
        page = b"".join(
            b"<h2>Course %d</h2><p>About %d</p>" % (i, i) for i in (1, 2, 3)
        )
        records = apply_rules(self.rules(), page, "u", default_provider="p")
        assert [r.title for r in records] == ["Course 1", "Course 2", "Course 3"]
        assert [r.description for r in records] == ["About 1", "About 2", "About 3"]

    def test_unrelated_page_empty(self):
        assert apply_rules(self.rules(), b"<div>nothing here</div>", "u") == []

    def test_missing_suffix_warns_and_skips(self):
        warnings = []
        records = apply_rules(
            self.rules(), b"<h2>Title only, no closing tag", "u", warnings=warnings
        )
        assert records == []
        assert any("title" in w for w in warnings)

    def test_markup_stripped_from_capture(self):
        page = b"<h2>Pump <em>Care</em></h2><p>d</p>"
        records = apply_rules(self.rules(), page, "u")
        assert records[0].title == "Pump Care"

    def test_field_before_title_joins_next_record(self):
        rules = [
            ExtractionRule("provider", b"<b>", b"</b>"),
            ExtractionRule("title", b"<h2>", b"</h2>"),
        ]
        page = b"<b>Acme</b><h2>Course A</h2>"
        records = apply_rules(rules, page, "u")
        assert records[0].provider == "Acme"


class TestStripMarkup:
    def test_tags_and_whitespace(self):
        assert strip_markup(b"  <b>Pump</b>\n  <i>Care</i> ") == "Pump Care"


class TestFixtureCorpus:
    def test_rule_round_trip_on_training_pages(self, corpus_dir):
        for provider_dir in sorted(p for p in corpus_dir.iterdir() if p.is_dir()):
            examples = load_corpus_examples(provider_dir)
            rules = learn_rules(examples)
            for ex in examples:
                records = apply_rules(rules, ex.page, "u", default_provider=provider_dir.name)
                assert len(records) == 1
                rec = records[0]
                for fieldname, target in ex.targets.items():
                    assert getattr(rec, fieldname) == strip_markup(target.encode())

    def test_100_percent_precision_and_recall(self, corpus_dir, ground_truth_path):
        expected = [json.loads(l) for l in ground_truth_path.read_text().splitlines()]
        got = [
            {
                "provider": r.provider,
                "title": r.title,
                "description": r.description,
                "source_url": r.source_url,
            }
            for r in extract_corpus(corpus_dir)
        ]
        assert got == expected
