"""Operator CLI: data generation, training, extraction, ingestion, serving.

Exit codes: 0 success, 1 domain error, 2 usage error.
"""
from __future__ import annotations

import os
import sys
from pathlib import Path

import click

from . import keyphrase, mlp, synth, wrapper
from .engine import Engine
from .model import (
    DomainError,
    Vocabulary,
    load_builtin_tables,
    load_survey_file,
    survey_record_to_line,
)
from .store import Store


def _tables():
    return load_builtin_tables()


def _fail(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(1)


def _parse_hidden(spec: str) -> tuple[int, ...]:
    try:
        sizes = tuple(int(p) for p in spec.replace("-", ",").split(",") if p)
    except ValueError:
        raise click.BadParameter(f"bad hidden layer spec {spec!r}")
    if not sizes or any(s < 1 for s in sizes):
        raise click.BadParameter(f"bad hidden layer spec {spec!r}")
    return sizes


@click.group()
def main() -> None:
    """Course recommendation engine."""


@main.command("gen-data")
@click.option("--seed", type=int, default=42, show_default=True)
@click.option("--train", "n_train", type=int, default=250, show_default=True)
@click.option("--test", "n_test", type=int, default=58, show_default=True)
@click.option("--out", type=click.Path(path_type=Path), required=True)
def gen_data(seed: int, n_train: int, n_test: int, out: Path) -> None:
    """Generate synthetic survey data (train.tsv / test.tsv under OUT)."""
    if n_train < 1 or n_test < 1:
        raise click.BadParameter("--train and --test must be >= 1")
    tables = _tables()
    records = synth.generate_survey(n_train + n_test, seed, tables)
    out.mkdir(parents=True, exist_ok=True)
    for name, chunk in (("train.tsv", records[:n_train]), ("test.tsv", records[n_train:])):
        (out / name).write_text(
            "".join(survey_record_to_line(r) + "\n" for r in chunk), encoding="utf-8"
        )
    click.echo(f"wrote {n_train} train and {n_test} test records to {out}")


@main.command()
@click.option("--data", type=click.Path(exists=True, path_type=Path), required=True,
              help="Training TSV (one survey record per line).")
@click.option("--test-data", type=click.Path(exists=True, path_type=Path), default=None)
@click.option("--hidden", default="32", show_default=True)
@click.option("--epochs", type=int, default=400, show_default=True)
@click.option("--lr", type=float, default=0.2, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(path_type=Path), required=True)
def train(data: Path, test_data: Path | None, hidden: str, epochs: int, lr: float,
          seed: int, out: Path) -> None:
    """Train the ranking network and write a checkpoint."""
    if epochs < 1:
        raise click.BadParameter("--epochs must be >= 1")
    if lr <= 0:
        raise click.BadParameter("--lr must be > 0")
    tables = _tables()
    cfg = mlp.TrainConfig(hidden_layers=_parse_hidden(hidden), epochs=epochs,
                          learning_rate=lr, seed=seed)
    try:
        records = load_survey_file(data)
        model = mlp.train(records, cfg, tables)
        report = mlp.evaluate(model, load_survey_file(test_data) if test_data else records, tables)
    except DomainError as e:
        _fail(str(e))
    model.save(out)
    which = "test" if test_data else "train"
    click.echo(
        f"checkpoint {out}  {which}-rms {report.rms_error:.4f}  "
        f"tol1-accuracy {report.tolerance1_accuracy:.4f}  n {report.n_test}"
    )


@main.command()
@click.option("--data", type=click.Path(exists=True, path_type=Path), required=True)
@click.option("--test-data", type=click.Path(exists=True, path_type=Path), required=True)
@click.option("--configs", default="32,40,32-16", show_default=True,
              help="Semicolon- or comma-separated hidden layouts; '-' stacks layers.")
@click.option("--epochs", type=int, default=400, show_default=True)
@click.option("--lr", type=float, default=0.2, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
def sweep(data: Path, test_data: Path, configs: str, epochs: int, lr: float, seed: int) -> None:
    """Train and evaluate several hidden-layer configurations on one split."""
    tables = _tables()
    cfgs = [
        mlp.TrainConfig(hidden_layers=_parse_hidden(part), epochs=epochs,
                        learning_rate=lr, seed=seed)
        for part in configs.replace(";", ",").split(",") if part
    ]
    if len(cfgs) < 2:
        raise click.BadParameter("--configs needs at least 2 entries")
    try:
        results = mlp.config_sweep(
            load_survey_file(data), load_survey_file(test_data), cfgs, tables
        )
    except DomainError as e:
        _fail(str(e))
    click.echo(f"{'config':<12}{'rms':<10}{'tol1-accuracy':<15}n")
    for cfg, report in results:
        name = "-".join(map(str, cfg.hidden_layers))
        click.echo(
            f"{name:<12}{report.rms_error:<10.4f}{report.tolerance1_accuracy:<15.4f}{report.n_test}"
        )


@main.command("extract-keywords")
@click.option("--doc", type=click.Path(exists=True, path_type=Path), required=True)
@click.option("--vocab", type=click.Path(exists=True, path_type=Path), default=None,
              help="Vocabulary TSV; defaults to the packaged one.")
@click.option("--nb-model", type=click.Path(exists=True, path_type=Path), default=None,
              help="NB checkpoint; defaults to the packaged training corpus model.")
@click.option("--corpus", type=click.Path(exists=True, path_type=Path), default=None,
              help="Directory of .txt documents for df/N stats; defaults to packaged corpus.")
def extract_keywords_cmd(doc: Path, vocab: Path | None, nb_model: Path | None,
                         corpus: Path | None) -> None:
    """Extract up to 3 controlled keywords from a document."""
    from .model import builtin_data_path

    try:
        vocabulary = Vocabulary.load(vocab) if vocab else _tables().vocabulary
        corpus_dir = Path(corpus) if corpus else builtin_data_path("nbtrain")
        docs = [p.read_text(encoding="utf-8") for p in sorted(corpus_dir.glob("*.txt"))]
        stats = keyphrase.build_corpus_stats(docs, vocabulary)
        model = (keyphrase.NbModel.load(nb_model) if nb_model
                 else keyphrase.train_nb_from_dir(corpus_dir, vocabulary))
        ids = keyphrase.extract_keywords(
            doc.read_text(encoding="utf-8"), vocabulary, stats, model
        )
    except DomainError as e:
        _fail(str(e))
    for kid in ids:
        click.echo(f"{kid}\t{vocabulary.get(kid).term}")


@main.command("learn-rules")
@click.option("--corpus", type=click.Path(exists=True, path_type=Path), required=True,
              help="A provider directory (pages/ + examples.tsv).")
def learn_rules_cmd(corpus: Path) -> None:
    """Learn prefix/suffix extraction rules from a provider's labeled pages."""
    try:
        rules = wrapper.learn_rules(wrapper.load_corpus_examples(corpus))
    except (DomainError, OSError) as e:
        _fail(str(e))
    for r in rules:
        click.echo(f"{r.field}\tprefix={r.prefix!r}\tsuffix={r.suffix!r}")


@main.command()
@click.option("--corpus", type=click.Path(exists=True, path_type=Path), required=True,
              help="Corpus root: one provider directory per template.")
@click.option("--data-dir", type=click.Path(path_type=Path), required=True)
def ingest(corpus: Path, data_dir: Path) -> None:
    """Extract courses from a page corpus and integrate them into the store."""
    tables = _tables()
    engine = Engine(Store(data_dir, tables))
    try:
        report = engine.ingest_corpus(corpus)
    except DomainError as e:
        _fail(str(e))
    click.echo(f"added {report.added}  updated {report.updated}  skipped {report.skipped}")


@main.command()
@click.option("--user", required=True)
@click.option("--data-dir", type=click.Path(exists=True, path_type=Path), required=True)
@click.option("--model", type=click.Path(exists=True, path_type=Path), required=True)
@click.option("--limit", type=int, default=10, show_default=True)
def recommend(user: str, data_dir: Path, model: Path, limit: int) -> None:
    """Print the ranked course list for a stored user."""
    tables = _tables()
    engine = Engine(Store(data_dir, tables), model=mlp.MlpModel.load(model))
    try:
        rec = engine.recommend(user, limit)
    except DomainError as e:
        _fail(str(e))
    click.echo(f"user {rec.user_id}  store-rev {rec.store_revision}  model-rev {rec.model_revision}")
    for item in rec.items:
        course = engine.store.get_course(item.course_id)
        click.echo(
            f"rank {item.predicted_rank}  score {item.score:.6f}  "
            f"{course.provider} :: {course.title}"
        )


@main.command()
@click.option("--data-dir", type=click.Path(path_type=Path),
              default=None, help="Defaults to $COURSEREC_DATA_DIR or ./data.")
@click.option("--port", type=int, default=None, help="Defaults to $COURSEREC_PORT or 8000.")
@click.option("--admin-secret", required=True)
@click.option("--model", type=click.Path(exists=True, path_type=Path), default=None)
@click.option("--static-dir", type=click.Path(path_type=Path), default=None,
              help="Optional directory of built web UI assets.")
def serve(data_dir: Path | None, port: int | None, admin_secret: str,
          model: Path | None, static_dir: Path | None) -> None:
    """Run the HTTP service."""
    import uvicorn

    from .service import create_app

    data_dir = data_dir or Path(os.environ.get("COURSEREC_DATA_DIR", "data"))
    port = port or int(os.environ.get("COURSEREC_PORT", "8000"))
    app = create_app(data_dir, admin_secret, model_path=model, static_dir=static_dir)
    uvicorn.run(app, host="127.0.0.1", port=port)


if __name__ == "__main__":
    main()
