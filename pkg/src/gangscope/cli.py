"""Command-line interface mirroring the service endpoints.

Commands: ingest, analyze, train, cv, score, triage, serve. Global flags
--config (JSON file of defaults), --seed, and --fixtures-dir apply to every
command; explicit flags win over config values.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import analysis
from . import emoji as emj
from .clients import ClientBundle
from .corpus import (LabelLog, UNLABELED, apply_label, ingest_corpus,
                     replay_label_log, serialize_corpus)
from .evaluation import cross_validate, render_report_table
from .features import BLOCKS, MODEL1
from .models import ALGORITHMS, ModelSpec, RANDOM_FOREST
from .pipeline import load_bundle, save_bundle, score_profiles, train_on_corpus

EMOJI_ALIASES = {
    "cop": emj.COP, "pistol": emj.PISTOL, "fuelpump": emj.FUEL_PUMP,
    "hundred": emj.HUNDRED_POINTS, "fire": emj.FIRE, "skull": emj.SKULL,
    "moneybag": emj.MONEY_BAG, "imp": emj.IMP, "joy": emj.FACE_WITH_TEARS_OF_JOY,
}


def _emoji_arg(value: str) -> str:
    return EMOJI_ALIASES.get(value.lower(), value)


def _parse_blocks(value: str) -> tuple[str, ...]:
    blocks = tuple(value.upper())
    unknown = set(blocks) - set(BLOCKS)
    if unknown:
        raise SystemExit(f"unknown blocks: {''.join(sorted(unknown))}")
    return blocks


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    return json.loads(Path(path).read_text(encoding="utf-8"))


def _setting(args, config: dict, key: str, default=None):
    value = getattr(args, key, None)
    if value is not None:
        return value
    return config.get(key, default)


def _clients_for(args, config) -> ClientBundle:
    fixtures_dir = _setting(args, config, "fixtures_dir")
    if fixtures_dir:
        return ClientBundle.from_fixture_dir(fixtures_dir)
    return ClientBundle()


def _corpus_for(args, config, replay_labels: bool = True):
    corpus_path = _setting(args, config, "corpus")
    if not corpus_path:
        raise SystemExit("no corpus file given (--corpus or config)")
    corpus = ingest_corpus(corpus_path, _setting(args, config, "cap_policy", "reject"))
    log_path = _setting(args, config, "label_log")
    if replay_labels and log_path and Path(log_path).exists():
        corpus = replay_label_log(corpus, LabelLog(log_path))
    return corpus


def _spec_for(args, config) -> ModelSpec:
    hyperparams = {}
    raw = _setting(args, config, "hyperparams")
    if raw:
        hyperparams = json.loads(raw) if isinstance(raw, str) else dict(raw)
    return ModelSpec(algorithm=_setting(args, config, "algorithm", RANDOM_FOREST),
                     hyperparams=tuple(sorted(hyperparams.items())),
                     rng_seed=int(_setting(args, config, "seed", 0) or 0))


def cmd_ingest(args, config) -> int:
    corpus = ingest_corpus(args.path, _setting(args, config, "cap_policy", "reject"))
    print(f"profiles: {len(corpus)}")
    for label, count in sorted(corpus.counts.items()):
        print(f"  {label}: {count}")
    if args.canonical_out:
        serialize_corpus(corpus, args.canonical_out)
        print(f"canonical copy written to {args.canonical_out}")
    return 0


def cmd_analyze(args, config) -> int:
    corpus = _corpus_for(args, config)
    clients = _clients_for(args, config)
    stat = args.stat
    if stat == "top_terms":
        rows = analysis.top_terms(corpus, args.class_label, args.block, args.k,
                                  clients)
        print(analysis.term_table_tsv(rows), end="")
    elif stat == "curse_rate":
        print(f"curse_rate\t{analysis.curse_rate(corpus, args.class_label):.6f}")
    elif stat == "emoji_stats":
        stats = analysis.emoji_stats(corpus, args.class_label, args.k)
        print("emoji\tcount\tfraction")
        for token, count, fraction in stats.distribution:
            print(f"{token}\t{count}\t{fraction:.6f}")
        print("\nfirst\tsecond\tcount")
        for (a, b), count in stats.bigrams:
            print(f"{a}\t{b}\t{count}")
    elif stat == "chain_cooccurrence":
        value = analysis.chain_cooccurrence(corpus, args.class_label,
                                            _emoji_arg(args.emoji_a),
                                            _emoji_arg(args.emoji_b))
        print(f"chain_cooccurrence\t{value:.6f}")
    elif stat == "youtube_stats":
        keywords = [kw for kw in args.keywords.split(",") if kw]
        stats = analysis.youtube_stats(corpus, args.class_label, keywords,
                                       clients.video_client)
        for key, value in stats.to_dict().items():
            print(f"{key}\t{value:.6f}")
    else:
        raise SystemExit(f"unknown stat {stat!r}")
    return 0


def cmd_train(args, config) -> int:
    corpus = _corpus_for(args, config)
    clients = _clients_for(args, config)
    spec = _spec_for(args, config)
    bundle = train_on_corpus(corpus, spec, _parse_blocks(args.blocks),
                             args.mode, args.min_df, clients)
    save_bundle(bundle, args.out)
    print(f"trained {spec.algorithm} on blocks {args.blocks} "
          f"({bundle.vocab.total_dim} columns); model written to {args.out}")
    if args.export_vocab:
        bundle.vocab.export(args.export_vocab)
        print(f"vocabulary table written to {args.export_vocab}")
    return 0


def cmd_cv(args, config) -> int:
    corpus = _corpus_for(args, config)
    clients = _clients_for(args, config)
    spec = _spec_for(args, config)
    report = cross_validate(corpus, spec, _parse_blocks(args.blocks), args.mode,
                            args.k, args.min_df,
                            int(_setting(args, config, "seed", 0) or 0), clients)
    print(render_report_table([(args.blocks, report)]), end="")
    if args.out:
        Path(args.out).write_text(report.to_json() + "\n", encoding="utf-8")
        print(f"full report written to {args.out}")
    return 0


def cmd_score(args, config) -> int:
    corpus = _corpus_for(args, config)
    clients = _clients_for(args, config)
    bundle = load_bundle(args.model)
    scored = score_profiles(corpus, bundle, clients=clients,
                            include_labeled=args.include_labeled)
    lines = [json.dumps(s.to_dict(), ensure_ascii=False) for s in scored]
    if args.out:
        Path(args.out).write_text("\n".join(lines) + "\n", encoding="utf-8")
        print(f"{len(scored)} profiles scored; written to {args.out}")
    else:
        print("\n".join(lines))
    return 0


def _load_scores(path: str) -> list[dict]:
    rows = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if line.strip():
            rows.append(json.loads(line))
    rows.sort(key=lambda r: (-r["score"], r["profile_id"]))
    return rows


def cmd_triage(args, config) -> int:
    corpus = _corpus_for(args, config)
    log_path = _setting(args, config, "label_log")
    if args.action == "next":
        for row in _load_scores(args.scores):
            record = corpus.get(row["profile_id"])
            if record is None or record.label != UNLABELED:
                continue
            print(json.dumps({
                "profile_id": row["profile_id"], "score": row["score"],
                "description": record.description,
                "provenance": record.provenance}, ensure_ascii=False))
            return 0
        print("queue empty")
        return 0
    # action == "label"
    if not log_path:
        raise SystemExit("triage label requires --label-log (or config label_log)")
    log = LabelLog(log_path)
    record = corpus[args.profile_id]
    if record.label != UNLABELED and record.label != args.label:
        print(f"conflict: already labeled {record.label}")
        return 1
    apply_label(corpus, args.profile_id, args.label, args.annotator, log=log)
    print(f"labeled {args.profile_id} as {args.label}")
    return 0


def cmd_serve(args, config) -> int:
    import uvicorn

    from .service import AppState, create_app

    state = AppState()
    state.clients = _clients_for(args, config)
    corpus_path = _setting(args, config, "corpus")
    if corpus_path:
        state.corpus = ingest_corpus(corpus_path,
                                     _setting(args, config, "cap_policy", "reject"))
    log_path = _setting(args, config, "label_log")
    if log_path:
        state.label_log = LabelLog(log_path)
        state.corpus = replay_label_log(state.corpus, state.label_log)
    model_path = _setting(args, config, "model")
    if model_path:
        state.bundle = load_bundle(model_path)
    app = create_app(state, token=_setting(args, config, "token"))
    ui_dir = _setting(args, config, "ui_dir")
    if ui_dir:
        from fastapi.staticfiles import StaticFiles
        app.mount("/ui", StaticFiles(directory=ui_dir, html=True), name="ui")
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gangscope",
        description="Corpus curation, analysis, classification, and triage.")
    parser.add_argument("--config", help="JSON file of default settings")
    parser.add_argument("--seed", type=int, help="RNG seed for train/cv")
    parser.add_argument("--fixtures-dir", dest="fixtures_dir",
                        help="directory of client fixture files")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="validate and summarize a corpus file")
    p.add_argument("path")
    p.add_argument("--cap-policy", dest="cap_policy",
                   choices=["reject", "truncate"])
    p.add_argument("--canonical-out", help="write a canonical copy here")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("analyze", help="corpus statistics tables")
    p.add_argument("stat", choices=["top_terms", "curse_rate", "emoji_stats",
                                    "chain_cooccurrence", "youtube_stats"])
    p.add_argument("--corpus")
    p.add_argument("--class-label", dest="class_label", default="gang")
    p.add_argument("--block", default="T", choices=list(BLOCKS))
    p.add_argument("-k", type=int, default=20)
    p.add_argument("--emoji-a", dest="emoji_a", default="cop")
    p.add_argument("--emoji-b", dest="emoji_b", default="pistol")
    p.add_argument("--keywords", default="gangsta,hip-hop")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("train", help="train a model and save the bundle")
    p.add_argument("--corpus")
    p.add_argument("--algorithm", choices=list(ALGORITHMS))
    p.add_argument("--hyperparams", help="JSON object of hyperparameters")
    p.add_argument("--blocks", default="".join(BLOCKS))
    p.add_argument("--mode", default=MODEL1, choices=["model1", "model2"])
    p.add_argument("--min-df", dest="min_df", type=int)
    p.add_argument("--out", required=True)
    p.add_argument("--export-vocab", dest="export_vocab",
                   help="also write the vocabulary as a TSV table")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("cv", help="stratified k-fold cross validation")
    p.add_argument("--corpus")
    p.add_argument("--algorithm", choices=list(ALGORITHMS))
    p.add_argument("--hyperparams", help="JSON object of hyperparameters")
    p.add_argument("--blocks", default="".join(BLOCKS))
    p.add_argument("--mode", default=MODEL1, choices=["model1", "model2"])
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--min-df", dest="min_df", type=int)
    p.add_argument("--out", help="write the full JSON report here")
    p.set_defaults(func=cmd_cv)

    p = sub.add_parser("score", help="batch-score profiles with a saved model")
    p.add_argument("--corpus")
    p.add_argument("--model", required=True)
    p.add_argument("--out")
    p.add_argument("--include-labeled", action="store_true")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("triage", help="review queue over a scores file")
    p.add_argument("action", choices=["next", "label"])
    p.add_argument("profile_id", nargs="?")
    p.add_argument("label", nargs="?", choices=["gang", "nongang", "unsure"])
    p.add_argument("--corpus")
    p.add_argument("--scores", help="scores file from the score command")
    p.add_argument("--label-log", dest="label_log")
    p.add_argument("--annotator", default="cli")
    p.set_defaults(func=cmd_triage)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--corpus")
    p.add_argument("--model")
    p.add_argument("--label-log", dest="label_log")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8800)
    p.add_argument("--token")
    p.add_argument("--ui-dir", dest="ui_dir",
                   help="serve a built browser UI from this directory at /ui")
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    args = build_parser().parse_args(argv)
    config = _load_config(args.config)
    if args.command == "triage" and args.action == "next" and not args.scores:
        raise SystemExit("triage next requires --scores")
    if args.command == "triage" and args.action == "label" and (
            not args.profile_id or not args.label):
        raise SystemExit("triage label requires PROFILE_ID and LABEL")
    return args.func(args, config)


if __name__ == "__main__":
    sys.exit(main())
