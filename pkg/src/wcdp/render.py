"""Stable text and JSON-lines rendering of analyses and search results."""

from __future__ import annotations

import json

from .disambiguator import Analysis, DiagnosisReport
from .model import SEM, SYN, Sentence
from .oracle import ScoredAssignment, Violation


def _violation_dict(v: Violation) -> dict:
    return {
        "constraint": v.constraint_id,
        "pf": v.pf,
        "candidates": [str(x) for x in v.candidates],
    }


def analysis_record(sentence: Sentence, analysis: Analysis,
                    trace: list[str] | None = None,
                    diagnosis: DiagnosisReport | None = None) -> dict:
    words = []
    for token in sentence.tokens:
        syn = analysis.relation_for(token.position, SYN)
        sem = analysis.relation_for(token.position, SEM)
        words.append({
            "position": token.position,
            "form": token.form,
            "syn_label": syn.label,
            "syn_head": syn.dom,
            "sem_label": sem.label,
            "sem_head": sem.dom,
        })
    record = {
        "sentence": " ".join(sentence.forms),
        "words": words,
        "score": analysis.score,
        "violations": [_violation_dict(v) for v in analysis.violations],
    }
    if trace is not None:
        record["trace"] = list(trace)
    if diagnosis is not None:
        record["diagnosis"] = {
            "expectation_violations": [
                f"{layer}:{pos}" for pos, layer
                in diagnosis.expectation_violations
            ],
        }
    return record


def assignment_record(sentence: Sentence, scored: ScoredAssignment,
                      rank: int) -> dict:
    words = []
    for token in sentence.tokens:
        syn = scored.relation_for(token.position, SYN)
        sem = scored.relation_for(token.position, SEM)
        words.append({
            "position": token.position,
            "form": token.form,
            "syn_label": syn.label,
            "syn_head": syn.dom,
            "sem_label": sem.label,
            "sem_head": sem.dom,
        })
    return {
        "sentence": " ".join(sentence.forms),
        "rank": rank,
        "words": words,
        "score": scored.score,
        "violations": [_violation_dict(v) for v in scored.violations],
    }


def to_json_line(record: dict) -> str:
    return json.dumps(record, ensure_ascii=False, sort_keys=False)


def to_text(record: dict) -> str:
    lines = [f"sentence: {record['sentence']}"]
    if "rank" in record:
        lines.append(f"rank: {record['rank']}")
    for word in record["words"]:
        lines.append(
            f"  {word['position']:>2} {word['form']:<12} "
            f"syn {word['syn_label']}->{word['syn_head']}  "
            f"sem {word['sem_label']}->{word['sem_head']}")
    lines.append(f"score: {record['score']!r}")
    if record["violations"]:
        for v in record["violations"]:
            involved = " ".join(v["candidates"])
            lines.append(f"violated: {v['constraint']} pf={v['pf']} ({involved})")
    else:
        lines.append("violated: none")
    if "diagnosis" in record:
        flagged = record["diagnosis"]["expectation_violations"]
        lines.append("expectation-violations: "
                     + (" ".join(flagged) if flagged else "none"))
    if "trace" in record:
        lines.extend(f"trace: {event}" for event in record["trace"])
    return "\n".join(lines)
