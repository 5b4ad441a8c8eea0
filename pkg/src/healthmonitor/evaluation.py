"""Evaluation metrics: pair precision/recall, classification accuracy, NER F-score.

All ratios are computed in exact rational arithmetic; decimal rendering
rounds half-up to four places. Pair recall is window-relative: it measures
only pairs visible after topic classification, so pairs the classifier
discarded are invisible to it and the true recall is somewhat higher.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction
from typing import Hashable, Iterable, Sequence


@dataclass(frozen=True)
class MetricReport:
    precision: Fraction
    recall: Fraction
    retrieved: int
    relevant: int
    intersection: int

    def render(self, places: int = 4) -> str:
        return (
            f"precision={render_ratio(self.precision, places)} "
            f"recall={render_ratio(self.recall, places)} "
            f"(retrieved={self.retrieved} relevant={self.relevant} intersection={self.intersection})"
        )


def render_ratio(value: Fraction, places: int = 4) -> str:
    quantum = Decimal(1).scaleb(-places)
    return str((Decimal(value.numerator) / Decimal(value.denominator)).quantize(quantum, ROUND_HALF_UP))


def render_percent(value: Fraction, places: int = 1) -> str:
    quantum = Decimal(1).scaleb(-places)
    pct = Decimal(value.numerator) * 100 / Decimal(value.denominator)
    return f"{pct.quantize(quantum, ROUND_HALF_UP)}%"


def _ratio(numerator: int, denominator: int, other_empty: bool) -> Fraction:
    # Convention for an empty denominator set: 1 if the other side is also
    # empty, else 0.
    if denominator == 0:
        return Fraction(1) if other_empty else Fraction(0)
    return Fraction(numerator, denominator)


def pair_precision_recall(retrieved: Iterable[Hashable], relevant: Iterable[Hashable]) -> MetricReport:
    """Set-based precision and recall over (disease, location) pairs."""
    retrieved_set = set(retrieved)
    relevant_set = set(relevant)
    hits = len(retrieved_set & relevant_set)
    return MetricReport(
        precision=_ratio(hits, len(retrieved_set), not relevant_set),
        recall=_ratio(hits, len(relevant_set), not retrieved_set),
        retrieved=len(retrieved_set),
        relevant=len(relevant_set),
        intersection=hits,
    )


def classification_accuracy(predictions: Sequence[str], gold: Sequence[str]) -> Fraction:
    if not predictions or len(predictions) != len(gold):
        raise ValueError(f"need equal non-empty label lists, got {len(predictions)} vs {len(gold)}")
    matches = sum(1 for p, g in zip(predictions, gold) if p == g)
    return Fraction(matches, len(gold))


@dataclass(frozen=True)
class ClassScores:
    precision: Fraction
    recall: Fraction
    f1: Fraction


def _f1(precision: Fraction, recall: Fraction) -> Fraction:
    if precision + recall == 0:
        return Fraction(0)
    return 2 * precision * recall / (precision + recall)


def _parse_dump(dump: str) -> set[tuple[str, int, int, str]]:
    entries = set()
    for lineno, line in enumerate(dump.splitlines(), start=1):
        if not line.strip():
            continue
        fields = line.split("\t")
        if len(fields) != 5:
            raise ValueError(f"annotation dump line {lineno}: need 5 fields")
        sid, start, end, cls, _surface = fields
        entries.add((sid, int(start), int(end), cls))
    return entries


def ner_f_score(predicted_dump: str, gold_dump: str) -> tuple[dict[str, ClassScores], ClassScores]:
    """Exact-span, exact-class matching; per-class scores plus the micro average.

    Classes absent from both dumps are excluded. Predicted entries must not
    reference stories unknown to the gold dump.
    """
    predicted = _parse_dump(predicted_dump)
    gold = _parse_dump(gold_dump)
    gold_story_ids = {e[0] for e in gold}
    unknown = {e[0] for e in predicted} - gold_story_ids
    if unknown:
        raise ValueError(f"predicted dump references unknown story ids: {sorted(unknown)}")

    classes = sorted({e[3] for e in predicted} | {e[3] for e in gold})
    per_class = {}
    total_pred = total_gold = total_hits = 0
    for cls in classes:
        pred_c = {e for e in predicted if e[3] == cls}
        gold_c = {e for e in gold if e[3] == cls}
        hits = len(pred_c & gold_c)
        precision = _ratio(hits, len(pred_c), not gold_c)
        recall = _ratio(hits, len(gold_c), not pred_c)
        per_class[cls] = ClassScores(precision, recall, _f1(precision, recall))
        total_pred += len(pred_c)
        total_gold += len(gold_c)
        total_hits += hits

    micro_p = _ratio(total_hits, total_pred, total_gold == 0)
    micro_r = _ratio(total_hits, total_gold, total_pred == 0)
    return per_class, ClassScores(micro_p, micro_r, _f1(micro_p, micro_r))


def parse_gold_pairs(lines: Iterable[str]) -> dict[str, set[tuple[str, str]]]:
    """Gold pair file: ``window_id<TAB>disease<TAB>location_id`` per line."""
    windows: dict[str, set[tuple[str, str]]] = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 3:
            raise ValueError(f"gold pair line {lineno}: need window_id, disease, location_id")
        window_id, disease, location_id = fields
        windows.setdefault(window_id, set()).add((disease, location_id))
    return windows


def report_table(reports: dict[str, MetricReport]) -> str:
    """Aligned plain-text table, one row per window."""
    rows = [("window", "precision", "recall", "retrieved", "relevant", "hits")]
    for window_id, report in sorted(reports.items()):
        rows.append(
            (
                window_id,
                render_ratio(report.precision),
                render_ratio(report.recall),
                str(report.retrieved),
                str(report.relevant),
                str(report.intersection),
            )
        )
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    return "\n".join("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows)
