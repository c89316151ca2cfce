"""Labeled-example datasets and their CSV interchange formats."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

from readerkit.features import FEATURE_NAMES, FeatureVector, from_ordered_values, to_ordered_values

DATASET_TAGS = ("article", "landing", "random", "other")

_TRUE_LABELS = frozenset({"1", "true", "t", "y", "yes", "readable"})
_FALSE_LABELS = frozenset({"0", "false", "f", "n", "no", "not-readable", "unreadable"})


@dataclass(frozen=True, slots=True)
class LabeledExample:
    features: FeatureVector
    label: bool
    source_url: str = ""
    dataset_tag: str = "other"


def parse_label(raw: str) -> bool | None:
    """Boolean label parsing shared by dataset and labels files; '' -> None."""
    value = raw.strip().lower()
    if not value:
        return None
    if value in _TRUE_LABELS:
        return True
    if value in _FALSE_LABELS:
        return False
    raise ValueError(f"unrecognized label value {raw!r}")


def _normalize_tag(raw: str) -> str:
    tag = raw.strip().lower()
    return tag if tag in DATASET_TAGS else "other"


def write_dataset_csv(path: str | Path, examples) -> None:
    """21 feature columns in canonical order, then label, url, dataset_tag."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(list(FEATURE_NAMES) + ["label", "url", "dataset_tag"])
        for ex in examples:
            writer.writerow(
                to_ordered_values(ex.features)
                + [int(ex.label), ex.source_url, ex.dataset_tag]
            )


def read_dataset_csv(path: str | Path) -> list[LabeledExample]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        missing = [name for name in FEATURE_NAMES if name not in (reader.fieldnames or [])]
        if missing:
            raise ValueError(f"dataset CSV is missing feature columns: {missing}")
        if "label" not in (reader.fieldnames or []):
            raise ValueError("dataset CSV is missing the label column")
        examples = []
        for row in reader:
            label = parse_label(row["label"])
            if label is None:
                continue  # unlabeled rows cannot train
            fv = from_ordered_values([float(row[name]) for name in FEATURE_NAMES])
            examples.append(LabeledExample(
                features=fv,
                label=label,
                source_url=row.get("url", "") or "",
                dataset_tag=_normalize_tag(row.get("dataset_tag", "") or ""),
            ))
    return examples


def load_labels_csv(path: str | Path) -> dict[str, bool]:
    """Loader for published (url, label) files; joins against stored HTML."""
    labels: dict[str, bool] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        for i, row in enumerate(reader):
            if len(row) < 2:
                continue
            url, raw = row[0].strip(), row[1]
            if i == 0 and url.lower() in ("url", "page", "page_url"):
                continue  # header row
            parsed = parse_label(raw)
            if parsed is not None:
                labels[url] = parsed
    return labels
