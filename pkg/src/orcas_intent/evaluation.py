"""Per-class precision/recall/F1, averages, confusion matrix and Cohen's kappa."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import EmptyInput, LengthMismatch
from .taxonomy import LEAF_ORDER, TOP_LEVEL_ORDER, IntentLabel, project_top_level


@dataclass(frozen=True)
class ClassScores:
    precision: float
    recall: float
    f1: float
    support: int


@dataclass(frozen=True)
class EvalReport:
    classes: Tuple[Hashable, ...]
    per_class: Dict[Hashable, ClassScores]
    macro_avg: Tuple[float, float, float]
    weighted_avg: Tuple[float, float, float]
    accuracy: float
    confusion: np.ndarray  # rows: gold, columns: predicted, in ``classes`` order
    n: int

    def to_text(self, title: str = "") -> str:
        """Aligned table: Category, Precision, Recall, F1-score, Examples."""
        width = max([len("Weighted avg")] + [len(_name(c)) for c in self.classes])
        head = f"{'Category':<{width}}  {'Precision':>9}  {'Recall':>6}  {'F1-score':>8}  {'Examples':>8}"
        rule = "-" * len(head)
        lines = [title] if title else []
        lines += [head, rule]
        for c in self.classes:
            s = self.per_class[c]
            lines.append(
                f"{_name(c):<{width}}  {s.precision:>9.3f}  {s.recall:>6.3f}  {s.f1:>8.3f}  {s.support:>8d}"
            )
        lines.append(rule)
        for name, (p, r, f) in (("Macro avg", self.macro_avg), ("Weighted avg", self.weighted_avg)):
            lines.append(f"{name:<{width}}  {p:>9.3f}  {r:>6.3f}  {f:>8.3f}  {self.n:>8d}")
        lines.append(rule)
        lines.append(f"{'Accuracy':<{width}}  {'':>9}  {'':>6}  {self.accuracy:>8.3f}  {self.n:>8d}")
        return "\n".join(lines)

    def to_kv(self) -> str:
        """Machine-readable ``key=value`` lines, e.g. ``macro_f1=0.771``."""
        out = [f"n={self.n}", f"accuracy={self.accuracy:.6f}"]
        for tag, (p, r, f) in (("macro", self.macro_avg), ("weighted", self.weighted_avg)):
            out += [f"{tag}_precision={p:.6f}", f"{tag}_recall={r:.6f}", f"{tag}_f1={f:.6f}"]
        for c in self.classes:
            s = self.per_class[c]
            name = _name(c)
            out += [
                f"{name}_precision={s.precision:.6f}",
                f"{name}_recall={s.recall:.6f}",
                f"{name}_f1={s.f1:.6f}",
                f"{name}_support={s.support}",
            ]
        return "\n".join(out)


def _name(c) -> str:
    return getattr(c, "value", str(c))


def _order(labels, preferred: Sequence) -> Tuple:
    present = set(labels)
    ordered = [c for c in preferred if c in present]
    rest = sorted((c for c in present if c not in set(preferred)), key=_name)
    return tuple(ordered + rest)


def _check(pred: Sequence, gold: Sequence) -> None:
    if len(pred) != len(gold):
        raise LengthMismatch(len(pred), len(gold))
    if len(gold) == 0:
        raise EmptyInput("label list")


def _safe_div(num: np.ndarray, den: np.ndarray) -> np.ndarray:
    out = np.zeros_like(num, dtype=float)
    np.divide(num, den, out=out, where=den > 0)
    return out


def evaluate(pred: Sequence, gold: Sequence, classes: Optional[Sequence] = None) -> EvalReport:
    """Score ``pred`` against ``gold``.

    ``classes`` fixes the row order; by default every label seen on either
    side gets a row, so spurious predicted classes appear with support 0.
    Undefined precision or recall is reported as 0.
    """
    _check(pred, gold)
    if classes is None:
        classes = _order(list(gold) + list(pred), LEAF_ORDER + TOP_LEVEL_ORDER)
    classes = tuple(classes)
    index = {c: i for i, c in enumerate(classes)}
    unknown = (set(pred) | set(gold)) - set(index)
    if unknown:
        raise ValueError(f"labels outside the class set: {sorted(map(_name, unknown))}")

    k = len(classes)
    cm = np.zeros((k, k), dtype=np.int64)
    np.add.at(cm, ([index[g] for g in gold], [index[p] for p in pred]), 1)

    tp = np.diag(cm).astype(float)
    support = cm.sum(axis=1)
    predicted = cm.sum(axis=0)
    precision = _safe_div(tp, predicted.astype(float))
    recall = _safe_div(tp, support.astype(float))
    f1 = _safe_div(2 * precision * recall, precision + recall)

    n = int(cm.sum())
    weights = support / n
    per_class = {
        c: ClassScores(float(precision[i]), float(recall[i]), float(f1[i]), int(support[i]))
        for i, c in enumerate(classes)
    }
    macro = (float(precision.mean()), float(recall.mean()), float(f1.mean()))
    weighted = (
        float(weights @ precision),
        float(weights @ recall),
        float(weights @ f1),
    )
    return EvalReport(classes, per_class, macro, weighted, float(tp.sum() / n), cm, n)


def evaluate_top_level(pred: Sequence[IntentLabel], gold: Sequence[IntentLabel]) -> EvalReport:
    """Evaluate after collapsing factual/instrumental/abstain into informational."""
    _check(pred, gold)
    return evaluate(
        [project_top_level(p) for p in pred],
        [project_top_level(g) for g in gold],
        TOP_LEVEL_ORDER,
    )


@dataclass(frozen=True)
class Agreement:
    kappa: float
    observed: float
    expected: float
    n: int


def agreement(labels_a: Sequence, labels_b: Sequence) -> Agreement:
    _check(labels_a, labels_b)
    n = len(labels_a)
    p_o = sum(a == b for a, b in zip(labels_a, labels_b)) / n
    count_a: Dict = {}
    count_b: Dict = {}
    for a in labels_a:
        count_a[a] = count_a.get(a, 0) + 1
    for b in labels_b:
        count_b[b] = count_b.get(b, 0) + 1
    p_e = sum(count_a[c] * count_b.get(c, 0) for c in count_a) / (n * n)
    # p_e == 1 means both sides used one and the same label throughout.
    kappa = 1.0 if p_e == 1.0 else (p_o - p_e) / (1.0 - p_e)
    return Agreement(kappa, p_o, p_e, n)


def cohen_kappa(labels_a: Sequence, labels_b: Sequence) -> float:
    """(p_o - p_e) / (1 - p_e) with chance agreement from the two marginals."""
    return agreement(labels_a, labels_b).kappa


def gold_and_pred(rows_gold: List, rows_pred: List) -> Tuple[list, list, int]:
    """Join predictions to gold rows on (query_id, url).

    Returns aligned gold labels, predicted labels and the number of gold
    rows without a prediction.
    """
    by_key = {}
    for r in rows_pred:
        by_key.setdefault((r.query_id, r.url), r.final_label)
    gold, pred, missing = [], [], 0
    for g in rows_gold:
        p = by_key.get((g.query_id, g.url))
        if p is None:
            missing += 1
            continue
        gold.append(g.gold_label)
        pred.append(p)
    return gold, pred, missing
