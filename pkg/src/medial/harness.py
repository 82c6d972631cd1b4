"""Exhaustive checks over tree shapes, returning plain-dict reports."""

from __future__ import annotations

import itertools
import time
from dataclasses import asdict, dataclass, field
from typing import List

from .groups import ALPHA, BETA, GAMMA, KL_ORDER, ONE, path_color
from .interchange import SwapRequest, derive_interchange, find_quad_shape, swap_leaves, to_quad_form
from .rewrite import MUTATION_LAWS, one_step_rewrites, verify_trace
from .terms import leaf_positions, parse, print_canonical, relabel
from .totalcolor import (
    construct_tree,
    is_representable,
    representable_tuples,
    shapes,
    total_color,
    vertex_color_counts,
)

__all__ = [
    "Report",
    "representability_report",
    "interchange_report",
    "quad_form_report",
    "closure_report",
]


@dataclass
class Report:
    name: str
    checked: int = 0
    failures: List[str] = field(default_factory=list)
    seconds: float = 0.0
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        d = asdict(self)
        d["failures"] = self.failures[:20]
        d["failure_count"] = len(self.failures)
        d["ok"] = self.ok
        return d


def representability_report(max_rank: int) -> Report:
    """Congruence, vertex counts and leaf bounds for every shape; the achieved
    total colors against the decision procedure; a witness for every tuple."""
    rep = Report("representability")
    t0 = time.perf_counter()
    achieved = set()
    for n in range(1, max_rank + 1):
        for s in shapes(n):
            rep.checked += 1
            q, p1, p2 = total_color(s)
            achieved.add(q)
            vc = vertex_color_counts(s)
            if (2 * q.m + q.n) % 3 != 1:
                rep.failures.append(f"congruence fails for {print_canonical(s)}")
                continue
            if [vc.get(g, 0) for g in KL_ORDER] != [p1, p1, p2, p2 + 1]:
                rep.failures.append(f"vertex counts wrong for {print_canonical(s)}")
            if n > 1 and not (q.a <= p1 and q.b <= p1 and q.c <= p2 and q.d <= p2):
                rep.failures.append(f"leaf bounds fail for {print_canonical(s)}")
    expected = set(representable_tuples(max_rank))
    for q in sorted(achieved ^ expected):
        rep.failures.append(f"{q}: achieved={q in achieved} decided={is_representable(q)}")
    for q in sorted(expected):
        t = construct_tree(q)
        if total_color(t)[0] != q:
            rep.failures.append(f"witness for {q} has total color {total_color(t)[0]}")
    rep.details = {"shapes": rep.checked, "tuples": len(expected)}
    rep.seconds = time.perf_counter() - t0
    return rep


def interchange_report(max_rank: int, min_rank: int = 2) -> Report:
    """Derive every same-color leaf interchange on every shape."""
    rep = Report("interchange")
    t0 = time.perf_counter()
    shapes_seen = 0
    longest = 0
    for n in range(min_rank, max_rank + 1):
        for s in shapes(n):
            shapes_seen += 1
            t = relabel(s)
            leaves = [p for p, _ in leaf_positions(t)]
            for a, b in itertools.combinations(leaves, 2):
                if path_color(a) != path_color(b):
                    continue
                rep.checked += 1
                try:
                    tr = derive_interchange(SwapRequest(t, a, b))
                except Exception as exc:  # reported, not raised
                    rep.failures.append(f"{print_canonical(t)} {a},{b}: {exc}")
                    continue
                res = verify_trace(tr, MUTATION_LAWS)
                if not (res.ok and res.final == swap_leaves(t, a, b) and tr.rules_used() <= set(MUTATION_LAWS.rules)):
                    rep.failures.append(f"{print_canonical(t)} {a},{b}: bad trace")
                longest = max(longest, len(tr))
    rep.details = {"shapes": shapes_seen, "longest_trace": longest}
    rep.seconds = time.perf_counter() - t0
    return rep


def quad_form_report(max_rank: int) -> Report:
    """Reach a quad-shaped subterm from every shape using all four colors."""
    rep = Report("quad-form")
    t0 = time.perf_counter()
    for n in range(4, max_rank + 1):
        for s in shapes(n):
            t = relabel(s)
            if {path_color(p) for p, _ in leaf_positions(t)} != {ALPHA, BETA, GAMMA, ONE}:
                continue
            rep.checked += 1
            try:
                final, tr = to_quad_form(t)
            except Exception as exc:
                rep.failures.append(f"{print_canonical(t)}: {exc}")
                continue
            res = verify_trace(tr, MUTATION_LAWS)
            if not (res.ok and res.final == final and find_quad_shape(final) is not None):
                rep.failures.append(f"{print_canonical(t)}: bad trace")
    rep.seconds = time.perf_counter() - t0
    return rep


def closure_report() -> Report:
    """One-step closure of (ux)(yu) without M1 and of (xu)(uy) without M2."""
    rep = Report("closure")
    t0 = time.perf_counter()
    for text, drop in (("(ux)(yu)", "M1"), ("(xu)(uy)", "M2")):
        t = parse(text)
        rules = MUTATION_LAWS.without(drop)
        reach = {u for u, _ in one_step_rewrites(t, rules)}
        rep.checked += 1
        rep.details[f"{text} without {drop}"] = sorted(print_canonical(u) for u in reach)
        if reach != {t}:
            rep.failures.append(f"{text} is not closed without {drop}")
        # with the dropped law restored the set is no longer closed
        full = {u for u, _ in one_step_rewrites(t, MUTATION_LAWS)}
        rep.details[f"{text} with all laws"] = len(full)
    rep.seconds = time.perf_counter() - t0
    return rep
