"""Seeded construction of finite structures approximating the generic.

The loop services three kinds of tasks round-robin: complete short
lines to the target length mu(alpha)+2 with fresh points, realize
good-pair templates over randomly chosen bases, and add fresh isolated
points.  Every structural change is a free amalgam of a strong small
extension, so the growing structure stays a strong extension chain and
line lengths stay legal by construction; a realization that would push
chi of its own code past the mu cap at that base is identified with the
least existing copy instead.  Global bounded checks are snapshot-time
work for callers, not a per-step gate.
"""

from __future__ import annotations

import hashlib
from collections import deque
from dataclasses import dataclass, field
from random import Random
from typing import Optional

from .amalgam import _glue
from .errors import FormatError
from .gallery import cycle_Ck, D_k, fano_chain
from .mu import MuFunction, in_K_mu_bounded, to_mu_v1, validate_mu
from .primitives import ALPHA_CODE, GoodPair, _max_disjoint, alpha_pair, copies_over_base
from .space import LinearSpace, induced, pair_coverage, parse_ls_v1, to_ls_v1

DEFAULT_TEMPLATE_MAX = 10


@dataclass(frozen=True)
class BuildStep:
    index: int
    kind: str  # add-point | complete-line | realize | identify
    payload: tuple


@dataclass
class BuildTrace:
    seed: int
    template_max: int
    mu_hash: str
    steps: list[BuildStep] = field(default_factory=list)
    snapshots: list[tuple[int, LinearSpace]] = field(default_factory=list)


def chain_link_pair() -> GoodPair:
    """The 0-primitive step of the Fano chain: three points over a
    non-collinear triangle, tied by three lines."""
    a1 = fano_chain(1)[1]
    pts = [0, 1, 3, 7, 8, 9]
    sub = induced(a1, pts)
    return GoodPair(sub, (0, 1, 2))


def default_templates(template_max: int) -> list[GoodPair]:
    out = [alpha_pair(), chain_link_pair()]
    k = 1
    while 4 * k + 2 <= template_max:
        out.append(cycle_Ck(k))
        k += 1
    k = 1
    while 4 * k + 3 <= template_max:
        out.append(D_k(k))
        k += 1
    return [gp for gp in out if gp.space.n <= template_max]


def build(
    mu: MuFunction,
    steps: int,
    seed: int,
    template_max: int = DEFAULT_TEMPLATE_MAX,
    *,
    warmup: Optional[int] = None,
    add_point_every: int = 25,
    snapshot_every: int = 100,
    templates: Optional[list[GoodPair]] = None,
) -> tuple[LinearSpace, BuildTrace]:
    ok, reasons = validate_mu(mu)
    if not ok:
        raise ValueError("invalid mu: " + "; ".join(reasons))
    rng = Random(seed)
    target_len = mu.line_length()
    if warmup is None:
        # a new point on one line covers at most target_len - 1 pairs, so
        # pair coverage climbs only while the structure stays sparse; a
        # long point-only prefix keeps it below that threshold for the
        # rest of the run
        warmup = 3 * steps // 5
    if templates is None:
        templates = default_templates(template_max)
    trace = BuildTrace(
        seed=seed,
        template_max=template_max,
        mu_hash=hashlib.md5(to_mu_v1(mu).encode()).hexdigest(),
    )
    cur = LinearSpace(0, [])
    complete_q: deque[tuple[int, int]] = deque()
    queued_pairs: set[tuple[int, int]] = set()
    big_templates = [gp for gp in templates if gp.code != ALPHA_CODE]
    template_cursor = 0
    realize_count = 0

    def enqueue_short_lines() -> None:
        for ln in cur.lines:
            if len(ln) < target_len and (ln[0], ln[1]) not in queued_pairs:
                complete_q.append((ln[0], ln[1]))
                queued_pairs.add((ln[0], ln[1]))

    def commit(candidate: LinearSpace) -> None:
        nonlocal cur
        cur = candidate
        enqueue_short_lines()

    def service_add_point(i: int) -> None:
        nonlocal cur
        pid = cur.n
        cur = LinearSpace(cur.n + 1, cur.lines)
        trace.steps.append(BuildStep(i, "add-point", (pid,)))

    def service_complete(i: int, task: tuple[int, int]) -> None:
        a, b = task
        queued_pairs.discard(task)
        ln = cur.line_through(a, b)
        if ln is None or len(ln) >= target_len:
            return
        pid = cur.n
        lines = [list(x) for x in cur.lines]
        for row in lines:
            if a in row and b in row:
                row.append(pid)
        candidate = LinearSpace(cur.n + 1, [tuple(sorted(r)) for r in lines])
        commit(candidate)
        trace.steps.append(BuildStep(i, "complete-line", (a, b, pid)))
        if len(ln) + 1 < target_len:
            complete_q.append((a, b))
            queued_pairs.add((a, b))

    def pick_base(gp: GoodPair) -> Optional[dict[int, int]]:
        nb = len(gp.base)
        if nb == 0:
            return {}
        if cur.n < nb:
            return None
        base_sorted = sorted(gp.base)
        base_sub = induced(gp.space, base_sorted)
        for _ in range(40):
            img = rng.sample(range(cur.n), nb)
            # realizing piles the template's lines onto the base image, so
            # keep bases on sparse points; dense tangles make the bounded
            # checks expensive
            if any(len(cur.lines_by_point[p]) > 1 for p in img):
                continue
            cand = induced(cur, sorted(img))
            rank = {p: j for j, p in enumerate(sorted(img))}
            relabeled = []
            for ln in base_sub.lines:
                relabeled.append(tuple(sorted(rank[img[j]] for j in ln)))
            if LinearSpace(nb, relabeled) == cand:
                return {base_sorted[j]: img[j] for j in range(nb)}
        return None

    def service_alpha(i: int) -> None:
        nonlocal cur
        if cur.n < 2:
            return
        fallback = None
        for _ in range(40):
            a, b = sorted(rng.sample(range(cur.n), 2))
            ln = cur.line_through(a, b)
            if ln is None:
                if any(len(cur.lines_by_point[p]) >= 4 for p in (a, b)):
                    continue
                pid = cur.n
                candidate = LinearSpace(cur.n + 1, list(cur.lines) + [(a, b, pid)])
                commit(candidate)
                trace.steps.append(BuildStep(i, "realize", (ALPHA_CODE, (a, b), (pid,))))
                return
            if len(ln) < target_len:
                pid = cur.n
                lines = [list(x) for x in cur.lines]
                for row in lines:
                    if a in row and b in row:
                        row.append(pid)
                candidate = LinearSpace(cur.n + 1, [tuple(sorted(r)) for r in lines])
                commit(candidate)
                trace.steps.append(BuildStep(i, "complete-line", (a, b, pid)))
                return
            fallback = (a, b, ln)
        if fallback is not None:
            a, b, ln = fallback
            third = min(p for p in ln if p not in (a, b))
            trace.steps.append(BuildStep(i, "identify", (ALPHA_CODE, (a, b), (third,))))

    def service_realize(i: int) -> None:
        nonlocal template_cursor, realize_count
        realize_count += 1
        if realize_count % 8 or not big_templates:
            # alpha alternates with the larger templates: new lines through
            # uncovered pairs keep pair coverage climbing
            service_alpha(i)
            return
        gp = big_templates[template_cursor % len(big_templates)]
        template_cursor += 1
        base_map = pick_base(gp)
        if base_map is None:
            return
        base_img = tuple(base_map[b] for b in sorted(base_map))
        # local mu cap for this code at this base: one more disjoint copy
        # must still fit (line lengths stay legal by construction, and the
        # global bounded check runs on snapshots, not per step)
        copies = copies_over_base(cur, gp.space, gp.base, base_map)
        if _max_disjoint(copies) + 1 > mu.value(gp.code):
            least = min(copies, key=sorted)
            trace.steps.append(
                BuildStep(i, "identify", (gp.code, base_img, tuple(sorted(least))))
            )
            return
        candidate, cmap = _glue(cur, gp.space, base_map)
        new_pts = sorted(set(cmap.values()) - set(base_map.values()))
        commit(candidate)
        trace.steps.append(BuildStep(i, "realize", (gp.code, base_img, tuple(new_pts))))

    for i in range(steps):
        if i < warmup or (i - warmup) % add_point_every == 0:
            service_add_point(i)
        elif complete_q:
            service_complete(i, complete_q.popleft())
        else:
            service_realize(i)
        if snapshot_every and (i + 1) % snapshot_every == 0:
            trace.snapshots.append((i + 1, cur))

    # drain pending completions so every line reaches the target length
    while complete_q:
        service_complete(steps, complete_q.popleft())
    if steps:
        trace.snapshots.append((steps, cur))
    return cur, trace


def stats(M: LinearSpace, mu: MuFunction, *, bound: int = 6) -> dict:
    """Line-length histogram, pair coverage, and per-code chi/mu ratios."""
    hist: dict[int, int] = {}
    for ln in M.lines:
        hist[len(ln)] = hist.get(len(ln), 0) + 1
    saturation: dict[str, float] = {}
    counts: dict[str, int] = {}
    _, violations = in_K_mu_bounded(M, mu, bound)
    from .primitives import _max_disjoint, enumerate_good_pairs

    groups: dict[tuple[str, frozenset[int]], tuple] = {}
    for gp, emb in enumerate_good_pairs(M, bound):
        key = (gp.code, frozenset(emb[b] for b in gp.base))
        groups.setdefault(key, (gp, emb))
    for (code, _img), (gp, emb) in groups.items():
        cap = mu.value(code)
        b_embed = {b: emb[b] for b in gp.base}
        chi_val = _max_disjoint(copies_over_base(M, gp.space, gp.base, b_embed))
        saturation[code] = saturation.get(code, 0.0) + chi_val / max(cap, 1)
        counts[code] = counts.get(code, 0) + 1
    for code in saturation:
        saturation[code] /= counts[code]
    return {
        "line_length_histogram": hist,
        "pair_coverage": pair_coverage(M),
        "chi_saturation": saturation,
        "violations": violations,
    }


# -- trace-v1 text format ----------------------------------------------

def to_trace_v1(trace: BuildTrace) -> str:
    out = [
        "trace v1",
        f"seed {trace.seed}",
        f"mu {trace.mu_hash}",
        f"template-max {trace.template_max}",
    ]
    for st in trace.steps:
        out.append(f"step {st.index} {st.kind} {_payload_str(st.payload)}")
    for idx, snap in trace.snapshots:
        out.append(f"snapshot {idx} begin")
        out.append(to_ls_v1(snap).rstrip("\n"))
        out.append("snapshot end")
    return "\n".join(out) + "\n"


def _payload_str(payload: tuple) -> str:
    parts = []
    for item in payload:
        if isinstance(item, tuple):
            parts.append(",".join(str(x) for x in item) if item else "-")
        else:
            parts.append(str(item))
    return " ".join(parts)


def _parse_payload(kind: str, toks: list[str]) -> tuple:
    if kind in ("realize", "identify"):
        # code, base image, extension image; the images are tuples even
        # when they hold a single point
        code = toks[0]
        imgs = tuple(
            () if t == "-" else tuple(int(x) for x in t.split(",")) for t in toks[1:]
        )
        return (code, *imgs)
    return tuple(int(t) for t in toks)


def parse_trace_v1(text: str) -> BuildTrace:
    lines = text.splitlines()
    if not lines or lines[0].strip() != "trace v1":
        raise FormatError(1, "expected 'trace v1' header")
    trace = BuildTrace(seed=0, template_max=0, mu_hash="")
    i = 1
    while i < len(lines):
        row = lines[i].strip()
        i += 1
        if not row:
            continue
        parts = row.split()
        if parts[0] == "seed":
            trace.seed = int(parts[1])
        elif parts[0] == "mu":
            trace.mu_hash = parts[1]
        elif parts[0] == "template-max":
            trace.template_max = int(parts[1])
        elif parts[0] == "step":
            payload = _parse_payload(parts[2], parts[3:])
            trace.steps.append(BuildStep(int(parts[1]), parts[2], payload))
        elif parts[0] == "snapshot" and parts[-1] == "begin":
            idx = int(parts[1])
            block = []
            while i < len(lines) and lines[i].strip() != "snapshot end":
                block.append(lines[i])
                i += 1
            i += 1
            trace.snapshots.append((idx, parse_ls_v1("\n".join(block))))
        else:
            raise FormatError(i, f"unrecognized row {row!r}")
    return trace
