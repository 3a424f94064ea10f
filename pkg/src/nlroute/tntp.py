"""Reader for TNTP network files (the transportation test-problem format).

Only the topology and free-flow time are used. Free-flow time becomes the
mean travel time; the variance is drawn uniformly from ``(floor * mean, mean]``.
"""
from __future__ import annotations

from .errors import ParseError
from .generators import rng_for
from .graph import Edge, Graph

DEFAULT_COLUMNS = ["init_node", "term_node", "capacity", "length", "free_flow_time"]
VARIANCE_FLOOR = 1e-6


def _strip_comment(line: str) -> str:
    return line.split("~", 1)[0].strip()


def parse_tntp(text: str, seed: int = 0, name: str = "tntp", variance_floor: float = VARIANCE_FLOOR) -> Graph:
    meta = {}
    lines = text.splitlines()
    i = 0
    while True:
        if i >= len(lines):
            raise ParseError("missing <END OF METADATA>")
        raw = lines[i].strip()
        i += 1
        if raw.startswith("~") or not raw:
            continue
        if not raw.startswith("<"):
            raise ParseError(f"expected metadata tag, got {raw!r}", i)
        tag, _, value = raw[1:].partition(">")
        tag = " ".join(tag.split()).upper()
        if tag == "END OF METADATA":
            break
        meta[tag] = _strip_comment(value)
    try:
        n = int(meta["NUMBER OF NODES"])
        m = int(meta["NUMBER OF LINKS"])
    except KeyError as exc:
        raise ParseError(f"missing metadata field {exc.args[0]}") from None
    except ValueError as exc:
        raise ParseError(f"bad metadata value: {exc}") from None

    columns = DEFAULT_COLUMNS
    links = []
    for lineno in range(i, len(lines)):
        raw = lines[lineno].strip()
        if raw.startswith("~"):
            names = raw[1:].replace(";", " ").split()
            if "init_node" in [x.lower() for x in names]:
                columns = [x.lower() for x in names]
            continue
        body = _strip_comment(raw).rstrip(";").strip()
        if not body:
            continue
        fields = body.replace(";", " ").split()
        try:
            tail = int(fields[columns.index("init_node")])
            head = int(fields[columns.index("term_node")])
            fft = float(fields[columns.index("free_flow_time")])
        except (ValueError, IndexError) as exc:
            raise ParseError(f"bad link record: {exc}", lineno + 1) from None
        if not (1 <= tail <= n and 1 <= head <= n):
            raise ParseError(f"node id outside 1..{n}", lineno + 1)
        links.append((tail - 1, head - 1, fft))
    if len(links) != m:
        raise ParseError(f"metadata declares {m} links, found {len(links)}")

    rng = rng_for(seed)
    u = rng.random(len(links))
    edges = []
    for (a, b, mean), x in zip(links, u.tolist()):
        lo = variance_floor * mean
        # 1 - x lies in (0, 1], so the variance lies in (lo, mean].
        var = lo + (1.0 - x) * (mean - lo)
        edges.append(Edge(a, b, (mean, var)))
    return Graph(n, tuple(edges), 2, False, name)


def load_tntp(path, seed: int = 0) -> Graph:
    from pathlib import Path

    p = Path(path)
    return parse_tntp(p.read_text(), seed=seed, name=p.stem.replace("_net", ""))
