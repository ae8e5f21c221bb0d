"""Edge-list and base-knowledge parsing, URL-to-publisher normalization."""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from functools import cached_property
from urllib.parse import urlsplit

import numpy as np

from .bipartite import BipartiteGraph
from .errors import (
    DuplicateDomain,
    EmptyInput,
    LimitExceeded,
    MalformedRow,
    NoHost,
    ParseAborted,
    ScoreOutOfRange,
)

# Whole file is rejected once this many bad rows have been collected;
# silently dropping rows would skew every degree statistic downstream.
MAX_ROW_ERRORS = 100

_FORBIDDEN_HOST_CHARS = set('/?#,"') | set(" \t\r\n")


def extract_publisher(url: str) -> str:
    """Publisher identity of a URL: lowercase host, leading ``www.`` stripped."""
    parsed = urlsplit(url.strip())
    host = parsed.hostname
    if not parsed.scheme or not host:
        raise NoHost(url)
    if host.startswith("www.") and len(host) > 4:
        host = host[4:]
    if any(c in _FORBIDDEN_HOST_CHARS for c in host):
        raise NoHost(url)
    return host


def normalize_domain(domain: str) -> str:
    """Apply the publisher normalization rules to a bare host string."""
    host = domain.strip().lower()
    if host.startswith("www.") and len(host) > 4:
        host = host[4:]
    if not host or any(c in _FORBIDDEN_HOST_CHARS for c in host):
        raise NoHost(domain)
    return host


@dataclass(eq=False)
class EdgeList:
    """The discussion as (user, url) multiplicities.

    Equality is defined on the multiplicity map alone: two edge lists with the
    same pair counts are the same discussion regardless of input row order.
    """

    counts: dict[tuple[str, str], int]
    n_rows: int = 0

    def __post_init__(self):
        if not self.n_rows:
            self.n_rows = sum(self.counts.values())

    def __eq__(self, other):
        if not isinstance(other, EdgeList):
            return NotImplemented
        return self.counts == other.counts

    @cached_property
    def users(self) -> list[str]:
        return sorted({user for user, _ in self.counts})

    @cached_property
    def urls(self) -> list[str]:
        return sorted({url for _, url in self.counts})

    @cached_property
    def url_publisher(self) -> dict[str, str]:
        return {url: extract_publisher(url) for url in self.urls}

    @cached_property
    def publishers(self) -> list[str]:
        return sorted(set(self.url_publisher.values()))

    @cached_property
    def urls_by_publisher(self) -> dict[str, list[str]]:
        grouped: dict[str, list[str]] = {}
        for url in self.urls:
            grouped.setdefault(self.url_publisher[url], []).append(url)
        return grouped

    @cached_property
    def users_by_url(self) -> dict[str, set[str]]:
        grouped: dict[str, set[str]] = {url: set() for url in self.urls}
        for user, url in self.counts:
            grouped[url].add(user)
        return grouped

    @cached_property
    def shares_by_user(self) -> dict[str, dict[str, int]]:
        """Per user, the shared URLs with multiplicities."""
        grouped: dict[str, dict[str, int]] = {}
        for (user, url), count in self.counts.items():
            grouped.setdefault(user, {})[url] = count
        return grouped


def _decode_lines(stream) -> list[bytes]:
    if isinstance(stream, str):
        data = stream.encode("utf-8")
    elif isinstance(stream, (bytes, bytearray)):
        data = bytes(stream)
    else:
        data = stream.read()
        if isinstance(data, str):
            data = data.encode("utf-8")
    return data.splitlines()


def _split_record(line: str) -> tuple[str, str] | None:
    """Split one record into (first, last) fields on tab or comma.

    Commas are legal inside URLs, so comma records split on the *last* comma;
    there is no quoting support.
    """
    if "\t" in line:
        parts = line.split("\t")
        if len(parts) != 2:
            return None
        first, second = parts
    elif "," in line:
        first, _, second = line.rpartition(",")
    else:
        return None
    first, second = first.strip(), second.strip()
    if not first or not second:
        return None
    return first, second


def _edge_header(line: str) -> bool:
    """A first line is a header exactly when its URL field is not a URL."""
    if "\t" in line:
        first = line.split("\t", 1)[0]
    elif "," in line:
        first = line.rpartition(",")[0]
    else:
        first = line
    try:
        extract_publisher(first.strip())
        return False
    except NoHost:
        return True


def parse_edge_list(stream, limit: int | None = None,
                    max_row_errors: int = MAX_ROW_ERRORS) -> EdgeList:
    """Parse ``url,user_id`` (or tab-separated) lines into an EdgeList.

    Repeated pairs accumulate multiplicity. A first line whose URL field does
    not parse is treated as a header. Any malformed data row rejects the whole
    file; errors are collected up to ``max_row_errors`` before aborting.
    If ``limit`` is set and the record count exceeds it, no partial result is
    returned.
    """
    raw_lines = _decode_lines(stream)
    counts: dict[tuple[str, str], int] = {}
    row_errors: list[MalformedRow] = []
    n_rows = 0
    saw_line = False

    for line_no, raw in enumerate(raw_lines, start=1):
        try:
            line = raw.decode("utf-8").strip()
        except UnicodeDecodeError:
            line = None
        if line == "":
            continue
        saw_line = True
        if line_no == 1 and (line is None or _edge_header(line)):
            continue
        error: MalformedRow | None = None
        record = None
        if line is None:
            error = MalformedRow(line_no, "invalid UTF-8")
        else:
            fields = _split_record(line)
            if fields is None:
                error = MalformedRow(line_no, "expected two fields: url,user_id")
            else:
                url, user = fields
                try:
                    extract_publisher(url)
                    record = (user, url)
                except NoHost:
                    error = MalformedRow(line_no, f"not an absolute URL: {url!r}")
        if record is None:
            row_errors.append(error)
            if len(row_errors) >= max_row_errors:
                raise ParseAborted(row_errors, truncated=True)
            continue
        n_rows += 1
        counts[record] = counts.get(record, 0) + 1

    if limit is not None and limit > 0 and n_rows > limit:
        raise LimitExceeded(n_rows, limit)
    if row_errors:
        raise ParseAborted(row_errors)
    if not saw_line or n_rows == 0:
        raise EmptyInput("edge list contains no records")
    return EdgeList(counts=counts, n_rows=n_rows)


def serialize_edge_list(edge_list: EdgeList) -> str:
    """Render an EdgeList back to ``url,user_id`` lines (sorted, LF)."""
    lines = []
    for (user, url) in sorted(edge_list.counts, key=lambda p: (p[1], p[0])):
        lines.extend(f"{url},{user}" for _ in range(edge_list.counts[(user, url)]))
    return "\n".join(lines) + "\n"


def parse_base_knowledge(stream) -> dict[str, int]:
    """Parse ``domain,score`` lines into a publisher -> score map.

    Scores must be base-10 integers in [0, 100]; domains are normalized like
    URL hosts. A first line that does not parse is treated as a header.
    """
    raw_lines = _decode_lines(stream)
    entries: dict[str, int] = {}
    for line_no, raw in enumerate(raw_lines, start=1):
        try:
            line = raw.decode("utf-8").strip()
        except UnicodeDecodeError as exc:
            if line_no == 1:
                continue
            raise MalformedRow(line_no, "invalid UTF-8") from exc
        if not line:
            continue
        fields = _split_record(line)
        if fields is None:
            if line_no == 1:
                continue
            raise MalformedRow(line_no, "expected two fields: domain,score")
        domain_raw, score_raw = fields
        try:
            domain = normalize_domain(domain_raw)
            score = int(score_raw, base=10)
        except (NoHost, ValueError):
            if line_no == 1:
                continue
            raise MalformedRow(line_no, f"bad record: {line!r}") from None
        if not 0 <= score <= 100:
            raise ScoreOutOfRange(
                f"line {line_no}: score {score} outside [0, 100]", line_no=line_no
            )
        if domain in entries:
            raise DuplicateDomain(domain)
        entries[domain] = score
    return entries


def build_bipartite(edge_list: EdgeList) -> BipartiteGraph:
    """Binary biadjacency over sorted user/url labels, with degree sequences."""
    if not edge_list.counts:
        raise EmptyInput("cannot build a graph from an empty edge list")
    users = edge_list.users
    urls = edge_list.urls
    user_index = {u: i for i, u in enumerate(users)}
    url_index = {u: i for i, u in enumerate(urls)}
    neighbor_sets: list[set[int]] = [set() for _ in users]
    for user, url in edge_list.counts:
        neighbor_sets[user_index[user]].add(url_index[url])
    adjacency = [np.array(sorted(s), dtype=np.int64) for s in neighbor_sets]
    user_degrees = np.array([row.size for row in adjacency], dtype=np.int64)
    url_degrees = np.zeros(len(urls), dtype=np.int64)
    for row in adjacency:
        url_degrees[row] += 1
    return BipartiteGraph(
        n_users=len(users),
        n_urls=len(urls),
        adjacency=adjacency,
        user_degrees=user_degrees,
        url_degrees=url_degrees,
        user_labels=users,
        url_labels=urls,
        user_index=user_index,
        url_index=url_index,
    )
