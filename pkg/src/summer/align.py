"""Alignment of a (source, target) string pair into ordered edit instances.

The pipeline is: line-level histogram diff (rare lines anchor the split),
then token-level Levenshtein alignment inside each change block. The result
is a Bucket, an ordered list of edit instances whose left sides concatenate
to the source and right sides to the target.

Identity, insertion, and deletion runs are coalesced into one instance each;
substitutions stay one token pair per instance so that rule synthesis can
expand each modified token independently.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum, auto

from .tokens import tokenize


class EditKind(Enum):
    IDENTITY = auto()
    SUBSTITUTION = auto()
    INSERTION = auto()
    DELETION = auto()


@dataclass(frozen=True, slots=True)
class EditInstance:
    """One aligned rewriting instance lhs => rhs with spans into the bucket."""

    lhs: str
    rhs: str
    kind: EditKind
    lhs_span: tuple[int, int]
    rhs_span: tuple[int, int]

    def __post_init__(self) -> None:
        k = self.kind
        if k is EditKind.IDENTITY and self.lhs != self.rhs:
            raise ValueError("identity instance requires lhs == rhs")
        if k is EditKind.INSERTION and self.lhs:
            raise ValueError("insertion instance requires empty lhs")
        if k is EditKind.DELETION and self.rhs:
            raise ValueError("deletion instance requires empty rhs")
        if k is EditKind.SUBSTITUTION and (
            not self.lhs or not self.rhs or self.lhs == self.rhs
        ):
            raise ValueError("substitution requires distinct nonempty sides")


@dataclass(frozen=True)
class Bucket:
    """A labeled, ordered list of edit instances for one artifact."""

    label: str
    edits: tuple[EditInstance, ...]

    @property
    def source(self) -> str:
        return "".join(e.lhs for e in self.edits)

    @property
    def target(self) -> str:
        return "".join(e.rhs for e in self.edits)


@dataclass(frozen=True)
class BucketSet:
    buckets: tuple[Bucket, ...]

    def __post_init__(self) -> None:
        labels = [b.label for b in self.buckets]
        if len(set(labels)) != len(labels):
            raise ValueError("bucket labels must be unique")

    def __iter__(self):
        return iter(self.buckets)

    def __len__(self) -> int:
        return len(self.buckets)


def split_lines(s: str) -> list[str]:
    """Split after every \\n, keeping it. \\r is ordinary content."""
    if not s:
        return []
    lines = s.split("\n")
    out = [line + "\n" for line in lines[:-1]]
    if lines[-1]:
        out.append(lines[-1])
    return out


# --- line-level histogram diff -------------------------------------------

def line_diff(source: str, target: str) -> list[tuple[str, int, int, int, int]]:
    """Line-level edit script as (tag, a0, a1, b0, b1) opcodes.

    Tags are 'equal', 'replace', 'delete', 'insert'. Change blocks pair a run
    of deleted lines with a run of added lines. Anchors are chosen histogram
    style: the rarest common line, with longer common runs breaking ties.
    """
    a = split_lines(source)
    b = split_lines(target)
    out: list[tuple[str, int, int, int, int]] = []
    _histogram(a, 0, len(a), b, 0, len(b), out)
    return _coalesce(out)


def _histogram(a, alo, ahi, b, blo, bhi, out) -> None:
    # Iterative in-order traversal; deep alternating diffs would otherwise
    # blow the recursion limit.
    stack: list[tuple] = [("region", alo, ahi, blo, bhi)]
    while stack:
        item = stack.pop()
        if item[0] == "emit":
            out.append(item[1])
            continue
        _, alo, ahi, blo, bhi = item
        pre = 0
        while alo + pre < ahi and blo + pre < bhi and a[alo + pre] == b[blo + pre]:
            pre += 1
        if pre:
            out.append(("equal", alo, alo + pre, blo, blo + pre))
            alo += pre
            blo += pre
        suf = 0
        while alo < ahi - suf and blo < bhi - suf and a[ahi - 1 - suf] == b[bhi - 1 - suf]:
            suf += 1
        if suf:
            stack.append(("emit", ("equal", ahi - suf, ahi, bhi - suf, bhi)))
            ahi -= suf
            bhi -= suf
        anchor = _best_anchor(a, alo, ahi, b, blo, bhi)
        if anchor is None:
            if alo < ahi and blo < bhi:
                op = ("replace", alo, ahi, blo, bhi)
            elif alo < ahi:
                op = ("delete", alo, ahi, blo, blo)
            elif blo < bhi:
                op = ("insert", alo, alo, blo, bhi)
            else:
                continue
            out.append(op)
        else:
            i, j, n = anchor
            stack.append(("region", i + n, ahi, j + n, bhi))
            stack.append(("emit", ("equal", i, i + n, j, j + n)))
            stack.append(("region", alo, i, blo, j))


def _best_anchor(a, alo, ahi, b, blo, bhi):
    """Pick (i, j, run_len): rarest common line, longest run, leftmost."""
    if alo >= ahi or blo >= bhi:
        return None
    count_a: dict[str, int] = {}
    pos_a: dict[str, list[int]] = {}
    for i in range(alo, ahi):
        line = a[i]
        count_a[line] = count_a.get(line, 0) + 1
        pos_a.setdefault(line, []).append(i)
    count_b: dict[str, int] = {}
    pos_b: dict[str, list[int]] = {}
    for j in range(blo, bhi):
        line = b[j]
        count_b[line] = count_b.get(line, 0) + 1
        pos_b.setdefault(line, []).append(j)
    common = [ln for ln in count_a if ln in count_b]
    if not common:
        return None
    # Rarity of a line is its total occurrence count across both sides. The
    # anchor is the earliest (in the new side) occurrence of the rarest line;
    # the matching run around it only shapes the split.
    common.sort(key=lambda ln: count_a[ln] + count_b[ln])
    rarest = count_a[common[0]] + count_b[common[0]]
    best = None
    budget = 256  # cap pair enumeration on degenerate inputs
    for ln in common:
        rarity = count_a[ln] + count_b[ln]
        if rarity > rarest:
            break
        for i in pos_a[ln]:
            for j in pos_b[ln]:
                key = (rarity, j, i)
                if best is None or key < best[0]:
                    best = (key, (i, j))
                budget -= 1
                if budget <= 0:
                    break
        if budget <= 0:
            break
    if best is None:
        return None
    i, j = best[1]
    n = 1
    while i + n < ahi and j + n < bhi and a[i + n] == b[j + n]:
        n += 1
    return i, j, n


def _coalesce(ops):
    """Merge adjacent opcodes; adjacent delete/insert runs become one block."""
    merged: list[list] = []
    for tag, a0, a1, b0, b1 in ops:
        if a0 == a1 and b0 == b1:
            continue
        if merged:
            last = merged[-1]
            both_change = last[0] != "equal" and tag != "equal"
            if (last[0] == tag or both_change) and last[2] == a0 and last[4] == b0:
                last[2], last[4] = a1, b1
                if last[0] != tag:
                    has_del = last[1] < last[2]
                    has_add = last[3] < last[4]
                    last[0] = "replace" if (has_del and has_add) else (
                        "delete" if has_del else "insert"
                    )
                continue
        merged.append([tag, a0, a1, b0, b1])
    return [tuple(op) for op in merged]


# --- token-level alignment -------------------------------------------------

_MATCH, _SUB, _DEL, _INS = 0, 1, 2, 3


def _token_ops(del_tokens: list[str], add_tokens: list[str]) -> list[int]:
    """Minimal-cost op sequence with match > sub > del > ins preference.

    The preference is applied scanning left to right over suffix-optimal
    costs, which keeps shared prefixes aligned.
    """
    n, m = len(del_tokens), len(add_tokens)
    # cost[i][j] = distance between del_tokens[i:] and add_tokens[j:]
    cost = [[0] * (m + 1) for _ in range(n + 1)]
    for j in range(m + 1):
        cost[n][j] = m - j
    for i in range(n - 1, -1, -1):
        row = cost[i]
        below = cost[i + 1]
        row[m] = n - i
        di = del_tokens[i]
        for j in range(m - 1, -1, -1):
            if di == add_tokens[j]:
                row[j] = below[j + 1]
            else:
                row[j] = 1 + min(below[j + 1], below[j], row[j + 1])
    ops: list[int] = []
    i = j = 0
    while i < n or j < m:
        c = cost[i][j]
        if i < n and j < m and del_tokens[i] == add_tokens[j] and c == cost[i + 1][j + 1]:
            ops.append(_MATCH)
            i += 1
            j += 1
        elif i < n and j < m and del_tokens[i] != add_tokens[j] and c == 1 + cost[i + 1][j + 1]:
            ops.append(_SUB)
            i += 1
            j += 1
        elif i < n and c == 1 + cost[i + 1][j]:
            ops.append(_DEL)
            i += 1
        else:
            ops.append(_INS)
            j += 1
    return ops


def align_tokens(del_side: str | list[str], add_side: str | list[str]) -> list[EditInstance]:
    """Align two token sequences into edit instances at minimal edit cost.

    Accepts raw strings (tokenized here) or precomputed token text lists.
    Identity, insertion, and deletion runs coalesce; each substituted token
    becomes its own instance. Spans are local to the aligned pair.
    """
    del_tokens = (
        [t.text for t in tokenize(del_side).tokens] if isinstance(del_side, str) else del_side
    )
    add_tokens = (
        [t.text for t in tokenize(add_side).tokens] if isinstance(add_side, str) else add_side
    )
    ops = _token_ops(del_tokens, add_tokens)
    instances: list[EditInstance] = []
    i = j = 0
    lo = ro = 0  # running offsets
    k = 0
    while k < len(ops):
        op = ops[k]
        if op == _SUB:
            lhs, rhs = del_tokens[i], add_tokens[j]
            instances.append(
                EditInstance(
                    lhs,
                    rhs,
                    EditKind.SUBSTITUTION,
                    (lo, lo + len(lhs)),
                    (ro, ro + len(rhs)),
                )
            )
            lo += len(lhs)
            ro += len(rhs)
            i += 1
            j += 1
            k += 1
            continue
        run_end = k
        while run_end < len(ops) and ops[run_end] == op:
            run_end += 1
        count = run_end - k
        if op == _MATCH:
            text = "".join(del_tokens[i : i + count])
            instances.append(
                EditInstance(
                    text,
                    text,
                    EditKind.IDENTITY,
                    (lo, lo + len(text)),
                    (ro, ro + len(text)),
                )
            )
            lo += len(text)
            ro += len(text)
            i += count
            j += count
        elif op == _DEL:
            text = "".join(del_tokens[i : i + count])
            instances.append(
                EditInstance(text, "", EditKind.DELETION, (lo, lo + len(text)), (ro, ro))
            )
            lo += len(text)
            i += count
        else:
            text = "".join(add_tokens[j : j + count])
            instances.append(
                EditInstance("", text, EditKind.INSERTION, (lo, lo), (ro, ro + len(text)))
            )
            ro += len(text)
            j += count
        k = run_end
    return instances


def _merge_identities(parts: list[tuple[EditKind, str, str]]) -> list[tuple[EditKind, str, str]]:
    out: list[tuple[EditKind, str, str]] = []
    for kind, lhs, rhs in parts:
        if not lhs and not rhs:
            continue
        if out and kind is EditKind.IDENTITY and out[-1][0] is EditKind.IDENTITY:
            prev = out.pop()
            out.append((EditKind.IDENTITY, prev[1] + lhs, prev[2] + rhs))
        else:
            out.append((kind, lhs, rhs))
    return out


def dissect(source: str, target: str, label: str) -> Bucket:
    """Break one coarse string edit into an ordered bucket of fine instances."""
    parts: list[tuple[EditKind, str, str]] = []
    a = split_lines(source)
    b = split_lines(target)
    for tag, a0, a1, b0, b1 in line_diff(source, target):
        del_text = "".join(a[a0:a1])
        add_text = "".join(b[b0:b1])
        if tag == "equal":
            parts.append((EditKind.IDENTITY, del_text, add_text))
        elif tag == "delete":
            parts.append((EditKind.DELETION, del_text, ""))
        elif tag == "insert":
            parts.append((EditKind.INSERTION, "", add_text))
        else:
            for inst in align_tokens(del_text, add_text):
                parts.append((inst.kind, inst.lhs, inst.rhs))
    parts = _merge_identities(parts)
    edits: list[EditInstance] = []
    lo = ro = 0
    for kind, lhs, rhs in parts:
        edits.append(
            EditInstance(lhs, rhs, kind, (lo, lo + len(lhs)), (ro, ro + len(rhs)))
        )
        lo += len(lhs)
        ro += len(rhs)
    bucket = Bucket(label, tuple(edits))
    assert bucket.source == source and bucket.target == target
    return bucket
