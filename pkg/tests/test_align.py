import hypothesis.strategies as st
from hypothesis import given, settings

from summer.align import (
    BucketSet,
    EditKind,
    align_tokens,
    dissect,
    line_diff,
    split_lines,
)
from summer.tokens import tokenize
from tests.conftest import RENAME_CONTENT_SRC, RENAME_CONTENT_TGT


def shapes(instances):
    return [(e.kind, e.lhs, e.rhs) for e in instances]


class TestSplitLines:
    def test_basic(self):
        assert split_lines("a\nb\n") == ["a\n", "b\n"]
        assert split_lines("a\nb") == ["a\n", "b"]
        assert split_lines("") == []
        assert split_lines("\n") == ["\n"]

    def test_carriage_return_is_content(self):
        assert split_lines("a\r\nb") == ["a\r\n", "b"]

    @given(st.text(max_size=120))
    def test_partition(self, s):
        assert "".join(split_lines(s)) == s


class TestLineDiff:
    def test_identical_inputs_have_no_change_blocks(self):
        ops = line_diff("a\nb\n", "a\nb\n")
        assert [op[0] for op in ops] == ["equal"]

    def test_single_block(self):
        ops = line_diff("a\nb\n", "a\nc\n")
        assert [op[0] for op in ops] == ["equal", "replace"]

    def test_rename_content_pair_blocks(self):
        ops = line_diff(RENAME_CONTENT_SRC, RENAME_CONTENT_TGT)
        tags = [op[0] for op in ops]
        assert tags == ["replace", "equal", "replace", "equal"]

    def test_pure_insert_and_delete(self):
        assert [op[0] for op in line_diff("a\n", "a\nb\n")] == ["equal", "insert"]
        assert [op[0] for op in line_diff("a\nb\n", "a\n")] == ["equal", "delete"]

    @given(st.lists(st.sampled_from(["a\n", "b\n", "c\n", "dd\n"]), max_size=14),
           st.lists(st.sampled_from(["a\n", "b\n", "c\n", "dd\n"]), max_size=14))
    def test_opcode_script_is_valid(self, a_lines, b_lines):
        a = "".join(a_lines)
        b = "".join(b_lines)
        ops = line_diff(a, b)
        la, lb = split_lines(a), split_lines(b)
        pa = pb = 0
        for tag, a0, a1, b0, b1 in ops:
            assert (a0, b0) == (pa, pb)
            assert a0 <= a1 and b0 <= b1
            if tag == "equal":
                assert la[a0:a1] == lb[b0:b1] and a1 > a0
            elif tag == "delete":
                assert a1 > a0 and b1 == b0
            elif tag == "insert":
                assert b1 > b0 and a1 == a0
            else:
                assert a1 > a0 and b1 > b0
            pa, pb = a1, b1
        assert (pa, pb) == (len(la), len(lb))


class TestAlignTokens:
    def test_file_rename(self):
        assert shapes(align_tokens("bc.go", "Program.go")) == [
            (EditKind.SUBSTITUTION, "bc", "Program"),
            (EditKind.IDENTITY, ".go", ".go"),
        ]

    def test_equal_sequences_collapse_to_one_identity(self):
        assert shapes(align_tokens("a b", "a b")) == [(EditKind.IDENTITY, "a b", "a b")]

    def test_substitutions_stay_per_token(self):
        # One instance per modified token, so single-symbol rules can form.
        assert shapes(align_tokens("i++", "i--")) == [
            (EditKind.IDENTITY, "i", "i"),
            (EditKind.SUBSTITUTION, "+", "-"),
            (EditKind.SUBSTITUTION, "+", "-"),
        ]

    def test_insertion_run_coalesces(self):
        got = align_tokens("a z", "a b c z")
        assert (EditKind.INSERTION, "", "b c ") in [(e.kind, e.lhs, e.rhs) for e in got] or any(
            e.kind is EditKind.INSERTION and "b" in e.rhs and "c" in e.rhs for e in got
        )

    def levenshtein_oracle(self, a, b):
        prev = list(range(len(b) + 1))
        for i, x in enumerate(a, 1):
            cur = [i] + [0] * len(b)
            for j, y in enumerate(b, 1):
                cur[j] = min(
                    prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (0 if x == y else 1)
                )
            prev = cur
        return prev[-1]

    def cost(self, instances):
        total = 0
        for e in instances:
            if e.kind is EditKind.IDENTITY:
                continue
            if e.kind is EditKind.SUBSTITUTION:
                total += 1
            elif e.kind is EditKind.INSERTION:
                total += len(tokenize(e.rhs).tokens)
            else:
                total += len(tokenize(e.lhs).tokens)
        return total

    @given(
        st.text(alphabet="ab+ \n1", max_size=24),
        st.text(alphabet="ab+ \n1", max_size=24),
    )
    @settings(max_examples=150)
    def test_cost_is_optimal(self, x, y):
        xs = [t.text for t in tokenize(x).tokens]
        ys = [t.text for t in tokenize(y).tokens]
        got = align_tokens(x, y)
        assert self.cost(got) == self.levenshtein_oracle(xs, ys)


class TestDissect:
    def test_rename_content_bucket_structure(self):
        bucket = dissect(RENAME_CONTENT_SRC, RENAME_CONTENT_TGT, "content")
        kinds = [e.kind for e in bucket.edits]
        assert kinds == [
            EditKind.IDENTITY,
            EditKind.SUBSTITUTION,
            EditKind.IDENTITY,
            EditKind.INSERTION,
            EditKind.IDENTITY,
            EditKind.SUBSTITUTION,
            EditKind.IDENTITY,
            EditKind.SUBSTITUTION,
            EditKind.IDENTITY,
        ]
        assert bucket.edits[1].lhs == "github" and bucket.edits[1].rhs == "gitlab"
        assert bucket.edits[3].rhs == 'import "fmt"\n'
        assert bucket.edits[5].lhs == "div" and bucket.edits[5].rhs == "res"

    def test_identical_pair(self):
        bucket = dissect("same\n", "same\n", "t")
        assert shapes(bucket.edits) == [(EditKind.IDENTITY, "same\n", "same\n")]

    def test_empty_to_content(self):
        bucket = dissect("", "x", "t")
        assert shapes(bucket.edits) == [(EditKind.INSERTION, "", "x")]

    def test_both_empty(self):
        assert dissect("", "", "t").edits == ()

    def test_spans_cover_both_sides(self):
        bucket = dissect(RENAME_CONTENT_SRC, RENAME_CONTENT_TGT, "t")
        lo = ro = 0
        for e in bucket.edits:
            assert e.lhs_span == (lo, lo + len(e.lhs))
            assert e.rhs_span == (ro, ro + len(e.rhs))
            lo += len(e.lhs)
            ro += len(e.rhs)
        assert lo == len(RENAME_CONTENT_SRC) and ro == len(RENAME_CONTENT_TGT)

    @given(st.text(max_size=120), st.text(max_size=120))
    @settings(max_examples=200)
    def test_reconstruction(self, source, target):
        bucket = dissect(source, target, "t")
        assert bucket.source == source
        assert bucket.target == target
        for e in bucket.edits:
            if e.kind is EditKind.IDENTITY:
                assert e.lhs == e.rhs

    @given(st.text(max_size=80), st.text(max_size=80))
    @settings(max_examples=60)
    def test_determinism(self, source, target):
        a = dissect(source, target, "t")
        b = dissect(source, target, "t")
        assert shapes(a.edits) == shapes(b.edits)


class TestBucketSet:
    def test_unique_labels_enforced(self):
        import pytest

        b = dissect("a", "b", "x")
        with pytest.raises(ValueError):
            BucketSet((b, dissect("c", "d", "x")))
