#!/usr/bin/env python3
"""Regenerate the bundled benchmark corpus under corpus/.

Twelve single-file merge scenarios modeled on recurring real-world merge
shapes: a one-token parallel edit, a variable rename racing a parallel line
add, a space-vs-tab doc tag, a version bump collision, tabular row adds,
property-file escape doubling, a method extraction, a definition inline,
a move whose insertion anchor was deleted, import adds on both sides,
trailing-whitespace noise, and a module-path rename sweep.

The expected file always holds the developer's merge; some scenarios are
documented misses for this engine (see tests/test_bench.py).
"""

from __future__ import annotations

import json
import os

ROOT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "corpus")

SCENARIOS: list[dict] = []


def scenario(sid: str, kind: str, ext: str, base: str, left: str, right: str, expected: str) -> None:
    d = os.path.join(ROOT, sid)
    os.makedirs(d, exist_ok=True)
    for role, text in (("base", base), ("left", left), ("right", right), ("expected", expected)):
        with open(os.path.join(d, role + ext), "w", encoding="utf-8") as fh:
            fh.write(text)
    SCENARIOS.append(
        {
            "id": sid,
            "kind": kind,
            "base": f"{sid}/base{ext}",
            "left": f"{sid}/left{ext}",
            "right": f"{sid}/right{ext}",
            "expected": f"{sid}/expected{ext}",
        }
    )


def main() -> None:
    # 1. One-token edit on the left, two parallel edits on the right.
    scenario(
        "one-token-edit",
        "other",
        ".txt",
        base="i++\nFoo\n",
        left="i--\nFoo\n",
        right="i+=1\nBar\n",
        expected="i-=1\nBar\n",
    )

    # 2. Variable rename on one side, parallel line add on the other.
    mk = lambda var, extra: (
        "public void doMonkeyBusiness() {\n"
        f"    {var} = Lists.newArrayList();\n"
        f"    {var}.add(new ShutdownInstanceChaosType(cfg));\n"
        + (f"    {var}.add(new DetachVolumesChaosType(cfg));\n" if extra else "")
        + "}\n"
    )
    scenario(
        "rename-vs-add",
        "java",
        ".java",
        base=mk("enabledChaosTypes", False),
        left=mk("enabledChaosTypes", True),
        right=mk("allChaosTypes", False),
        expected=mk("allChaosTypes", True),
    )

    # 3. Both sides add the same doc tag, one with a space, one with a tab.
    doc = lambda tag: (
        "/** comment\n" + (tag + "\n" if tag else "") + "*/\npublic void f() {\n}\n"
    )
    scenario(
        "doc-tag-space-vs-tab",
        "java",
        ".java",
        base=doc(""),
        left=doc("@since 0.4.0"),
        right=doc("@since\t0.4.0"),
        expected=doc("@since\t0.4.0"),
    )

    # 4. Version bump collision; the developer kept the big jump only.
    ver = lambda v: f"<project>\n  <version>{v}</version>\n</project>\n"
    scenario(
        "version-bump",
        "other",
        ".xml",
        base=ver("2.9.2-SNAPSHOT"),
        left=ver("3.4.2-SNAPSHOT"),
        right=ver("2.9.3-SNAPSHOT"),
        expected=ver("3.4.2-SNAPSHOT"),
    )

    # 5. Tabular rows added on both sides; developer ordering differs.
    rows = [
        "savulchik      | Stanislav Savulchik\n",
        "ktoso          | Konrad Malawski\n",
        "colinrgodsey   | Colin Godsey\n",
    ]
    new_rows = [
        "ouertani       | Slim Ouertani\n",
        "2m             | Martynas Mickevicius\n",
        "ldaley         | Luke Daley\n",
    ]
    right_row = "newcontrib     | New Contributor\n"
    scenario(
        "table-rows",
        "other",
        ".txt",
        base="".join(rows),
        left="".join(rows + new_rows),
        right="".join(rows + [right_row]),
        expected="".join(rows + new_rows + [right_row]),
    )

    # 6. Identical escape insertions on both sides (property file).
    scenario(
        "escape-doubling",
        "other",
        ".properties",
        base="run.args=-J-XX:PermSize=128m\n",
        left="run.args=-J-XX\\:PermSize\\=128m\n",
        right="run.args=-J-XX\\:PermSize\\=128m\n",
        expected="run.args=-J-XX\\:PermSize\\=128m\n",
    )

    # 7. Extraction on the left, call-style change (plus new comments) on the right.
    pad = (
        "\t// listener registration helpers\n"
        "\t// validation happens before the listener is stored\n"
        "\t// keep these comments in sync with the docs\n"
        "\t// (reviewed)\n"
    )
    ext_base = (
        "\tpublic void addListener(O obj) {\n"
        "\t\tnotNull(obj);\n\t\tvalidate(obj);\n"
        "\t\tListeners.add(obj.getListener());\n\t}\n\n}\n"
    )
    ext_left = (
        "\tpublic void addListener(O obj) {\n"
        "\t\trunCheck(obj);\n"
        "\t\tListeners.add(obj.getListener());\n\t}\n\n\n"
        "\tpublic void runCheck(O obj) {\n\t\tnotNull(obj);\n\t\tvalidate(obj);\n\t}\n}\n"
    )
    ext_right = (
        pad
        + "\tpublic void addListener(O obj) {\n"
        "\t\tobj.notNull();\n\t\tobj.validate();\n"
        "\t\tListeners.add(obj.getListener());\n\t}\n\n}\n"
    )
    ext_expected = (
        pad
        + "\tpublic void addListener(O obj) {\n"
        "\t\trunCheck(obj);\n"
        "\t\tListeners.add(obj.getListener());\n\t}\n\n\n"
        "\tpublic void runCheck(O obj) {\n\t\tobj.notNull();\n\t\tobj.validate();\n\t}\n}\n"
    )
    scenario(
        "extract-method", "java", ".java",
        base=ext_base, left=ext_left, right=ext_right, expected=ext_expected,
    )

    # 8. Inline on the left, new comment block on the right.
    inl_pad = "# helpers\n# arithmetic shortcuts\n# maintained by tooling\n"
    scenario(
        "inline-definition",
        "other",
        ".py",
        base="def inc(): return x+1\n# uses\na = inc()\nb = inc()\nc = inc()\n",
        left="# uses\na = x+1\nb = x+1\nc = x+1\n",
        right=inl_pad + "def inc(): return x+1\n# uses\na = inc()\nb = inc()\nc = inc()\n",
        expected=inl_pad + "# uses\na = x+1\nb = x+1\nc = x+1\n",
    )

    # 9. Extraction whose insertion anchor (the blank line) vanished on the right.
    anchor_right = (
        pad
        + "\tpublic void addListener(O obj) {\n"
        "\t\tobj.notNull();\n\t\tobj.validate();\n"
        "\t\tListeners.add(obj.getListener());\n\t}\n}\n"  # no blank line
    )
    anchor_expected = (
        pad
        + "\tpublic void addListener(O obj) {\n"
        "\t\trunCheck(obj);\n"
        "\t\tListeners.add(obj.getListener());\n\t}\n"
        "\tpublic void runCheck(O obj) {\n\t\tobj.notNull();\n\t\tobj.validate();\n\t}\n}\n"
    )
    scenario(
        "extract-anchor-gone", "java", ".java",
        base=ext_base, left=ext_left, right=anchor_right, expected=anchor_expected,
    )

    # 10. Imports added on both sides; developer kept them sorted.
    imp = lambda extra_after_a, extra_after_c: (
        "import a.A;\n"
        + ("import z.Z;\n" if False else "")
        + ("" if not extra_after_a else extra_after_a)
        + "import c.C;\n"
        + ("" if not extra_after_c else extra_after_c)
        + "\nclass T {}\n"
    )
    scenario(
        "parallel-imports",
        "java",
        ".java",
        base=imp("", ""),
        left=imp("", "import z.Z;\n"),
        right=imp("", "import d.D;\n"),
        expected=imp("", "import d.D;\nimport z.Z;\n"),
    )

    # 11. Real edits on both sides plus trailing-whitespace noise on one.
    scenario(
        "whitespace-noise",
        "other",
        ".cfg",
        base="x = 1\ny = 2\n",
        left="x = 1  \ny = 3\n",
        right="x = 9\ny = 2\n",
        expected="x = 9\ny = 3\n",
    )

    # 12. Module-path rename sweep racing an argument tweak.
    go = lambda host, args: (
        f'import bc "{host}.com/txaty/bigcomplex"\n'
        "func main() {\n"
        f"g1 := NewGaussianInt({args}) // 5 + 6i\n"
        "div := new(GaussianInt).Div(g1, g1)\n"
        "fmt.Println(div)\n"
        "}\n"
    )
    scenario(
        "module-rename-sweep",
        "other",
        ".go",
        base=go("github", "5, 6"),
        left=go("gitlab", "5, 6"),
        right=go("github", "7, 8"),
        expected=go("gitlab", "7, 8"),
    )

    with open(os.path.join(ROOT, "manifest.json"), "w", encoding="utf-8") as fh:
        json.dump({"scenarios": SCENARIOS}, fh, indent=2)
        fh.write("\n")
    print(f"wrote {len(SCENARIOS)} scenarios to {os.path.abspath(ROOT)}")


if __name__ == "__main__":
    main()
