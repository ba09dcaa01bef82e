"""Versioned JSON wire format for step sequences.

Strings ride inside JSON, so tabs, newlines, and other control characters
survive verbatim. Move patterns are carried structurally (prefix and suffix
around the capture slot) rather than with an in-band marker character, so no
file content can ever collide with the slot.
"""

from __future__ import annotations

import json

from .engine import FileAdd, FileDelete, FileRename, Step
from .moves import Antecedent, Consequent, MovePattern, MoveRule
from .rules import RewriteRule

FORMAT_VERSION = 1


def step_to_obj(step: Step) -> dict:
    if isinstance(step, RewriteRule):
        return {"kind": "rewrite", "lhs": step.lhs, "rhs": step.rhs}
    if isinstance(step, MoveRule):
        return {
            "kind": "move",
            "antecedent": {
                "prefix": step.antecedent.lhs.literal_prefix,
                "suffix": step.antecedent.lhs.literal_suffix,
                "rhs": step.antecedent.rhs,
            },
            "consequent": {
                "lhs": step.consequent.lhs,
                "prefix": step.consequent.rhs.literal_prefix,
                "suffix": step.consequent.rhs.literal_suffix,
            },
        }
    if isinstance(step, FileAdd):
        return {"kind": "file_add", "path": step.path, "content": step.content}
    if isinstance(step, FileDelete):
        return {"kind": "file_delete", "path": step.path}
    if isinstance(step, FileRename):
        return {"kind": "file_rename", "old": step.old, "new": step.new}
    raise TypeError(f"unknown step: {step!r}")


def obj_to_step(obj: dict) -> Step:
    kind = obj.get("kind")
    if kind == "rewrite":
        return RewriteRule(obj["lhs"], obj["rhs"])
    if kind == "move":
        a = obj["antecedent"]
        c = obj["consequent"]
        return MoveRule(
            Antecedent(MovePattern(a["prefix"], True, a["suffix"]), a["rhs"]),
            Consequent(c["lhs"], MovePattern(c["prefix"], True, c["suffix"])),
        )
    if kind == "file_add":
        return FileAdd(obj["path"], obj["content"])
    if kind == "file_delete":
        return FileDelete(obj["path"])
    if kind == "file_rename":
        return FileRename(obj["old"], obj["new"])
    raise ValueError(f"unknown step kind: {kind!r}")


def serialize_steps(steps: list[Step]) -> str:
    doc = {"version": FORMAT_VERSION, "steps": [step_to_obj(s) for s in steps]}
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def parse_steps(text: str) -> list[Step]:
    doc = json.loads(text)
    if not isinstance(doc, dict) or doc.get("version") != FORMAT_VERSION:
        raise ValueError("unsupported step document version")
    return [obj_to_step(o) for o in doc["steps"]]
