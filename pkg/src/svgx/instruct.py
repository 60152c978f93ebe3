"""Instruction-following training records.

Five record types: two SVG-generation templates (text, text+image) and
three SVG-understanding templates (text, text+image, per-group). Loss
spans cover exactly the assistant content, as byte offsets.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Optional

from .codec import encode, to_text
from .errors import GroupMismatch, InsufficientSamples, MissingField
from .ir import GEOMETRY_KINDS, Node, SvgDocument
from .codec import TokenSeq

EOS = "</s>"
IMAGE_MARKER = "<image>"

SYSTEM_GENERATE = f"You are a helpful assistant, please help me generate SVG {EOS}"
SYSTEM_GENERATE_IMG = ("You are a helpful assistant, please help me generate "
                       f"an SVG from this image and description. {EOS}")
SYSTEM_IDENTIFY = f"Attempt to identify this SVG {EOS}"
SYSTEM_DESCRIBE = f"Describe this SVG based on its image representation {EOS}"

USER_T1 = f"Generate an SVG illustration from the given description: {{prompt}} {EOS}"
USER_T2 = (f"Refer to rendering image: {IMAGE_MARKER} and generate SVG "
           f"from the given description: {{prompt}} {EOS}")
USER_T3 = "The following is an SVG illustration: {svg}"
USER_T4 = f"The following is an SVG illustration: {{svg}} rendering result: {IMAGE_MARKER}"
USER_T5_LINE = f"SVG group {{index}}: {{svg}} rendering result: {IMAGE_MARKER}"

ASSISTANT_SVG = f"{{svg}} {EOS}"
ASSISTANT_T3 = f"Text description of this SVG: {{desc}} {EOS}"
ASSISTANT_T4 = ("Text description of this SVG: {desc}. "
                f"This SVG contains {{n_path}} primitives. {EOS}")
ASSISTANT_T5_HEAD = "Text description of this SVG: {desc}"
ASSISTANT_T5_LINE = ("The {ordinal} SVG group contains {n_paths} primitives "
                     "representing {desc}")


@dataclass(frozen=True)
class GroupImage:
    group_index: int          # 0-based index into the document's groups
    image_path: str
    desc: str = ""


@dataclass
class SampleInputs:
    svg: SvgDocument
    prompt: str = ""
    desc: str = ""
    image_path: Optional[str] = None
    group_images: list = field(default_factory=list)


@dataclass
class InstructionRecord:
    template_id: int
    messages: list              # of (role, content)
    images: list = field(default_factory=list)
    loss_spans: list = field(default_factory=list)  # (msg index, start, end)

    def to_dict(self) -> dict:
        return {
            "template": self.template_id,
            "messages": [{"role": r, "content": c} for r, c in self.messages],
            "images": list(self.images),
            "loss_spans": [list(s) for s in self.loss_spans],
        }


def ordinal(n: int) -> str:
    if 10 <= n % 100 <= 20:
        suffix = "th"
    else:
        suffix = {1: "st", 2: "nd", 3: "rd"}.get(n % 10, "th")
    return f"{n}{suffix}"


def primitive_count(nodes) -> int:
    count = 0
    stack = list(nodes)
    while stack:
        node = stack.pop()
        if node.kind in GEOMETRY_KINDS:
            count += 1
        stack.extend(node.children)
    return count


def _groups(doc: SvgDocument) -> list:
    return [n for n in doc.walk() if n.kind == "group"]


def _group_text(group: Node) -> str:
    from .codec import _encode_node  # single-node serialization
    items = []
    _encode_node(group, items)
    return to_text(TokenSeq(tuple(items)))


def _svg_text(doc: SvgDocument) -> str:
    return to_text(encode(doc))


def loss_mask(record: InstructionRecord) -> list:
    """Byte spans covering exactly each assistant message's content."""
    spans = []
    for i, (role, content) in enumerate(record.messages):
        if role == "assistant":
            spans.append((i, 0, len(content.encode("utf-8"))))
    return spans


def build_record(template_id: int, inputs: SampleInputs) -> InstructionRecord:
    if template_id not in (1, 2, 3, 4, 5):
        raise ValueError(f"unknown template id {template_id}")

    svg_text = _svg_text(inputs.svg)
    images = []

    if template_id == 1:
        if not inputs.prompt:
            raise MissingField("template #1 requires a prompt")
        system = SYSTEM_GENERATE
        user = USER_T1.format(prompt=inputs.prompt)
        assistant = ASSISTANT_SVG.format(svg=svg_text)
    elif template_id == 2:
        if not inputs.prompt:
            raise MissingField("template #2 requires a prompt")
        if not inputs.image_path:
            raise MissingField("template #2 requires an image")
        system = SYSTEM_GENERATE_IMG
        user = USER_T2.format(prompt=inputs.prompt)
        assistant = ASSISTANT_SVG.format(svg=svg_text)
        images.append(inputs.image_path)
    elif template_id == 3:
        if not inputs.desc:
            raise MissingField("template #3 requires a description")
        system = SYSTEM_IDENTIFY
        user = USER_T3.format(svg=svg_text)
        assistant = ASSISTANT_T3.format(desc=inputs.desc)
    elif template_id == 4:
        if not inputs.desc:
            raise MissingField("template #4 requires a description")
        if not inputs.image_path:
            raise MissingField("template #4 requires an image")
        system = SYSTEM_DESCRIBE
        user = USER_T4.format(svg=svg_text)
        assistant = ASSISTANT_T4.format(
            desc=inputs.desc, n_path=primitive_count(inputs.svg.elements))
        images.append(inputs.image_path)
    else:
        if not inputs.desc:
            raise MissingField("template #5 requires a description")
        if not inputs.group_images:
            raise MissingField("template #5 requires group images")
        groups = _groups(inputs.svg)
        if len(inputs.group_images) > len(groups):
            raise GroupMismatch(
                f"{len(inputs.group_images)} group images but only "
                f"{len(groups)} groups")
        system = SYSTEM_DESCRIBE
        user_lines = []
        answer_lines = [ASSISTANT_T5_HEAD.format(desc=inputs.desc)]
        for i, gi in enumerate(inputs.group_images, start=1):
            group = groups[gi.group_index]
            user_lines.append(USER_T5_LINE.format(
                index=i, svg=_group_text(group)))
            answer_lines.append(ASSISTANT_T5_LINE.format(
                ordinal=ordinal(i),
                n_paths=primitive_count(group.children),
                desc=gi.desc))
            images.append(gi.image_path)
        user = "\n".join(user_lines) + f" {EOS}"
        assistant = "\n".join(answer_lines) + f" {EOS}"

    record = InstructionRecord(
        template_id,
        [("system", system), ("user", user), ("assistant", assistant)],
        images)
    record.loss_spans = loss_mask(record)
    return record


def _eligible(template_id: int, sample: SampleInputs) -> bool:
    if template_id in (1, 2) and not sample.prompt:
        return False
    if template_id in (3, 4, 5) and not sample.desc:
        return False
    if template_id in (2, 4) and not sample.image_path:
        return False
    if template_id == 5:
        if not sample.group_images:
            return False
        if len(sample.group_images) > len(_groups(sample.svg)):
            return False
    return True


def record_json(record: InstructionRecord) -> str:
    return json.dumps(record.to_dict(), ensure_ascii=False,
                      separators=(",", ":"), sort_keys=True)


def build_corpus(samples, mix: dict, seed: int = 0):
    """Yield JSONL lines per the template mix; returns via StopIteration
    a manifest of realized counts.

    Deterministic for a fixed seed: templates are processed in ascending
    id order, and sample assignment uses a seeded RNG.
    """
    samples = list(samples)
    rng = random.Random(seed)
    manifest = {}
    lines = []
    for template_id in sorted(mix):
        count = mix[template_id]
        pool = [s for s in samples if _eligible(template_id, s)]
        if count > len(pool):
            raise InsufficientSamples(
                f"template #{template_id}: requested {count}, "
                f"eligible {len(pool)}")
        chosen = rng.sample(pool, count)
        for sample in chosen:
            lines.append(record_json(build_record(template_id, sample)))
        manifest[template_id] = count
    return lines, manifest
