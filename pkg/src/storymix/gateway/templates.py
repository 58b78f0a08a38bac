"""Prompt templates.

The five analysis prompts (segment, protagonist, emotions, infer-strategies,
categorize) are fixed text and must not drift: downstream fixtures are keyed
on their rendered bytes.  Placeholders use <<name>> markers because several
templates contain literal JSON braces.

Analysis templates default to temperature 0; generation templates (revise,
continue, reflect) default to 0.8.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import UnboundPlaceholder

_PLACEHOLDER_RE = re.compile(r"<<([a-z_]+)>>")

SEGMENT_SYSTEM = """You are an expert story analyst. Your task is to segment a given story into coherent plot segments that represent distinct narrative beats.

**Segment Criteria:**
- Each segment should be self-contained enough to understand independently
- Aim for 5-10 segments depending on story length and complexity
- Each segment should represent a meaningful story progression
- Avoid overly short segments (less than 50 words) or overly long segments (more than 300 words)

**Output Format:**
Return your response as a JSON object with this exact structure:
{"plots": [{"title": "Brief, descriptive title (3-8 words)", "plot": "Original text content from this story segment (extracted verbatim from the source)", "summary": "Concise summary of what happens in this segment"}]}."""

SEGMENT_CONTEXT = "The story title is <<title>> and the story is: <<story>>"

PROTAGONIST_SYSTEM = """Who is the main character of the this story?
The output should just be a name or a short phrase. Do not include any other information or context."""

PROTAGONIST_CONTEXT = "The story is: <<story>>"

EMOTIONS_SYSTEM = """Use three different words to describe the character's feeling in a given story plot.
The output should be a list of words. For example, [happy, sad, joyful]. Do not include other outputs."""

EMOTIONS_CONTEXT = "How does <<protagonist>> feel in this plot? <<plot>>"

INFER_SYSTEM = """You are an expert literary analyst tasked with identifying creative strategies used in story plots. Creative strategies are any storytelling techniques, narrative devices, plot mechanisms, stylistic choices, or structural elements that authors use to create compelling narratives, engage readers, or achieve specific artistic effects.

**Your task:**
Analyze the given plot and identify all creative strategies employed. For each strategy, provide:
1. A concise phrase describing the strategy (2-6 words)
2. A detailed explanation of how and why this strategy is used effectively
3. Specific lexical features (words, phrases, linguistic patterns) that contribute to or signal this strategy

**What Constitutes a Creative Strategy:**
Any deliberate creative choice that serves a narrative purpose, including but not limited to:
- How information is revealed or withheld
- Character development and interaction patterns
- Structural and pacing decisions
- Language and tone choices
- Conflict creation and resolution approaches
- Thematic development techniques
- Reader engagement mechanisms
- Innovative or unexpected narrative elements

**Lexical Features to Identify:**
For each strategy, extract EXACT verbatim text from the original plot that contributes to or signals the strategy:
- Copy exact words, phrases, or sentences as they appear in the plot
- Include direct quotes from dialogue exactly as written
- Extract precise descriptive language or imagery
- Identify specific repeated words or phrases
- Copy transitional phrases or structural markers verbatim
- Quote any language that contributes to the strategy's effectiveness
- Do NOT paraphrase, interpret, or modify the original text - use exact quotations only Return output

**Output Format:**
Return your response as a JSON object with this exact structure:
{"strategies":[{"strategy":"Brief strategy name (2-6 words)","reasoning":"1-3 sentence explanation of how this strategy functions and why it's effective.","lexicon":["word1","phrase2","linguistic pattern3"]}]}."""

INFER_CONTEXT = """The story plot is: <<plot>>

Please analyze this plot and identify all creative strategies employed. Look for any storytelling techniques, narrative choices, or creative elements that serve a purpose in the story - don't limit yourself to traditional categories.

For each strategy you identify:
1. Name the strategy clearly and concisely
2. Explain how it functions in the plot and why it's effective
3. Extract EXACT verbatim words, phrases, or sentences from the plot text above that contribute to or signal this strategy - use precise quotations only, do not paraphrase or modify the original text

Be thorough and creative in your analysis. Consider both obvious techniques and subtle creative choices that make this plot work."""

CATEGORIZE_SYSTEM = """You are an expert literary analyst tasked with categorizing creative strategies according to a comprehensive taxonomy. Each strategy should be assigned to one or two primary categories based on its main functions and effects.

**Your task:**
For each creative strategy provided, determine the PRIMARY CATEGORY (or two categories if the strategy serves multiple major functions) that best describes the strategy's main function(s).

**Taxonomy Categories:**
<<taxonomy>>

**Guidelines:**
- Choose 1-2 categories that represent the strategy's primary functions
- If a strategy clearly serves two major narrative purposes, assign both categories
- Focus on what the strategy DOES rather than what it contains
- Consider the strategy's main purpose(s) in the narrative context
- Only use two categories if the strategy genuinely has dual primary functions - avoid over-categorizing

**Output Format:**
Return your response as a JSON object with only the category assignment(s):
{"category": ["PRIMARY_CATEGORY"]} or {"category": ["CATEGORY_1","CATEGORY_2"]}."""

CATEGORIZE_CONTEXT = """Please categorize the following creative strategy: <<strategy>> used in the plot: <<plot>>.

The explanation for this strategy is: <<explanation>>.

Assign it to one or two primary categories based on its main function(s) and narrative purpose(s). Use two categories only when the strategy genuinely serves dual major functions."""

TURNING_POINT_SYSTEM = """You are an expert story analyst. Decide whether the given story block contains the turning point described below.

Turning point: <<tp_name>>: <<tp_definition>>

Answer with a single word: yes or no."""

TURNING_POINT_CONTEXT = "The story block is: <<plot>>"

REVISE_SYSTEM = """You are a skilled fiction editor. Rewrite ONLY the target story block so that it applies each of the listed narrative strategies, while maintaining narrative coherence with the rest of the draft. Keep character names, tense, and point of view consistent with the surrounding blocks. Return only the rewritten block as plain text, with no preamble, labels, or commentary."""

REVISE_CONTEXT = """The full draft is:
<<draft>>

The target block to rewrite is:
<<block>>

Apply these strategies:
<<strategies>>"""

CONTINUE_SYSTEM = """You are a skilled fiction writer. Continue the story with one new story block that applies each of the listed narrative strategies and maintains narrative coherence with the draft so far. Keep character names, tense, and point of view consistent. Return only the new block as plain text, with no preamble, labels, or commentary."""

CONTINUE_CONTEXT = """The draft so far is:
<<draft>>

Apply these strategies:
<<strategies>><<hint_section>>"""

REFLECT_SYSTEM = """You are a writing mentor. Compare how the named narrative strategy is realized in an example passage and in a writer's revised passage, and identify the key differences and similarities between them.

Return your response as a JSON object with this exact structure:
{"example_cues": ["verbatim phrase from the example passage"], "revised_cues": ["verbatim phrase from the revised passage"], "commentary": "2-4 sentences on the key differences and similarities"}.
Cues must be exact quotations from their respective texts."""

REFLECT_CONTEXT = """The strategy is <<strategy>>: <<explanation>>

The example passage is:
<<example>>

The revised passage is:
<<revised>>"""


@dataclass(frozen=True)
class PromptTemplate:
    id: str
    system: str
    context: str
    schema_id: str | None = None
    generation: bool = False  # generation templates default to temperature 0.8

    @property
    def default_temperature(self) -> float:
        return 0.8 if self.generation else 0.0


TEMPLATES: dict[str, PromptTemplate] = {
    t.id: t
    for t in [
        PromptTemplate("segment", SEGMENT_SYSTEM, SEGMENT_CONTEXT, schema_id="segment"),
        PromptTemplate("protagonist", PROTAGONIST_SYSTEM, PROTAGONIST_CONTEXT),
        PromptTemplate("emotions", EMOTIONS_SYSTEM, EMOTIONS_CONTEXT),
        PromptTemplate("infer-strategies", INFER_SYSTEM, INFER_CONTEXT, schema_id="strategies"),
        PromptTemplate("categorize", CATEGORIZE_SYSTEM, CATEGORIZE_CONTEXT, schema_id="category"),
        PromptTemplate("turning-point", TURNING_POINT_SYSTEM, TURNING_POINT_CONTEXT),
        PromptTemplate("revise", REVISE_SYSTEM, REVISE_CONTEXT, generation=True),
        PromptTemplate("continue", CONTINUE_SYSTEM, CONTINUE_CONTEXT, generation=True),
        PromptTemplate("reflect", REFLECT_SYSTEM, REFLECT_CONTEXT, schema_id="reflect", generation=True),
    ]
}


@dataclass(frozen=True)
class RenderedPrompt:
    template_id: str
    system: str
    context: str
    schema_id: str | None
    generation: bool


def _substitute(text: str, bindings: dict[str, str], template_id: str) -> str:
    def repl(m: re.Match) -> str:
        name = m.group(1)
        if name not in bindings:
            raise UnboundPlaceholder(f"template {template_id!r}: placeholder <<{name}>> is unbound")
        return str(bindings[name])

    return _PLACEHOLDER_RE.sub(repl, text)


def render(template_id: str, bindings: dict[str, str]) -> RenderedPrompt:
    """Render a template; raises UnboundPlaceholder on missing bindings."""
    if template_id not in TEMPLATES:
        raise KeyError(f"unknown template {template_id!r}")
    t = TEMPLATES[template_id]
    return RenderedPrompt(
        template_id=t.id,
        system=_substitute(t.system, bindings, t.id),
        context=_substitute(t.context, bindings, t.id),
        schema_id=t.schema_id,
        generation=t.generation,
    )


def format_strategy_list(strategies: list[dict]) -> str:
    """Strategy bullet list shared by revise/continue/reflect bindings.

    Each entry needs ``name`` and ``explanation``; ``cues`` is optional.
    """
    lines = []
    for s in strategies:
        line = f"- {s['name']}: {s['explanation']}"
        cues = s.get("cues") or []
        if cues:
            quoted = ", ".join(f'"{c}"' for c in cues)
            line += f" (example cues: {quoted})"
        lines.append(line)
    return "\n".join(lines)
