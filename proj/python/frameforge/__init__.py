"""Frame problems to models, OpenSeesPy scripts, analysis results and SVG diagrams."""

import functools
import json

from . import _frameforge

__all__ = [
    "FrameforgeError",
    "parse_problem_template",
    "serialize_problem_template",
    "validate_problem",
    "make_stepped_frame",
    "plan_construction",
    "check_plan",
    "build_model",
    "count_law",
    "solve_static",
    "emit_script",
    "lint_script",
    "render_svg",
    "score_trial",
    "compute_cost",
    "run_pipeline",
    "run_bench",
]


class FrameforgeError(Exception):
    """Raised for every core error; `code` is the error name, `details` a dict."""

    def __init__(self, code, message, details):
        super().__init__(f"{code}: {message}")
        self.code = code
        self.message = message
        self.details = details


def _core(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except _frameforge.Error as e:
            code, message, details = e.args
            raise FrameforgeError(code, message, json.loads(details)) from None

    return wrapper


def _dump(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


@_core
def parse_problem_template(text, validate=True):
    if validate:
        return json.loads(_frameforge.parse_problem_template(text))
    return json.loads(_frameforge.parse_problem_template_unchecked(text))


@_core
def serialize_problem_template(problem):
    return _frameforge.serialize_problem_template(_dump(problem))


@_core
def validate_problem(problem):
    return json.loads(_frameforge.validate_problem(_dump(problem)))


@_core
def make_stepped_frame(story_counts, span=6.0, level_heights=None):
    heights = level_heights if level_heights is not None else [3.0] * max(story_counts)
    return json.loads(_frameforge.make_stepped_frame(list(story_counts), span, list(heights)))


@_core
def plan_construction(problem):
    return json.loads(_frameforge.plan_construction(_dump(problem)))


@_core
def check_plan(problem, plan):
    return json.loads(_frameforge.check_plan(_dump(problem), _dump(plan)))


@_core
def build_model(problem):
    return json.loads(_frameforge.build_model(_dump(problem)))


@_core
def count_law(problem):
    return json.loads(_frameforge.count_law(_dump(problem)))


@_core
def solve_static(model, stations=21):
    return json.loads(_frameforge.solve_static(_dump(model), stations))


@_core
def emit_script(model):
    return _frameforge.emit_script(_dump(model))


@_core
def lint_script(script):
    return json.loads(_frameforge.lint_script(script))


@_core
def render_svg(model, result=None):
    return _frameforge.render_svg(_dump(model), None if result is None else _dump(result))


@_core
def score_trial(result, oracle, rel=1e-6, abs=1e-12):
    return json.loads(_frameforge.score_trial(_dump(result), _dump(oracle), rel, abs))


@_core
def compute_cost(usage):
    """usage: list of {"model", "input_tokens", "output_tokens"[, "role"]}."""
    return json.loads(_frameforge.compute_cost(_dump(usage)))


@_core
def run_pipeline(text, backend="deterministic", config=None, fixtures=None):
    cfg = None if config is None else _dump(config)
    return json.loads(_frameforge.run_pipeline(text, backend, cfg, None if fixtures is None else str(fixtures)))


@_core
def run_bench(preset="paper20", trials=1, seed=7):
    return json.loads(_frameforge.run_bench(preset, trials, seed))
