from tamefill._core import (
    Error,
    almost_convex,
    ball_dot,
    ball_json,
    bs1p_nf,
    combing_json,
    diagram_json,
    diagram_svg,
    flow_verified,
    gamma,
    nf,
    parse,
    presentation_text,
    preset_names,
    tameness,
    thompson_nf,
)

__all__ = [
    "Error",
    "almost_convex",
    "ball_dot",
    "ball_json",
    "bs1p_nf",
    "combing_json",
    "diagram_json",
    "diagram_svg",
    "flow_verified",
    "gamma",
    "nf",
    "parse",
    "presentation_text",
    "preset_names",
    "tameness",
    "thompson_nf",
]
