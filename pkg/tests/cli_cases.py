"""Fixed CLI invocations shared by the golden-file tests and the regeneration script.

Each case is ``(name, argv, expected exit code)``; ``{fx}`` expands to the
fixture directory and ``{out}`` to the output file for that case.
"""
from pathlib import Path

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"

CASES = [
    ("apply_translation", ["apply", "{fx}/translation_a1.json", "{fx}/z2.json", "--p", "1", "--tau", "1", "--report", "{out}"], 0),
    ("apply_dilation", ["apply", "{fx}/dilation_s1.json", "{fx}/z3.json", "--p", "1", "--tau", "1", "--report", "{out}"], 0),
    ("extract_identity", ["extract", "{fx}/identity_table.json", "--max-order", "8", "--out", "{out}"], 0),
    ("extract_translation2", ["extract", "{fx}/translation2_table.json", "--max-order", "8", "--out", "{out}"], 0),
    ("classify_translation", ["classify", "{fx}/translation_a1.json", "--p", "1", "--out", "{out}"], 0),
    ("classify_minimal_config", ["--config", "{fx}/config_classify.json", "classify", "{fx}/translation_a1.json", "--out", "{out}"], 0),
    ("norm_z3", ["norm", "{fx}/z3.json", "--p", "1", "--tau", "1", "--out", "{out}"], 0),
    ("schrodinger_poly", ["schrodinger", "--t", "0.25", "--phi", "{fx}/poly.json", "--out", "{out}"], 0),
]


def expand(argv, out):
    return [a.format(fx=FIXTURES, out=out) for a in argv]
