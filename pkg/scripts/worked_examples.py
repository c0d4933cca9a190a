"""Print a verdict table for a fixed set of small substitutions.

    python scripts/worked_examples.py [--cap-border N] [--json]
"""

import argparse
import json
from dataclasses import dataclass

from tileshape import FreeEndo, Substitution, analyze_endo, analyze_substitution, image_tower, is_automorphism
from tileshape.substitution import rose_endo


@dataclass(frozen=True)
class Config:
    cap_border: int = 8
    cap_proper: int = 8
    as_json: bool = False


EXAMPLES = [
    ("fibonacci", "ab", ["ab", "a"]),
    ("fibonacci cubed", "ab", ["abaab", "aba"]),
    ("abc", "abc", ["abc", "abc", "a"]),
    ("non-unimodular", "ab", ["ababa", "baaab"]),
    ("not onto", "abc", ["aaca", "abca", "bcb"]),
    ("same cohomology as cube", "ab", ["ababa", "baa"]),
    ("proper, invertible", "ab", ["ab", "aab"]),
    ("neighbour forced", "abc", ["b", "c", "bab"]),
]


def row(name, letters, images, cfg):
    s = Substitution.from_strings(letters, images)
    e = rose_endo(s)
    report = analyze_substitution(s, cfg.cap_border, cfg.cap_proper)
    tower = image_tower(e)
    return {
        "name": name,
        "rules": " ".join(f"{x}->{w}" for x, w in zip(letters, images)),
        "ranks": list(tower.ranks),
        "automorphism": is_automorphism(e),
        "rose": report.rose_lim1.verdict.value,
        "border": f"{report.border.status.value}({report.border.level})",
        "gluing": report.gluing.connected,
        "L": report.l_verdict.value,
        "endo_stable": analyze_endo(e).stable.value,
        "surface": report.surface_embedding.value,
        "H1": report.h1.descriptor,
    }


def main(cfg: Config):
    rows = [row(*ex, cfg) for ex in EXAMPLES]
    solenoid = analyze_endo(FreeEndo.from_strings("a", ["aa"]))
    if cfg.as_json:
        print(json.dumps({"substitutions": rows, "doubling_stable": solenoid.stable.value}, indent=2))
        return
    cols = list(rows[0])
    widths = {c: max(len(c), *(len(str(r[c])) for r in rows)) for c in cols}
    print("  ".join(c.ljust(widths[c]) for c in cols))
    for r in rows:
        print("  ".join(str(r[c]).ljust(widths[c]) for c in cols))
    print(f"\none-letter doubling a->aa: stable = {solenoid.stable.value}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--cap-border", type=int, default=8)
    p.add_argument("--cap-proper", type=int, default=8)
    p.add_argument("--json", action="store_true")
    a = p.parse_args()
    main(Config(a.cap_border, a.cap_proper, a.json))
