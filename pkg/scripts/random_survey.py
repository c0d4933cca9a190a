"""Tally tiling-space verdicts over random primitive substitutions.

    python scripts/random_survey.py --samples 500 --letters 3 --max-len 4 --seed 0
"""

import argparse
import random
from collections import Counter
from dataclasses import dataclass

from tileshape import Substitution, analyze_substitution, is_primitive
from tileshape.freegroup import Alphabet, Word


@dataclass(frozen=True)
class SurveyConfig:
    samples: int = 500
    letters: int = 3
    max_len: int = 4
    seed: int = 0
    cap_border: int = 6
    cap_proper: int = 6


def random_substitution(rng: random.Random, cfg: SurveyConfig) -> Substitution:
    alphabet = Alphabet.of("abcdefgh"[: cfg.letters])
    rules = tuple(
        Word(tuple((rng.randrange(cfg.letters), 1) for _ in range(rng.randint(1, cfg.max_len))))
        for _ in range(cfg.letters)
    )
    return Substitution(alphabet, rules)


def survey(cfg: SurveyConfig) -> dict[str, Counter]:
    rng = random.Random(cfg.seed)
    tallies = {k: Counter() for k in ("rose", "border", "gluing", "L", "route")}
    done = 0
    while done < cfg.samples:
        s = random_substitution(rng, cfg)
        if not is_primitive(s):
            continue
        r = analyze_substitution(s, cfg.cap_border, cfg.cap_proper)
        tallies["rose"][r.rose_lim1.verdict.value] += 1
        tallies["border"][r.border.status.value] += 1
        tallies["gluing"]["connected" if r.gluing.connected else "disconnected"] += 1
        tallies["L"][r.l_verdict.value] += 1
        tallies["route"]["abelian shortcut" if r.rose_lim1.shortcut else "free tower"] += 1
        done += 1
    return tallies


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in vars(SurveyConfig()).items():
        p.add_argument("--" + name.replace("_", "-"), type=int, default=default)
    cfg = SurveyConfig(**vars(p.parse_args()))
    print(cfg)
    for key, counts in survey(cfg).items():
        total = sum(counts.values())
        parts = ", ".join(f"{k}: {v} ({100 * v / total:.1f}%)" for k, v in counts.most_common())
        print(f"{key:>7}  {parts}")


if __name__ == "__main__":
    main()
