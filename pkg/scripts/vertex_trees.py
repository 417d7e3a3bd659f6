#!/usr/bin/env python3
"""Print the shadows of the first few levels of the trees at the quadrilateral's vertices."""
import argparse

from shadowmarkoff.dualcore import check_shadow_equation, sigma_of_root
from shadowmarkoff.treewalk import build_tree, path, word_str

VERTICES = [(0, 0, 1), (1, 0, 2), (1, 1, 1), (0, 2, 1)]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--height", type=int, default=4)
    args = ap.parse_args(argv)
    for root in VERTICES:
        sigma = sigma_of_root(*root)
        print(f"root {root}  sigma={sigma.value}")
        for k, s in enumerate(path(*root)[:2]):
            print(f"  {'(root)' if k == 0 else '(r)':8s} c={s.c} gamma={s.gamma}")
        for word, s in build_tree(*root, args.height).walk():
            ok = "" if check_shadow_equation(s.triple(), sigma) else "  EQUATION FAILS"
            print(f"  {word_str(word) or '(rl)':8s} c={s.c} gamma={s.gamma}{ok}")


if __name__ == "__main__":
    main()
