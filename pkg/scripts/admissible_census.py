#!/usr/bin/env python3
"""Census of admissible J-invariant values per torsion-table row.

Prints, for each (form, p), the size of the candidate box prod(k_i + 1)
and how many candidates survive the constraint rules.
"""

import argparse
import sys

from jcalc.sweep import admissible_census


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-rank", type=int, default=8)
    args = parser.parse_args()

    rows = admissible_census(args.max_rank)
    width = max(len(name) for name, _p, _b, _a in rows)
    print("%-*s  %2s  %6s  %10s" % (width, "form", "p", "box", "admissible"))
    total_box = total_adm = 0
    for name, p, box, admissible in rows:
        total_box += box
        total_adm += admissible
        marker = "" if box == admissible else "  (filtered)"
        print("%-*s  %2d  %6d  %10d%s" % (width, name, p, box, admissible, marker))
    print("%-*s      %6d  %10d" % (width, "total", total_box, total_adm))
    return 0


if __name__ == "__main__":
    sys.exit(main())
