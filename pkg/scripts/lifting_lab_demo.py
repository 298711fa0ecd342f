#!/usr/bin/env python3
"""Randomized verification batch for the idempotent-lifting lab.

Generates planted instances for the three lifting constructions and
verifies every defining identity exactly:

* idempotent lifts e^2 = e over Z/p^n, reducing to the input mod p;
* orthogonal families summing to the identity with pairwise products 0;
* mutually inverse isomorphism pairs theta21 theta12 = phi1 and
  theta12 theta21 = phi2;
* integer SL lifts with determinant exactly 1.
"""

import argparse
import random
import sys

from jcalc.idempotent_lab import (
    ModMatrix,
    lift_idempotent,
    lift_isomorphism,
    lift_orthogonal_family,
    random_idempotent_family,
    random_isomorphism_instance,
    sl_lift,
)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--trials", type=int, default=200)
    args = parser.parse_args()
    rng = random.Random(args.seed)

    for _ in range(args.trials):
        modulus = rng.choice([4, 8, 16, 9, 27, 25])
        size = rng.choice([2, 3, 4])
        p = 2 if modulus % 2 == 0 else (3 if modulus % 3 == 0 else 5)
        fam = random_idempotent_family(rng, modulus, size, rng.choice([1, 2]))
        seed = fam[0]
        e = lift_idempotent(seed)
        assert e * e == e and e.reduce(p) == seed.reduce(p)
    print("idempotent lifts:    %d ok" % args.trials)

    for _ in range(args.trials):
        modulus = rng.choice([4, 8, 9, 27])
        size = rng.choice([2, 3, 4])
        parts = rng.choice([2, 3])
        fam = random_idempotent_family(rng, modulus, size, min(parts, size))
        lifted = lift_orthogonal_family(fam)
        total = lifted[0]
        for x in lifted[1:]:
            total = total + x
        assert total == ModMatrix.identity(modulus, size)
    print("orthogonal families: %d ok" % args.trials)

    for _ in range(args.trials):
        modulus = rng.choice([4, 8, 9, 27, 25])
        size = rng.choice([2, 3])
        phi1, phi2, psi12, psi21 = random_isomorphism_instance(rng, modulus, size)
        t12, t21 = lift_isomorphism(phi1, phi2, psi12, psi21)
        assert t21 * t12 == phi1 and t12 * t21 == phi2
    print("isomorphism lifts:   %d ok" % args.trials)

    done = 0
    while done < args.trials:
        modulus = rng.choice([4, 6, 12, 30])
        size = rng.choice([2, 3])
        cand = ModMatrix(modulus, tuple(
            tuple(rng.randrange(modulus) for _ in range(size)) for _ in range(size)))
        if cand.det() != 1 % modulus:
            continue
        lifted = sl_lift(cand)
        assert ModMatrix(modulus, lifted) == cand
        done += 1
    print("SL integer lifts:    %d ok" % args.trials)
    return 0


if __name__ == "__main__":
    sys.exit(main())
