"""Survey genus fields of quadratic fields Q(sqrt(d)).

For every fundamental discriminant with |d| <= BOUND, print the genus
and extended genus degrees over Q(sqrt(d)), the gap between them, and
the ramified primes with their components.  Ends with the gap tally:
the gap is 2 exactly when the field is real but every component of the
extended genus group is odd at some prime.

Usage: python3 scripts/survey_quadratic.py [BOUND]
"""

import sys
from collections import Counter

from genusfields import characters, genus_number


def survey(bound):
    tally = Counter()
    print(f"{'d':>5}  {'genus':>5}  {'ext':>4}  {'gap':>3}  primes (e, tame, wild)")
    for d in range(-bound, bound + 1):
        if d == 1 or not characters.is_fundamental_discriminant(d):
            continue
        chi = characters.kronecker_character(d)
        x = characters.character_group(chi.ambient, [chi])
        rep = genus_number.build_report(x)
        tally[rep.gap] += 1
        primes = ", ".join(f"{p}({e},{t},{w})"
                           for p, e, t, w, _ in rep.prime_table)
        print(f"{d:>5}  {rep.genus_degree_over_k:>5}  "
              f"{rep.extended_degree_over_k:>4}  {rep.gap:>3}  {primes}")
    print()
    for gap in sorted(tally):
        print(f"gap {gap}: {tally[gap]} fields")


if __name__ == "__main__":
    survey(int(sys.argv[1]) if len(sys.argv) > 1 else 60)
