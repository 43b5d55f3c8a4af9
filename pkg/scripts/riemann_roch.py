"""The Riemann-Roch count for a degree-one distribution with five singular points.

Prints ch(T)^dual, ch(I_Z(3)), chi(T, I_Z(3)), the Ext^3 tensor lengths of the
three local models, dim Hom, and a table of phi(d, n) by both routes.

Usage: python3 scripts/riemann_roch.py
"""

import sys

from singdist.chern import ChernClassVector, chern_to_character, chi_pair, hom_dimension, phi, phi_top_chern
from singdist.corpus import load_corpus
from singdist.parsing import parse_ideal, parse_ring
from singdist.syzygy import ext_top_cyclic, tensor_length


def main():
    chT = chern_to_character(ChernClassVector(2, (1, 2, 2)))
    chI = chern_to_character(ChernClassVector(1, (3, 1, -5)))
    chi = chi_pair(chT, chI)
    print(f"ch(T)^dual  = {chT.dual()}")
    print(f"ch(I_Z(3))  = {chI}")
    print(f"chi         = {chi}")

    corpus = load_corpus()
    ring = parse_ring(corpus.appendix["ring"])
    lengths = []
    for item in corpus.appendix["ext_lengths"]:
        I = parse_ideal(", ".join(item["ideal"]), ring)
        n = tensor_length(ext_top_cyclic(I), I)
        lengths.append(n)
        print(f"  ({', '.join(item['ideal'])}): length {n}")
    print(f"dim Hom     = {chi} + {lengths[-1]} = {hom_dimension(chi, lengths[-1])}")

    print()
    print(" d  n  phi  top-chern")
    ok = True
    for n in (1, 2, 3):
        for d in range(5):
            a, b = phi(d, n), phi_top_chern(d, n)
            ok &= a == b
            print(f"{d:>2} {n:>2} {a:>4} {str(b):>10}")
    return 0 if ok and chi == 9 else 1


if __name__ == "__main__":
    sys.exit(main())
