"""Hom(G, K_n) invariants for G the complement of the 1-skeleton of each prime flag 2-sphere."""

import argparse
import time

from gcmanifolds import graphs, homcomplex, homology, producttri, spheres


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=[8, 9], help="sphere vertex counts")
    ap.add_argument("--colors", type=int, nargs="+", default=[3, 4])
    args = ap.parse_args()

    for n in args.n:
        for i, k in enumerate(spheres.prime_flag_spheres(n)):
            g = graphs.complement(k.skeleton_graph())
            for c in args.colors:
                t = time.perf_counter()
                hc = homcomplex.hom_to_complete(g, c)
                if hc.dimension <= 1:
                    sizes = homcomplex.component_sizes(hc)
                    print(f"sphere {n}/{i} K{c}: dim={hc.dimension} components={sizes}")
                    continue
                tri = producttri.product_triangulation(hc)
                h = homology.homology_integer(tri)
                groups = ", ".join(str(x) for x in h.groups)
                print(f"sphere {n}/{i} K{c}: f={tuple(tri.f_vector())} H=({groups}) "
                      f"[{time.perf_counter() - t:.1f}s]")


if __name__ == "__main__":
    main()
