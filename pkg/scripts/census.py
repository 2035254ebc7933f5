"""Count triangulated 2-spheres, flag spheres and prime flag spheres by vertex number."""

import argparse
import time

from gcmanifolds import spheres


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=10)
    ap.add_argument("--catalog", help="write the flag spheres of each n below this directory")
    args = ap.parse_args()

    print("n\tspheres\tflag\tprime_flag\tseconds")
    for n in range(4, args.max_n + 1):
        t = time.perf_counter()
        found = spheres.enumerate_2spheres(n)
        flag = spheres.flag_filter(found)
        prime = spheres.prime_filter(flag).prime
        print(f"{n}\t{len(found)}\t{len(flag)}\t{len(prime)}\t{time.perf_counter() - t:.1f}")
        if args.catalog and flag:
            spheres.write_catalog(n, flag, f"{args.catalog}/n{n}")


if __name__ == "__main__":
    main()
