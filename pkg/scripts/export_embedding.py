#!/usr/bin/env python3
"""Sample the annular closure and dump coordinates for external plotting.

Writes one CSV of polyline points (loop,x,y) and, optionally, one of
crossing markers (crossing,sign,x,y,over_dx,over_dy,under_dx,under_dy).
Prints the winding phase as a sanity check; for the main braid it must
come out at three full turns.
"""

import argparse
import math

from knot818.braid import annular_embed, winding_phase
from knot818.cli import MAIN_BRAID_TEXT
from knot818.notation import parse_braid_word


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--braid", default=MAIN_BRAID_TEXT)
    parser.add_argument("--strands", type=int, default=3)
    parser.add_argument("--radii", default=None, help="comma separated, default 1..strands")
    parser.add_argument("--points-per-slot", type=int, default=64)
    parser.add_argument("--out", required=True, help="points CSV path")
    parser.add_argument("--markers", default=None, help="optional crossing marker CSV path")
    args = parser.parse_args(argv)

    braid = parse_braid_word(args.braid, args.strands)
    if args.radii is None:
        radii = tuple(float(r) for r in range(1, braid.strands + 1))
    else:
        radii = tuple(float(r) for r in args.radii.split(","))
    embedding = annular_embed(braid, radii, slots_per_letter=args.points_per_slot)

    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write("loop,x,y\n")
        for loop_index, loop in enumerate(embedding.loops):
            for x, y in loop:
                fh.write(f"{loop_index},{x!r},{y!r}\n")
    total = sum(len(loop) for loop in embedding.loops)
    print(f"wrote {total} points in {len(embedding.loops)} loop(s) to {args.out}")

    if args.markers:
        with open(args.markers, "w", encoding="utf-8") as fh:
            fh.write("crossing,sign,x,y,over_dx,over_dy,under_dx,under_dy\n")
            for m in embedding.markers:
                fh.write(
                    f"{m.crossing},{m.sign},{m.point[0]!r},{m.point[1]!r},"
                    f"{m.over_direction[0]!r},{m.over_direction[1]!r},"
                    f"{m.under_direction[0]!r},{m.under_direction[1]!r}\n"
                )
        print(f"wrote {len(embedding.markers)} markers to {args.markers}")

    phase = winding_phase(embedding)
    print(f"winding phase: {phase!r} ({phase / math.pi:.6f} pi)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
