"""ISNR after a fixed number of PADISNO iterations for the inertial pairs of the
deblurring table, on the synthetic 64x64 image with salt-and-pepper noise.

    python scripts/run_table1.py [--seeds 0 1 2] [--iters 300] [--image in.pgm]

Absolute values depend on the image and noise draw; compare the ordering
across (alpha, beta) rather than the numbers themselves.
"""

import argparse
from dataclasses import dataclass, field

from padisno import experiments as ex
from padisno.imaging import pgm_read, synthetic_image


@dataclass
class Table1Config:
    seeds: list = field(default_factory=lambda: [0])
    iters: int = ex.RESTORE_ITERS
    salt_pepper: float = 0.3
    image: str | None = None


def main():
    p = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    p.add_argument("--seeds", type=int, nargs="+", default=[0])
    p.add_argument("--iters", type=int, default=ex.RESTORE_ITERS)
    p.add_argument("--salt-pepper", type=float, default=0.3)
    p.add_argument("--image")
    cfg = Table1Config(**vars(p.parse_args()))
    image = pgm_read(cfg.image) if cfg.image else synthetic_image(64)
    print("alpha  beta  " + "  ".join(f"seed{s:>3}" for s in cfg.seeds))
    obs = [ex.make_observation(image, seed=s, salt_pepper=cfg.salt_pepper) for s in cfg.seeds]
    for a, b in ex.TABLE1_PAIRS:
        vals = [ex.restore(o, a, b, iters=cfg.iters)[1][-1] for o in obs]
        print(f"{a:5.1f} {b:5.1f}  " + "  ".join(f"{v:7.2f}" for v in vals))


if __name__ == "__main__":
    main()
