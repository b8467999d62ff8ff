#!/usr/bin/env python3
"""Regenerates the bundled demonstration images in data/.

camera256.pgm: skimage.data.camera() (CC0) box-downsampled 512->256.
coins256.pgm:  top-left 256x256 crop of skimage.data.coins().

These are stand-ins for smoke tests and demos only; the benchmark
comparison tables refer to the classic Cameraman/House images, which
must be supplied by the user (see README).
"""

import os
import sys

import numpy as np
from skimage import data


def write_pgm(path, img):
    assert img.dtype == np.uint8 and img.ndim == 2
    with open(path, "wb") as f:
        f.write(b"P5\n%d %d\n255\n" % (img.shape[1], img.shape[0]))
        f.write(img.tobytes())


def main():
    out_dir = sys.argv[1] if len(sys.argv) > 1 else "data"
    os.makedirs(out_dir, exist_ok=True)

    cam = data.camera().astype(np.float64)
    cam256 = cam.reshape(256, 2, 256, 2).mean(axis=(1, 3))
    write_pgm(os.path.join(out_dir, "camera256.pgm"),
              np.clip(np.rint(cam256), 0, 255).astype(np.uint8))

    coins = data.coins()[:256, :256]
    write_pgm(os.path.join(out_dir, "coins256.pgm"), coins.astype(np.uint8))

    print("wrote", out_dir + "/camera256.pgm", out_dir + "/coins256.pgm")


if __name__ == "__main__":
    main()
