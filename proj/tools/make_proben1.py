#!/usr/bin/env python3
# Copyright 2026 The pqmsel Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates data/proben1/{cancer,glass}.dt from the copies of the UCI
source tables bundled in the `rdatasets` wheel (MASS::biopsy, MASS::fgl).

Encoding follows the PROBEN1 conventions: real inputs scaled to [0, 1],
one-hot boolean outputs, partition sizes 50/25/25 of the examples.
"""
import argparse
import pathlib

import rdatasets


def write_dt(path, inputs, classes, class_count):
    n = len(inputs)
    train = (n + 1) // 2
    valid = (n - train + 1) // 2
    test = n - train - valid
    with open(path, "w") as out:
        out.write(f"bool_in=0\nreal_in={len(inputs[0])}\n")
        out.write(f"bool_out={class_count}\nreal_out=0\n")
        out.write(f"training_examples={train}\nvalidation_examples={valid}\n")
        out.write(f"test_examples={test}\n")
        for row, cls in zip(inputs, classes):
            onehot = ["1" if c == cls else "0" for c in range(class_count)]
            out.write(" ".join(f"{v:.6g}" for v in row) + " " + " ".join(onehot) + "\n")


def cancer(out_dir):
    df = rdatasets.data("MASS", "biopsy")
    cols = [f"V{i}" for i in range(1, 10)]
    # Bare nuclei (V6) has 16 missing values; PROBEN1 fills with the column mean.
    df["V6"] = df["V6"].fillna(df["V6"].mean())
    inputs = (df[cols] / 10.0).values.tolist()
    classes = [0 if c == "benign" else 1 for c in df["class"]]
    write_dt(out_dir / "cancer.dt", inputs, classes, 2)


def glass(out_dir):
    df = rdatasets.data("MASS", "fgl")
    cols = ["RI", "Na", "Mg", "Al", "Si", "K", "Ca", "Ba", "Fe"]
    x = df[cols]
    inputs = ((x - x.min()) / (x.max() - x.min())).values.tolist()
    order = ["WinF", "WinNF", "Veh", "Con", "Tabl", "Head"]
    classes = [order.index(t) for t in df["type"]]
    write_dt(out_dir / "glass.dt", inputs, classes, 6)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", default="data/proben1")
    args = parser.parse_args()
    out_dir = pathlib.Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    cancer(out_dir)
    glass(out_dir)


if __name__ == "__main__":
    main()
