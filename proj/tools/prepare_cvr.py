#!/usr/bin/env python3
# Copyright 2026 The rdforest Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Converts house-votes-84.data into the numeric CSV data/cvr/cvr.json reads.

y -> 1, n -> 0. An abstention ('?') is coded 0 as well: it is not a yes vote.
"""
import csv
import json
import pathlib
import sys


def main():
    if len(sys.argv) != 3:
        sys.exit("usage: prepare_cvr.py house-votes-84.data cvr.csv")
    manifest = pathlib.Path(__file__).resolve().parent.parent / "data/cvr/cvr.json"
    names = [a["name"] for a in json.loads(manifest.read_text())["attributes"]]
    code = {"y": "1", "n": "0", "?": "0"}
    with open(sys.argv[1]) as src, open(sys.argv[2], "w", newline="") as dst:
        out = csv.writer(dst)
        out.writerow(names + ["party"])
        for row in csv.reader(src):
            if not row:
                continue
            out.writerow([code[v.strip()] for v in row[1:]] + [row[0].strip()])


if __name__ == "__main__":
    main()
