#!/usr/bin/env python3
# Copyright 2026 The robustflow Authors.
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

"""Writes an SNDlib native network file from a topohub JSON topology.

topohub stores node names, coordinates and links but no capacities, so every
link is written with zero capacity and an empty module list.

  pip download topohub --no-deps -d /tmp/dl
  python3 tools/topohub_to_sndlib.py /tmp/dl/topohub-*.whl sndlib/abilene \
      > data/sndlib/abilene.txt
"""

import json
import sys
import zipfile


def main():
  wheel, topology = sys.argv[1], sys.argv[2]
  with zipfile.ZipFile(wheel) as z:
    data = json.loads(z.read(f"topohub/data/{topology}.json"))
  name = data["graph"]["name"]
  nodes = {n["id"]: n for n in data["nodes"]}
  print("?SNDlib native format; type: network; version: 1.0")
  print(f"# network {name}")
  print("# converted from topohub; capacities are not part of the source")
  print()
  print("# NODE SECTION")
  print("NODES (")
  for i in sorted(nodes):
    lon, lat = nodes[i]["pos"]
    print(f"  {nodes[i]['name']} ( {lon:.2f} {lat:.2f} )")
  print(")")
  print()
  print("# LINK SECTION")
  print("LINKS (")
  for e in data["edges"]:
    u, v = nodes[e["source"]]["name"], nodes[e["target"]]["name"]
    print(f"  {u}_{v} ( {u} {v} ) 0.00 0.00 0.00 0.00 ( )")
  print(")")


if __name__ == "__main__":
  main()
