#!/usr/bin/env python3
# Copyright 2026 The GroundGraph Authors
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
"""Regenerates the golden end-to-end fixture in this directory."""

import json
import math
import pathlib
import struct

from PIL import Image, ImageDraw

HERE = pathlib.Path(__file__).resolve().parent
DIM = 16

# word -> {basis index: weight}; vectors are normalized before writing.
WORDS = {
    "person": {0: 1.0},
    "man": {0: 0.61, 1: math.sqrt(1 - 0.61**2)},
    "woman": {0: 0.6, 1: 0.45, 2: 0.66},
    "dog": {3: 1.0},
    "puppy": {3: 0.9, 4: math.sqrt(1 - 0.81)},
    "umbrella": {5: 1.0},
    "table": {6: 1.0},
    "chair": {6: 0.45, 7: math.sqrt(1 - 0.45**2)},
    "cup": {8: 1.0},
    "kite": {0: 0.12, 9: math.sqrt(1 - 0.12**2)},
    "car": {10: 1.0},
    "horse": {3: 0.3, 11: math.sqrt(1 - 0.09)},
    "elephant": {12: 1.0},
    "giraffe": {12: 0.4, 13: math.sqrt(1 - 0.16)},
    "tree": {14: 1.0},
    "grass": {14: 0.3, 15: math.sqrt(1 - 0.09)},
}

IMAGES = {
    "img1": [("d1", "man", [10, 20, 60, 140], ["standing"]),
             ("d2", "man", [120, 20, 170, 140], ["tall"]),
             ("d3", "umbrella", [100, 5, 190, 60], ["blue", "open"]),
             ("d4", "dog", [60, 100, 100, 145], ["brown"])],
    "img2": [("d1", "table", [20, 80, 120, 140], ["wooden"]),
             ("d2", "chair", [100, 70, 150, 140], []),
             ("d3", "cup", [40, 60, 60, 85], ["white"]),
             ("d4", "person", [150, 10, 195, 140], ["standing"])],
    "img3": [("d1", "kite", [30, 10, 70, 40], ["red"]),
             ("d2", "person", [80, 60, 120, 145], []),
             ("d3", "person", [140, 60, 180, 145], []),
             ("d4", "car", [0, 120, 60, 150], ["silver"])],
    "img4": [("d1", "person", [20, 20, 80, 140], []),
             ("d2", "horse", [50, 60, 180, 145], ["brown"]),
             ("d3", "person", [210, 10, 260, 100], [])],
    "img5": [("d1", "elephant", [10, 40, 110, 140], ["grey"]),
             ("d2", "giraffe", [80, 5, 150, 130], ["tall"]),
             ("d3", "tree", [150, 0, 200, 150], ["green"])],
}

# query_id, image, query, gt box, subject answer, final answer(s)
SAMPLES = [
    ("q1", "img1", "man on the left", [10, 20, 60, 140], "man",
     ["TARGET: 1\nEXPLANATION: the man at x 10 to 60 is the leftmost person."]),
    ("q2", "img1", "man holding an umbrella", [120, 20, 170, 140], "man",
     ["TARGET: 2\nEXPLANATION: object 2 is holding the umbrella."]),
    ("q3", "img1", "dog", [60, 100, 100, 145], "dog",
     ["I think object 1 matches best."]),
    ("q4", "img2", "left thing", [20, 80, 120, 140], "table",
     ["TARGET: 1\nEXPLANATION: the table is the only candidate."]),
    ("q5", "img2", "cup on the table", [40, 60, 60, 85], "cup",
     ["TARGET: 9\nEXPLANATION: the cup.",
      "TARGET: 2\nEXPLANATION: object 2 is the cup resting on the table."]),
    ("q6", "img2", "person standing on the right", [150, 10, 195, 140], "person",
     ["TARGET: 1\nEXPLANATION: the only person in the graph."]),
    ("q7", "img3", "woman flying a kite", [80, 60, 120, 145], "woman",
     ["TARGET: 3\nEXPLANATION: object 3 is a person near the kite."]),
    ("q8", "img3", "vehicle in the corner", [0, 120, 60, 150], "",
     ["TARGET: 4\nEXPLANATION: the car sits in the bottom-left corner."]),
    ("q9", "img4", "person riding a horse", [20, 20, 80, 140], "person",
     ["TARGET: 1\nEXPLANATION: object 1 rides the horse."]),
    ("q10", "img5", "giraffe behind the elephant", [80, 5, 150, 130], "giraffe",
     ["TARGET: 2\nEXPLANATION: the giraffe overlaps the elephant from behind."]),
]

OTHER_SPLIT = ("q11", "img1", "dog near the man", [60, 100, 100, 145])

CAPTIONS = {
    "man": "a man wearing a dark coat",
    "umbrella": "a large   blue umbrella",
    "dog": "a small brown dog sitting on the grass",
    "table": "a wooden table",
    "chair": "an empty chair",
    "cup": "a white cup",
    "person": "a person standing upright",
    "kite": "a red kite in the sky",
    "car": "a parked silver car",
    "horse": "a brown horse",
    "elephant": "a grey elephant",
    "giraffe": "a tall giraffe eating leaves",
    "tree": "a leafy tree",
}

RELATIONS = [
    ("man", "umbrella", "The man is holding the umbrella."),
    ("person", "horse",
     "The person is riding the horse. The horse is brown. It is a sunny day."),
    ("elephant", "giraffe", ""),
]


def vector(word):
    v = [0.0] * DIM
    for i, w in WORDS[word].items():
        v[i] = w
    n = math.sqrt(sum(x * x for x in v))
    return [x / n for x in v]


def write_embeddings():
    out = bytearray(f"{len(WORDS)} {DIM}\n".encode())
    for word in WORDS:
        out += word.encode() + b" " + struct.pack(f"<{DIM}f", *vector(word)) + b"\n"
    (HERE / "embeddings.bin").write_bytes(bytes(out))


def write_images():
    colors = [(200, 60, 60), (60, 160, 60), (60, 60, 200), (200, 180, 40), (120, 60, 160)]
    (HERE / "images").mkdir(exist_ok=True)
    for k, (image_id, dets) in enumerate(IMAGES.items()):
        img = Image.new("RGB", (200, 150), (235, 235, 235))
        draw = ImageDraw.Draw(img)
        for j, (_, _, box, _) in enumerate(dets):
            draw.rectangle(box, fill=colors[(k + j) % len(colors)])
        img.save(HERE / "images" / f"{image_id}.png", optimize=True)


def write_records():
    with open(HERE / "detections.jsonl", "w") as f:
        for image_id, dets in IMAGES.items():
            for det_id, label, box, attrs in dets:
                rec = {"image_id": image_id, "det_id": det_id, "label": label,
                       "box": {"form": "xyxy", "values": box}, "attributes": attrs}
                f.write(json.dumps(rec) + "\n")
    with open(HERE / "dataset.jsonl", "w") as f:
        rows = [(q, i, t, b, "val") for q, i, t, b, _, _ in SAMPLES]
        rows.insert(3, (*OTHER_SPLIT, "testA"))
        for q, i, t, b, split in rows:
            rec = {"query_id": q, "image_id": i, "image_path": f"{i}.png", "split": split,
                   "query": t, "gt_box": {"form": "xywh",
                                          "values": [b[0], b[1], b[2] - b[0], b[3] - b[1]]}}
            f.write(json.dumps(rec) + "\n")


def escape(text):
    out = []
    for ch in text:
        out.append("\\" + ch if ch in r"\^$.|?*+()[]{}" else ch)
    return "".join(out)


def write_script():
    rules = []
    for q, _, text, _, subject, answers in SAMPLES:
        rules.append({"pattern": "^Query: " + escape(text) + "\\nExtract",
                      "response": subject})
        if len(answers) == 2:
            rules.append({"pattern": "Query: " + escape(text) +
                          "\\n\\nSelect[\\s\\S]*previous answer",
                          "response": answers[1]})
        rules.append({"pattern": "Query: " + escape(text) + "\\n\\nSelect",
                      "response": answers[0]})
    for label, caption in CAPTIONS.items():
        rules.append({"pattern": "caption for the " + label + " in the image",
                      "response": caption})
    for a, b, relation in RELATIONS:
        rules.append({"pattern": "between the " + a + " \\(in the red box\\) and the " + b +
                      " \\(in the blue box\\)", "response": relation})
    script = {"model": "golden-mock", "vision": True, "rules": rules}
    (HERE / "mock_script.json").write_text(json.dumps(script, indent=1) + "\n")


def write_config():
    config = {"dataset": "dataset.jsonl", "split": "val", "detections": "detections.jsonl",
              "images_root": "images", "embeddings": {"path": "embeddings.bin"},
              "mock_script": "mock_script.json", "tau": 0.5, "theta": 0.2,
              "form": "json", "cache_dir": "cache", "out_dir": "out", "concurrency": 3}
    (HERE / "config.json").write_text(json.dumps(config, indent=1) + "\n")


if __name__ == "__main__":
    write_embeddings()
    write_images()
    write_records()
    write_script()
    write_config()
