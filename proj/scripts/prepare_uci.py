#!/usr/bin/env python3
"""Convert raw UCI downloads into the canonical CSV + schema JSON pair.

Supported datasets:
  electricity  elecNormNew.arff (or an equivalent CSV export): columns
               date, day, period, nswprice, nswdemand, vicprice, vicdemand,
               transfer, class. `day` is categorical, everything else numeric.
  person       ConfLongDemo_JSI.txt: columns sequence_name, tag_id,
               timestamp, date, x, y, z, activity. Keeps sequence_name and
               tag_id as categorical attributes and x/y/z as numeric;
               timestamp and date are dropped.

Categorical levels and label names are derived from the data (sorted), so the
emitted schema always matches the emitted CSV.
"""

import json
import sys
from pathlib import Path


def read_rows(path):
    """Yields comma-separated rows, skipping ARFF headers, comments, blanks."""
    with open(path, "r", encoding="utf-8", errors="replace") as f:
        for line in f:
            line = line.strip()
            if not line or line.startswith("%") or line.startswith("@"):
                continue
            yield [field.strip() for field in line.split(",")]


def is_number(s):
    try:
        float(s)
        return True
    except ValueError:
        return False


def build_schema(name, kinds, names, columns, labels):
    attributes = []
    for kind, attr_name, column in zip(kinds, names, columns):
        if kind == "numeric":
            attributes.append({"name": attr_name, "kind": "numeric"})
        else:
            levels = sorted(set(column))
            if len(levels) < 2:
                raise SystemExit(f"{name}: categorical '{attr_name}' has < 2 levels")
            attributes.append(
                {"name": attr_name, "kind": "categorical", "levels": levels}
            )
    return {
        "label_count": len(labels),
        "labels": labels,
        "attributes": attributes,
    }


def write_outputs(out_dir, stem, schema, rows):
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / f"{stem}.csv"
    with open(csv_path, "w", encoding="utf-8") as f:
        for row in rows:
            f.write(",".join(row) + "\n")
    json_path = out_dir / f"{stem}.json"
    with open(json_path, "w", encoding="utf-8") as f:
        json.dump(schema, f, indent=2)
        f.write("\n")
    print(f"wrote {csv_path} ({len(rows)} rows) and {json_path}")


def convert_electricity(raw, out_dir):
    names = ["date", "day", "period", "nswprice", "nswdemand", "vicprice",
             "vicdemand", "transfer"]
    kinds = ["numeric", "categorical"] + ["numeric"] * 6
    rows = []
    for fields in read_rows(raw):
        if len(fields) != 9:
            raise SystemExit(f"electricity: expected 9 fields, got {len(fields)}")
        if not is_number(fields[0]):  # header row
            continue
        # canonicalize the day token ("2", "2.0" and b'2' variants all occur)
        day = fields[1].strip("'\"")
        if is_number(day):
            day = str(int(float(day)))
        rows.append([fields[0], day] + fields[2:8] + [fields[8].strip("'\"")])
    if not rows:
        raise SystemExit("electricity: no data rows found")
    labels = sorted({r[-1] for r in rows})
    columns = list(zip(*[r[:-1] for r in rows]))
    schema = build_schema("electricity", kinds, names, columns, labels)
    write_outputs(out_dir, "electricity", schema, rows)


def convert_person(raw, out_dir):
    names = ["sequence", "tag", "x", "y", "z"]
    kinds = ["categorical", "categorical", "numeric", "numeric", "numeric"]
    rows = []
    for fields in read_rows(raw):
        if len(fields) != 8:
            raise SystemExit(f"person: expected 8 fields, got {len(fields)}")
        sequence, tag, _ts, _date, x, y, z, activity = fields
        rows.append([sequence, tag, x, y, z, activity])
    if not rows:
        raise SystemExit("person: no data rows found")
    labels = sorted({r[-1] for r in rows})
    columns = list(zip(*[r[:-1] for r in rows]))
    schema = build_schema("person", kinds, names, columns, labels)
    write_outputs(out_dir, "person", schema, rows)


def main():
    if len(sys.argv) != 4 or sys.argv[1] not in ("electricity", "person"):
        print(__doc__)
        print("usage: prepare_uci.py {electricity|person} <raw-file> <out-dir>")
        return 2
    dataset, raw, out_dir = sys.argv[1], Path(sys.argv[2]), Path(sys.argv[3])
    if not raw.exists():
        raise SystemExit(f"raw file not found: {raw}")
    if dataset == "electricity":
        convert_electricity(raw, out_dir)
    else:
        convert_person(raw, out_dir)
    return 0


if __name__ == "__main__":
    sys.exit(main())
