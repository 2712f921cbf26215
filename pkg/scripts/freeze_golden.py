"""Run the CLI over the reference corpus and freeze its JSON reports.

Each golden file holds the argument vector, the exit code and the parsed
report, so the comparison does not depend on key order or whitespace.
Regenerate after an intended output change and review the diff.
"""
import argparse
import contextlib
import io
import json
from pathlib import Path

from reinhardt.cli import main
from reinhardt.corpus import golden_corpus

EXTRA = [
    ("pell_d2", ["pell", "--d", "2", "--count", "2"]),
    ("pell_aut_1_2", ["pell-aut", "--p", "1", "--q", "2"]),
    ("proper_Dsqrt2_self", ["proper", "{data}/D_sqrt2.json", "{data}/D_sqrt2.json"]),
    ("proper_Dstar_self", ["proper", "{data}/Dstar_1_sqrt2.json", "{data}/Dstar_1_sqrt2.json"]),
    ("stehle_Dsqrt2", ["stehle", "{data}/D_sqrt2.json", "--at=-1,0"]),
]


def golden_cases(data: str):
    for name in sorted(golden_corpus()):
        path = f"{data}/{name}.json"
        yield f"classify_{name}", ["classify", path]
        yield f"serre_{name}", ["serre", path]
        yield f"aut_{name}", ["aut", path, "--witness"]
        yield f"normal_form_{name}", ["normal-form", path]
    for name, argv in EXTRA:
        yield name, [a.format(data=data) for a in argv]


def run(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf), contextlib.redirect_stderr(io.StringIO()):
        code = main(argv)
    return code, json.loads(buf.getvalue())


def main_() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--data", default="tests/data")
    ap.add_argument("--out", default="tests/golden")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, argv in golden_cases(args.data):
        code, report = run(argv)
        record = {"argv": argv, "exit": code, "report": report}
        (out / f"{name}.json").write_text(json.dumps(record, indent=2, sort_keys=True) + "\n")
        print(f"{code}  {name}")


if __name__ == "__main__":
    main_()
