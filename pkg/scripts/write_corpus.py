"""Write the reference domains as JSON domain files (default: tests/data)."""
import argparse
from pathlib import Path

from reinhardt.corpus import golden_corpus
from reinhardt.domain_file import dump_domain, parse_domain_file


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("outdir", nargs="?", default="tests/data")
    args = ap.parse_args()
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    for name, (desc, _) in golden_corpus().items():
        text = dump_domain(desc)
        assert parse_domain_file(text) == desc
        (out / f"{name}.json").write_text(text)
        print(out / f"{name}.json")


if __name__ == "__main__":
    main()
