"""Print the Serre-class branch, normal form and compactness of each reference domain."""
import argparse

from reinhardt.automorphisms import HyperbolicInput, compactness
from reinhardt.corpus import golden_corpus
from reinhardt.verdicts import serre_verdict


def row(name, desc):
    v = serre_verdict(desc)
    try:
        c = compactness(desc)
        comp = "compact" if c.compact else f"non-compact ({c.reason})"
    except HyperbolicInput:
        comp = "-"
    nf = v.normal_form.label() if v.normal_form is not None else "-"
    return name, str(v.in_s), v.branch, nf, comp


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--check", action="store_true", help="exit 1 if a branch differs from the expected one")
    args = ap.parse_args()
    rows, bad = [("domain", "inS", "branch", "normal form", "Aut(D)")], 0
    for name, (desc, expected) in golden_corpus().items():
        r = row(name, desc)
        bad += r[2] != expected
        rows.append(r)
    widths = [max(len(r[i]) for r in rows) for i in range(5)]
    for r in rows:
        print("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    if args.check and bad:
        raise SystemExit(1)


if __name__ == "__main__":
    main()
