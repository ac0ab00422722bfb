"""Report rendering: a delimited summary plus figures on disk.

``write_report`` runs the basis enumeration and both verification suites,
writes one CSV with a row per check group, and renders the basis growth
and per-family composition counts as PNG figures next to it.
"""

from __future__ import annotations

import csv
import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .gsb import verify_gsb
from .hopf import verify_hopf
from .rewriting import basis_words
from .terms import Signature


def write_report(
    outdir: str,
    sig: Signature,
    *,
    uvw_degree: int = 1,
    pi_degree: int = 1,
    hopf_degree: int = 3,
    seed: int = 0,
) -> list[str]:
    """Run the suites and write report.csv plus figures; returns the paths."""
    os.makedirs(outdir, exist_ok=True)
    words = basis_words(sig, hopf_degree + 1)
    counts = [0] * (hopf_degree + 2)
    for w in words:
        counts[w.degree] += 1
    gsb_report = verify_gsb(sig, uvw_degree, pi_degree)
    hopf_report = verify_hopf(sig, hopf_degree, seed=seed)

    csv_path = os.path.join(outdir, "report.csv")
    with open(csv_path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["section", "name", "checked", "failures", "status"])
        for degree, count in enumerate(counts):
            writer.writerow(["basis", f"degree {degree}", count, "", ""])
        for fam in gsb_report.families:
            writer.writerow(
                [
                    "gsb",
                    fam.family,
                    fam.instances_checked,
                    len(fam.failures),
                    "pass" if not fam.failures else "fail",
                ]
            )
        for suite in hopf_report.suites:
            writer.writerow(
                [
                    "hopf",
                    suite.suite,
                    suite.checked,
                    len(suite.failures),
                    "pass" if not suite.failures else "fail",
                ]
            )
        for key, value in hopf_report.informational.items():
            writer.writerow(["hopf-info", key, "", "", str(value)])

    basis_path = os.path.join(outdir, "basis_dimensions.png")
    fig, ax = plt.subplots(figsize=(6, 3.6))
    ax.bar(range(len(counts)), counts, color="#4878a8")
    ax.set_xlabel("degree")
    ax.set_ylabel("basis words")
    ax.set_title(f"Basis dimensions ({len(sig.generators)} generator(s))")
    ax.set_xticks(range(len(counts)))
    for degree, count in enumerate(counts):
        ax.annotate(str(count), (degree, count), ha="center", va="bottom",
                    fontsize=8)
    fig.tight_layout()
    fig.savefig(basis_path, dpi=150)
    plt.close(fig)

    checks_path = os.path.join(outdir, "verification_checks.png")
    names = [f"gsb: {fam.family}" for fam in gsb_report.families]
    values = [fam.instances_checked for fam in gsb_report.families]
    colors = [
        "#2a9d5c" if not fam.failures else "#c0392b"
        for fam in gsb_report.families
    ]
    names += [f"hopf: {s.suite}" for s in hopf_report.suites]
    values += [s.checked for s in hopf_report.suites]
    colors += [
        "#2a9d5c" if not s.failures else "#c0392b" for s in hopf_report.suites
    ]
    fig, ax = plt.subplots(figsize=(7, 0.32 * len(names) + 1.4))
    ypos = range(len(names))
    ax.barh(ypos, values, color=colors)
    ax.set_yticks(ypos)
    ax.set_yticklabels(names, fontsize=7)
    ax.invert_yaxis()
    ax.set_xlabel("checks run")
    ax.set_title("Verification coverage (green = pass)")
    fig.tight_layout()
    fig.savefig(checks_path, dpi=150)
    plt.close(fig)

    return [csv_path, basis_path, checks_path]
