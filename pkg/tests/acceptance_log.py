"""Collects one verdict per acceptance criterion for the end-of-run summary."""

RESULTS = {}

TITLES = {
    1: "classification matrix of the ten reference languages",
    2: "six-element syntactic monoid and weak versus strong recognition",
    3: "DA membership of the tabulated monoids M and N",
    4: "alphabetic closure of (a|b|c)*ab(a|b|c)*",
    5: "membership and FO2 verdict for ((a|b|c)*ab)^w",
    6: "eight-element idempotent monoid, conjugacy class and delta2 verdicts",
    7: "finite words, infinite words and IM{a,b}",
    8: "randomized property suites",
    9: "complexity lower bound and BSigma2 decidability (not reproduced)",
}


def record(criterion, passed, detail=""):
    line = f"criterion {criterion}: {'PASS' if passed else 'FAIL'} - {TITLES[criterion]}"
    if detail:
        line += f" ({detail})"
    RESULTS.setdefault(criterion, []).append((passed, line))
    print(line)


def summary_lines():
    out = []
    for k in sorted(TITLES):
        if k not in RESULTS:
            if k == 9:
                out.append(f"criterion 9: NOT APPLICABLE - {TITLES[9]}")
            else:
                out.append(f"criterion {k}: NOT RUN - {TITLES[k]}")
            continue
        entries = RESULTS[k]
        ok = all(p for p, _ in entries)
        n = len(entries)
        out.append(f"criterion {k}: {'PASS' if ok else 'FAIL'} - {TITLES[k]} ({sum(p for p, _ in entries)}/{n} checks)")
    return out
