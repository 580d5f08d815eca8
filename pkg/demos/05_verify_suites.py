"""Seeded verification of both axiom systems (small case counts here;
the acceptance suite runs 500 per family)."""

from relcheck.model import ModelKind
from relcheck.verifier.report import Budget
from relcheck.verifier.suites import (
    run_axiom_suite,
    run_equivalence_suite,
    run_lemma_suite,
)

budget = Budget(seed=42)

print("== SimpleRel on the slower-than-light structure")
rep = run_axiom_suite("simplerel", ModelKind.STL_ONLY, budget, cases=40)
for line in rep.summary_lines():
    print(line)
print(f"false verdicts: {rep.total_failed}\n")

print("== SimpleRelFTL on the faster-than-light structure")
rep = run_axiom_suite("simplerelftl", ModelKind.FTL, budget, cases=40)
for line in rep.summary_lines():
    print(line)
print(
    "note: the two expected-divergence rows are the substituted axioms that"
    " genuinely fail in the canonical FTL structure\n"
)

print("== lemmas")
rep = run_lemma_suite(ModelKind.FTL, budget, cases=40)
for line in rep.summary_lines():
    print(line)

print("\n== definitional equivalence (geometric route vs expanded definitions)")
rep = run_equivalence_suite(ModelKind.FTL, budget, cases=40)
for line in rep.summary_lines():
    print(line)
print(f"decided disagreements: {rep.total_failed}")
