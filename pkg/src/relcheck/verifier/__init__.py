from relcheck.verifier.report import Budget, CaseRecord, SuiteReport, Verdict
from relcheck.verifier.evaluate import EvalModel, evaluate_bounded
from relcheck.verifier.suites import (
    check_definitional_equivalence,
    invariance_suite,
    run_axiom_suite,
    run_lemma_suite,
)

__all__ = [
    "Budget",
    "CaseRecord",
    "SuiteReport",
    "Verdict",
    "EvalModel",
    "evaluate_bounded",
    "run_axiom_suite",
    "run_lemma_suite",
    "check_definitional_equivalence",
    "invariance_suite",
]
