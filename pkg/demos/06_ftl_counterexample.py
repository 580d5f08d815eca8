"""Why every observer of the first system is slower than light.

The isotropy axiom wants one signal in each direction between any observer
and any event.  A spacelike worldline breaks this: some events reach it by
no future signal at all, others by two.  Running the plain isotropy axiom
against the faster-than-light structure exhibits both failures; the
corollary's symbolic form evaluates in one step.
"""

from relcheck.corpus import load_definitions
from relcheck.fol import parse_formula
from relcheck.minkowski import Line, Vec4
from relcheck.model import ModelKind, count_future_null_to_line, witness_zero_and_two
from relcheck.scalar import ScalarContext
from relcheck.verifier.evaluate import EvalModel, evaluate_bounded
from relcheck.verifier.report import Budget
from relcheck.verifier.suites import run_axiom_suite

ctx = ScalarContext()
line = Line(Vec4.of(ctx, 0, 0, 0, 0), Vec4.of(ctx, 0, 1, 0, 0))
p_zero, p_two = witness_zero_and_two(line)
print("spacelike worldline along x1; witness events:")
print(f"  {p_zero.render()} -> {count_future_null_to_line(p_zero, line)} future signals")
print(f"  {p_two.render()} -> {count_future_null_to_line(p_two, line)} future signals")

rep = run_axiom_suite(
    "simplerel", ModelKind.FTL, Budget(seed=7), cases=60, axioms=["AxIso"]
)
item = rep.items[0]
print(f"\nplain AxIso on the FTL structure: {item.failed}/{item.cases} cases false")

table = load_definitions()
corollary = parse_formula("forall a:Ob. STL(a)", table.signatures())
for kind in (ModelKind.STL_ONLY, ModelKind.FTL):
    got = evaluate_bounded(corollary, EvalModel(kind, table=table))
    extra = ""
    if got.witness:
        extra = f" (witness direction {got.witness['a'].dir.render()})"
    print(f"forall a. STL(a) on {kind.value}: {got.status}{extra}")
