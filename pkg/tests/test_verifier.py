from fractions import Fraction

import pytest

from relcheck.corpus import load_definitions
from relcheck.fol import parse_formula
from relcheck.minkowski import Line, Segment, Vec4, inner, lam
from relcheck.model import (
    ModelKind,
    Scenario,
    dual_candidates,
    event,
    lightlike,
    tau_geo,
)
from relcheck.scalar import ScalarContext
from relcheck.verifier import definitional as de
from relcheck.verifier.evaluate import EvalModel, evaluate_bounded
from relcheck.verifier.generators import ConfigGen
from relcheck.verifier.report import Budget, SuiteReport, sub_seed
from relcheck.verifier.suites import (
    CRITERION6_PREDICATES,
    RATE_EXEMPT,
    invariance_suite,
    run_axiom_suite,
    run_equivalence_suite,
    run_lemma_suite,
)

STL = ModelKind.STL_ONLY
FTL = ModelKind.FTL


def v(ctx, *vals):
    return Vec4.of(ctx, *vals)


def vertical(ctx, x1=0, x2=0):
    return Line(v(ctx, 0, x1, x2, 0), v(ctx, 1, 0, 0, 0))


# --- definitional evaluators -------------------------------------------------


def test_ev_def_polarity_and_witness():
    ctx = ScalarContext()
    assert de.ev_def(event(v(ctx, 1, 2, 3, 0)), STL).is_true()
    got = de.ev_def(Segment(v(ctx, 0, 0, 0, 0), v(ctx, 1, 1, 0, 0)), STL)
    assert got.is_false()
    witness = got.witness["a"]
    assert witness.contains(v(ctx, 0, 0, 0, 0))
    assert not witness.contains(v(ctx, 1, 1, 0, 0))


def test_l_def_and_lsym():
    ctx = ScalarContext()
    o = event(v(ctx, 0, 0, 0, 0))
    p = event(v(ctx, 1, 1, 0, 0))
    assert de.l_def(o, p, STL).is_true()
    assert de.l_def(p, o, STL).is_false()
    assert de.lsym_def(p, o, STL).is_true()
    q = event(v(ctx, 2, 1, 0, 0))
    assert de.l_def(o, q, STL).is_false()


def test_m_def_complete():
    ctx = ScalarContext()
    a = vertical(ctx, 0)
    crossing = Line(v(ctx, 0, 0, 0, 0), v(ctx, 2, 1, 0, 0))
    assert de.m_def(a, crossing, STL).is_true()
    assert de.m_def(a, vertical(ctx, 1), STL).is_false()
    skew = Line(v(ctx, 0, 0, 1, 0), v(ctx, 2, 1, 0, 0))
    assert de.m_def(a, skew, STL).is_false()


def test_cop_and_par_def():
    ctx = ScalarContext()
    a, b = vertical(ctx, 0), vertical(ctx, 1)
    got = de.cop_def(a, b, STL)
    assert got.is_true()
    c, d = got.witness["c"], got.witness["d"]
    g = got.witness["g"]
    assert not a.contains(g.beg) and not b.contains(g.beg)
    assert c.contains(g.beg) and d.contains(g.beg)
    assert de.par_def(a, b, STL).is_true()
    crossing = Line(v(ctx, 0, 0, 0, 0), v(ctx, 2, 1, 0, 0))
    assert de.par_def(a, crossing, STL).is_false()
    skew = Line(v(ctx, 0, 0, 1, 0), v(ctx, 2, 1, 0, 0))
    assert de.par_def(a, skew, STL).is_unknown()


def test_bw_def_matches_fixture():
    ctx = ScalarContext()
    a, b, c = vertical(ctx, 0), vertical(ctx, 1), vertical(ctx, 2)
    got = de.bw_def(a, b, c, STL)
    assert got.is_true()
    x, y, z = (got.witness[k] for k in ("x", "y", "z"))
    assert lightlike(x, y) and lightlike(x, z) and lightlike(y, z)
    assert de.bw_def(a, c, b, STL).is_false()
    assert de.bw_def(a, a, c, STL).is_true()


def test_sim_def_diamond():
    ctx = ScalarContext()
    c = vertical(ctx)
    e1 = event(v(ctx, 1, 1, 0, 0))
    e2 = event(v(ctx, 1, -1, 0, 0))
    got = de.sim_def(c, e1, e2, STL)
    assert got.is_true()
    x = got.witness["apex_beg"]
    y = got.witness["apex_end"]
    for leg in (e1.beg - x, e2.beg - x, y - e1.beg, y - e2.beg):
        assert lam(leg).is_zero() and leg.x0.sign() >= 0
    assert de.sim_def(c, event(v(ctx, 0, 0, 0, 0)), event(v(ctx, 1, 0, 0, 0)), STL).is_false()


def test_prec_def_two_hop_witness():
    ctx = ScalarContext()
    o = event(v(ctx, 0, 0, 0, 0))
    p = event(v(ctx, 2, 1, 0, 0))
    got = de.prec_def(o, p, STL)
    assert got.is_true()
    m = got.witness["m"].beg
    assert m == v(ctx, Fraction(3, 2), Fraction(3, 2), 0, 0)
    assert de.prec_def(p, o, STL).is_false()
    assert de.prec_def(o, event(v(ctx, 1, 1, 0, 0)), STL).is_false()


def test_eq_def_chain_and_refutation():
    ctx = ScalarContext()
    a, b = vertical(ctx, 0), vertical(ctx, 1)
    c, d = vertical(ctx, 3), vertical(ctx, 4)
    got = de.eq_def(a, b, c, d, STL)
    assert got.is_true()
    # the radar chain of the corrected definition closes exactly
    a1, be, a2 = (got.witness[k].beg for k in ("a1", "be", "a2"))
    assert lam(be - a1).is_zero() and lam(a2 - be).is_zero()
    assert de.eq_def(a, c, c, d, STL).is_false()
    assert de.eq_def(a, a, c, c, STL).is_true()
    assert de.eq_def(a, a, c, d, STL).is_false()


def test_delta_def_double_diamond():
    ctx = ScalarContext()
    a = vertical(ctx)
    ev = lambda *c: event(v(ctx, *c))
    got = de.delta_def(a, ev(0, 0, 0, 0), ev(3, 0, 0, 0), ev(5, 0, 0, 0), ev(8, 0, 0, 0), STL)
    assert got.is_true()
    assert de.delta_def(
        a, ev(0, 0, 0, 0), ev(3, 0, 0, 0), ev(0, 0, 0, 0), ev(4, 0, 0, 0), STL
    ).is_false()
    # off-worldline projections
    assert de.delta_def(
        a, ev(0, 7, 0, 0), ev(3, 9, 0, 0), ev(0, 0, 0, 0), ev(3, 0, 0, 0), STL
    ).is_true()


def test_stl_def_counting():
    ctx = ScalarContext()
    assert de.stl_def(vertical(ctx), STL).is_true()
    spacelike = Line(v(ctx, 0, 0, 0, 0), v(ctx, 0, 1, 0, 0))
    got = de.stl_def(spacelike, FTL)
    assert got.is_false()
    assert "g" in got.witness and "g2" in got.witness


def test_tau_def_fixture():
    ctx = ScalarContext()
    b = vertical(ctx, -1)
    e1 = event(v(ctx, 0, 0, 0, 0))
    e2 = event(v(ctx, 2, 0, 0, 0))
    c = tau_geo(b, e1, e2)
    assert de.tau_def(c, b, e1, e2, STL).is_true()
    wrong = vertical(ctx, 3)
    assert de.tau_def(wrong, b, e1, e2, STL).is_false()
    assert de.tau_def(c, b, e1, e1, STL).is_false()


def test_dual_def_fixture():
    ctx = ScalarContext()
    d = v(ctx, 0, 1, 0, 0)
    a = Line(v(ctx, 0, 0, 0, 0), d)
    b = Line(v(ctx, 0, 0, 5, 0), d)
    cands = dual_candidates(a, b)
    assert de.dual_def(cands[0], a, b, FTL).is_true()
    assert de.dual_def(cands[1], a, b, FTL).is_true()
    wrong = Line(v(ctx, 3, 0, 3, 0), d)
    assert de.dual_def(wrong, a, b, FTL).is_false()


def test_op_def_polarities():
    ctx = ScalarContext()
    d = v(ctx, 0, 1, 0, 0)
    a = Line(v(ctx, 0, 0, 0, 0), d)
    tangent = Line(v(ctx, 1, 0, 1, 0), d)
    far = Line(v(ctx, 0, 0, 5, 0), d)
    assert de.op_def(a, tangent, FTL).is_true()
    assert de.op_def(a, far, FTL).is_false()
    got = de.op_def(vertical(ctx, 0), vertical(ctx, 1), STL)
    assert got.is_false()  # a timelike transversal refutes the universal
    assert got.witness["c"].interval_class.value == "timelike"


# --- suites -------------------------------------------------------------------


def test_axiom_suites_smoke():
    rep = run_axiom_suite("simplerel", STL, Budget(seed=101), cases=10)
    assert rep.total_failed == 0
    assert rep.total_unknown == 0
    rep2 = run_axiom_suite("simplerelftl", FTL, Budget(seed=103), cases=10)
    assert rep2.gate_failed() == 0


def test_lemma_suites_smoke():
    for kind, seed in ((STL, 11), (FTL, 13)):
        rep = run_lemma_suite(kind, Budget(seed=seed), cases=10)
        assert rep.total_failed == 0, [i.name for i in rep.items if i.failed]


def test_equivalence_zero_disagreements_smoke():
    for kind, seed in ((STL, 7), (FTL, 9)):
        rep = run_equivalence_suite(kind, Budget(seed=seed), cases=50)
        assert rep.total_failed == 0
        for item in rep.items:
            if item.name in RATE_EXEMPT:
                continue
            assert item.unknown * 10 <= item.cases, (item.name, item.unknown)


def test_printed_axftl2_counterexample_documented():
    # the unguarded reading fails on degenerate arguments: Bw_rho(b,b,d) is a
    # degenerate signal triangle, yet a transversal of b need not meet d
    from relcheck.model import bw_rho, meets

    ctx = ScalarContext()
    b = vertical(ctx, 0)
    d = vertical(ctx, 0, x2=5)
    a = Line(v(ctx, 0, 0, 0, 0), v(ctx, 2, 1, 0, 0))
    assert bw_rho(b, b, d)
    assert meets(a, b) and not meets(a, d)


def test_printed_axftl3_counterexample_documented():
    # null-separated Beg(beta) and g2 admit no observer line through both
    from relcheck.minkowski import IntervalClass

    ctx = ScalarContext()
    p = v(ctx, -1, 1, 0, 0)
    g2 = v(ctx, -2, 0, 0, 0)
    assert lam(p - g2).is_zero()
    assert Line.through(p, g2).interval_class is IntervalClass.LIGHTLIKE
    assert not FTL.allows(Line.through(p, g2).interval_class)


def test_invariance_smoke():
    rep = invariance_suite(FTL, Budget(seed=15), configs=4, maps_per_config=3)
    assert rep.total_failed == 0


def test_plain_axiso_fails_on_ftl_model():
    rep = run_axiom_suite("simplerel", FTL, Budget(seed=211), cases=40, axioms=["AxIso"])
    item = rep.items[0]
    assert item.failed > 0
    assert item.failures and "bindings" in (item.failures[0].detail or {})


def test_report_determinism():
    a = run_axiom_suite("simplerel", STL, Budget(seed=77), cases=6)
    b = run_axiom_suite("simplerel", STL, Budget(seed=77), cases=6)
    assert a.to_json() == b.to_json()
    c = run_axiom_suite("simplerel", STL, Budget(seed=78), cases=6)
    assert a.to_json() != c.to_json()


def test_generator_determinism():
    g1 = ConfigGen(999, 8)
    g2 = ConfigGen(999, 8)
    for _ in range(20):
        assert g1.point().render() == g2.point().render()
        assert g1.timelike_dir().render() == g2.timelike_dir().render()
    assert sub_seed(1, "x", 2) == sub_seed(1, "x", 2)
    assert sub_seed(1, "x", 2) != sub_seed(1, "x", 3)


def test_generate_configuration_dispatch():
    from relcheck.verifier.generators import GenerationError, generate_configuration

    a, b = generate_configuration("parallel timelike pair", 5)
    assert a.dir == b.dir
    a2, b2 = generate_configuration("parallel timelike pair", 5)
    assert (a, b) == (a2, b2)
    with pytest.raises(GenerationError):
        generate_configuration("heptagonal observer", 1)


def test_generator_patterns_certified():
    gen = ConfigGen(4242, 8)
    a, b = gen.nonrelatable_spacelike_pair()
    from relcheck.model import rho

    assert not rho(a, b)
    e1, e2 = gen.null_connected_pair()
    assert lam(e2.beg - e1.beg).is_zero()
    p, q = gen.chron_pair()
    assert lam(q.beg - p.beg).sign() < 0 and (q.beg - p.beg).x0.sign() > 0
    c = gen.timelike_line()
    s1, s2 = gen.sim_pair(c)
    assert inner(s2.beg - s1.beg, c.dir).is_zero()


# --- bounded evaluator ------------------------------------------------------------


@pytest.fixture(scope="module")
def table():
    return load_definitions()


def test_forall_stl_symbolic(table):
    f = parse_formula("forall a:Ob. STL(a)", table.signatures())
    assert evaluate_bounded(f, EvalModel(STL, table=table)).is_true()
    got = evaluate_bounded(f, EvalModel(FTL, table=table))
    assert got.is_false()
    assert got.witness["a"].interval_class.value == "spacelike"


def test_unknown_names_exhausted_quantifier(table):
    f = parse_formula("forall s:Si. Ev(s)", table.signatures())
    got = evaluate_bounded(f, EvalModel(STL, table=table))
    assert got.is_unknown()
    assert "forall s:Si" in got.reason


def test_exists_witness_from_scenario(table):
    scen = Scenario.from_dict(
        {
            "kind": "stl",
            "observers": {"a": {"base": ["0", "0", "0", "0"], "dir": ["1", "0", "0", "0"]}},
            "signals": {"s": {"beg": ["0", "0", "0", "0"], "end": ["1", "1", "0", "0"]}},
        }
    )
    model = EvalModel.from_scenario(scen, table)
    f = parse_formula("exists x:Si. (T(a,x) & !Ev(x))", table.signatures(), {"a": "Ob"})
    got = evaluate_bounded(f, model, {"a": scen.observers["a"]})
    assert got.is_true()


def test_two_point_observer_rule(table):
    scen = Scenario.from_dict(
        {
            "kind": "stl",
            "observers": {},
            "signals": {
                "e1": {"beg": ["0", "0", "0", "0"], "end": ["0", "0", "0", "0"]},
                "e2": {"beg": ["1", "1", "0", "0"], "end": ["1", "1", "0", "0"]},
            },
        }
    )
    model = EvalModel.from_scenario(scen, table)
    f = parse_formula(
        "exists a:Ob. (T(a,e1) & T(a,e2))",
        table.signatures(),
        {"e1": "Si", "e2": "Si"},
    )
    env = {"e1": scen.signals["e1"], "e2": scen.signals["e2"]}
    # the only line through both points is lightlike: not an observer
    assert evaluate_bounded(f, model, env).is_false()
