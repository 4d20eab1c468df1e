"""Smoke tests for the python bindings: dataset builders, one learner round
trip, the cross-validation harness, and file I/O."""

import math

import pytest

import antilearn as al


def test_dataset_builders():
    pyr = al.pyramid_xor_dataset()
    assert len(pyr) == 256
    assert pyr.dim == 8
    assert pyr.class_counts() == [128, 128]
    assert pyr.feature_names == ["a", "b", "c", "d", "e", "f", "g", "h"]
    # Table rows: 00000000 -> FALSE, 00000001 -> TRUE
    assert pyr.labels[0] == 0
    assert pyr.labels[1] == 1

    rnd = al.random_xor_dataset()
    assert rnd.class_counts() == [128, 128]

    had = al.hadamard_dataset(8)
    assert len(had) == 256
    assert had.dim == 255
    assert had.signed_encoding()


def test_hadamard_matrix():
    h4 = al.sylvester_hadamard(2)
    assert h4.order == 4
    assert h4.rows() == [
        [1, 1, 1, 1],
        [1, -1, 1, -1],
        [1, 1, -1, -1],
        [1, -1, -1, 1],
    ]
    with pytest.raises(ValueError):
        al.sylvester_hadamard(13)


def test_xor_expressions():
    expr = al.XorExpr.parse("xor(xor(a,b),c)")
    assert expr.eval({"a": 1, "b": 0, "c": 1}) == 0
    assert str(al.pyramid_xor_expr()) == "xor(xor(xor(a,b),xor(c,d)),xor(xor(e,f),xor(g,h)))"
    with pytest.raises(ValueError):
        expr.eval({"a": 1, "b": 0})


def test_nb_loocv_is_exactly_zero_and_inverts_to_one():
    ds = al.pyramid_xor_dataset()
    spec = al.ClassifierSpec()
    spec.algorithm = al.Algorithm.naive_bayes
    plan = al.make_folds(256, 256, ds.labels, 0)
    cell = al.evaluate_cv(spec, ds, plan)
    assert cell.mean_val_acc == 0.0
    inverted = al.evaluate_cv(spec, ds, plan, invert=True)
    assert inverted.mean_val_acc == 1.0


def test_learner_round_trip():
    ds = al.pyramid_xor_dataset()
    model = al.nb_train(ds)
    pred = al.nb_predict(model, ds.samples[0])
    assert pred.label in (0, 1)
    assert math.isclose(sum(pred.posterior), 1.0)

    xor4 = al.BinaryDataset()
    xor4.name = "xor4"
    xor4.feature_names = ["x1", "x2"]
    xor4.samples = [[0, 0], [0, 1], [1, 0], [1, 1]]
    xor4.labels = [0, 1, 1, 0]
    svm = al.svm_train(xor4)
    assert [al.svm_predict(svm, x).label for x in xor4.samples] == xor4.labels


def test_small_grid_and_report(tmp_path):
    ds = al.pyramid_xor_dataset()
    spec = al.ClassifierSpec()
    spec.algorithm = al.Algorithm.naive_bayes
    spec.seed = 7
    report = al.run_grid([ds], [spec], fold_counts=[4, 8], seed=7)
    assert len(report.cells) == 2
    assert all(c.ok() for c in report.cells)

    path = tmp_path / "report.csv"
    al.write_report_csv(report, path)
    back = al.read_report_csv(path)
    assert [c.fold_count for c in back.cells] == [4, 8]

    flagged = al.detect_antilearning(report)
    assert all(c.mean_val_acc < 0.5 for c in flagged)


def test_dataset_csv_round_trip(tmp_path):
    ds = al.hadamard_dataset(3)
    path = tmp_path / "hadamard-8.csv"
    al.write_dataset_csv(ds, path)
    back = al.read_dataset_csv(path)
    assert al.structurally_equal(ds, back)
    assert back.name == "hadamard-8"

    bad = tmp_path / "bad.csv"
    bad.write_text("a,b,out\n0,2,TRUE\n")
    with pytest.raises(ValueError):
        al.read_dataset_csv(bad)
