"""Preprocessing tests: CSV ingestion, one-hot, PCA, min-max, splitting."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from vqclass.errors import ConfigError, DataError
from vqclass.prep import (
    Dataset,
    RawTable,
    load_csv,
    minmax_fit,
    minmax_from_dict,
    minmax_to_dict,
    minmax_transform,
    one_hot_encode,
    pca_fit,
    pca_from_dict,
    pca_to_dict,
    pca_transform,
    stratified_split,
)


def write_csv(tmp_path, text, name="data.csv"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


class TestLoadCsv:
    def test_basic_load(self, tmp_path):
        path = write_csv(tmp_path, "a,b,class\n1,2,P\n3,4,H\n5,6,P\n")
        table = load_csv(path, "class", "P")
        assert table.columns == ["a", "b", "class"]
        assert len(table.rows) == 3

    def test_ragged_row_names_row_number(self, tmp_path):
        rows = ["a,b,class"] + [f"{i},{i},H" for i in range(1, 7)] + ["7,P", "8,8,P"]
        path = write_csv(tmp_path, "\n".join(rows) + "\n")
        with pytest.raises(DataError, match="row 7"):
            load_csv(path, "class", "P")

    def test_missing_label_column(self, tmp_path):
        path = write_csv(tmp_path, "a,b\n1,2\n")
        with pytest.raises(DataError, match="label"):
            load_csv(path, "class", "P")

    def test_empty_file(self, tmp_path):
        path = write_csv(tmp_path, "")
        with pytest.raises(DataError, match="empty"):
            load_csv(path, "class", "P")

    def test_missing_file(self, tmp_path):
        with pytest.raises(DataError, match="not found"):
            load_csv(str(tmp_path / "nope.csv"), "class", "P")

    def test_label_column_must_be_binary(self, tmp_path):
        path = write_csv(tmp_path, "a,class\n1,P\n2,H\n3,X\n")
        with pytest.raises(DataError, match="distinct"):
            load_csv(path, "class", "P")

    def test_positive_label_must_exist(self, tmp_path):
        path = write_csv(tmp_path, "a,class\n1,P\n2,H\n")
        with pytest.raises(DataError, match="positive"):
            load_csv(path, "class", "Q")


class TestOneHot:
    def _table(self, columns, rows):
        return RawTable(columns, rows, "class", "P")

    def test_label_mapping(self):
        t = self._table(["class"], [["P"], ["H"], ["P"]])
        ds = one_hot_encode(t)
        assert ds.labels.tolist() == [1, 0, 1]

    def test_categorical_expansion(self):
        t = self._table(["col", "class"], [["a", "P"], ["b", "H"], ["a", "P"]])
        ds = one_hot_encode(t)
        assert ds.feature_names == ["col=a", "col=b"]
        np.testing.assert_array_equal(ds.features, [[1, 0], [0, 1], [1, 0]])

    def test_numeric_passthrough(self):
        t = self._table(["x", "class"], [["1.5", "P"], ["2.0", "H"]])
        ds = one_hot_encode(t)
        np.testing.assert_array_equal(ds.features, [[1.5], [2.0]])

    def test_idempotent_on_numeric_tables(self):
        t = self._table(
            ["x", "y", "class"], [["1", "2", "P"], ["3", "4.5", "H"], ["-1", "0", "P"]]
        )
        ds = one_hot_encode(t)
        np.testing.assert_array_equal(ds.features, [[1, 2], [3, 4.5], [-1, 0]])
        assert ds.feature_names == ["x", "y"]

    def test_too_many_categories_rejected(self):
        rows = [[f"cat{i}", "P" if i % 2 else "H"] for i in range(65)]
        with pytest.raises(DataError, match="65 distinct"):
            one_hot_encode(self._table(["col", "class"], rows))

    def test_nonfinite_numeric_rejected(self):
        t = self._table(["x", "class"], [["1.0", "P"], ["nan", "H"]])
        with pytest.raises(DataError, match="non-finite"):
            one_hot_encode(t)

    def test_sample_ids_assigned(self):
        ds = one_hot_encode(self._table(["class"], [["P"], ["H"]]))
        assert ds.sample_ids.tolist() == [0, 1]


class TestPca:
    def test_rank_one_line(self):
        x = np.array([[t, 2 * t] for t in (-2.0, -1.0, 0.5, 2.5)])
        model = pca_fit(x, 1)
        direction = np.array([1.0, 2.0]) / np.sqrt(5.0)
        np.testing.assert_allclose(model.components[0], direction, atol=1e-12)
        total_var = x.var(axis=0, ddof=1).sum()
        assert model.explained_variance[0] == pytest.approx(total_var, rel=1e-12)

    def test_transform_of_training_mean_is_zero(self):
        rng = np.random.default_rng(0)
        x = rng.normal(size=(12, 6))
        model = pca_fit(x, 3)
        np.testing.assert_allclose(
            pca_transform(model, x.mean(axis=0)[None, :]), np.zeros((1, 3)), atol=1e-12
        )

    def test_projector_matches_eigendecomposition_oracle(self):
        rng = np.random.default_rng(1)
        x = rng.normal(size=(20, 8))
        model = pca_fit(x, 5)
        got = model.components.T @ model.components
        cov = np.cov(x, rowvar=False, ddof=1)
        eigvals, eigvecs = np.linalg.eigh(cov)
        top = eigvecs[:, np.argsort(eigvals)[::-1][:5]]
        expect = top @ top.T
        np.testing.assert_allclose(got, expect, atol=1e-8)

    def test_components_orthonormal(self):
        rng = np.random.default_rng(2)
        model = pca_fit(rng.normal(size=(30, 10)), 6)
        np.testing.assert_allclose(
            model.components @ model.components.T, np.eye(6), atol=1e-10
        )

    def test_explained_variance_bounded_by_total(self):
        rng = np.random.default_rng(3)
        x = rng.normal(size=(25, 7)) * rng.uniform(0.5, 4.0, size=7)
        model = pca_fit(x, 4)
        assert np.all(np.diff(model.explained_variance) <= 1e-12)
        assert model.explained_variance.sum() <= x.var(axis=0, ddof=1).sum() + 1e-8

    def test_sign_convention(self):
        rng = np.random.default_rng(4)
        model = pca_fit(rng.normal(size=(15, 5)), 3)
        for row in model.components:
            assert row[np.argmax(np.abs(row))] > 0

    def test_k_too_large(self):
        with pytest.raises(ConfigError):
            pca_fit(np.zeros((3, 5)) + np.arange(5), 4)

    def test_degenerate_input_rejected(self):
        with pytest.raises(DataError):
            pca_fit(np.full((6, 4), 3.14), 2)

    def test_serialization_round_trip(self):
        rng = np.random.default_rng(5)
        model = pca_fit(rng.normal(size=(10, 4)), 2)
        back = pca_from_dict(pca_to_dict(model))
        np.testing.assert_array_equal(back.mean, model.mean)
        np.testing.assert_array_equal(back.components, model.components)
        np.testing.assert_array_equal(back.explained_variance, model.explained_variance)


class TestMinMax:
    def test_basic_scaling(self):
        model = minmax_fit(np.array([[0.0], [5.0], [10.0]]))
        out = minmax_transform(model, np.array([[0.0], [5.0], [10.0]]))
        np.testing.assert_allclose(out.ravel(), [0.0, 0.5, 1.0])

    def test_constant_feature_maps_to_zero(self):
        model = minmax_fit(np.full((3, 1), 7.0))
        out = minmax_transform(model, np.array([[7.0], [9.0]]))
        np.testing.assert_array_equal(out.ravel(), [0.0, 0.0])

    def test_out_of_range_clipped(self):
        model = minmax_fit(np.array([[0.0], [10.0]]))
        out = minmax_transform(model, np.array([[15.0], [-3.0]]))
        np.testing.assert_array_equal(out.ravel(), [1.0, 0.0])

    def test_models_immutable_after_fit(self):
        train = np.array([[0.0, 1.0], [4.0, 3.0]])
        model = minmax_fit(train)
        lo, hi = model.minimum.copy(), model.maximum.copy()
        minmax_transform(model, np.array([[99.0, -99.0]]))
        np.testing.assert_array_equal(model.minimum, lo)
        np.testing.assert_array_equal(model.maximum, hi)

    def test_serialization_round_trip(self):
        model = minmax_fit(np.array([[0.0, -2.0], [1.0, 5.0]]))
        back = minmax_from_dict(minmax_to_dict(model))
        np.testing.assert_array_equal(back.minimum, model.minimum)
        np.testing.assert_array_equal(back.maximum, model.maximum)

    @given(
        arrays(np.float64, (6, 3), elements=st.floats(-1e6, 1e6)),
        arrays(np.float64, (4, 3), elements=st.floats(-1e7, 1e7)),
    )
    @settings(max_examples=60, deadline=None)
    def test_output_always_in_unit_interval(self, train, test):
        model = minmax_fit(train)
        out = minmax_transform(model, test)
        assert np.all(out >= 0.0)
        assert np.all(out <= 1.0)


def _dataset(labels):
    labels = np.asarray(labels, dtype=np.int64)
    n = labels.size
    rng = np.random.default_rng(0)
    return Dataset(rng.normal(size=(n, 3)), labels, ["a", "b", "c"], np.arange(n))


class TestStratifiedSplit:
    def test_balanced_ten_samples(self):
        ds = _dataset([0] * 5 + [1] * 5)
        train, test = stratified_split(ds, 0.2, seed=0)
        assert len(train) == 8 and len(test) == 2
        assert sorted(np.unique(test.labels).tolist()) == [0, 1]

    def test_rounding_rule(self):
        ds = _dataset([0] * 2 + [1] * 4)
        train, test = stratified_split(ds, 0.5, seed=3)
        assert int(np.sum(test.labels == 1)) == 2
        assert int(np.sum(test.labels == 0)) == 1

    def test_deterministic(self):
        ds = _dataset([0] * 6 + [1] * 6)
        a = stratified_split(ds, 0.25, seed=5)
        b = stratified_split(ds, 0.25, seed=5)
        assert np.array_equal(a[0].sample_ids, b[0].sample_ids)
        assert np.array_equal(a[1].sample_ids, b[1].sample_ids)

    def test_partition_is_disjoint_and_complete(self):
        ds = _dataset([0] * 7 + [1] * 9)
        train, test = stratified_split(ds, 0.3, seed=1)
        merged = sorted(train.sample_ids.tolist() + test.sample_ids.tolist())
        assert merged == list(range(16))

    def test_single_sample_class_rejected(self):
        ds = _dataset([0, 1, 1, 1])
        with pytest.raises(DataError):
            stratified_split(ds, 0.25, seed=0)

    def test_fraction_validation(self):
        ds = _dataset([0, 0, 1, 1])
        with pytest.raises(ConfigError):
            stratified_split(ds, 0.0, seed=0)
        with pytest.raises(ConfigError):
            stratified_split(ds, 1.0, seed=0)

    def test_models_fit_on_train_only_no_leakage(self):
        # classic guard: transforming test rows must not move the models
        ds = _dataset([0] * 10 + [1] * 10)
        train, test = stratified_split(ds, 0.2, seed=2)
        pca = pca_fit(train.features, 2)
        mean_before = pca.mean.copy()
        z_train = pca_transform(pca, train.features)
        mm = minmax_fit(z_train)
        lo_before = mm.minimum.copy()
        pca_transform(pca, test.features)
        minmax_transform(mm, pca_transform(pca, test.features))
        np.testing.assert_array_equal(pca.mean, mean_before)
        np.testing.assert_array_equal(mm.minimum, lo_before)
