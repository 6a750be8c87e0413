import numpy as np
import pytest

from phasehop.report import (
    FigureDataset,
    FigureId,
    build_figure,
    read_csv,
    read_json,
    write_csv,
    write_json,
)


class TestFigureDataset:
    def test_unequal_columns_rejected(self):
        with pytest.raises(ValueError):
            FigureDataset(FigureId.SCHEME_COMPARISON,
                          {"a": [1.0, 2.0], "b": [1.0]})


class TestBuildFigure:
    def test_scheme_comparison_defaults(self):
        ds = build_figure(FigureId.SCHEME_COMPARISON, {"points": 60})
        assert set(ds.columns) == {"rate", "hopping", "static", "perfect"}
        assert ds.metadata["params"]["n"] == 20
        assert ds.metadata["params"]["p"] == 0.5
        hop = ds.columns["hopping"]
        assert np.all(ds.columns["perfect"] <= hop + 1e-12)
        low = hop <= 0.1  # ordering vs static holds in the reliability region
        assert np.all(hop[low] <= ds.columns["static"][low] + 1e-9)

    def test_erg_cap_compare_gap(self):
        ds = build_figure(FigureId.ERG_CAP_COMPARE, {"n_max": 10})
        gap = np.asarray(ds.columns["exact"]) - np.asarray(ds.columns["approx"])
        assert gap[5] == pytest.approx(0.035, abs=0.005)
        assert np.all(gap > 0)
        assert np.all(np.diff(gap[5:]) < 0)  # gap shrinks with more links

    def test_eps_cap_grid(self):
        ds = build_figure(
            FigureId.EPS_CAP_NLOS,
            {"points": 40, "p_values": (0.5,), "n": 20},
        )
        rates = np.asarray(ds.columns["rate_p0.5"])
        assert np.all(np.diff(rates) >= 0)  # nondecreasing in eps
        assert rates[0] == 0.0  # eps = 1e-9 is below the zero-link mass

    def test_out_hopping_small(self):
        ds = build_figure(
            FigureId.OUT_HOPPING_NLOS,
            {"p_values": (0.5,), "slow": 50, "fast": 200, "points": 30},
        )
        assert {"rate", "analytic_p0.5", "mc_p0.5"} == set(ds.columns)

    def test_cosine_histogram(self):
        ds = build_figure(
            FigureId.COSINE_HISTOGRAM, {"samples": 10**4, "n_values": (4,)}
        )
        assert "density_n4" in ds.columns and "normal_n4" in ds.columns

    def test_unknown_override(self):
        with pytest.raises(ValueError):
            build_figure(FigureId.SCHEME_COMPARISON, {"bogus": 1})


class TestWriters:
    def test_csv_round_trip(self, tmp_path):
        rng = np.random.default_rng(2)
        ds = FigureDataset(
            FigureId.SCHEME_COMPARISON,
            {"x": rng.normal(size=20), "y": rng.uniform(1e-12, 1e12, 20)},
        )
        path = tmp_path / "t.csv"
        write_csv(ds, path)
        cols = read_csv(path)
        np.testing.assert_array_equal(cols["x"], ds.columns["x"])
        np.testing.assert_array_equal(cols["y"], ds.columns["y"])

    def test_csv_lf_endings(self, tmp_path):
        ds = FigureDataset(FigureId.SCHEME_COMPARISON, {"x": [1.0]})
        path = tmp_path / "t.csv"
        write_csv(ds, path)
        raw = path.read_bytes()
        assert b"\r" not in raw
        assert raw.decode().splitlines()[0] == "x"

    def test_empty_dataset_header_only(self, tmp_path):
        ds = FigureDataset(FigureId.SCHEME_COMPARISON, {"x": [], "y": []})
        path = tmp_path / "t.csv"
        write_csv(ds, path)
        assert path.read_text() == "x,y\n"

    def test_json_round_trip(self, tmp_path):
        ds = build_figure(FigureId.SCHEME_COMPARISON, {"points": 10})
        path = tmp_path / "t.json"
        write_json(ds, path)
        back = read_json(path)
        assert back.figure_id is ds.figure_id
        assert back.metadata == ds.metadata
        for name in ds.columns:
            np.testing.assert_array_equal(back.columns[name], ds.columns[name])

    def test_metadata_rebuilds_identically(self, tmp_path):
        ds = build_figure(
            FigureId.OUT_QUANTIZED, {"slow": 20, "fast": 100, "points": 15}
        )
        params = dict(ds.metadata["params"])
        again = build_figure(FigureId.OUT_QUANTIZED, params)
        for name in ds.columns:
            np.testing.assert_array_equal(again.columns[name], ds.columns[name])

    def test_write_error_context(self):
        ds = FigureDataset(FigureId.SCHEME_COMPARISON, {"x": [1.0]})
        with pytest.raises(OSError, match="no/such/dir"):
            write_csv(ds, "/no/such/dir/file.csv")
