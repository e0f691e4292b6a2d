import csv

import numpy as np
import pytest

from plots import PlotSpec, render_phase_diagram, shading_grid
from plots.render_phase_diagram import GREY, WHITE, load_risk_csv, main

HEADER = ["scheme", "n", "a", "b", "alpha", "snr", "s", "M", "fa", "md", "risk", "seed"]


def write_csv(path, scheme, rows):
    """rows: list of (s, alpha, risk)."""
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(HEADER)
        for s, alpha, risk in rows:
            writer.writerow([scheme, 100, 10, 3, alpha, 5.0, s, 10,
                             risk / 2, risk / 2, risk, 1])
    return path


class TestShadingGrid:
    def test_single_cell_low_risk_colored(self, tmp_path):
        path = write_csv(tmp_path / "a.csv", "tst", [(10, 1.0, 0.0)])
        _, _, rgb = shading_grid({"tst": load_risk_csv(path)}, delta=0.1)
        assert rgb.shape == (1, 1, 3)
        assert not np.allclose(rgb[0, 0], GREY)
        assert not np.allclose(rgb[0, 0], WHITE)

    def test_all_high_risk_grey(self, tmp_path):
        rows = [(s, alpha, 2.0) for s in (10, 20) for alpha in (1.0, 2.0)]
        path = write_csv(tmp_path / "a.csv", "tst", rows)
        _, _, rgb = shading_grid({"tst": load_risk_csv(path)}, delta=0.1)
        assert np.allclose(rgb, np.array(GREY))

    def test_four_risk_levels(self, tmp_path):
        # risks 0 (colored), 0.5 (white), 1.5 and 2.0 (grey) at delta=0.1
        rows = [(10, 1.0, 2.0), (10, 2.0, 1.5), (20, 1.0, 0.5), (20, 2.0, 0.0)]
        path = write_csv(tmp_path / "a.csv", "tst", rows)
        s_vals, alpha_vals, rgb = shading_grid({"tst": load_risk_csv(path)}, delta=0.1)
        assert s_vals == [10, 20] and alpha_vals == [1.0, 2.0]
        assert np.allclose(rgb[0, 0], GREY)
        assert np.allclose(rgb[0, 1], GREY)
        assert np.allclose(rgb[1, 0], WHITE)
        colored = rgb[1, 1]
        assert not np.allclose(colored, GREY) and not np.allclose(colored, WHITE)

    def test_mixed_schemes_blend(self, tmp_path):
        p1 = write_csv(tmp_path / "a.csv", "tst", [(10, 1.0, 0.0)])
        p2 = write_csv(tmp_path / "b.csv", "naive-tst", [(10, 1.0, 0.0)])
        _, _, rgb = shading_grid(
            {"tst": load_risk_csv(p1), "naive-tst": load_risk_csv(p2)}, delta=0.1)
        from plots.render_phase_diagram import SCHEME_COLORS

        expected = np.mean([SCHEME_COLORS["tst"], SCHEME_COLORS["naive-tst"]], axis=0)
        assert np.allclose(rgb[0, 0], expected)

    def test_intermediate_risk_needs_all_high_for_grey(self, tmp_path):
        p1 = write_csv(tmp_path / "a.csv", "tst", [(10, 1.0, 2.0)])
        p2 = write_csv(tmp_path / "b.csv", "naive-tst", [(10, 1.0, 0.5)])
        _, _, rgb = shading_grid(
            {"tst": load_risk_csv(p1), "naive-tst": load_risk_csv(p2)}, delta=0.1)
        assert np.allclose(rgb[0, 0], WHITE)

    def test_mismatched_grids_rejected(self, tmp_path):
        p1 = write_csv(tmp_path / "a.csv", "tst", [(10, 1.0, 0.0)])
        p2 = write_csv(tmp_path / "b.csv", "naive-tst", [(20, 1.0, 0.0)])
        with pytest.raises(ValueError):
            shading_grid({"tst": load_risk_csv(p1),
                          "naive-tst": load_risk_csv(p2)}, delta=0.1)

    def test_missing_columns_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("foo,bar\n1,2\n")
        with pytest.raises(ValueError):
            load_risk_csv(path)


class TestRender:
    def test_writes_png_and_svg(self, tmp_path):
        rows = [(10, 1.0, 2.0), (10, 2.0, 1.5), (20, 1.0, 0.5), (20, 2.0, 0.0)]
        path = write_csv(tmp_path / "a.csv", "tst", rows)
        spec = PlotSpec(csv_paths={"tst": str(path)}, delta=0.1,
                        output=str(tmp_path / "diagram"))
        written = render_phase_diagram(spec)
        assert sorted(p.rsplit(".", 1)[1] for p in written) == ["png", "svg"]
        for p in written:
            assert (tmp_path / p.split("/")[-1]).stat().st_size > 0

    def test_cli_entry(self, tmp_path, capsys):
        path = write_csv(tmp_path / "a.csv", "tst", [(10, 1.0, 0.0)])
        code = main(["--csv", f"tst={path}", "--out", str(tmp_path / "out"),
                     "--delta", "0.2"])
        assert code == 0
        out = capsys.readouterr().out
        assert "out.png" in out and "out.svg" in out

    def test_delta_validation(self):
        with pytest.raises(ValueError):
            PlotSpec(csv_paths={"tst": "x.csv"}, delta=1.5)
