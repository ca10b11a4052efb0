"""Rendering: presets produce images, the red Marcus curve is visible,
outputs are byte-stable and carry the source-data hash."""
from __future__ import annotations

import numpy as np
import pytest
from PIL import Image

from conftest import RENDER_PRESETS
from figplots.cli import main
from figplots.render import render_preset


@pytest.mark.parametrize("preset", RENDER_PRESETS)
def test_presets_render(preset, data_root, tmp_path):
    out = render_preset(preset, data_root / preset, tmp_path)
    assert out.is_file() and out.suffix == ".png"
    with Image.open(out) as im:
        assert im.size[0] > 500 and im.size[1] > 400


def test_fig1a_red_curve_visible(data_root, tmp_path):
    out = render_preset("fig1a", data_root / "fig1a", tmp_path)
    with Image.open(out) as im:
        rgb = np.asarray(im.convert("RGB"), dtype=int)
    r, g, b = rgb[..., 0], rgb[..., 1], rgb[..., 2]
    red_pixels = ((r > 180) & (g < 90) & (b < 90)).sum()
    assert red_pixels > 200, f"only {red_pixels} red pixels"


def test_render_byte_stable(data_root, tmp_path):
    blobs = []
    for tag in ("a", "b"):
        out = render_preset("fig4", data_root / "fig4", tmp_path / tag)
        blobs.append(out.read_bytes())
    assert blobs[0] == blobs[1]


def test_embedded_hash_depends_on_source_bytes(tmp_path):
    """Two CSVs with identical parsed values but different bytes must give
    different images: the footer embeds the data digest."""
    base = ("tau_dimensionless,eta_dimensionless,q2_dimensionless\n"
            + "".join(f"{t / 4.0},{e},{t / 4.0 * e}\n"
                      for e in (0.1, 0.2, 0.3) for t in range(5)))
    variant = base.replace("0.25,", "0.250,", 1)
    assert base != variant
    blobs = []
    for tag, text in (("a", base), ("b", variant)):
        d = tmp_path / tag
        d.mkdir()
        (d / "fig4.csv").write_text(text, encoding="utf-8")
        out = render_preset("fig4", d, d / "out")
        blobs.append(out.read_bytes())
    assert blobs[0] != blobs[1]


def test_cli_success_and_schema_failure(data_root, tmp_path, capsys):
    assert main(["--preset", "fig4", "--data", str(data_root / "fig4"),
                 "--out", str(tmp_path / "ok")]) == 0
    assert (tmp_path / "ok" / "fig4.png").is_file()

    bad = tmp_path / "bad"
    bad.mkdir()
    (bad / "fig4.csv").write_text("wrong,header\n1,2\n", encoding="utf-8")
    assert main(["--preset", "fig4", "--data", str(bad),
                 "--out", str(tmp_path / "no")]) == 2
    assert not (tmp_path / "no" / "fig4.png").exists()
    assert "column mismatch" in capsys.readouterr().err


def test_cli_empty_csv_no_image(tmp_path):
    empty = tmp_path / "empty"
    empty.mkdir()
    (empty / "fig2.csv").write_text("", encoding="utf-8")
    assert main(["--preset", "fig2", "--data", str(empty),
                 "--out", str(tmp_path / "o")]) == 2
    assert not (tmp_path / "o" / "fig2.png").exists()
