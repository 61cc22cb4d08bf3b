import csv

import numpy as np
import pytest

from tailoredbeams import cli, fgsynth
from tailoredbeams.cli import main

from conftest import HIBEF_CFG

PROFILE_CFG = """
[probe]
profile = {profile}
N = {N}
Nprime = {Nprime}
zeta0 = farfield
photons = 1e12
photon_energy_eV = 12914
duration_fs = 25
waist_um = 3.3
"""

CHEAP_SIGNAL_CFG = """
[probe]
profile = gauss
photons = 1e12
photon_energy_eV = 12914
duration_fs = 25
waist_um = 3.3

[pump]
energy_J = {energy}
duration_fs = 25
wavelength_nm = 800
waist_um = 1.0

[detection]
purity = 5.7e-10

[grid]
n_theta = 26
"""


def read_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], np.array(rows[1:], dtype=float)


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_profile_hole_farfield(tmp_path):
    cfg = write(tmp_path, "hole.cfg", PROFILE_CFG.format(profile="fg_hole", N=50, Nprime=5))
    out = tmp_path / "ff.csv"
    assert main(["profile", "--config", cfg, "--where", "farfield", "--output", str(out)]) == 0
    header, data = read_csv(out)
    assert header == ["theta_over_divergence", "intensity_rel_fg0"]
    x, y = data.T
    assert y[0] <= 1e-25 * y.max()
    # rises past the FG_5 edge
    edge = fgsynth.effective_divergence(5).exact
    assert y[x > 1.5 * edge].max() > 1e3 * y[x < 0.5 * edge].max()


def test_profile_fg0_focus(tmp_path):
    cfg = write(tmp_path, "g.cfg", PROFILE_CFG.format(profile="gauss", N=0, Nprime=0))
    out = tmp_path / "focus.csv"
    assert main(["profile", "--config", cfg, "--where", "focus", "--output", str(out)]) == 0
    header, data = read_csv(out)
    assert header[0] == "r_over_w0"
    x, y = data.T
    np.testing.assert_allclose(y, np.exp(-2 * x**2), rtol=1e-8, atol=1e-300)


def test_profile_fg50_focus_rings(tmp_path):
    cfg = write(tmp_path, "fg50.cfg", PROFILE_CFG.format(profile="fg", N=50, Nprime=0))
    out = tmp_path / "focus.csv"
    assert main(["profile", "--config", cfg, "--where", "focus", "--output", str(out)]) == 0
    _, data = read_csv(out)
    y = np.log(data[:, 1])
    interior = (y[1:-1] > y[:-2]) & (y[1:-1] > y[2:])
    # central peak sits at x=0, so any interior maximum is a ring
    assert interior.sum() >= 2


def test_scaling_table(tmp_path):
    out = tmp_path / "scaling.csv"
    assert main(["scaling", "--nmax", "60", "--output", str(out)]) == 0
    header, data = read_csv(out)
    assert header == cli.SCALING_HEADER
    assert data.shape == (61, 8)
    row0 = dict(zip(header, data[0]))
    assert row0["s_exact"] == 1 and row0["sigma"] == 1 and row0["theta_ratio_exact"] == 1
    assert dict(zip(header, data[1]))["sigma"] == pytest.approx(1.6, rel=1e-8)
    np.testing.assert_allclose(data[:, 1], data[:, 0] + 1, rtol=1e-8)
    large = data[30:]
    prod = large[:, 5] * large[:, 4] ** 2
    assert prod.max() / prod.min() - 1 < 0.10


def test_scaling_rejects_large_nmax(tmp_path, capsys):
    assert main(["scaling", "--nmax", "61", "--output", str(tmp_path / "x.csv")]) == 2
    assert "nmax" in capsys.readouterr().err


def test_csv_format(tmp_path):
    out = tmp_path / "scaling.csv"
    main(["scaling", "--nmax", "3", "--output", str(out)])
    raw = out.read_bytes()
    assert b"\r" not in raw and raw.endswith(b"\n")
    first = raw.splitlines()[1].decode().split(",")
    assert all(len(v.split("e")[0].replace("-", "").replace(".", "")) == 9 for v in first)


def test_signal_zero_pump(tmp_path, capsys):
    cfg = write(tmp_path, "zero.cfg", CHEAP_SIGNAL_CFG.format(energy=0))
    out = tmp_path / "sig.csv"
    assert main(["signal", "--config", cfg, "--output", str(out)]) == 0
    stdout = capsys.readouterr().out
    assert "N_perp = 0" in stdout
    header, data = read_csv(out)
    assert header == cli.SIGNAL_HEADER
    assert np.all(data[:, 1] == 0.0)


def test_signal_byte_reproducible(tmp_path, capsys):
    cfg = write(tmp_path, "cheap.cfg", CHEAP_SIGNAL_CFG.format(energy=10))
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["signal", "--config", cfg, "--output", str(a)]) == 0
    first = capsys.readouterr().out
    assert main(["signal", "--config", cfg, "--output", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert capsys.readouterr().out == first
    assert "window [" in first


def test_config_error_exit_code(tmp_path, capsys):
    cfg = write(tmp_path, "bad.cfg", CHEAP_SIGNAL_CFG.format(energy=10).replace("waist_um = 3.3", "waist_um = x"))
    assert main(["signal", "--config", cfg, "--output", str(tmp_path / "o.csv")]) == 2
    err = capsys.readouterr().err
    assert "[probe] waist_um" in err


def test_missing_file_exit_code(tmp_path):
    assert main(["profile", "--config", str(tmp_path / "nope.cfg"), "--output", str(tmp_path / "o.csv")]) == 2


def test_numerical_failure_exit_code(tmp_path, capsys):
    text = CHEAP_SIGNAL_CFG.format(energy=10) + "rel_tol = 1e-15\n"
    cfg = write(tmp_path, "tight.cfg", text)
    assert main(["signal", "--config", cfg, "--output", str(tmp_path / "o.csv")]) == 3
    err = capsys.readouterr().err
    assert "theta=" in err and "error" in err


def test_bundled_config_parses():
    run = cli.load(HIBEF_CFG)
    assert run.recipe.N == 50
