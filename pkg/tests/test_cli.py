import math
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles as O
from tandyn import cli, eval_f
from tandyn.records import format_complex, format_record, parse_complex, parse_record
from tandyn.render import read_image


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_classify_unit_disk(capsys):
    code, out, _ = run(capsys, "classify", "--lambda", "0.5+0i")
    assert code == 0
    assert out == "1\tUnitDisk\t0.5+0i\n"


def test_classify_two_cycles(capsys):
    code, out, _ = run(capsys, "classify", "--lambda", "2+0i")
    period, kind, m = parse_record(out)
    assert (code, period, kind) == (0, "1", "TwoCycles")
    assert abs(parse_complex(m) - float(O.M_FIXED)) < 1e-12


def test_classify_negative_parameter(capsys):
    code, out, _ = run(capsys, "classify", "--lambda", "-2+0i")
    assert code == 0 and parse_record(out)[1] == "SingleDoubled"


def test_classify_undetermined(capsys):
    code, out, _ = run(capsys, "classify", "--lambda", "0-1.5707963267948966i")
    assert code == 0 and out == "0\tUndetermined\t0+0i\n"


def test_virtual_center(capsys):
    code, out, _ = run(capsys, "virtual-center", "--period", "2", "--itinerary", "0")
    lam, res = parse_record(out)
    assert code == 0
    assert lam == "0+1.5707963267948966i"
    assert float(res) < 1e-10


def test_virtual_center_period_three(capsys):
    code, out, _ = run(capsys, "virtual-center", "--period", "3", "--itinerary", "8,0",
                       "--seed", "0.1+1.5707963267948966i")
    assert code == 0 and float(parse_record(out)[1]) < 1e-10


def test_orbit(capsys):
    code, out, _ = run(capsys, "orbit", "--lambda", "0.5", "--z0", "0.3", "--steps", "3")
    lines = [parse_record(l) for l in out.splitlines()]
    assert code == 0 and [l[0] for l in lines] == ["0", "1", "2", "3"]
    assert parse_complex(lines[1][1]) == eval_f(0.5, 0.3)
    assert abs(parse_complex(lines[1][1]) - 0.5 * math.tan(0.3)) < 1e-16


def test_orbit_hits_pole(capsys):
    code, out, _ = run(capsys, "orbit", "--lambda", "2", "--z0", "1.5707963267948966",
                       "--steps", "5")
    assert code == 0 and out.splitlines()[-1] == "pole\t0"


def test_prepoles(capsys):
    code, out, _ = run(capsys, "prepoles", "--lambda", "2", "--order", "2", "--bound", "1")
    lines = [parse_record(l) for l in out.splitlines()]
    assert code == 0 and len(lines) == 9
    assert lines[0][0] == "-1,-1"
    assert all(parse_complex(l[1]).imag == 0 for l in lines)


def test_prepoles_report_skipped(capsys):
    code, out, err = run(capsys, "prepoles", "--lambda", "-1.5707963267948966i",
                         "--order", "2", "--bound", "1")
    assert code == 0
    assert len(out.splitlines()) == 3
    assert err.count("skipped") == 6


def test_cycle(capsys):
    code, out, _ = run(capsys, "cycle", "--lambda", "-2", "--guess", "1.8i", "--period", "2")
    period, stab, m, sym, pts = parse_record(out)
    assert (code, period, stab, sym) == (0, "2", "Attracting", "true")
    assert abs(parse_complex(m) - float(O.M_TWO_CYCLE)) < 1e-12
    assert len(pts.split(",")) == 2


def test_cycle_failure_exit_code(capsys):
    code, out, err = run(capsys, "cycle", "--lambda", "2", "--guess",
                         "1.5707963267948966", "--period", "1")
    assert code == 1 and out == "" and "PoleCollision" in err


def test_ray(capsys):
    code, out, _ = run(capsys, "ray", "--seed", "0.5", "--alpha", "0", "--r-end", "0.1")
    lines = [parse_record(l) for l in out.splitlines()]
    assert code == 0 and float(lines[-1][0]) == 0.1
    for r, _, lam, _ in lines:
        assert abs(parse_complex(lam) - float(r)) < 1e-10


def test_render_commands(capsys, tmp_path):
    out_path = tmp_path / "p.ppm"
    code, out, _ = run(capsys, "render-param", "--center", "0+1.5i", "--width", "4",
                       "--pixels", "16", "--out", str(out_path), "--budget", "300")
    assert code == 0 and out == f"{out_path}\t16\t16\n"
    img = read_image(out_path)
    assert img.cols == 16 and img.meta["budget"] == "300"
    dyn = tmp_path / "d.ppm"
    code, _, _ = run(capsys, "render-dynamic", "--lambda", "2", "--width", "6",
                     "--pixels", "9", "--rows", "5", "--out", str(dyn))
    assert code == 0
    img = read_image(dyn)
    assert (img.cols, img.rows) == (9, 5) and img.meta["lambda"] == "2+0i"


@pytest.mark.parametrize("argv", [
    [],
    ["bogus"],
    ["classify"],
    ["classify", "--lambda", "abc"],
    ["classify", "--lambda", "1", "--unknown", "3"],
    ["classify", "--lambda", "0"],
    ["orbit", "--lambda", "1", "--z0", "0", "--steps", "-1"],
    ["virtual-center", "--period", "3", "--itinerary", "1"],
    ["virtual-center", "--period", "2", "--itinerary", "a,b"],
    ["ray", "--seed", "0.5", "--alpha", "0", "--r-end", "2"],
    ["render-param", "--width", "1", "--pixels", "0", "--out", "x.ppm"],
])
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and "error" in err


def test_config_file(capsys, tmp_path):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("# defaults\nlambda = 2+0i\nbudget=500\n")
    code, out, _ = run(capsys, "--config", str(cfg), "classify")
    assert code == 0 and parse_record(out)[1] == "TwoCycles"
    # command-line flags beat the file
    code, out, _ = run(capsys, "--config", str(cfg), "classify", "--lambda", "0.5")
    assert out == "1\tUnitDisk\t0.5+0i\n"


def test_config_errors(capsys, tmp_path):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("steps=3\n")
    code, _, err = run(capsys, "--config", str(cfg), "classify", "--lambda", "1")
    assert code == 2 and "unknown config key" in err
    cfg.write_text("no equals sign\n")
    assert run(capsys, "--config", str(cfg), "classify", "--lambda", "1")[0] == 2
    assert run(capsys, "--config", str(tmp_path / "missing"), "classify")[0] == 2


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest")
    lines = out.splitlines()
    assert code == 0
    assert lines and all(l.startswith("PASS\t") for l in lines)


def test_help_exits_zero(capsys):
    assert run(capsys, "--help")[0] == 0


def test_console_script_entry():
    res = subprocess.run([sys.executable, "-m", "tandyn", "classify", "--lambda", "0.5+0i"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and res.stdout == "1\tUnitDisk\t0.5+0i\n"


# --- records --------------------------------------------------------------

finite = st.floats(allow_nan=False, allow_infinity=False)


@settings(max_examples=500, deadline=None)
@given(finite, finite)
def test_complex_roundtrip(a, b):
    z = complex(a, b)
    back = parse_complex(format_complex(z))
    assert back == z
    assert math.copysign(1, back.real) == math.copysign(1, a)
    assert math.copysign(1, back.imag) == math.copysign(1, b)


fields = st.one_of(st.integers(-10**6, 10**6), finite,
                   st.builds(complex, finite, finite), st.booleans(),
                   st.sampled_from(["UnitDisk", "TwoCycles", "SingleDoubled"]))


@settings(max_examples=300, deadline=None)
@given(st.lists(fields, min_size=1, max_size=6))
def test_record_roundtrip(values):
    parts = parse_record(format_record(*values) + "\n")
    assert len(parts) == len(values)
    for v, text in zip(values, parts):
        if isinstance(v, bool):
            assert text == ("true" if v else "false")
        elif isinstance(v, int):
            assert int(text) == v
        elif isinstance(v, float):
            assert float(text) == v
        elif isinstance(v, complex):
            assert parse_complex(text) == v
        else:
            assert text == v


@pytest.mark.parametrize("text,want", [
    ("1+2i", 1 + 2j), ("-2.5e-3-4E2i", -2.5e-3 - 400j), ("3", 3 + 0j),
    ("1.5i", 1.5j), ("-0+0i", complex(-0.0, 0.0))])
def test_parse_complex_forms(text, want):
    assert parse_complex(text) == want


@pytest.mark.parametrize("text", ["", "1+2j", "abc", "1+", "i+1", "1 + 2i"])
def test_parse_complex_rejects(text):
    with pytest.raises(ValueError):
        parse_complex(text)
