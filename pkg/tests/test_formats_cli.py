import os
import struct
import subprocess
import sys

import numpy as np
import pytest

from lyndonarray import IntegrityError, build_plain, build_succinct, formats
from lyndonarray.oracle import bps_bruteforce, pack_parens

NA = b"northamerica"


def test_lbps_roundtrip():
    tree = build_succinct(NA)
    blob = formats.pack_lbps(tree.n, tree.payload())
    assert blob[:4] == b"LBPS" and blob[4] == 1
    assert struct.unpack_from("<Q", blob, 5)[0] == 12
    n, payload = formats.unpack_lbps(blob)
    assert n == 12 and payload == pack_parens(bps_bruteforce(NA))


def test_lbps_errors():
    with pytest.raises(IntegrityError):
        formats.unpack_lbps(b"XXXX" + b"\x00" * 20)
    tree = build_succinct(b"ab")
    blob = formats.pack_lbps(tree.n, tree.payload())
    with pytest.raises(IntegrityError):
        formats.unpack_lbps(blob[:-1])
    with pytest.raises(IntegrityError):
        formats.unpack_lbps(blob + b"\x00")
    with pytest.raises(IntegrityError):
        formats.unpack_lbps(b"LBPS\x02" + blob[5:])


def test_lyar_roundtrip_widths():
    values = np.asarray(build_plain(NA))
    blob = formats.pack_lyar(np.ascontiguousarray(values))
    assert blob[:4] == b"LYAR" and blob[4] == 1 and blob[5] == 4
    out = formats.unpack_lyar(blob)
    assert list(out) == [4, 3, 2, 1, 1, 6, 1, 3, 1, 1, 1, 1]
    wide = values.astype(np.uint64)
    blob8 = formats.pack_lyar(wide)
    assert blob8[5] == 8
    assert list(formats.unpack_lyar(blob8)) == list(out)
    with pytest.raises(IntegrityError):
        formats.unpack_lyar(blob[:-2])


def run_cli(*args, env_extra=None):
    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(
        [sys.executable, "-m", "lyndonarray.cli", *args],
        capture_output=True,
        text=True,
        env=env,
    )


@pytest.fixture
def na_file(tmp_path):
    p = tmp_path / "na.txt"
    p.write_bytes(NA)
    return p


def test_cli_build_query_roundtrip(tmp_path, na_file):
    lbps = tmp_path / "na.lbps"
    r = run_cli("build", str(na_file), "--mode", "succinct", "-o", str(lbps), "--verify")
    assert r.returncode == 0, r.stderr
    for op, idx, want in [
        ("lambda", 6, 6),
        ("pss", 11, 6),
        ("nss", 12, 13),
        ("parent", 9, 8),
        ("subtree", 0, 13),
    ]:
        r = run_cli("query", str(lbps), op, str(idx))
        assert r.returncode == 0 and r.stdout.strip() == str(want), (op, r.stdout, r.stderr)
    r = run_cli("query", str(lbps), "lambda", "0")
    assert r.returncode == 2
    r = run_cli("query", str(lbps), "nss", "13")
    assert r.returncode == 2


def test_cli_build_plain_and_stats(tmp_path, na_file):
    lyar = tmp_path / "na.lyar"
    r = run_cli("build", str(na_file), "--mode", "plain", "-o", str(lyar), "--verify", "--stats")
    assert r.returncode == 0, r.stderr
    assert "char_comparisons" in r.stdout
    vals = formats.unpack_lyar(lyar.read_bytes())
    assert list(vals) == [4, 3, 2, 1, 1, 6, 1, 3, 1, 1, 1, 1]


def test_cli_files_byte_stable(tmp_path, na_file):
    a = tmp_path / "a.lbps"
    b = tmp_path / "b.lbps"
    assert run_cli("build", str(na_file), "--mode", "succinct", "-o", str(a)).returncode == 0
    assert run_cli("build", str(na_file), "--mode", "succinct", "-o", str(b)).returncode == 0
    assert a.read_bytes() == b.read_bytes()


def test_cli_gen_reproducible(tmp_path):
    f1 = tmp_path / "g1"
    f2 = tmp_path / "g2"
    run_cli("gen", "random", "-n", "999", "--sigma", "4", "--seed", "9", "-o", str(f1))
    run_cli("gen", "random", "-n", "999", "--sigma", "4", "--seed", "9", "-o", str(f2))
    assert f1.read_bytes() == f2.read_bytes()
    run_cli("gen", "fibonacci", "-n", "13", "-o", str(f1))
    assert f1.read_bytes() == b"abaababaabaab"
    run_cli("gen", "increasing", "-n", "3", "--sigma", "3", "-o", str(f1))
    assert f1.read_bytes() == b"abc"
    r = run_cli("gen", "random", "-n", "0", "-o", str(f1))
    assert r.returncode == 0 and f1.read_bytes() == b""


def test_cli_corrupt_file_is_integrity_error(tmp_path, na_file):
    lbps = tmp_path / "na.lbps"
    run_cli("build", str(na_file), "--mode", "succinct", "-o", str(lbps))
    blob = bytearray(lbps.read_bytes())
    blob[14] ^= 0xFF  # damage the payload: parentheses become unbalanced
    bad = tmp_path / "bad.lbps"
    bad.write_bytes(bytes(blob))
    r = run_cli("query", str(bad), "lambda", "1")
    assert r.returncode == 1


def test_cli_exit_codes(tmp_path, na_file):
    r = run_cli("build", str(tmp_path / "missing"), "-o", str(tmp_path / "x"))
    assert r.returncode == 3
    r = run_cli("gen", "random", "-n", "5", "--sigma", "999", "-o", str(tmp_path / "x"))
    assert r.returncode == 2
    r = run_cli("gen", "random", "-n", "5", "-o", str(tmp_path / "x"),
                env_extra={"LYNDON_THREADS": "8"})
    assert r.returncode == 2
    r = run_cli("gen", "random", "-n", "5", "-o", str(tmp_path / "x"),
                env_extra={"LYNDON_THREADS": "1"})
    assert r.returncode == 0


def test_cli_bench_table_and_csv(tmp_path):
    f = tmp_path / "t.txt"
    run_cli("gen", "random", "-n", "30000", "--seed", "2", "-o", str(f))
    csv = tmp_path / "out.csv"
    r = run_cli("bench", str(f), "--repetitions", "3", "--csv", str(csv))
    assert r.returncode == 0, r.stderr
    lines = csv.read_text().strip().splitlines()
    assert lines[0] == "input,algo,bytes,median_seconds,mibs,extra_bytes_per_symbol"
    assert len(lines) == 4  # plain, succinct, naive
    r = run_cli("bench")
    assert r.returncode == 0  # empty input set: empty report
    r = run_cli("bench", str(f), "--repetitions", "4")
    assert r.returncode == 2  # median needs an odd count
