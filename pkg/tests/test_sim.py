import numpy as np
import pytest

from fsscode.qc import assemble, expand, shift_sequence_from_list
from fsscode.setsystem import validate_fss
from fsscode.sim import (
    BerRecord,
    ChannelConfig,
    StopRule,
    ber_sweep,
    spa_decode,
    transmit,
    write_ber_csv,
)

TABLE_312_M13 = [0, 0, 1, 2, 2, 1, 3, 5, 4, 8, 5, 10, 7, 3, 8, 11, 6, 12, 9, 4,
                 10, 7, 11, 9]


@pytest.fixture(scope="module")
def code_312():
    fss = validate_fss(3, [[1, 2, 3]] * 12)
    S = shift_sequence_from_list(fss, 13, TABLE_312_M13)
    return expand(assemble(fss, S))


class TestChannel:
    def test_noise_var_formula(self):
        cfg = ChannelConfig(ebn0_db=0.0, rate=0.5)
        assert cfg.noise_var == pytest.approx(1.0)

    def test_rate_scaling_consistent(self):
        lo = ChannelConfig(ebn0_db=2.0, rate=0.25)
        hi = ChannelConfig(ebn0_db=2.0, rate=0.5)
        assert hi.noise_var == pytest.approx(lo.noise_var / 2)

    def test_rate_validated(self):
        with pytest.raises(ValueError):
            ChannelConfig(ebn0_db=1.0, rate=0.0)

    def test_reproducible(self):
        cfg = ChannelConfig(ebn0_db=3.0, rate=0.7, seed=9)
        assert np.array_equal(transmit(64, cfg), transmit(64, cfg))

    def test_llr_mean(self):
        cfg = ChannelConfig(ebn0_db=2.0, rate=0.75, seed=3)
        llr = transmit(100_000, cfg)
        mean = 2.0 / cfg.noise_var
        stderr = np.sqrt(4.0 / cfg.noise_var) / np.sqrt(llr.size)
        assert abs(llr.mean() - mean) < 3 * stderr


class TestSpaDecode:
    def test_noiseless_converges_immediately(self, code_312):
        res = spa_decode(code_312, np.full(code_312.cols, 40.0))
        assert res.converged and res.iterations == 0
        assert not res.bits.any()

    def test_single_flip_corrected(self, code_312):
        llr = np.full(code_312.cols, 20.0)
        llr[17] = -20.0
        res = spa_decode(code_312, llr)
        assert res.converged
        assert not res.bits.any()

    def test_converged_means_zero_syndrome(self, code_312):
        rng = np.random.default_rng(4)
        H = code_312.to_dense()
        for _ in range(20):
            llr = transmit(code_312.cols,
                           ChannelConfig(1.0, 0.75, seed=int(rng.integers(1e9))))
            res = spa_decode(code_312, llr, max_iter=20)
            if res.converged:
                assert not ((H @ res.bits) % 2).any()

    def test_dimension_mismatch(self, code_312):
        with pytest.raises(ValueError):
            spa_decode(code_312, np.zeros(code_312.cols + 1))


class TestBerSweep:
    def test_empty_snr_list(self, code_312):
        assert ber_sweep(code_312, [], rate=0.75) == []

    def test_monotone_in_snr(self, code_312):
        recs = ber_sweep(code_312, [1.0, 5.0], rate=0.75,
                         stop=StopRule(40, 3000), seed=1)
        assert recs[1].ber <= recs[0].ber

    def test_reproducible(self, code_312):
        stop = StopRule(10, 200)
        r1 = ber_sweep(code_312, [2.0], rate=0.75, stop=stop, seed=5)
        r2 = ber_sweep(code_312, [2.0], rate=0.75, stop=stop, seed=5)
        assert r1 == r2

    def test_stop_rule_frames_cap(self, code_312):
        recs = ber_sweep(code_312, [10.0], rate=0.75,
                         stop=StopRule(100, 50), seed=2)
        assert recs[0].frames == 50

    def test_csv_format(self, tmp_path):
        rec = BerRecord(ebn0_db=2.0, bits=1000, bit_errors=10, frames=10,
                        frame_errors=4)
        path = tmp_path / "ber.csv"
        write_ber_csv([rec], path)
        lines = path.read_text().strip().splitlines()
        assert lines[0] == "ebn0_db,bits,bit_errors,frames,frame_errors,ber,fer"
        assert lines[1].startswith("2.0,1000,10,10,4,")

    def test_record_rates(self):
        rec = BerRecord(ebn0_db=0.0, bits=200, bit_errors=3, frames=20,
                        frame_errors=2)
        assert rec.ber == pytest.approx(0.015)
        assert rec.fer == pytest.approx(0.1)
