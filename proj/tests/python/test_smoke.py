"""Smoke tests over the pybind11 surface."""

import math

import numpy as np
import pytest

import ddnoma


def small_grid(m=8, n=4, waveform=None):
    g = ddnoma.GridSpec()
    g.delay_bins = m
    g.doppler_bins = n
    g.subcarrier_spacing_hz = 15e3
    if waveform is not None:
        g.waveform = waveform
    g.cp_len = ddnoma.default_cp_len(g)
    return g


def test_modulation_matrix_is_unitary():
    for wf in (ddnoma.Waveform.OTFS, ddnoma.Waveform.OFDM):
        g = small_grid(waveform=wf)
        a = ddnoma.build_modulation_matrix(g)
        mn = g.frame_size()
        assert np.linalg.norm(a @ a.conj().T - np.eye(mn)) < 1e-10 * mn


def test_channel_and_products_round_trip():
    g = small_grid()
    ps = ddnoma.sample_eva_channel(g, 500 / 3.6, 5.9e9, 7)
    ch = ddnoma.build_channel_matrix(g, ps)
    h = ch.dense()
    assert h.shape == (32, 32)

    a = ddnoma.build_modulation_matrix(g)
    prod = ddnoma.mmse_products_dl(h, a, 1.0, 31.62)
    assert np.linalg.norm(prod.b - prod.c @ h @ a) < 1e-8

    stats = ddnoma.stats_from_products(prod)
    fast = ddnoma.dl_symbol_stats(ch, g, 31.62)
    assert np.allclose(stats.row_energy, fast.row_energy, atol=1e-9)

    rep = ddnoma.sinr_dl(fast, ddnoma.PowerSplit([1.0]), 1.0, 1.0 / 31.62, 0)
    assert rep.mean_post() > 0
    assert ddnoma.dl_sum_rate([rep]) > 0


def test_power_allocation_values():
    split = ddnoma.ftpa_avg_snr([31.62, 316.2])
    assert split.fractions[0] == pytest.approx(0.9091, abs=1e-4)

    wsrm = ddnoma.wsrm_avg_snr(ddnoma.WsrmWeights(0.6, 0.4), 31.62, 316.2)
    assert wsrm.fractions == [1.0, 0.0]

    s = ddnoma.InstSinrScalars()
    s.g1_desired, s.g1_isi, s.g1_noma = 10.0, 0.5, 10.5
    s.p1_noise, s.g2_desired, s.g2_isi, s.p2_noise = 0.3, 120.0, 0.4, 0.01
    inst = ddnoma.wsrm_instantaneous(ddnoma.WsrmWeights(), s)
    beta2 = inst.fractions[1]
    grid = np.linspace(0, 1, 1001)
    rates = [ddnoma.wsrm_inst_rate(s, ddnoma.WsrmWeights(), b) for b in grid]
    assert abs(beta2 - grid[int(np.argmax(rates))]) <= 1e-3


def test_fec_chain():
    code = ddnoma.LdpcCode.wlan_648_r23()
    rng = np.random.default_rng(5)
    msg = rng.integers(0, 2, code.message_len()).astype(np.uint8).tolist()
    cw = code.encode(msg)
    assert code.syndrome_ok(cw)

    qc = ddnoma.QamConstellation(ddnoma.QamOrder.QPSK)
    sym = ddnoma.qam_map(cw, qc)
    llr = ddnoma.qam_llr(sym, np.full(len(sym), 0.5), qc)
    res = ddnoma.ldpc_decode_minsum(code, llr.tolist(), 50)
    assert res.converged and list(res.codeword) == list(cw)


def test_link_and_system_harnesses():
    cfg = ddnoma.LinkConfig()
    cfg.grid = small_grid(64, 8, ddnoma.Waveform.OTFS)
    cfg.snr1_db, cfg.snr2_db = 50.0, 60.0
    cfg.frames = 2
    out = ddnoma.run_dl_link(cfg, 3)
    assert out.bler1 == 0.0 and out.bler2 == 0.0
    assert out.goodput_bps_hz == pytest.approx(out.throughput_bps_hz)

    sc = ddnoma.ScenarioConfig()
    sc.grid = small_grid(32, 8)
    sc.drops = 4
    sc.threads = 1
    samples = ddnoma.run_system_mc(sc)
    assert len(samples) == 4 * 2 * 6
    rates = ddnoma.sum_rates_of(samples, ddnoma.Waveform.OTFS, ddnoma.PaScheme.OMA)
    summary = ddnoma.summarize(rates)
    assert summary.count == 4 and summary.mean > 0

    assert ddnoma.select_modulation(16.0, ddnoma.Waveform.OTFS) == ddnoma.QamOrder.QAM16
    assert ddnoma.throughput(2 / 3, [2, 6]) == pytest.approx(16 / 3)


def test_validation_battery():
    for name, ok in ddnoma.run_validation():
        assert ok, name
