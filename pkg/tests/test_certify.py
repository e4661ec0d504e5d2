import json
import random

import pytest

from subwordsums.certify import (AnalysisReport, Certificate,
                                 VERDICT_PROVED_NOT_P, VERDICT_PROVED_P,
                                 VERDICT_SPECTRAL_OBSTRUCTION,
                                 certificate_valid, check_long_prefix,
                                 check_one_run, check_simple_family,
                                 check_two_runs, classify,
                                 empirical_growth_exponent, find_certificate,
                                 match_families, simple_family_pair,
                                 two_runs_pair)
from subwordsums.dynamics import cycle_length, orbit, step
from subwordsums.linrep import build_matrices, state_vector
from subwordsums.spectra import detect_modulus_two
from subwordsums.words import (ArityError, BinaryWord, DomainError,
                               canonical_base, ones, word, zeros)


def test_find_certificate_examples():
    assert find_certificate(word("011"), word("001")) is not None
    assert find_certificate(word("111"), word("001")) is None
    assert find_certificate(word("11"), word("01")) is not None


def test_find_certificate_is_deterministic_and_valid():
    rng = random.Random(101)
    for _ in range(120):
        length = rng.randint(2, 8)
        w = BinaryWord(length, rng.getrandbits(length))
        u = canonical_base(length)
        orb = orbit(w, u)
        c1 = find_certificate(w, u, orb)
        c2 = find_certificate(w, u)
        assert c1 == c2
        if c1 is not None:
            assert certificate_valid(w, u, c1, orb)
            assert certificate_valid(w, u, c1)


def test_certificate_replay_rejects_tampering():
    w, u = word("011"), word("001")
    cert = find_certificate(w, u)
    broken = Certificate(1 - cert.a, cert.b, cert.cycle_rep, cert.kind)
    assert not certificate_valid(w, u, broken)
    outside = Certificate(cert.a, cert.b, word("100"), cert.kind)
    assert not certificate_valid(w, u, outside)


def test_simple_family_examples():
    cert = check_simple_family(1, word("0"), 2, 2)
    assert cert.kind == "simple"
    assert cert.a == 0  # the fixing digit is the complement of a = 1
    assert check_simple_family(0, word(""), 4, 3) is not None


def test_simple_family_pair_shape():
    wp, up = simple_family_pair(1, word("0"), 2, 2)
    assert (str(wp), str(up)) == ("11001", "01001")
    wp, up = simple_family_pair(0, word(""), 4, 3)
    assert (str(wp), str(up)) == ("0000100", "0001001")


def test_simple_family_cycle_length_matches_leading_run():
    rng = random.Random(103)
    for _ in range(20):
        a = rng.randint(0, 1)
        k = rng.choice((2, 4, 8))
        j = rng.randint(2, k)
        wlen = rng.randint(0, 3)
        w = BinaryWord(wlen, rng.getrandbits(wlen) if wlen else 0)
        wp, up = simple_family_pair(a, w, k, j)
        check_simple_family(a, w, k, j)
        lead = BinaryWord(1, a) * k
        assert cycle_length(wp, a, up) == cycle_length(lead, a, canonical_base(k))


def test_simple_family_rejects_bad_parameters():
    with pytest.raises(DomainError):
        check_simple_family(1, word("0"), 3, 2)
    with pytest.raises(DomainError):
        check_simple_family(1, word("0"), 2, 1)
    with pytest.raises(DomainError):
        check_simple_family(1, word("0"), 2, 3)


def test_one_run_examples():
    for ell in (2, 4, 8):
        res = check_one_run(1, ell)
        assert res.verdict == VERDICT_PROVED_P
        assert res.certificate is not None
    for ell in (3, 5, 6, 7):
        res = check_one_run(1, ell)
        assert res.verdict == VERDICT_PROVED_NOT_P
        assert res.inner_product != 0
        assert all(x in (-1, 1) for x in res.eigenvector)


def test_one_run_characterization():
    for a in (0, 1):
        for ell in range(2, 13):
            res = check_one_run(a, ell)
            expected = VERDICT_PROVED_P if ell & (ell - 1) == 0 else VERDICT_PROVED_NOT_P
            assert res.verdict == expected


def test_one_run_eigenvector_is_exact():
    for a in (0, 1):
        for ell in (3, 5, 6, 7, 9, 12):
            res = check_one_run(a, ell)
            orb = orbit(BinaryWord(1, a) * ell, canonical_base(ell))
            m_a = build_matrices(orb)[a]
            assert m_a.apply(res.eigenvector) == res.eigenvector
            v1 = state_vector(orb, 1)
            assert sum(p * q for p, q in zip(v1, res.eigenvector)) == res.inner_product


def test_one_run_linear_rate_for_length_three():
    res = check_one_run(1, 3)
    values = [r for _, r in res.ratios]
    assert min(values) > 0
    assert max(values) / min(values) <= 2
    assert res.empirical_ok
    assert res.limit_ratio == 0.5


def test_long_prefix_examples():
    cert = check_long_prefix(1, 2, word("010"), 1, word("101"))
    assert cert.kind == "long-prefix"
    # default-selector instance: complement of the last letter fixes it
    cert = check_long_prefix(0, 2, word("11"), 0, word("01"))
    assert cert is not None


def test_long_prefix_rejections_name_the_hypothesis():
    with pytest.raises(DomainError, match="factor"):
        check_long_prefix(1, 2, word("110"), 1, word("001"))
    with pytest.raises(DomainError, match="power of 2"):
        check_long_prefix(1, 3, word("010"), 1, word("101"))
    with pytest.raises(DomainError, match="zero"):
        check_long_prefix(1, 2, word("010"), 1, word("000"))
    with pytest.raises(DomainError, match="fix"):
        check_long_prefix(1, 2, word("010"), 0, word("101"))
    with pytest.raises(ArityError):
        check_long_prefix(1, 2, word("010"), 1, word("01"))


def test_long_prefix_random_valid_parameters():
    rng = random.Random(107)
    produced = 0
    while produced < 100:
        a = rng.randint(0, 1)
        k = rng.choice((1, 2, 4))
        wlen = rng.randint(1, 6)
        w = BinaryWord(wlen, rng.getrandbits(wlen))
        if w.contains_factor(BinaryWord(1, a) * min(k, wlen)) and k <= wlen:
            continue
        b = rng.randint(0, 1)
        positions = [r for r in range(1, wlen + 1) if w.letter(r) == 1 - b]
        if not positions:
            continue
        chosen = [p for p in positions if rng.random() < 0.6] or [positions[0]]
        bits = 0
        for p in chosen:
            bits |= 1 << (wlen - p)
        u = BinaryWord(wlen, bits)
        cert = check_long_prefix(a, k, w, b, u)
        wp = BinaryWord(1, a) * k + BinaryWord(1, 1 - a) + w
        up = zeros(k + 1) + u
        assert certificate_valid(wp, up, cert)
        produced += 1


def test_two_runs_examples():
    cert = check_two_runs(1, 1, 1, word("1"))
    assert cert.kind == "two-runs"
    assert check_two_runs(0, 3, 2, word("01")) is not None
    assert check_two_runs(1, 6, 6, canonical_base(6)) is not None


def test_two_runs_pair_shape():
    w, base = two_runs_pair(0, 3, 2, word("01"))
    assert (str(w), str(base)) == ("00011", "00001")


def test_two_runs_rejects_bad_parameters():
    with pytest.raises(DomainError):
        check_two_runs(1, 0, 1, word("1"))
    with pytest.raises(DomainError):
        check_two_runs(1, 1, 2, word("00"))
    with pytest.raises(ArityError):
        check_two_runs(1, 1, 2, word("1"))
    with pytest.raises(DomainError):
        check_two_runs(1, 15, 15, canonical_base(15))


def test_match_families():
    base4 = canonical_base(4)
    assert match_families(ones(4), base4) == ["one-run"]
    assert match_families(word("0111"), base4) == ["two-runs", "long-prefix"]
    assert match_families(word("0011"), base4) == ["two-runs", "long-prefix"]
    assert match_families(word("0101"), base4) == []
    wp, up = simple_family_pair(1, word("0"), 2, 2)
    assert "simple" in match_families(wp, up)
    # the simple pair needs its two-point selector, not the canonical one
    assert "simple" not in match_families(wp, canonical_base(wp.length))


def test_classify_examples():
    assert classify(word("11")).verdict == VERDICT_PROVED_P
    assert classify(ones(5)).verdict == VERDICT_PROVED_NOT_P
    # 0110 has no odd cycle anywhere, so the proof comes from the spectral
    # decider alone: no modulus-2 eigenvalue, radius strictly below 2
    report = classify(word("0110"))
    assert report.verdict == VERDICT_PROVED_P
    assert report.certificate is None
    assert report.family_matches == []
    assert not report.modulus_two.has_modulus_two
    assert report.exponent_certified is not None and report.exponent_certified < 1
    assert report.det_two_i_minus_m != 0


def test_classify_spectral_obstruction():
    report = classify(word("010"))
    assert report.verdict == VERDICT_SPECTRAL_OBSTRUCTION
    assert report.certificate is None
    assert report.modulus_two.has_modulus_two
    assert report.det_two_i_minus_m == 0
    assert report.exponent_certified == 1.0


def test_classify_report_schema():
    data = classify(word("011")).to_dict()
    assert list(data.keys()) == [
        "word", "u", "orbit_size", "cycle_lengths", "certificate",
        "det_2I_minus_M", "modulus_two", "spectral_radius",
        "exponent_certified", "exponent_empirical", "verdict",
        "family_matches"]
    assert data["word"] == "011"
    assert data["u"] == "001"
    assert list(data["cycle_lengths"].keys()) == ["S0", "S1"]
    assert set(data["certificate"].keys()) == {"a", "b", "cycle_rep"}
    assert isinstance(data["det_2I_minus_M"], str)
    assert set(data["modulus_two"].keys()) == {"present", "phases"}
    assert set(data["spectral_radius"].keys()) == {"estimate", "tol"}
    json.dumps(data)


def test_classify_custom_selector():
    report = classify(word("011"), word("001"))
    assert report.u == word("001")
    assert report.verdict == VERDICT_PROVED_P


def test_classify_rejects_out_of_range():
    with pytest.raises(DomainError):
        classify(word("1"))
    with pytest.raises(DomainError):
        classify(ones(21))
    with pytest.raises(ArityError):
        classify(word("011"), word("01"))


def test_classify_deterministic():
    a = json.dumps(classify(word("0110")).to_dict())
    b = json.dumps(classify(word("0110")).to_dict())
    assert a == b


def test_empirical_exponent_square_root_growth():
    orb = orbit(word("01"), canonical_base(2))
    slope = empirical_growth_exponent(orb, 10, 20)
    assert 0.35 <= slope <= 0.6


def test_classify_verdict_consistency_small():
    for length in range(2, 7):
        for bits in range(1 << length):
            w = BinaryWord(length, bits)
            report = classify(w)
            if report.certificate is not None:
                assert not report.modulus_two.has_modulus_two
                assert report.verdict in (VERDICT_PROVED_P, VERDICT_PROVED_NOT_P)
            if report.verdict == VERDICT_SPECTRAL_OBSTRUCTION:
                assert report.modulus_two.has_modulus_two
            if report.verdict == VERDICT_PROVED_NOT_P:
                assert len(w.run_decomposition()) == 1
