import pytest

from twmatch.core.errors import CertificateError, ParameterError
from twmatch.core.graph import Graph, classify_matching
from twmatch.oracle import brute_matching_numbers
from twmatch.solvers.certificates import extract_certificate, perfect_matching_of_support, shrink_to_support

from .graphs import cycle, path, random_graphs


def test_induced_certificate(two_k2, p4):
    assert extract_certificate(two_k2, "induced", 2).sorted_edges() == [(0, 1), (2, 3)]
    matching = extract_certificate(p4, "induced", 1)
    assert len(matching) == 1
    assert classify_matching(p4, matching).is_induced


def test_cdisc_certificate_on_path():
    g = path(8)
    matching = extract_certificate(g, "cdisc", 3, c=3)
    kind = classify_matching(g, matching, 3)
    assert kind.size == 3
    assert kind.meets_component_target


@pytest.mark.parametrize("join_mode", ["conv", "naive"])
def test_certificates_on_random_graphs(join_mode):
    for g in random_graphs(10, 6, seed=6):
        report = brute_matching_numbers(g, c_max=2)
        if report.mu_induced:
            matching = extract_certificate(g, "induced", report.mu_induced, join_mode=join_mode)
            kind = classify_matching(g, matching)
            assert kind.is_induced and kind.size >= report.mu_induced
        target = report.mu_cdiscon[2]
        if target:
            matching = extract_certificate(g, "disc", target, c=2, join_mode=join_mode)
            kind = classify_matching(g, matching, 2)
            assert kind.meets_component_target and kind.size >= target


def test_no_instance_raises(c4):
    with pytest.raises(CertificateError):
        extract_certificate(c4, "induced", 2)
    with pytest.raises(CertificateError):
        extract_certificate(c4, "cdisc", 1, c=2)


def test_unsupported_requests(p4):
    with pytest.raises(ParameterError):
        extract_certificate(p4, "acyclic", 1)
    with pytest.raises(ParameterError):
        extract_certificate(p4, "disc", 1, c=1)


def test_shrink_keeps_only_solution_vertices():
    g = Graph.from_edges(5, [(0, 1), (1, 2), (3, 4)])
    support = shrink_to_support(g, lambda h: h.m >= 1)
    assert support.m == 1


def test_perfect_matching_of_support():
    assert perfect_matching_of_support(path(4)).sorted_edges() == [(0, 1), (2, 3)]
    assert perfect_matching_of_support(path(3)) is None
    assert len(perfect_matching_of_support(cycle(6))) == 3
