import numpy as np
import pytest

from statedisc.errors import (
    LabelMismatchError,
    NotPsdError,
    NotUnambiguousError,
    ZeroProbabilityOutcomeError,
)
from statedisc.measurement import (
    OutcomeLabel,
    Povm,
    bayes_posterior,
    confusion_matrix,
    outcome_probabilities,
    post_measurement_state,
    success_ambiguous,
    success_unambiguous,
    unambiguity_check,
)
from statedisc.states import DensityMatrix, Ensemble, Ket, basis_ket


def projective_povm(dim, labels=None):
    elements = tuple(np.outer(e, e) for e in np.eye(dim))
    labels = labels or tuple(OutcomeLabel.identify(i) for i in range(dim))
    return Povm(elements=elements, labels=labels)


def two_state_ensemble(theta, priors=(0.5, 0.5)):
    # symmetric pair about |0>, overlap cos(2 theta)
    a = Ket(np.array([np.cos(theta), np.sin(theta)]))
    b = Ket(np.array([np.cos(theta), -np.sin(theta)]))
    return Ensemble(states=(a, b), priors=priors)


def test_outcome_label_forms():
    assert str(OutcomeLabel.identify(2)) == "identify:2"
    assert str(OutcomeLabel.inconclusive()) == "inconclusive"
    assert OutcomeLabel.identify(0).is_identify
    assert not OutcomeLabel.inconclusive().is_identify


def test_povm_validation():
    good = projective_povm(2)
    assert good.dim == 2 and good.n_outcomes == 2
    with pytest.raises(NotPsdError):
        Povm(
            elements=(np.diag([1.5, 0.0]), np.diag([-0.5, 1.0])),
            labels=(OutcomeLabel.identify(0), OutcomeLabel.identify(1)),
        )
    # completeness violation
    with pytest.raises(Exception):
        Povm(
            elements=(np.diag([0.5, 0.5]), np.diag([0.25, 0.25])),
            labels=(OutcomeLabel.identify(0), OutcomeLabel.identify(1)),
        )
    with pytest.raises(LabelMismatchError):
        Povm(elements=(np.eye(2),), labels=())


def test_identify_outcome_lookup():
    p = projective_povm(3)
    assert p.identify_outcome(1) == 1
    with pytest.raises(LabelMismatchError):
        p.identify_outcome(7)


def test_outcome_probabilities_match_quadratic_forms():
    rng = np.random.default_rng(31)
    p = projective_povm(3)
    for _ in range(10):
        z = rng.normal(size=3) + 1j * rng.normal(size=3)
        k = Ket(z / np.linalg.norm(z))
        probs = outcome_probabilities(p, DensityMatrix.pure(k))
        assert probs.sum() == pytest.approx(1.0, abs=1e-12)
        assert np.allclose(probs, np.abs(k.amplitudes) ** 2, atol=1e-12)


def test_post_measurement_state_projects():
    p = projective_povm(2)
    plus = Ket(np.array([1.0, 1.0]) / np.sqrt(2))
    after = post_measurement_state(p, 0, DensityMatrix.pure(plus))
    assert np.allclose(after.matrix, np.diag([1.0, 0.0]), atol=1e-12)
    with pytest.raises(ZeroProbabilityOutcomeError):
        post_measurement_state(p, 1, DensityMatrix.pure(basis_ket(2, 0)))


def test_confusion_matrix_rows_sum_to_one():
    e = two_state_ensemble(0.4)
    conf = confusion_matrix(e, projective_povm(2))
    assert np.allclose(conf.sum(axis=1), 1.0, atol=1e-12)


def test_success_ambiguous_orthonormal_states_is_one():
    e = Ensemble(states=(basis_ket(2, 0), basis_ket(2, 1)), priors=(0.3, 0.7))
    assert success_ambiguous(e, projective_povm(2)) == pytest.approx(1.0)


def test_success_ambiguous_projective_on_tilted_pair():
    # measuring the computational basis on the symmetric pair:
    # state a hits outcome 0 with cos^2, state b with sin^2 crossing over
    theta = 0.3
    e = two_state_ensemble(theta)
    got = success_ambiguous(e, projective_povm(2))
    want = 0.5 * np.cos(theta) ** 2 + 0.5 * np.sin(theta) ** 2
    assert got == pytest.approx(want, abs=1e-12)


def test_success_ambiguous_rejects_inconclusive_labels():
    e = two_state_ensemble(0.3)
    p = projective_povm(
        2, labels=(OutcomeLabel.identify(0), OutcomeLabel.inconclusive())
    )
    with pytest.raises(LabelMismatchError):
        success_ambiguous(e, p)


def unambiguous_two_state_povm(overlap):
    """Optimal symmetric unambiguous POVM for a real qubit pair.

    For states with |<a|b>| = s the failure element has weight s on each
    identifying direction's complement.
    """
    s = overlap
    a_perp = np.array([np.sin(0.3), -np.cos(0.3)])
    b_perp = np.array([np.sin(0.3), np.cos(0.3)])
    w = 1.0 / (1.0 + s)
    m0 = w * np.outer(b_perp, b_perp)
    m1 = w * np.outer(a_perp, a_perp)
    fail = np.eye(2) - m0 - m1
    return Povm(
        elements=(m0, m1, fail),
        labels=(
            OutcomeLabel.identify(0),
            OutcomeLabel.identify(1),
            OutcomeLabel.inconclusive(),
        ),
    )


def test_unambiguous_two_state_discrimination():
    theta = 0.3
    e = two_state_ensemble(theta)
    s = float(np.cos(theta) ** 2 - np.sin(theta) ** 2)  # <a|b>
    p = unambiguous_two_state_povm(s)
    ok, worst = unambiguity_check(e, p)
    assert ok and worst < 1e-10
    got = success_unambiguous(e, p)
    assert got == pytest.approx(1.0 - s, abs=1e-10)  # IDP value for equal priors


def test_success_unambiguous_rejects_ambiguous_povm():
    theta = 0.3
    e = two_state_ensemble(theta)
    p = projective_povm(
        2, labels=(OutcomeLabel.identify(0), OutcomeLabel.inconclusive())
    )
    # outcome 0 fires on both states, so no identifying outcome for state 1
    with pytest.raises(LabelMismatchError):
        success_unambiguous(e, p)


def test_success_unambiguous_detects_cross_terms():
    theta = 0.3
    e = two_state_ensemble(theta)
    m0 = np.diag([0.6, 0.0])
    m1 = np.diag([0.0, 0.6])
    fail = np.eye(2) - m0 - m1
    p = Povm(
        elements=(m0, m1, fail),
        labels=(
            OutcomeLabel.identify(0),
            OutcomeLabel.identify(1),
            OutcomeLabel.inconclusive(),
        ),
    )
    ok, worst = unambiguity_check(e, p)
    assert not ok and worst > 0.01
    with pytest.raises(NotUnambiguousError):
        success_unambiguous(e, p)


def test_bayes_posterior_matches_hand_computation():
    e = Ensemble(
        states=(basis_ket(2, 0), Ket(np.array([1.0, 1.0]) / np.sqrt(2))),
        priors=(0.4, 0.6),
    )
    p = projective_povm(2)
    # P(outcome 0) = 0.4 * 1 + 0.6 * 0.5 = 0.7
    post = bayes_posterior(e, p, outcome=0, state_index=0)
    assert post == pytest.approx(0.4 / 0.7, abs=1e-12)
    with pytest.raises(ZeroProbabilityOutcomeError):
        bayes_posterior(
            Ensemble(states=(basis_ket(2, 0), basis_ket(2, 0)), priors=(0.5, 0.5)),
            p,
            outcome=1,
            state_index=0,
        )
