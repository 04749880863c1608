"""Testes unitários para Value Object Detection."""
import numpy as np
import pytest

from weather_adapt.domain.value_objects.box3d import Box3D
from weather_adapt.domain.value_objects.detection import (
    Detection,
    detection_from_logits,
    softmax,
)

BOX = Box3D(0, 0, 0, 1, 1, 1)


class TestDetection:
    """Testes para Detection."""

    def test_from_probs_derives_confidence(self) -> None:
        """Deve derivar a confiança como max(probs)."""
        detection = Detection.from_probs(BOX, [0.1, 0.7, 0.2])

        assert detection.confidence == pytest.approx(0.7)
        assert detection.category == 1
        assert detection.num_classes == 3

    def test_reject_probs_not_summing_to_one(self) -> None:
        """Deve rejeitar probabilidades que não somam 1."""
        with pytest.raises(ValueError, match="devem somar 1"):
            Detection.from_probs(BOX, [0.5, 0.6])

    def test_reject_negative_probs(self) -> None:
        """Deve rejeitar probabilidades negativas."""
        with pytest.raises(ValueError, match="negativas"):
            Detection.from_probs(BOX, [1.5, -0.5])

    def test_reject_inconsistent_confidence(self) -> None:
        """Deve rejeitar confiança diferente de max(probs)."""
        with pytest.raises(ValueError, match="Confiança"):
            Detection(box=BOX, probs=(0.2, 0.8), confidence=0.5)

    def test_reject_empty_probs(self) -> None:
        """Deve rejeitar vetor vazio."""
        with pytest.raises(ValueError, match="não pode ser vazio"):
            Detection(box=BOX, probs=(), confidence=0.0)

    def test_to_dict_contains_box_and_probs(self) -> None:
        """Deve serializar caixa e probabilidades."""
        record = Detection.from_probs(BOX, [0.25, 0.75]).to_dict()

        assert record["probs"] == [0.25, 0.75]
        assert record["w"] == 1.0


class TestSoftmax:
    """Testes para softmax e detection_from_logits."""

    def test_softmax_is_stable_for_large_logits(self) -> None:
        """Deve ser estável para logits grandes."""
        probs = softmax([1000.0, 1000.0])

        np.testing.assert_allclose(probs, [0.5, 0.5])

    def test_detection_from_logits(self) -> None:
        """Deve criar detecção com softmax dos logits."""
        detection = detection_from_logits([0.0, np.log(3.0)], BOX)

        assert detection.probs == pytest.approx((0.25, 0.75))

    def test_detection_from_logits_rejects_non_finite(self) -> None:
        """Deve rejeitar logits não finitos."""
        with pytest.raises(ValueError, match="finitos"):
            detection_from_logits([np.inf, 0.0], BOX)
