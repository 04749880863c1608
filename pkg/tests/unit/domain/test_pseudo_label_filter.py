"""Testes unitários para NMS e filtro de pseudo rótulos."""
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weather_adapt.domain.services.non_max_suppression import nms
from weather_adapt.domain.services.pseudo_label_filter import filter_pseudo_labels
from weather_adapt.domain.value_objects.box3d import Box3D
from weather_adapt.domain.value_objects.detection import Detection


def make_detection(x: float, probs: list[float]) -> Detection:
    return Detection.from_probs(Box3D(x, 0, 0, 1, 1, 1), probs)


detections = st.lists(
    st.builds(
        make_detection,
        st.floats(min_value=0.0, max_value=6.0),
        st.floats(min_value=0.0, max_value=1.0).map(lambda p: [p, 1.0 - p]),
    ),
    max_size=12,
)


class TestNms:
    """Testes para nms."""

    def test_suppress_overlapping_same_category(self) -> None:
        """Deve manter apenas a mais confiante entre caixas sobrepostas."""
        strong = make_detection(0.0, [0.9, 0.1])
        weak = make_detection(0.1, [0.8, 0.2])

        kept = nms([weak, strong], iou_threshold=0.2)

        assert kept == [strong]

    def test_keep_overlapping_different_categories(self) -> None:
        """Deve manter caixas sobrepostas de categorias diferentes."""
        first = make_detection(0.0, [0.9, 0.1])
        second = make_detection(0.1, [0.2, 0.8])

        kept = nms([first, second], iou_threshold=0.2)

        assert kept == [first, second]

    def test_keep_distant_boxes_in_confidence_order(self) -> None:
        """Deve manter caixas distantes ordenadas por confiança."""
        low = make_detection(0.0, [0.6, 0.4])
        high = make_detection(5.0, [0.95, 0.05])

        assert nms([low, high], iou_threshold=0.2) == [high, low]

    def test_threshold_one_keeps_everything(self) -> None:
        """Deve manter tudo com limiar 1."""
        dets = [make_detection(0.0, [0.9, 0.1]), make_detection(0.0, [0.8, 0.2])]

        assert len(nms(dets, iou_threshold=1.0)) == 2

    @pytest.mark.parametrize("threshold", [-0.1, 1.5])
    def test_reject_threshold_out_of_range(self, threshold: float) -> None:
        """Deve rejeitar limiar fora de [0, 1]."""
        with pytest.raises(ValueError, match="Limiar de NMS"):
            nms([], iou_threshold=threshold)


class TestFilterPseudoLabels:
    """Testes para filter_pseudo_labels."""

    def test_drop_low_confidence(self) -> None:
        """Deve descartar detecções com confiança abaixo de beta."""
        dets = [make_detection(0.0, [0.95, 0.05]), make_detection(5.0, [0.3, 0.7])]

        labels = filter_pseudo_labels(dets, beta=0.9)

        assert len(labels) == 1
        assert labels[0].category == 0
        assert not labels[0].is_pseudo

    def test_nms_before_threshold(self) -> None:
        """Deve aplicar NMS antes do limiar de confiança."""
        dets = [make_detection(0.0, [0.95, 0.05]), make_detection(0.05, [0.92, 0.08])]

        labels = filter_pseudo_labels(dets, beta=0.9, nms_threshold=0.2)

        assert len(labels) == 1

    def test_record_provenance(self) -> None:
        """Deve registrar iteração do teacher e beta."""
        labels = filter_pseudo_labels(
            [make_detection(0.0, [0.95, 0.05])], beta=0.9, teacher_iteration=12
        )

        assert labels[0].provenance is not None
        assert labels[0].provenance.teacher_iteration == 12
        assert labels[0].provenance.beta == 0.9

    def test_empty_input_is_valid(self) -> None:
        """Deve aceitar lista vazia."""
        assert filter_pseudo_labels([]) == []

    def test_reject_beta_out_of_range(self) -> None:
        """Deve rejeitar beta fora de [0, 1]."""
        with pytest.raises(ValueError, match="beta"):
            filter_pseudo_labels([], beta=1.2)

    @settings(max_examples=100, deadline=None)
    @given(detections, st.lists(st.floats(min_value=0.0, max_value=1.0), min_size=2, max_size=6))
    def test_kept_set_shrinks_as_beta_grows(
        self, dets: list[Detection], betas: list[float]
    ) -> None:
        """Deve manter conjuntos encaixados e não crescentes quando beta aumenta."""
        kept = [
            [(label.box, label.category) for label in filter_pseudo_labels(dets, beta=beta)]
            for beta in sorted(betas)
        ]

        for looser, stricter in zip(kept, kept[1:]):
            assert len(stricter) <= len(looser)
            assert set(stricter) <= set(looser)

    @settings(max_examples=100, deadline=None)
    @given(detections, st.floats(min_value=0.0, max_value=1.0))
    def test_nms_and_threshold_commute(self, dets: list[Detection], beta: float) -> None:
        """Deve dar o mesmo resultado com limiar antes ou depois do NMS."""
        filtered = filter_pseudo_labels(dets, beta=beta, nms_threshold=0.2)
        thresholded_first = nms([d for d in dets if d.confidence >= beta], iou_threshold=0.2)

        assert [(label.box, label.category) for label in filtered] == [
            (d.box, d.category) for d in thresholded_first
        ]
