import pytest

from susplink.graphs import ResArrow, ResolutionGraph
from susplink.invariants import determinant
from susplink.pipeline import StageError, run_pipeline
from susplink.report import render_json_dict, render_text
from susplink.serialize import to_dict


def test_stage_outputs_compose(ex1_graph):
    # the pipeline's stage dictionaries equal what the stage functions emit
    result = run_pipeline(ex1_graph, 3)
    report = render_json_dict(result)
    assert report["stages"]["multiplicity"] == to_dict(result.multiplicity)
    assert report["stages"]["nielsen"] == to_dict(result.nielsen)
    assert report["stages"]["plumbing"] == to_dict(result.plumbing)
    assert report["schema"] == "susplink/report:1"


def test_pipeline_rejects_bad_r(ex1_graph):
    with pytest.raises(StageError):
        run_pipeline(ex1_graph, 0)


def test_stage_error_carries_stage_name():
    text = ("vertex 1 weight=-1\nvertex 2 weight=-2\nedge 1 2\n"
            "arrow 1 side=f\narrow 1 side=g\n")
    with pytest.raises(StageError) as exc:
        run_pipeline(text, 2)
    assert exc.value.stage == "step1"
    assert "not fibred" in str(exc.value)


def test_report_text_mentions_everything(ex3_result):
    text = render_text(ex3_result)
    assert "29/72" in text
    assert "145/72" in text
    assert "(-1,145,128)" in text.replace(" ", "") or "145" in text
    assert "numerically Gorenstein: no" in text
    assert "genus 5" in text


def test_report_notes_fibre_contrast(ex2_result):
    text = render_text(ex2_result)
    assert "genus 1" in text and "genus 5" in text
    assert "cannot be equivalent" in text


def test_product_germ_yields_the_same_link(ex2_graph):
    """The mixed germ of ex2 at r = 2 and the holomorphic product germ
    (x^2+y^3)(x^3+y^2) at r = 2 produce homeomorphic plumbing descriptions:
    both reduce to two -3 vertices joined by a double edge."""
    mixed = run_pipeline(ex2_graph, 2, reduce=True)
    product_graph = ResolutionGraph(
        ex2_graph.vertices,
        ex2_graph.edges,
        (ResArrow(2, "f", 1), ResArrow(4, "f", 1)),
    )
    product = run_pipeline(product_graph, 2, reduce=True)
    assert sorted(v.weight for v in product.blowdown.vertices) == [-3, -3]
    assert len(product.blowdown.edges) == 2
    assert sorted(v.weight for v in mixed.blowdown.vertices) == [-3, -3]
    assert abs(determinant(product.blowdown)) == abs(determinant(mixed.blowdown)) == 5
    # ... but the fibre genera differ (1 vs 5), so the open books do not match
    assert mixed.obstructions.fibre_genus == 1
    assert product.obstructions.fibre_genus == 5


def test_holomorphic_sides_run(ex1_graph):
    for side in ("f", "g"):
        result = run_pipeline(ex1_graph, 2, side=side)
        n = result.nielsen
        assert all(b.twist < 0 for b in n.boundary_stalks)
        assert all(e.twist < 0 for e in n.edges)


def test_notes_present_for_powers(ex1_result):
    assert any("lifts with lam'" in note for note in ex1_result.notes)


def test_empty_report_has_schema_header():
    from susplink.report import render_json_dict

    assert render_json_dict(None) == {"schema": "susplink/report:1"}
