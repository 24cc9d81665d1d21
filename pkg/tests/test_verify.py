import json

import pytest

from alcovekit import verify
from alcovekit.verify import (
    GridConfig, Report, check_additivity, check_compatibility, check_cone_corollary,
    check_conv_remark, check_main, check_type_a, check_vertexwise, grid_cells, load_grid,
    run_grid,
)

from conftest import group


def test_check_main_examples(A1, A2):
    rep = check_main(A1, (1,), ())
    assert rep.ok and rep.sizes == {"adm_st_WJ": 5, "perm_st_J": 5, "adm_J": 5}
    for J in A2.proper_finite_subsets():
        assert check_main(A2, (1, 1), J).ok
    rep = check_main(A2, (0, 0), {1, 2})
    assert rep.ok and rep.sizes["adm_J"] == 6


def test_other_checks(A1, A2):
    assert check_additivity(A1, (1,), (1,), ()).ok
    assert check_additivity(A2, (1, 1), (0, 0), {1}).ok
    assert check_additivity(A2, (1, 1), (1, 1), {1}).ok
    assert check_vertexwise(A1, (1,), [{0}, {1}]).ok
    assert check_vertexwise(A2, (1, 1), [{0, 1}]).ok
    assert check_vertexwise(A2, (1, 1), [{0, 1}, {1, 2}]).params["K"] == [1]
    assert check_compatibility(A1, (1,), {1}).ok
    rep = check_cone_corollary(A2, (1, 1))
    assert rep.ok and rep.sizes["pairs"] > 0
    assert check_conv_remark(A1, (1,)).ok
    assert check_conv_remark(A2, (1, 1)).ok
    assert check_conv_remark(A2, (0, 0)).ok
    assert check_type_a(group("A3-sc"), (1, 1, 1)).ok


def test_failure_report_has_witness(monkeypatch):
    G = group("A2-ad")
    real = verify.SetCache.perm_st_J

    def broken(self, mu, J):
        out = set(real(self, mu, J))
        out.discard(self.G.translation(mu))
        return frozenset(out)

    monkeypatch.setattr(verify.SetCache, "perm_st_J", broken)
    G.__dict__.pop("_set_cache", None)
    rep = check_main(G, (1, 0), ())
    G.__dict__.pop("_set_cache", None)
    assert not rep.ok
    wit = rep.witnesses[0]
    assert wit["element"] == G.translation((1, 0)).to_json()
    assert wit["membership"] == {"adm_st_WJ": True, "perm_st_J": False, "adm_J": True}
    assert wit["evidence"]["perm_st_J"] == {"test": "point cone", "result": "member"}
    assert "FAIL main" in rep.line()


def test_explain_perm_st_J_names_vertex_and_w(A1):
    x = A1.translation((2,))
    ev = verify.explain_perm_st_J(A1, x, (1,), ())
    assert ev["test"] == "point cone" and "vertex" in ev and "w_word" in ev
    assert verify.explain_adm_st(A1, x, (1,))["test"] == "obtuse cone"


def test_grid_config(tmp_path):
    p = tmp_path / "g.toml"
    p.write_text('presets = ["A1-sc"]\nmax_length = 2\nchecks = ["main", "type_a"]\n')
    cfg = load_grid(p)
    assert cfg.presets == ["A1-sc"] and cfg.max_length == 2
    cells = grid_cells(cfg)
    assert ("main", "A1-sc", ((1,), (0,))) in cells
    assert sum(c[0] == "type_a" for c in cells) == 2
    p.write_text('presets = ["A1-sc"]\nbogus = 1\n')
    with pytest.raises(ValueError):
        load_grid(p)
    with pytest.raises(ValueError):
        GridConfig(presets=["A1-sc"], j_policy="weird")
    with pytest.raises(ValueError):
        GridConfig(presets=["A1-sc"], checks=["nope"])


def test_custom_and_singleton_policies():
    cfg = GridConfig(presets=["A2-sc"], max_length=4, j_policy="custom", custom_j=[[0]],
                     checks=["main"])
    assert [c[2][1] for c in grid_cells(cfg)] == [(0,), (0,)]
    cfg = GridConfig(presets=["A2-sc"], max_length=0, j_policy="singletons", checks=["main"])
    assert [c[2][1] for c in grid_cells(cfg)] == [(), (0,), (1,), (2,)]


def test_run_grid_is_resumable(tmp_path, monkeypatch):
    cache = tmp_path / "cache.json"
    cfg = GridConfig(presets=["A1-sc", "A2-ad"], max_length=2)
    first = run_grid(cfg, cache_path=str(cache))
    assert first and all(r.ok for r in first)
    data = json.loads(cache.read_text())
    assert data["version"] == verify.CACHE_VERSION
    assert len(data["results"]) == len(first)

    def boom(cell):
        raise AssertionError("cell recomputed")

    monkeypatch.setattr(verify, "run_cell", boom)
    again = run_grid(cfg, cache_path=str(cache))
    assert [r.to_json() for r in again] == [r.to_json() for r in first]


def test_cell_keys_are_content_addressed():
    a = verify.cell_key(("main", "A1-sc", ((1,), ())))
    b = verify.cell_key(("main", "A1-sc", ((1,), (0,))))
    assert a != b and a == verify.cell_key(("main", "A1-sc", ((1,), ())))


def test_report_json_roundtrip():
    rep = Report("main", "A1-sc", {"mu": [1], "J": []}, True, {"adm_J": 5})
    assert Report(**json.loads(json.dumps(rep.to_json()))) == rep
