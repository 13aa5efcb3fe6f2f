import pytest

from otree.laws import REGISTRY, Law, run_laws


@pytest.mark.parametrize("name", sorted(REGISTRY))
def test_law_holds_to_order_five(name):
    (report,) = run_laws(5, [name])
    assert report.ok, report.failures[:5]


def test_registry_is_complete():
    groups = {law.group for law in REGISTRY.values()}
    assert groups == {"forest", "words", "grafting", "cuts", "hopf", "butcher", "series"}
    assert len(REGISTRY) == 18


def test_failures_are_reported(monkeypatch):
    def broken(n):
        for k in range(n):
            yield f"counterexample {k}"

    monkeypatch.setitem(REGISTRY, "broken", Law("broken", "test", "always fails", broken))
    (report,) = run_laws(3, ["broken"])
    assert not report.ok
    assert report.failures == ["counterexample 0", "counterexample 1", "counterexample 2"]
    assert report.max_order == 3

