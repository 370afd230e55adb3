from skyset.inflect import (
    base_form,
    base_from_participle,
    finite_form,
    is_participle,
    looks_plural,
    participle,
    third_person,
)


def test_third_person():
    assert third_person("report") == "reports"
    assert third_person("pass") == "passes"
    assert third_person("teach") == "teaches"
    assert third_person("study") == "studies"
    assert third_person("go") == "goes"
    assert third_person("play") == "plays"


def test_base_form():
    assert base_form("reports") == "report"
    assert base_form("studies") == "study"
    assert base_form("passes") == "pass"
    assert base_form("places") == "place"
    assert base_form("provides") == "provide"
    # auxiliaries come back untouched
    assert base_form("is") == "is"
    assert base_form("has") == "has"
    # already-base words too
    assert base_form("distribute") == "distribute"


def test_participle_regular_and_irregular():
    assert participle("fill") == "filled"
    assert participle("distribute") == "distributed"
    assert participle("study") == "studied"
    assert participle("build") == "built"
    assert participle("do") == "done"
    assert participle("wear") == "worn"


def test_base_from_participle_inverts_participle():
    for base in ("fill", "distribute", "study", "build", "do", "place",
                 "provide", "report", "use", "take", "choose"):
        assert base_from_participle(participle(base)) == base
    assert base_from_participle("table") is None


def test_is_participle():
    assert is_participle("filled")
    assert is_participle("done")
    assert not is_participle("fill")
    assert not is_participle("red")


def test_looks_plural():
    assert looks_plural("bees")
    assert looks_plural("workers")
    assert not looks_plural("class")
    assert not looks_plural("bee")


def test_finite_form_agrees_with_subject_number():
    assert finite_form("fill", plural_subject=False) == "fills"
    assert finite_form("fill", plural_subject=True) == "fill"
    assert finite_form("study", plural_subject=False) == "studies"
