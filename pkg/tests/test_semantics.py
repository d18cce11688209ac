import random

import pytest

from knfrag import (
    KripkeFrame,
    KripkeModel,
    PointedModel,
    check,
    enumerate_extensions,
    enumerate_models,
    is_extension,
    is_positive_literal,
    model_from_json,
    model_to_json,
    parse,
    restrict_alphabet,
)
from helpers import enlarge_valuation, random_formula, random_literal, random_model, table_check


@pytest.fixture
def fan_model():
    frame = KripkeFrame(["w0", "w1", "w2"], {"a": [("w0", "w1"), ("w0", "w2")]})
    return KripkeModel(frame, {"w1": ["p"]}, {"p"})


def test_check_diamond_witness(fan_model):
    assert check(fan_model, "w0", parse("<a>p")) is True
    assert check(fan_model, "w0", parse("[a]p")) is False


def test_box_vacuous_truth(fan_model):
    assert check(fan_model, "w1", parse("[a]T")) is True
    assert check(fan_model, "w1", parse("[a]F")) is True
    assert check(fan_model, "w1", parse("<a>T")) is False


def test_check_single_world_example():
    m = KripkeModel(KripkeFrame(["v0"]), {"v0": ["q"]}, {"p", "q"})
    assert check(m, "v0", parse("[a]p -> q")) is True


def test_check_unknown_world(fan_model):
    with pytest.raises(ValueError):
        check(fan_model, "nope", parse("p"))


def test_letters_outside_alphabet_are_false(fan_model):
    assert check(fan_model, "w0", parse("zz")) is False
    assert check(fan_model, "w0", parse("~zz")) is True


def test_check_agrees_with_table_filling_oracle():
    rng = random.Random(123)
    for _ in range(10_000):
        model = random_model(rng, max_worlds=4)
        f = random_formula(rng, depth=4, letters=("p", "q", "r"), mods=("a", "b"))
        w = rng.choice(model.frame.worlds)
        assert check(model, w, f) == table_check(model, w, f)


def test_positive_literal_monotone_under_enlargement():
    rng = random.Random(321)
    for _ in range(3000):
        model = random_model(rng, max_worlds=4)
        bigger = enlarge_valuation(rng, model)
        lit = random_literal(rng, rng.randint(0, 3), ("p", "q", "r"), ("a", "b"))
        assert is_positive_literal(lit)
        w = rng.choice(model.frame.worlds)
        if check(model, w, lit):
            assert check(bigger, w, lit)


def test_is_extension(fan_model):
    plain = KripkeModel(fan_model.frame, fan_model.valuation, {"p", "f0"})
    assert is_extension(fan_model, plain)
    changed = KripkeModel(fan_model.frame, {"w2": ["p"]}, {"p"})
    assert not is_extension(fan_model, changed)
    for ext in enumerate_extensions(fan_model, {"f0"}):
        assert is_extension(fan_model, ext)


def test_is_extension_requires_same_frame(fan_model):
    other = KripkeModel(KripkeFrame(["w0", "w1", "w2"]), {"w1": ["p"]}, {"p"})
    assert not is_extension(fan_model, other)


def test_enumerate_extensions_counts():
    one = KripkeModel(KripkeFrame(["w0"]), {}, {"p"})
    assert len(list(enumerate_extensions(one, {"x"}))) == 2
    two = KripkeModel(KripkeFrame(["w0", "w1"]), {}, {"p"})
    assert len(list(enumerate_extensions(two, {"x"}))) == 4
    three = KripkeModel(KripkeFrame(["w0", "w1", "w2"]), {}, set())
    stream = enumerate_extensions(three, {"x", "y"})
    assert sum(1 for _ in stream) == 64


def test_enumerate_extensions_distinct_and_first_minimal():
    base = KripkeModel(KripkeFrame(["w0", "w1"]), {"w0": ["p"]}, {"p"})
    exts = list(enumerate_extensions(base, {"x"}))
    assert len(set(exts)) == len(exts)
    first = exts[0]
    assert all("x" not in first.valuation[w] for w in first.frame.worlds)


def test_enumerate_extensions_rejects_clash(fan_model):
    with pytest.raises(ValueError):
        list(enumerate_extensions(fan_model, {"p"}))


def test_restrict_alphabet(fan_model):
    ext = next(iter(enumerate_extensions(fan_model, {"f0"})))
    assert restrict_alphabet(ext, {"p"}) == fan_model


def test_model_json_roundtrip(fan_model):
    data = model_to_json(fan_model, "w0")
    model, designated = model_from_json(data)
    assert model == fan_model
    assert designated == "w0"


def test_model_json_defaults():
    model, designated = model_from_json({"worlds": ["u"]})
    assert model.frame.worlds == ("u",)
    assert designated is None
    assert model.alphabet == frozenset()
    with pytest.raises(ValueError):
        model_from_json({})
    with pytest.raises(ValueError):
        model_from_json({"worlds": ["u"], "designated": "v"})


def test_frame_validation():
    with pytest.raises(ValueError):
        KripkeFrame([])
    with pytest.raises(ValueError):
        KripkeFrame(["w0", "w0"])
    with pytest.raises(ValueError):
        KripkeFrame(["w0"], {"a": [("w0", "w1")]})


def test_frame_equality_ignores_empty_relations():
    f1 = KripkeFrame(["w0"], {"a": []})
    f2 = KripkeFrame(["w0"])
    assert f1 == f2 and hash(f1) == hash(f2)


def test_model_validation():
    frame = KripkeFrame(["w0"])
    with pytest.raises(ValueError):
        KripkeModel(frame, {"w1": ["p"]}, {"p"})
    with pytest.raises(ValueError):
        KripkeModel(frame, {"w0": ["q"]}, {"p"})
    with pytest.raises(ValueError):
        PointedModel(KripkeModel(frame, {}, set()), "w9")


def test_enumerate_models_is_deterministic_and_counted():
    first = list(enumerate_models({"p"}, {"a"}, 1))
    second = list(enumerate_models({"p"}, {"a"}, 1))
    assert first == second
    # 1 world: 2 relation masks x 2 valuations
    assert len(first) == 4
    # 2 worlds add 16 x 4
    assert len(list(enumerate_models({"p"}, {"a"}, 2))) == 4 + 64


def test_enumerate_models_no_modalities():
    models = list(enumerate_models({"p", "q"}, set(), 1))
    assert len(models) == 4
    assert all(not m.frame.relations for m in models)
