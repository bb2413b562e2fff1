import itertools

import pytest

from mealysg import catalog
from mealysg.core import InputError
from mealysg.oracles import (
    FREE_PRODUCT,
    FreeProductModel,
    ModelElement,
    ReesModel,
    WreathModel,
    agreement,
    free_reduce,
    model_multiply,
    read_off_strings,
    recover_reduced_word,
)
from mealysg.word_problem import are_equal, words_up_to

FAITHFUL = ["free-product-trivial", "free-product-c2", "free-product-n0", "wreath-n0-c2",
            "semilattice-f2-n0", "ideal-ext-n0", "sx-f2"]


@pytest.fixture(scope="module")
def trivial_model():
    return FreeProductModel.finite(catalog.free_product_finite_spec("trivial", "trivial_f"))


@pytest.fixture(scope="module")
def c2_spec():
    return catalog.free_product_finite_spec("c2_g", "c2_g")


def test_free_product_block_merge(trivial_model):
    e, f = trivial_model.generators()
    ef = model_multiply(trivial_model, e, f)
    assert model_multiply(trivial_model, e, ef) == ef
    assert ef.payload == ((0, 0), (1, 0))


def test_free_reduce(trivial_model, c2_spec):
    assert free_reduce(trivial_model, [(0, 0), (0, 0)]).payload == ((0, 0),)
    c2 = FreeProductModel.finite(c2_spec)
    g = c2_spec.S.index("g")
    assert free_reduce(c2, [(0, g), (0, g)]).payload == ((0, c2_spec.S.index("1")),)
    alternating = [(0, g), (1, g), (0, g)]
    assert free_reduce(c2, alternating).payload == tuple(alternating)
    with pytest.raises(InputError):
        free_reduce(c2, [])


def test_multiply_checks_tags(trivial_model):
    other = ModelElement("Wreath", ())
    with pytest.raises(InputError):
        model_multiply(trivial_model, trivial_model.generators()[0], other)


def test_rees_model_zero_entry():
    model = ReesModel(catalog.rees_spec())
    A = catalog.automaton("f0")
    gens = model.generators()
    x = gens[[g.payload for g in gens].index(("1", (A.state("b"),), "2"))]
    y = gens[[g.payload for g in gens].index(("2", (A.state("b"),), "1"))]
    assert model_multiply(model, x, y).payload == ("1", (A.state("0"),), "1")


def test_wreath_model_twist():
    A, top = catalog.wreath_inputs()
    model = WreathModel(A, top)
    c = top.index("c")
    b = A.state("b")
    a = A.state("a")
    x = model.element([((b,), (a,)), c])
    sq = model_multiply(model, x, x)
    s, t = sq.payload
    assert t == top.index("e")
    assert s == ((b,), (b,))


@pytest.mark.parametrize("name", list(catalog.EXAMPLES))
def test_model_is_associative(name):
    model = catalog.example(name).model()
    gens = model.generators()
    products = [model.evaluate(w) for w in words_up_to(len(gens), 2)]
    for x, y, z in itertools.product(products[: 3 * len(gens)], gens, gens):
        left = model_multiply(model, model_multiply(model, x, y), z)
        right = model_multiply(model, x, model_multiply(model, y, z))
        assert left == right


@pytest.mark.parametrize("name", FAITHFUL)
def test_agreement(name):
    ex = catalog.example(name)
    A = ex.build()
    length = 3 if A.n_states <= 4 else 2
    assert agreement(A, ex.model(), words_up_to(A.n_states, length)) == []


def test_rees_disagreement_is_reported():
    ex = catalog.example("rees-f0")
    A = ex.build()
    problems = agreement(A, ex.model(), words_up_to(A.n_states, 2))
    assert problems
    # every reported pair is separated by the automaton and merged by the model
    assert all(not p.automaton_equal for p in problems)
    assert "(1,0,1)" in problems[0].describe(A)


# -- read-off ------------------------------------------------------------------


def test_read_off_strings(fp_c2):
    A = fp_c2
    d, t = read_off_strings(A, A.word("g_S g_T g_S 1_T"))
    assert A.symbol_names(d.prefix) == ["D[g|g]o", "D[g|1]"]
    assert A.symbol_names(t.prefix) == ["T[g|g]o", "T[1|-]"]


def test_recover_alternating_word(fp_c2, c2_spec):
    A = fp_c2
    S = c2_spec.S
    g, one = S.index("g"), S.index("1")
    got = recover_reduced_word(A, c2_spec, A.word("g_S g_T g_S 1_T"))
    assert got == ModelElement(FREE_PRODUCT, ((0, g), (1, g), (0, g), (1, one)))


def test_recover_word_starting_right(fp_c2, c2_spec):
    A = fp_c2
    got = recover_reduced_word(A, c2_spec, A.word("g_T 1_S"))
    assert got.payload == ((1, c2_spec.T.index("g")), (0, c2_spec.S.index("1")))


def test_recover_reduces(fp_c2, c2_spec):
    A = fp_c2
    u, v = A.word("g_S g_S g_T"), A.word("1_S g_T")
    assert are_equal(A, u, v)
    assert recover_reduced_word(A, c2_spec, u) == recover_reduced_word(A, c2_spec, v)


def test_recover_is_a_homomorphism(fp_c2, c2_spec):
    A = fp_c2
    model = FreeProductModel.finite(c2_spec)
    ws = list(words_up_to(A.n_states, 2))
    for u, v in itertools.product(ws, repeat=2):
        whole = recover_reduced_word(A, c2_spec, u + v)
        parts = model_multiply(model, recover_reduced_word(A, c2_spec, u), recover_reduced_word(A, c2_spec, v))
        assert whole == parts
        assert whole == model.evaluate(u + v)
