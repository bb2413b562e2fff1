import itertools

import pytest

from mealysg import catalog
from mealysg.algebra import FiniteSemigroup, GeneratorHom, cyclic_group, right_zero_semigroup, trivial_semigroup
from mealysg.constructions import (
    UNVERIFIED,
    ActExtensionSpec,
    FreeProductFiniteSpec,
    FreeProductGeneralSpec,
    IdealExtensionSpec,
    ReesSpec,
    SemilatticeSpec,
    act_extension,
    acts_as_identity,
    adjoin_identity,
    adjoin_zero,
    direct_power,
    direct_product,
    free_product_finite,
    free_product_general,
    ideal_extension,
    rees_matrix,
    strong_semilattice,
    wreath_product,
)
from mealysg.core import InputError, act, isomorphic, validate
from mealysg.oracles import IdealExtensionModel, agreement
from mealysg.word_problem import are_equal, ball, equal, is_zero_element, words_up_to

EZ = FiniteSemigroup.from_rows(["e", "z"], [["e", "z"], ["z", "z"]])


def step(A, q, b):
    r, c = A.transition(A.state(q), A.symbol(b))
    return A.states[r], A.alphabet[c]


def test_every_example_validates():
    for name, ex in catalog.EXAMPLES.items():
        assert validate(ex.build()) == [], name


@pytest.mark.parametrize("example, fixture", [
    ("wreath-n0-c2", "n0_wreath_c2"),
    ("rees-f0", "rees_f0_2x2"),
    ("semilattice-f2-n0", "semilattice_f2_n0"),
    ("sx-f2", "f2_act_ext"),
])
def test_builders_reproduce_reference_automata(example, fixture):
    assert isomorphic(catalog.EXAMPLES[example].build(), catalog.automaton(fixture)) is not None


# -- basic constructions --------------------------------------------------------


def test_adjoin_identity(n0):
    A = adjoin_identity(n0)
    assert A.n_states == 3
    one = A.n_states - 1
    assert acts_as_identity(A, one)
    for q in range(A.n_states):
        assert are_equal(A, (one, q), (q,)) and are_equal(A, (q, one), (q,))
    # a already acts as the identity, so no new element appears
    assert len(ball(A, 2)[0]) == len(ball(n0, 2)[0])


def test_adjoin_identity_adds_element(sx):
    before = len(ball(sx, 2)[0])
    after = len(ball(adjoin_identity(sx), 2)[0])
    assert after == before + 1


def test_adjoin_zero(n0):
    A = adjoin_zero(n0)
    z = A.word("z")
    assert is_zero_element(A, z)
    assert A.symbol_names(act(A, z, A.string("0 1"))) == ["0^", "0^"]
    for u, v in itertools.product(words_up_to(2, 2), repeat=2):
        assert are_equal(A, u, v) == are_equal(n0, u, v)


def test_direct_product_acts_componentwise(n0):
    P = direct_power(n0, 2)
    out = act(P, P.word("(b,a)"), P.string("(1,1)"))
    assert P.symbol_names(out) == ["(0,1)"]
    assert acts_as_identity(P, P.state("(a,a)"))


def test_direct_power_ball(n0):
    P = direct_power(n0, 2)
    # N0 x N0 elements reachable by words of length k: pairs (i, j) of b-counts
    expected = {(sum(x), sum(y)) for k in (1, 2)
                for x in itertools.product((0, 1), repeat=k) for y in itertools.product((0, 1), repeat=k)}
    assert len(ball(P, 2)[0]) == len(expected) == 9


def test_direct_product_of_different_automata(n0):
    f2 = catalog.automaton("f2")
    P = direct_product(n0, f2)
    assert P.n_states == 4 and P.n_symbols == 4
    assert validate(P) == []


# -- free products ----------------------------------------------------------------


def test_free_product_finite_table(fp_trivial):
    A = fp_trivial
    assert step(A, "e", "D[-|-]") == ("f", "D[e|-]")
    assert step(A, "f", "D[e|f]") == ("f", "D[e|f]")
    assert step(A, "e", "T[f|e]o") == ("e", "T[f|e]o")
    assert step(A, "f", "D[e|f]o") == ("f", "D[e|f]o")


def test_free_product_finite_alphabet_size(fp_trivial):
    assert fp_trivial.n_symbols == 8


def test_free_product_finite_rejects_non_idempotent():
    C3 = cyclic_group(["1", "g", "h"])
    with pytest.raises(InputError):
        FreeProductFiniteSpec(C3, C3, 1, 0)


def test_free_product_finite_normal_forms_distinct(fp_trivial):
    A = fp_trivial
    forms = [A.word(" ".join(("e", "f")[(start + k) % 2] for k in range(n)))
             for n in (1, 2, 3) for start in (0, 1)]
    for u, v in itertools.combinations(forms, 2):
        assert not are_equal(A, u, v)
    assert are_equal(A, A.word("e e f"), A.word("e f"))


def test_free_product_general_table(fp_n0):
    A = fp_n0
    # b reading 1 moves to a and writes 0 in its own factor
    assert step(A, "b_S", "D[1|0]") == ("a_S", "D[0|0]^S")
    assert step(A, "b_S", "$-") == ("a_T", "$^")
    assert step(A, "b_T", "$-") == ("a_T", "$-")


def test_free_product_general_factor_embedding(fp_n0, n0):
    for side, offset in (("S", 0), ("T", 2)):
        for u, v in itertools.product(words_up_to(2, 3), repeat=2):
            su = tuple(q + offset for q in u)
            sv = tuple(q + offset for q in v)
            assert are_equal(fp_n0, su, sv) == are_equal(n0, u, v), side


def test_free_product_general_checks_idempotents(n0):
    b = n0.state("b")
    with pytest.raises(InputError):
        FreeProductGeneralSpec(n0, n0, b, b)
    spec = FreeProductGeneralSpec(n0, n0, b, b, "asserted-homogeneous")
    A = free_product_general(spec)
    assert any(UNVERIFIED in note for note in A.notes)


# -- wreath and Rees ----------------------------------------------------------------


def test_wreath_edges(wreath):
    A = catalog.EXAMPLES["wreath-n0-c2"].build()
    assert step(A, "((a,b),e)", "((0,1),e)") == ("((a,a),e)", "((0,0),e)")
    assert step(A, "((b,b),c)", "((0,0),e)") == ("((b,b),e)", "((0,0),c)")
    assert are_equal(A, A.word("((a,a),c) ((a,a),c)"), A.word("((a,a),e)"))


def test_wreath_requires_monoid(n0):
    with pytest.raises(InputError):
        wreath_product(n0, right_zero_semigroup(["p", "q"]))


def test_wreath_adjoins_identity_with_warning(caplog):
    f2 = catalog.automaton("f2")
    A = wreath_product(f2, cyclic_group(["1", "g"]))
    assert "adjoining" in caplog.text
    assert A.n_states == 3 ** 2 * 2


def test_wreath_rejects_bad_identity_state(n0):
    with pytest.raises(InputError):
        wreath_product(n0, cyclic_group(["1", "g"]), "b")


def test_rees_edges():
    A = catalog.EXAMPLES["rees-f0"].build()
    for lam in ("1", "2"):
        assert step(A, "(1,b,1)", f"(e,{lam})") == ("(1,b,1)", "(1,1)")
    for i in ("1", "2"):
        assert step(A, "(1,b,1)", f"({i},2)") == ("(1,0,1)", f"({i},1)")
        assert step(A, "(1,b,1)", f"({i},1)") == ("(1,b,1)", f"({i},1)")


def test_rees_product_through_zero_entry():
    # the sandwich entry p_{2,2} = 0 makes (1,b,2)(2,b,1) = (1,0,1) in the Rees
    # matrix semigroup, but the automaton separates the two words on the
    # symbol string "1 1 1": the A-letter rule multiplies b by b and ignores
    # the sandwich entry
    A = catalog.EXAMPLES["rees-f0"].build()
    res = equal(A, A.word("(1,b,2) (2,b,1)"), A.word("(1,0,1)"))
    assert not res.equal
    assert A.symbol_names(res.witness) == ["1", "1", "1"]


def test_rees_identity_block_embeds_base():
    A = catalog.EXAMPLES["rees-f0"].build()
    f0 = catalog.automaton("f0")
    block = [A.state(f"(1,{x},1)") for x in f0.states]
    for u, v in itertools.product(words_up_to(3, 3), repeat=2):
        bu = tuple(block[q] for q in u)
        bv = tuple(block[q] for q in v)
        assert are_equal(A, bu, bv) == are_equal(f0, u, v)


def test_rees_spec_checks():
    f0 = catalog.automaton("f0")
    matrix = catalog.mapping("rees_f0_matrix")
    claims = catalog.mapping("rees_f0_left_mult")
    with pytest.raises(InputError, match="identity"):
        ReesSpec(f0, "a", ("1", "2"), ("1", "2"), {k: "0" for k in matrix}, claims)
    with pytest.raises(InputError, match="missing"):
        ReesSpec(f0, "a", ("1", "2", "3"), ("1", "2"), matrix, claims)
    bad = dict(claims)
    bad["0", "a"] = "b"
    with pytest.raises(InputError, match="claim fails"):
        ReesSpec(f0, "a", ("1", "2"), ("1", "2"), matrix, bad)
    with pytest.raises(InputError):
        ReesSpec(f0, "b", ("1", "2"), ("1", "2"), matrix, claims)


def test_rees_only_identity_entries():
    f0 = catalog.automaton("f0")
    spec = ReesSpec(f0, "a", ("1",), ("1", "2"), {("1", "1"): "a", ("2", "1"): "a"})
    A = rees_matrix(spec)
    assert A.n_states == 6 and validate(A) == []
    assert not agreement(A, catalog.ReesModel(spec), words_up_to(A.n_states, 2))


# -- semilattices -------------------------------------------------------------------


def test_semilattice_edges():
    A = catalog.EXAMPLES["semilattice-f2-n0"].build()
    for beta in ("0", "1", "2"):
        for x in ("e", "z"):
            assert step(A, "a", f"(1,{beta},{x})") == ("a", f"(1,0,{x})")
            assert step(A, "b", f"(2,{beta},{x})") == ("b", "(2,0,z)")
    assert are_equal(A, A.word("a d"), A.word("z"))


def test_semilattice_part_embedding():
    A = catalog.EXAMPLES["semilattice-f2-n0"].build()
    for part, states in (("f2", "a b"), ("n0_cd", "c d")):
        P = catalog.automaton(part)
        ix = A.word(states)
        for u, v in itertools.product(words_up_to(2, 3), repeat=2):
            assert are_equal(A, tuple(ix[q] for q in u), tuple(ix[q] for q in v)) == are_equal(P, u, v)


def test_semilattice_without_identity_adjoins_one():
    f2 = catalog.automaton("f2")
    base = FiniteSemigroup.from_rows(["x", "z"], [["z", "z"], ["z", "z"]])
    spec = SemilatticeSpec((f2,), base, 1, (GeneratorHom.from_names(f2, base, {"a": "x", "b": "x"}),))
    A = strong_semilattice(spec)
    assert validate(A) == []
    assert A.n_symbols == 3 * 3
    assert not agreement(A, catalog.SemilatticeModel(spec), words_up_to(A.n_states, 2))


def test_semilattice_rejects_bad_hom(n0):
    C2 = cyclic_group(["e", "z"])
    with pytest.raises(InputError):
        SemilatticeSpec((n0,), EZ, 1, (GeneratorHom.from_names(n0, EZ, {"a": "z", "b": "e"}),))
    with pytest.raises(InputError):
        SemilatticeSpec((n0,), C2, 1, (GeneratorHom.from_names(n0, C2, {"a": "e", "b": "z"}),))


def test_conjecture_manifests_load():
    c2 = catalog.semigroup("c2_ef")
    for part, hom in (("f2", "conjecture_f2_hom"), ("n0_cd", "conjecture_n0_hom")):
        A = catalog.automaton(part)
        GeneratorHom.from_names(A, c2, catalog.mapping(hom))


# -- extensions ---------------------------------------------------------------------


def unital_ideal_spec(n0):
    """N0 with {e, z} where the identity a fixes e and z, and b sends both to z."""
    left = {(q, s): (s if q == "a" else "z") for q in n0.states for s in EZ.names}
    right = {(s, q): (s if q == "a" else "z") for q in n0.states for s in EZ.names}
    return IdealExtensionSpec(n0, EZ, 1, left, right)


def test_ideal_extension_edges(n0):
    spec = catalog.ideal_extension_spec()
    A = ideal_extension(spec)
    for y in ("e", "z"):
        for a in ("0", "1"):
            assert step(A, y, f"({a},id)") == ("z", y)
    for x in ("a", "b"):
        for b in ("e", "z"):
            assert step(A, x, b) == ("z", "z")
    assert are_equal(A, A.word("b e"), A.word("z"))


def test_ideal_extension_unital(n0):
    spec = unital_ideal_spec(n0)
    A = ideal_extension(spec)
    assert validate(A) == []
    assert not agreement(A, IdealExtensionModel(spec), words_up_to(A.n_states, 3))
    assert are_equal(A, A.word("a e"), A.word("e"))
    assert are_equal(A, A.word("e b"), A.word("z"))
    assert not are_equal(A, A.word("a"), A.word("e"))


def test_ideal_extension_rejects_nonassociative(n0):
    left = {(q, s): "e" for q in n0.states for s in EZ.names}
    right = {(s, q): "z" for q in n0.states for s in EZ.names}
    with pytest.raises(InputError):
        IdealExtensionSpec(n0, EZ, 1, left, right)


def test_ideal_extension_rejects_incompatible(n0):
    # in a right-zero ideal any right action is associative; a swap under a
    # clashes with a a = a
    X = right_zero_semigroup(["p", "q"])
    left = {(q, s): s for q in n0.states for s in X.names}
    right = {("p", "a"): "q", ("q", "a"): "p", ("p", "b"): "p", ("q", "b"): "q"}
    with pytest.raises(InputError, match="compatible"):
        IdealExtensionSpec(n0, X, 0, left, right)
    T = trivial_semigroup("z")
    with pytest.raises(InputError):
        IdealExtensionSpec(n0, T, 0, {("a", "z"): "q"}, {})


def test_act_extension_edges(sx):
    A = catalog.EXAMPLES["sx-f2"].build()
    assert step(A, "a", "p") == ("q", "q")
    for c in A.alphabet:
        assert step(A, "p", c) == ("p", "p")
    assert are_equal(A, A.word("p a"), A.word("q"))
    assert are_equal(A, A.word("a p"), A.word("p"))
    assert are_equal(A, A.word("p q"), A.word("q"))


def test_act_extension_rejects_incompatible(n0):
    # a is the identity of N0 but this action moves points under a
    action = {("a", "p"): "q", ("a", "q"): "p", ("b", "p"): "p", ("b", "q"): "q"}
    with pytest.raises(InputError, match="compatible"):
        ActExtensionSpec(n0, ("p", "q"), action)
    with pytest.raises(InputError):
        ActExtensionSpec(n0, ("p", "q"), {("a", "p"): "p"})


def test_act_extension_factor_embedding(sx):
    A = act_extension(catalog.act_extension_spec())
    f2 = catalog.automaton("f2")
    for u, v in itertools.product(words_up_to(2, 3), repeat=2):
        assert are_equal(A, u, v) == are_equal(f2, u, v)


def test_free_product_finite_general_groups():
    S = cyclic_group(["1", "g"])
    T = trivial_semigroup("f")
    A = free_product_finite(FreeProductFiniteSpec(S, T, 0, 0))
    assert validate(A) == []
    assert are_equal(A, A.word("g g"), A.word("1"))
    assert not are_equal(A, A.word("g f g"), A.word("f"))
