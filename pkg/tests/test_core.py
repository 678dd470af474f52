import itertools

import pytest
from hypothesis import given, strategies as st

from colorder.core import (ColorTerm, Embedding, FinStruct, InputError,
                           amalgamate, canonical_code, color_less,
                           is_embedding, pair_of, parse_struct, format_struct,
                           validate)
from helpers import all_embeddings, all_structures, marked_isomorphic

B = ColorTerm.base
M = ColorTerm.marker


# ---------------------------------------------------------------------------
# validate
# ---------------------------------------------------------------------------

def test_validate_empty_structure():
    assert validate(FinStruct.empty()).ok


def test_validate_monochromatic_triangle():
    s = FinStruct.build("abc", {pair_of("a", "b"): B(0, 0),
                                pair_of("a", "c"): B(0, 0),
                                pair_of("b", "c"): B(0, 0)})
    v = validate(s)
    assert not v.ok
    assert v.reason == "monochromatic-triangle"
    assert v.triple == ("a", "b", "c")


def test_validate_two_colors_is_fine():
    s = FinStruct.build("abc", {pair_of("a", "b"): B(0, 0),
                                pair_of("a", "c"): B(0, 0),
                                pair_of("b", "c"): B(0, 1)})
    assert validate(s).ok


def test_validate_level_bound():
    s = FinStruct.build("ab", {pair_of("a", "b"): B(1, 0)}, level=0)
    v = validate(s)
    assert not v.ok and v.reason == "level-bound"


def test_validate_reports_first_triple_in_position_order():
    cols = {pair_of(u, v): B(0, 0) for u, v in itertools.combinations("abcd", 2)}
    cols[pair_of("a", "b")] = B(0, 1)
    s = FinStruct.build("abcd", cols)
    v = validate(s)
    assert v.triple == ("a", "c", "d")


def test_malformed_input_is_an_error_not_invalidity():
    with pytest.raises(InputError):
        FinStruct.build("aa", {})
    with pytest.raises(InputError):
        FinStruct.build("ab", {})  # missing the pair color
    # a hand-built broken value is caught by validate's gate
    broken = FinStruct(("a", "b"), {}, 0)
    with pytest.raises(InputError):
        validate(broken)


def test_validate_agrees_with_brute_force_scan():
    # every cataloged structure is accepted, and flipping one pair of a valid
    # 3-point structure to close a triangle is rejected
    for s in all_structures(3, 2):
        assert validate(s).ok
    s = FinStruct.build("abc", {pair_of("a", "b"): B(0, 0),
                                pair_of("a", "c"): B(0, 1),
                                pair_of("b", "c"): B(0, 0)})
    assert validate(s).ok
    cols = dict(s.colors)
    cols[pair_of("a", "c")] = B(0, 0)
    assert not validate(FinStruct(("a", "b", "c"), cols, 0)).ok


# ---------------------------------------------------------------------------
# color order
# ---------------------------------------------------------------------------

def test_color_less_examples():
    assert color_less(B(0, 0), B(0, 1))
    assert color_less(B(0, 5), M(1))
    assert not color_less(M(1), B(1, 0))
    assert color_less(B(1, 0), M(1))


def _term_sample():
    terms = [B(l, n) for l in range(3) for n in range(5)]
    terms += [M(l) for l in range(1, 4)]
    terms += [ColorTerm.pair_code(l, code) for l in range(1, 3)
              for code in ("00", "01", "ff", "0a1b")]
    return terms


def test_color_less_is_a_strict_total_order():
    terms = _term_sample()
    assert len(terms) <= 50
    for c in terms:
        assert not color_less(c, c)
    for c1, c2 in itertools.combinations(terms, 2):
        assert color_less(c1, c2) != color_less(c2, c1)
    for c1, c2, c3 in itertools.permutations(terms[:12], 3):
        if color_less(c1, c2) and color_less(c2, c3):
            assert color_less(c1, c3)


@given(st.integers(0, 3), st.integers(0, 9), st.integers(0, 3), st.integers(0, 9))
def test_color_less_base_orders_like_pairs(l1, n1, l2, n2):
    assert color_less(B(l1, n1), B(l2, n2)) == ((l1, n1) < (l2, n2))


def test_color_term_text_roundtrip():
    for c in _term_sample():
        assert ColorTerm.parse(c.text()) == c


# ---------------------------------------------------------------------------
# embeddings
# ---------------------------------------------------------------------------

def test_identity_is_an_embedding(two_point):
    assert is_embedding({"a": "a", "b": "b"}, two_point, two_point)


def test_order_reversal_is_not_an_embedding(two_point):
    assert not is_embedding({"a": "b", "b": "a"}, two_point, two_point)


def test_inclusion_is_an_embedding(two_point):
    t = FinStruct.build("abc", {pair_of("a", "b"): B(0, 0),
                                pair_of("a", "c"): B(0, 1),
                                pair_of("b", "c"): B(0, 0)})
    assert is_embedding({"a": "a", "b": "b"}, two_point, t)
    # color mismatch breaks it
    t2 = FinStruct.build("abc", {pair_of("a", "b"): B(0, 1),
                                 pair_of("a", "c"): B(0, 1),
                                 pair_of("b", "c"): B(0, 0)})
    assert not is_embedding({"a": "a", "b": "b"}, two_point, t2)


def test_embedding_build_rejects_bad_maps(two_point):
    with pytest.raises(InputError):
        Embedding.build(two_point, two_point, {"a": "b", "b": "a"})


# ---------------------------------------------------------------------------
# amalgamation
# ---------------------------------------------------------------------------

def test_amalgamate_identity_case():
    x = FinStruct.build("x", {})
    am = amalgamate(x, x, x, Embedding.identity(x), Embedding.identity(x))
    assert am.result == x
    assert am.left.mapping == (("x", "x"),) == am.right.mapping


def test_amalgamate_forced_fresh_color():
    x = FinStruct.build("x", {})
    a = FinStruct.build(["x", "a1"], {pair_of("x", "a1"): B(0, 0)})
    b = FinStruct.build(["x", "b1"], {pair_of("x", "b1"): B(0, 0)})
    am = amalgamate(a, b, x, Embedding.build(x, a, {"x": "x"}),
                    Embedding.build(x, b, {"x": "x"}))
    cross = am.result.color(am.left.apply("a1"), am.right.apply("b1"))
    # brute force: of the candidate colors, exactly b:0:0 closes a triangle
    from helpers import has_mono_triangle
    forbidden = []
    for cand in (B(0, 0), B(0, 1), B(0, 2)):
        cols = {pair_of("x", "a1"): B(0, 0), pair_of("x", "b1"): B(0, 0),
                pair_of("a1", "b1"): cand}
        if has_mono_triangle(("x", "a1", "b1"),
                             lambda u, v: cols[pair_of(u, v)]):
            forbidden.append(cand)
    assert forbidden == [B(0, 0)]
    assert cross == B(0, 1)
    assert validate(am.result).ok


def test_amalgamate_over_empty():
    e = FinStruct.empty()
    p = FinStruct.build("p", {})
    q = FinStruct.build("q", {})
    am = amalgamate(p, q, e, Embedding.build(e, p, {}), Embedding.build(e, q, {}))
    assert am.result.points == ("p", "q")
    # no triangle constraint exists, so the smallest color is free to use
    assert am.result.color("p", "q") == B(0, 0)


def test_amalgamate_name_collision_keeps_sides_apart():
    x = FinStruct.build("x", {})
    a = FinStruct.build(["x", "n"], {pair_of("x", "n"): B(0, 0)})
    b = FinStruct.build(["x", "n"], {pair_of("x", "n"): B(0, 1)})
    am = amalgamate(a, b, x, Embedding.build(x, a, {"x": "x"}),
                    Embedding.build(x, b, {"x": "x"}))
    assert len(am.result.points) == 3
    assert am.result.color("x", am.left.apply("n")) == B(0, 0)
    assert am.result.color("x", am.right.apply("n")) == B(0, 1)


def test_amalgamate_exhaustive_small_instances():
    """For every common substructure X of every pair (a, b), the amalgam is
    valid and both composites agree on X."""
    structures = [s for s in all_structures(3, 3) if len(s.points) <= 3]
    subs = [s for s in structures if len(s.points) <= 2]
    checked = 0
    for x in subs:
        for a in structures:
            ia = all_embeddings(x, a)
            if not ia:
                continue
            for b in structures:
                ib = all_embeddings(x, b)
                if not ib:
                    continue
                ea = Embedding.build(x, a, ia[0])
                eb = Embedding.build(x, b, ib[0])
                am = amalgamate(a, b, x, ea, eb)
                assert validate(am.result).ok
                for p in x.points:
                    assert am.left.apply(ea.apply(p)) == am.right.apply(eb.apply(p))
                assert is_embedding(am.left.as_dict, a, am.result)
                assert is_embedding(am.right.as_dict, b, am.result)
                checked += 1
    assert checked > 100


# ---------------------------------------------------------------------------
# canonical codes
# ---------------------------------------------------------------------------

def test_code_ignores_point_names():
    assert canonical_code(FinStruct.build("a", {})) == canonical_code(FinStruct.build("z", {}))


def test_code_sees_colors(two_point):
    other = FinStruct.build("ab", {pair_of("a", "b"): B(0, 1)})
    assert canonical_code(two_point) != canonical_code(other)


def test_code_on_renamed_structure(two_point):
    renamed = FinStruct.build("uv", {pair_of("u", "v"): B(0, 0)})
    assert canonical_code(two_point) == canonical_code(renamed)
    assert marked_isomorphic(two_point, (), renamed, ())


def test_code_equality_is_marked_isomorphism():
    """Code equality coincides with brute-force marked isomorphism on all
    structures up to size 4 over 3 colors: every code-equal pair is verified
    isomorphic by the search oracle, and a seeded sample of code-distinct
    pairs is verified non-isomorphic."""
    import random
    structures = [s for s in all_structures(4, 3) if s.points]
    coded = [(s, canonical_code(s), canonical_code(s, (s.points[0],)))
             for s in structures]
    groups: dict[str, list[int]] = {}
    for i, (_, code, _) in enumerate(coded):
        groups.setdefault(code, []).append(i)
    for members in groups.values():
        for i, j in itertools.combinations(members, 2):
            s, _, smk = coded[i]
            t, _, tmk = coded[j]
            assert marked_isomorphic(s, (), t, ())
            assert (smk == tmk) == marked_isomorphic(
                s, (s.points[0],), t, (t.points[0],))
    rng = random.Random(7)
    for _ in range(400):
        i, j = rng.randrange(len(coded)), rng.randrange(len(coded))
        s, cs, csm = coded[i]
        t, ct, ctm = coded[j]
        assert (cs == ct) == marked_isomorphic(s, (), t, ())
        assert (csm == ctm) == marked_isomorphic(s, (s.points[0],),
                                                 t, (t.points[0],))


def test_code_marks_matter(two_point):
    assert canonical_code(two_point, ("a",)) != canonical_code(two_point, ("b",))


@given(st.permutations(["a", "b", "c"]))
def test_code_invariant_under_renaming(new_names):
    s = FinStruct.build("abc", {pair_of("a", "b"): B(0, 0),
                                pair_of("a", "c"): B(0, 1),
                                pair_of("b", "c"): B(0, 0)})
    rename = dict(zip("abc", new_names))
    cols = {pair_of(rename[u], rename[v]): s.color(u, v) for u, v in s.pairs()}
    t = FinStruct.build([rename[p] for p in s.points], cols)
    assert canonical_code(s) == canonical_code(t)
    assert canonical_code(s, ("b",)) == canonical_code(t, (rename["b"],))


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------

def test_struct_text_roundtrip(two_point):
    name, parsed = parse_struct(format_struct(two_point, "demo"))
    assert name == "demo" and parsed == two_point


def test_parse_rejects_duplicate_pair():
    text = "structure s level 0\npoint a\npoint b\ncolor a b b:0:0\ncolor b a b:0:1\n"
    with pytest.raises(InputError):
        parse_struct(text)


def test_parse_rejects_missing_pair():
    text = "structure s level 0\npoint a\npoint b\n"
    with pytest.raises(InputError):
        parse_struct(text)


def test_parse_rejects_duplicate_point():
    text = "structure s level 0\npoint a\npoint a\n"
    with pytest.raises(InputError):
        parse_struct(text)
