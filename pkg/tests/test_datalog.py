import random

import pytest
from hypothesis import given, strategies as st

from purelint.datalog import (
    AtomKind, DatalogAtom, DatalogError, Num, Str, Var, build_ra, datalog_to_ra,
    parse_atom, ra_steps, render_atom, tokenize_atom,
)

from datalog_oracle import atom_text, convert, random_atom

P_TEXT = 'p(x,20,x,y,"john",x,y)'
P_FINAL = ('rename[x,y](project[x_0,x_3](select[x_1=20 and x_4="john" and x_0=x_2 and x_2=x_5'
           ' and x_3=x_6](rename[x_0,x_1,x_2,x_3,x_4,x_5,x_6](p))))')
Q_FINAL = ("rename[x](project[x_0](select[x_0=x_1 and x_1=x_2 and x_2=x_3 and x_3=x_4]"
           "(rename[x_0,x_1,x_2,x_3,x_4](q))))")


def test_tokenize_q_atom():
    toks = tokenize_atom("q(x,x,x,x,x)")
    assert [t.kind for t in toks] == (
        [AtomKind.NAME, AtomKind.LPAREN] + [AtomKind.NAME, AtomKind.COMMA] * 4
        + [AtomKind.NAME, AtomKind.RPAREN, AtomKind.EOF]
    )
    assert [t.position for t in toks[:3]] == [0, 1, 2]


def test_whitespace_is_ignored():
    strip = lambda ts: [(t.kind, t.lexeme) for t in ts]
    assert strip(tokenize_atom("p( x , 20 )")) == strip(tokenize_atom("p(x,20)"))


def test_string_token_excludes_quotes():
    tok = tokenize_atom('p("a b")')[2]
    assert (tok.kind, tok.lexeme, tok.position) == (AtomKind.STRING, "a b", 2)


@pytest.mark.parametrize("text,position,fragment", [
    ("p(3.5)", 3, "unexpected character"),
    ('p("abc', 2, "unterminated"),
    ("p()", 2, "at least one argument"),
    ("p(", 2, "unexpected end of input"),
    ("p(x y)", 4, "expected"),
    ("p(x))", 4, "trailing"),
    ("(x)", 0, "expected"),
    ("p(0)", 2, "positive"),
    ("", 0, "unexpected end of input"),
])
def test_parse_errors(text, position, fragment):
    with pytest.raises(DatalogError) as exc:
        parse_atom(text)
    assert exc.value.position == position
    assert fragment in exc.value.message


def test_parse_p_example():
    atom = parse_atom(P_TEXT)
    assert atom == DatalogAtom("p", (Var("x"), Num(20), Var("x"), Var("y"), Str("john"), Var("x"), Var("y")))
    assert atom.as_pair() == ("p", [("var", "x"), ("num", 20), ("var", "x"), ("var", "y"),
                                    ("str", "john"), ("var", "x"), ("var", "y")])
    assert parse_atom("r(42)") == DatalogAtom("r", (Num(42),))


def test_input_case_is_kept():
    assert parse_atom('p("John")').args == (Str("John"),)


def test_build_p_example():
    q = build_ra(parse_atom(P_TEXT))
    assert [str(c) for c in q.select_conditions] == ["x_1=20", 'x_4="john"', "x_0=x_2", "x_2=x_5", "x_3=x_6"]
    assert q.project_positions == ("x_0", "x_3")
    assert q.outer_rename == ("x", "y")
    assert q.inner_rename == tuple(f"x_{i}" for i in range(7))


def test_build_small_cases():
    q = build_ra(parse_atom("q(x,x,x,x,x)"))
    assert [str(c) for c in q.select_conditions] == ["x_0=x_1", "x_1=x_2", "x_2=x_3", "x_3=x_4"]
    assert (q.project_positions, q.outer_rename) == (("x_0",), ("x",))
    q = build_ra(parse_atom("r(x,y)"))
    assert (q.select_conditions, q.project_positions, q.outer_rename) == ((), ("x_0", "x_1"), ("x", "y"))


@pytest.mark.parametrize("text,expected", [
    (P_TEXT, P_FINAL),
    ("q(x,x,x,x,x)", Q_FINAL),
    ("r(x)", "rename[x](project[x_0](rename[x_0](r)))"),
    ("r(42)", "select[x_0=42](rename[x_0](r))"),
    ('s("a b",7)', 'select[x_0="a b" and x_1=7](rename[x_0,x_1](s))'),
])
def test_render(text, expected):
    assert datalog_to_ra(text) == expected


def test_steps_are_cumulative():
    steps = ra_steps(build_ra(parse_atom(P_TEXT)))
    assert [label for label, _ in steps] == ["step1", "step2", "step3", "step4"]
    for (_, inner), (_, outer) in zip(steps, steps[1:]):
        assert outer.endswith("(" + inner + ")")
    assert [label for label, _ in ra_steps(build_ra(parse_atom("r(x)")))] == ["step1", "step3", "step4"]
    assert [label for label, _ in ra_steps(build_ra(parse_atom("r(4)")))] == ["step1", "step2"]


def test_fresh_name_collision_warns_but_keeps_scheme():
    q = build_ra(parse_atom("p(x_1,y)"))
    assert q.inner_rename == ("x_0", "x_1")
    assert q.outer_rename == ("x_1", "y")
    assert len(q.warnings) == 1 and "x_1" in q.warnings[0]


def test_render_atom():
    assert render_atom(parse_atom("q( x, x,x,x , x )")) == "q(x,x,x,x,x)"
    assert render_atom(parse_atom(P_TEXT)) == P_TEXT


# -- properties ------------------------------------------------------------

names = st.from_regex(r"[a-z][a-z0-9_]{0,4}", fullmatch=True)
args = st.one_of(
    names.map(Var),
    st.integers(1, 10**6).map(Num),
    st.from_regex(r'[a-z ]{0,5}', fullmatch=True).map(Str),
)
atoms = st.builds(DatalogAtom, names, st.lists(args, min_size=1, max_size=7).map(tuple))


@given(atoms)
def test_round_trip(atom):
    assert parse_atom(render_atom(atom)) == atom


def _occurrences(atom):
    occ = {}
    for i, a in enumerate(atom.args):
        if isinstance(a, Var):
            occ.setdefault(a.name, []).append(i)
    return occ


@given(atoms)
def test_structural_counts(atom):
    q = build_ra(atom)
    occ = _occurrences(atom)
    constants = sum(not isinstance(a, Var) for a in atom.args)
    assert len(q.inner_rename) == len(atom.args)
    assert len(q.project_positions) == len(occ) == len(q.outer_rename)
    assert len(q.select_conditions) == constants + sum(len(v) - 1 for v in occ.values())
    assert q.project_positions == tuple(f"x_{v[0]}" for v in occ.values())


@given(atoms)
def test_condition_ordering(atom):
    q = build_ra(atom)
    constants = sum(not isinstance(a, Var) for a in atom.args)
    head, chains = q.select_conditions[:constants], q.select_conditions[constants:]
    assert [int(c.left[2:]) for c in head] == [i for i, a in enumerate(atom.args) if not isinstance(a, Var)]
    # chains follow first-occurrence order and positions increase within each
    expected = [(p, r) for occ in _occurrences(atom).values() for p, r in zip(occ, occ[1:])]
    assert [(int(c.left[2:]), int(c.right[2:])) for c in chains] == expected


@given(atoms)
def test_deterministic(atom):
    text = render_atom(atom)
    assert datalog_to_ra(text) == datalog_to_ra(text)


def test_matches_independent_oracle():
    rng = random.Random(7)
    for _ in range(300):
        pred, pairs = random_atom(rng)
        text = atom_text(pred, pairs)
        assert parse_atom(text).as_pair() == (pred, pairs)
        assert datalog_to_ra(text) == convert(pred, pairs), text
