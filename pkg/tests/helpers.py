from hypothesis import strategies as st

from otree.forest import Tree, order, parse_forest
from otree.lincomb import LinComb


def F(text: str):
    return parse_forest(text)


def L(*terms) -> LinComb:
    """L((2, "()()"), (-1, "(())")) or L("()")."""
    if len(terms) == 1 and isinstance(terms[0], str):
        return LinComb({parse_forest(terms[0]): 1})
    return LinComb([(parse_forest(f), c) for c, f in terms])


def _trees(colors):
    leaf = st.sampled_from(colors).map(lambda c: Tree(c, ()))
    return st.recursive(
        leaf,
        lambda kids: st.builds(
            lambda c, ch: Tree(c, tuple(ch)), st.sampled_from(colors), st.lists(kids, max_size=3)
        ),
        max_leaves=5,
    )


def forests(max_order: int = 5, colors=("0",)):
    return st.lists(_trees(list(colors)), max_size=3).map(tuple).filter(lambda f: order(f) <= max_order)


def lincombs(max_order: int = 4, colors=("0",), max_terms: int = 3):
    coeff = st.integers(-3, 3)
    return st.lists(st.tuples(forests(max_order, colors), coeff), max_size=max_terms).map(LinComb)
