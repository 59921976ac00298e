"""Small hand-built categories and data shared by several test modules."""
from finrefl.engine import ReflectionData
from finrefl.fincat import FinFunctor, identity_functor, make_category
from finrefl.transforms import FunctionalData, make_adjunction


def terminal():
    return make_category(["a"], [], {}, name="T")


def chain2():
    return make_category(["a", "b"], [("f", "a", "b")], {}, name="C2")


def walking_iso():
    return make_category(["x", "y"], [("f", "x", "y"), ("g", "y", "x")],
                         {("g", "f"): "id_x", ("f", "g"): "id_y"}, name="E")


def split_mono_data():
    """xi at (a,a) is a split mono with no inverse; everything else well typed."""
    one = make_category(["a"], [], {})
    kid = make_category(["a"], [("e", "a", "a")], {("e", "e"): "e"})
    U = make_category(["p", "q"], [("s", "p", "q"), ("r", "q", "p"), ("k", "q", "q")],
                      {("r", "s"): "id_p", ("s", "r"): "k", ("k", "s"): "s", ("r", "k"): "r",
                       ("k", "k"): "k"})
    I = FinFunctor(one, U, {"a": "p"}, {"id_a": "id_p"})
    J = FinFunctor(kid, U, {"a": "q"}, {"id_a": "id_q", "e": "k"})
    x = ("a", "a")
    return ReflectionData(one, kid, U, I, J, (x,), (x,), {x: x}, {x: x},
                          {x: "s"}, {x: "r"}, {x: "id_a"}, {x: "e"}, "split")


def identity_adjunction(C):
    one = identity_functor(C, "1")
    ids = dict(C.identity)
    return make_adjunction(C, C, one, one, ids, ids, f"id({C.name})")


def identity_fd(C):
    one = identity_functor(C)
    objs = {x: x for x in C.objects}
    ids = dict(C.identity)
    return FunctionalData(C, C, C, one, one, objs, objs, ids, ids, ids, ids, "idfd")


def parallel_fd():
    """J collapses two parallel K-arrows, so the H-arrow s lifts twice."""
    H = make_category(["a", "b"], [("s", "a", "b")], {})
    K = make_category(["d", "e"], [("t1", "d", "e"), ("t2", "d", "e")], {})
    U = make_category(["p", "q"], [("u", "p", "q")], {})
    I = FinFunctor(H, U, {"a": "p", "b": "q"}, {"id_a": "id_p", "id_b": "id_q", "s": "u"})
    J = FinFunctor(K, U, {"d": "p", "e": "q"}, {"id_d": "id_p", "id_e": "id_q", "t1": "u", "t2": "u"})
    return FunctionalData(H, K, U, I, J, {"a": "d", "b": "e"}, {"d": "a", "e": "b"},
                          {"a": "id_p", "b": "id_q"}, {"d": "id_p", "e": "id_q"},
                          {"a": "id_a", "b": "id_b"}, {"d": "id_d", "e": "id_e"}, "parallel")
