"""Brute-force reference checks that only use ``act`` and ``restriction``."""

from mealysg.core import act, restriction


def agree_to_depth(A, u, v, depth):
    """Do ``u`` and ``v`` act alike on every string of length <= ``depth``?

    Strings are explored level by level; two strings that lead to the same
    pair of restrictions have the same futures, so each level keeps one
    string per restriction pair.
    """
    level = {(tuple(u), tuple(v)): ()}
    for _ in range(depth):
        nxt = {}
        for s in level.values():
            for b in range(A.n_symbols):
                t = s + (b,)
                if act(A, u, t) != act(A, v, t):
                    return False
                nxt.setdefault((restriction(A, u, t), restriction(A, v, t)), t)
        level = nxt
    return True
